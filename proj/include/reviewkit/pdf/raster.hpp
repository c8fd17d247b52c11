#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace reviewkit::pdf {

// Interleaved 8-bit raster, 1 (gray), 3 (RGB) or 4 (CMYK) channels.
struct Raster {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<uint8_t> samples;

    size_t row_bytes() const { return static_cast<size_t>(width) * channels; }
};

// Area-average for downscaling, bilinear for upscaling; separable, so a
// mixed case (shrink one axis, grow the other) behaves sensibly.
Raster resample(const Raster& src, int new_width, int new_height);

Raster jpeg_decode(std::span<const uint8_t> data);
std::vector<uint8_t> jpeg_encode(const Raster& raster, int quality = 90);

} // namespace reviewkit::pdf
