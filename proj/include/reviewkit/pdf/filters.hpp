#pragma once

#include "reviewkit/pdf/objects.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace reviewkit::pdf {

std::vector<uint8_t> flate_decode(std::span<const uint8_t> data);
std::vector<uint8_t> flate_encode(std::span<const uint8_t> data);

// Undo PNG-style predictors (Predictor >= 10) or TIFF predictor 2.
// `colors` * `bits_per_component` / 8 bytes per pixel, `columns` pixels
// per row.
std::vector<uint8_t> apply_predictor_decode(std::span<const uint8_t> data, int predictor,
                                            int colors, int bits_per_component, int columns);

// Decodes a stream's raw bytes through its /Filter chain. Supports
// FlateDecode (with optional /DecodeParms predictors) and the identity
// case. DCTDecode is left encoded (callers handle JPEG themselves).
// Error("unsupported_filter") for anything else.
struct DecodedStream {
    std::vector<uint8_t> bytes;
    bool still_dct = false;  // bytes are JPEG-compressed
};
DecodedStream decode_stream(const Stream& stream,
                            const std::function<ObjectPtr(const ObjectPtr&)>& resolve);

} // namespace reviewkit::pdf
