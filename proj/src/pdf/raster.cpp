#include "reviewkit/pdf/raster.hpp"

#include "reviewkit/util/error.hpp"

#include <algorithm>
#include <cmath>

namespace reviewkit::pdf {

namespace {

// Resamples one axis with area averaging (scale < 1) or linear
// interpolation (scale >= 1). Operates row-major on `axis` = 0 (x) by
// transposing the loop roles.
std::vector<float> resample_axis(const std::vector<float>& src, int src_w, int src_h,
                                 int channels, int dst_w) {
    std::vector<float> dst(static_cast<size_t>(dst_w) * src_h * channels, 0.0f);
    const double scale = static_cast<double>(src_w) / dst_w;

    for (int y = 0; y < src_h; ++y) {
        const float* in = src.data() + static_cast<size_t>(y) * src_w * channels;
        float* out = dst.data() + static_cast<size_t>(y) * dst_w * channels;
        for (int x = 0; x < dst_w; ++x) {
            if (scale > 1.0) {
                double lo = x * scale;
                double hi = (x + 1) * scale;
                int lo_i = static_cast<int>(std::floor(lo));
                int hi_i = std::min(src_w, static_cast<int>(std::ceil(hi)));
                for (int c = 0; c < channels; ++c) {
                    double acc = 0.0, weight = 0.0;
                    for (int s = lo_i; s < hi_i; ++s) {
                        double w = std::min<double>(hi, s + 1) - std::max<double>(lo, s);
                        if (w <= 0) continue;
                        acc += w * in[static_cast<size_t>(s) * channels + c];
                        weight += w;
                    }
                    out[static_cast<size_t>(x) * channels + c] =
                        static_cast<float>(weight > 0 ? acc / weight : 0.0);
                }
            } else {
                double center = (x + 0.5) * scale - 0.5;
                int s0 = static_cast<int>(std::floor(center));
                double frac = center - s0;
                int s1 = std::min(src_w - 1, s0 + 1);
                s0 = std::clamp(s0, 0, src_w - 1);
                for (int c = 0; c < channels; ++c) {
                    float a = in[static_cast<size_t>(s0) * channels + c];
                    float b = in[static_cast<size_t>(s1) * channels + c];
                    out[static_cast<size_t>(x) * channels + c] =
                        static_cast<float>(a + (b - a) * frac);
                }
            }
        }
    }
    return dst;
}

std::vector<float> transpose(const std::vector<float>& src, int w, int h, int channels) {
    std::vector<float> dst(src.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int c = 0; c < channels; ++c) {
                dst[(static_cast<size_t>(x) * h + y) * channels + c] =
                    src[(static_cast<size_t>(y) * w + x) * channels + c];
            }
        }
    }
    return dst;
}

} // namespace

Raster resample(const Raster& src, int new_width, int new_height) {
    if (new_width <= 0 || new_height <= 0) {
        throw Error("malformed_pdf", "resample target must be positive");
    }
    if (src.width == new_width && src.height == new_height) return src;

    std::vector<float> work(src.samples.begin(), src.samples.end());
    work = resample_axis(work, src.width, src.height, src.channels, new_width);
    work = transpose(work, new_width, src.height, src.channels);
    work = resample_axis(work, src.height, new_width, src.channels, new_height);
    work = transpose(work, new_height, new_width, src.channels);

    Raster out;
    out.width = new_width;
    out.height = new_height;
    out.channels = src.channels;
    out.samples.resize(work.size());
    for (size_t i = 0; i < work.size(); ++i) {
        out.samples[i] = static_cast<uint8_t>(std::clamp(std::lround(work[i]), 0L, 255L));
    }
    return out;
}

} // namespace reviewkit::pdf
