#include "reviewkit/pdf/filters.hpp"

#include "reviewkit/util/error.hpp"

#include <zlib.h>

#include <cstring>
#include <functional>

namespace reviewkit::pdf {

std::vector<uint8_t> flate_decode(std::span<const uint8_t> data) {
    z_stream zs{};
    if (inflateInit(&zs) != Z_OK) throw Error("malformed_pdf", "inflateInit failed");

    std::vector<uint8_t> out;
    out.reserve(data.size() * 4);
    uint8_t buf[16384];
    zs.next_in = const_cast<Bytef*>(data.data());
    zs.avail_in = static_cast<uInt>(data.size());
    int rc = Z_OK;
    do {
        zs.next_out = buf;
        zs.avail_out = sizeof(buf);
        rc = inflate(&zs, Z_NO_FLUSH);
        if (rc != Z_OK && rc != Z_STREAM_END) {
            inflateEnd(&zs);
            throw Error("malformed_pdf", "flate stream is corrupt");
        }
        out.insert(out.end(), buf, buf + (sizeof(buf) - zs.avail_out));
    } while (rc != Z_STREAM_END && (zs.avail_in > 0 || zs.avail_out == 0));
    inflateEnd(&zs);
    return out;
}

std::vector<uint8_t> flate_encode(std::span<const uint8_t> data) {
    uLongf bound = compressBound(static_cast<uLong>(data.size()));
    std::vector<uint8_t> out(bound);
    if (compress2(out.data(), &bound, data.data(), static_cast<uLong>(data.size()),
                  Z_DEFAULT_COMPRESSION) != Z_OK) {
        throw Error("malformed_pdf", "flate compression failed");
    }
    out.resize(bound);
    return out;
}

std::vector<uint8_t> apply_predictor_decode(std::span<const uint8_t> data, int predictor,
                                            int colors, int bits_per_component, int columns) {
    if (predictor <= 1) return {data.begin(), data.end()};

    const int bpp = std::max(1, colors * bits_per_component / 8);
    const size_t row_len = static_cast<size_t>((columns * colors * bits_per_component + 7) / 8);

    if (predictor == 2) {  // TIFF horizontal differencing, 8-bit only
        std::vector<uint8_t> out(data.begin(), data.end());
        if (bits_per_component != 8) {
            throw Error("unsupported_filter", "TIFF predictor with sub-byte samples");
        }
        for (size_t row = 0; row + row_len <= out.size(); row += row_len) {
            for (size_t i = static_cast<size_t>(bpp); i < row_len; ++i) {
                out[row + i] = static_cast<uint8_t>(out[row + i] + out[row + i - bpp]);
            }
        }
        return out;
    }

    // PNG predictors: each row prefixed with a filter-type byte.
    std::vector<uint8_t> out;
    const size_t in_row = row_len + 1;
    const size_t rows = data.size() / in_row;
    out.resize(rows * row_len, 0);

    std::vector<uint8_t> prev(row_len, 0);
    for (size_t r = 0; r < rows; ++r) {
        const uint8_t* src = data.data() + r * in_row;
        uint8_t filter = src[0];
        uint8_t* dst = out.data() + r * row_len;
        for (size_t i = 0; i < row_len; ++i) {
            int raw = src[1 + i];
            int left = i >= static_cast<size_t>(bpp) ? dst[i - bpp] : 0;
            int up = prev[i];
            int up_left = i >= static_cast<size_t>(bpp) ? prev[i - bpp] : 0;
            int value = 0;
            switch (filter) {
            case 0: value = raw; break;
            case 1: value = raw + left; break;
            case 2: value = raw + up; break;
            case 3: value = raw + (left + up) / 2; break;
            case 4: {
                int p = left + up - up_left;
                int pa = std::abs(p - left), pb = std::abs(p - up), pc = std::abs(p - up_left);
                int pred = (pa <= pb && pa <= pc) ? left : (pb <= pc ? up : up_left);
                value = raw + pred;
                break;
            }
            default:
                throw Error("malformed_pdf", "unknown PNG filter type");
            }
            dst[i] = static_cast<uint8_t>(value & 0xff);
        }
        std::memcpy(prev.data(), dst, row_len);
    }
    return out;
}

namespace {

int int_or(const Dict& dict, const std::string& key, int fallback,
           const std::function<ObjectPtr(const ObjectPtr&)>& resolve) {
    auto obj = dict_get(dict, key);
    if (!obj) return fallback;
    obj = resolve(obj);
    if (!obj || !obj->is_int()) return fallback;
    return static_cast<int>(obj->as_int());
}

} // namespace

DecodedStream decode_stream(const Stream& stream,
                            const std::function<ObjectPtr(const ObjectPtr&)>& resolve) {
    std::vector<std::string> filters;
    std::vector<ObjectPtr> parms;

    auto filter_obj = dict_get(stream.dict, "Filter");
    if (filter_obj) filter_obj = resolve(filter_obj);
    auto parms_obj = dict_get(stream.dict, "DecodeParms");
    if (!parms_obj) parms_obj = dict_get(stream.dict, "DP");
    if (parms_obj) parms_obj = resolve(parms_obj);

    if (filter_obj) {
        if (filter_obj->is_name()) {
            filters.push_back(filter_obj->as_name().value);
            parms.push_back(parms_obj);
        } else if (filter_obj->is_array()) {
            const auto& arr = filter_obj->as_array();
            for (size_t i = 0; i < arr.size(); ++i) {
                auto f = resolve(arr[i]);
                if (!f || !f->is_name()) throw Error("malformed_pdf", "bad /Filter entry");
                filters.push_back(f->as_name().value);
                ObjectPtr p;
                if (parms_obj && parms_obj->is_array() && i < parms_obj->as_array().size()) {
                    p = resolve(parms_obj->as_array()[i]);
                }
                parms.push_back(p);
            }
        } else {
            throw Error("malformed_pdf", "bad /Filter value");
        }
    }

    DecodedStream out;
    out.bytes.assign(stream.raw.begin(), stream.raw.end());
    for (size_t i = 0; i < filters.size(); ++i) {
        const std::string& f = filters[i];
        if (f == "FlateDecode" || f == "Fl") {
            out.bytes = flate_decode(out.bytes);
            if (parms[i] && parms[i]->is_dict()) {
                const Dict& d = parms[i]->as_dict();
                int predictor = int_or(d, "Predictor", 1, resolve);
                if (predictor > 1) {
                    out.bytes = apply_predictor_decode(
                        out.bytes, predictor, int_or(d, "Colors", 1, resolve),
                        int_or(d, "BitsPerComponent", 8, resolve),
                        int_or(d, "Columns", 1, resolve));
                }
            }
        } else if (f == "DCTDecode" || f == "DCT") {
            if (i + 1 != filters.size()) {
                throw Error("unsupported_filter", "DCTDecode not last in filter chain");
            }
            out.still_dct = true;
        } else {
            throw Error("unsupported_filter", "filter /" + f + " is not supported");
        }
    }
    return out;
}

} // namespace reviewkit::pdf
