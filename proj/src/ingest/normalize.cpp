#include "reviewkit/ingest/normalize.hpp"

#include "reviewkit/pdf/document.hpp"
#include "reviewkit/pdf/filters.hpp"
#include "reviewkit/pdf/image_scan.hpp"
#include "reviewkit/pdf/raster.hpp"
#include "reviewkit/pdf/writer.hpp"
#include "reviewkit/util/digest.hpp"
#include "reviewkit/util/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace reviewkit::ingest {

namespace {

using pdf::Dict;
using pdf::Document;
using pdf::ObjectPtr;

int channels_for_colorspace(const Document& doc, const ObjectPtr& cs_obj) {
    auto cs = doc.resolve(cs_obj);
    if (!cs) return 0;
    if (cs->is_name()) {
        const std::string& name = cs->as_name().value;
        if (name == "DeviceGray" || name == "CalGray" || name == "G") return 1;
        if (name == "DeviceRGB" || name == "CalRGB" || name == "RGB") return 3;
        if (name == "DeviceCMYK" || name == "CMYK") return 4;
        return 0;
    }
    if (cs->is_array() && !cs->as_array().empty()) {
        auto head = doc.resolve(cs->as_array()[0]);
        if (head && head->is_name() && head->as_name().value == "ICCBased" &&
            cs->as_array().size() > 1) {
            auto profile = doc.resolve(cs->as_array()[1]);
            if (profile && profile->is_stream()) {
                auto n = doc.resolve(pdf::dict_get(profile->as_stream().dict, "N"));
                if (n && n->is_int()) return static_cast<int>(n->as_int());
            }
        }
    }
    return 0;
}

struct ImageGeometry {
    double display_width_pt = 0.0;   // placement with the highest density
    double display_height_pt = 0.0;
    std::string name;
};

// Decodes, resamples and re-encodes one image object in place.
// `scale` maps old pixel dims to new ones.
void resample_image_object(const Document& doc, pdf::Stream& stream, int new_w, int new_h) {
    const Dict& dict = stream.dict;
    auto resolve_cb = [&](const ObjectPtr& o) { return doc.resolve(o); };

    auto bpc_obj = doc.resolve(pdf::dict_get(dict, "BitsPerComponent"));
    const int bpc = bpc_obj && bpc_obj->is_int() ? static_cast<int>(bpc_obj->as_int()) : 8;

    auto w_obj = doc.resolve(pdf::dict_get(dict, "Width"));
    auto h_obj = doc.resolve(pdf::dict_get(dict, "Height"));
    if (!w_obj || !h_obj || !w_obj->is_int() || !h_obj->is_int()) {
        throw Error("malformed_pdf", "image without dimensions");
    }
    const int old_w = static_cast<int>(w_obj->as_int());
    const int old_h = static_cast<int>(h_obj->as_int());

    pdf::DecodedStream decoded;
    try {
        decoded = pdf::decode_stream(stream, resolve_cb);
    } catch (const Error& e) {
        if (e.code() == "unsupported_filter") {
            throw Error("malformed_pdf",
                        std::string("image uses an unsupported filter: ") + e.what());
        }
        throw;
    }

    pdf::Raster raster;
    bool was_dct = decoded.still_dct;
    if (was_dct) {
        raster = pdf::jpeg_decode(decoded.bytes);
    } else {
        if (bpc != 8) {
            throw Error("malformed_pdf", "only 8-bit raster images are supported");
        }
        int channels = channels_for_colorspace(doc, pdf::dict_get(dict, "ColorSpace"));
        if (channels == 0) {
            throw Error("malformed_pdf", "image color space is not supported");
        }
        raster.width = old_w;
        raster.height = old_h;
        raster.channels = channels;
        const size_t expected = static_cast<size_t>(old_w) * old_h * channels;
        if (decoded.bytes.size() < expected) {
            throw Error("malformed_pdf", "image data shorter than its dimensions");
        }
        decoded.bytes.resize(expected);
        raster.samples = std::move(decoded.bytes);
    }

    pdf::Raster resampled = pdf::resample(raster, new_w, new_h);

    Dict& mutable_dict = stream.dict;
    mutable_dict["Width"] = pdf::make_int(new_w);
    mutable_dict["Height"] = pdf::make_int(new_h);
    mutable_dict.erase("DecodeParms");
    mutable_dict.erase("DP");
    if (was_dct) {
        stream.raw = pdf::jpeg_encode(resampled);
        mutable_dict["Filter"] = pdf::make_name("DCTDecode");
    } else {
        stream.raw = pdf::flate_encode(resampled.samples);
        mutable_dict["Filter"] = pdf::make_name("FlateDecode");
        mutable_dict["BitsPerComponent"] = pdf::make_int(8);
    }
    mutable_dict["Length"] = pdf::make_int(static_cast<int64_t>(stream.raw.size()));
}

} // namespace

NormalizedPdf normalize_pdf(std::span<const uint8_t> raw_pdf, int target_dpi,
                            std::string paper_id) {
    if (target_dpi <= 0) {
        throw Error("invalid_argument", "target dpi must be positive");
    }

    NormalizedPdf out;
    out.source_hash = digest::sha256_hex(raw_pdf.data(), raw_pdf.size());
    out.paper_id = paper_id.empty() ? out.source_hash.substr(0, 12) : std::move(paper_id);
    out.image_dpi = target_dpi;

    Document doc = Document::parse(raw_pdf);
    const std::vector<int> pages = doc.page_object_numbers();

    // Highest-density placement per image object across the document.
    std::map<int, ImageGeometry> geometry;
    std::map<int, std::vector<pdf::ImagePlacement>> per_page;
    for (size_t i = 0; i < pages.size(); ++i) {
        auto placements = pdf::scan_image_placements(doc, pages[i]);
        for (const auto& p : placements) {
            if (p.object_number <= 0 || p.display_width_pt <= 0 || p.display_height_pt <= 0) {
                continue;
            }
            auto& geo = geometry[p.object_number];
            if (geo.display_width_pt == 0 || p.display_width_pt < geo.display_width_pt) {
                geo.display_width_pt = p.display_width_pt;
                geo.display_height_pt = p.display_height_pt;
                geo.name = p.name;
            }
        }
        per_page[pages[i]] = std::move(placements);
    }

    // Resample every placed image whose pixel dims differ from the target.
    std::map<int, bool> touched;
    for (auto& [obj_num, geo] : geometry) {
        auto obj = doc.object(obj_num);
        if (!obj || !obj->is_stream()) continue;
        pdf::Stream& stream = obj->as_stream();

        const int new_w = std::max(
            1, static_cast<int>(std::lround(geo.display_width_pt / 72.0 * target_dpi)));
        const int new_h = std::max(
            1, static_cast<int>(std::lround(geo.display_height_pt / 72.0 * target_dpi)));

        auto w_obj = doc.resolve(pdf::dict_get(stream.dict, "Width"));
        auto h_obj = doc.resolve(pdf::dict_get(stream.dict, "Height"));
        if (!w_obj || !h_obj || !w_obj->is_int() || !h_obj->is_int()) continue;
        const int old_w = static_cast<int>(w_obj->as_int());
        const int old_h = static_cast<int>(h_obj->as_int());

        if (old_w == new_w && old_h == new_h) continue;
        resample_image_object(doc, stream, new_w, new_h);
        touched[obj_num] = true;

        // Keep any soft mask aligned with its base image.
        if (auto smask = doc.resolve(pdf::dict_get(stream.dict, "SMask"));
            smask && smask->is_stream()) {
            resample_image_object(doc, smask->as_stream(), new_w, new_h);
        }
    }

    out.bytes = pdf::write_document(doc);
    out.byte_size = out.bytes.size();

    // Page metadata from the mutated document.
    for (size_t i = 0; i < pages.size(); ++i) {
        PageInfo info;
        info.index = static_cast<int>(i);
        auto content = doc.page_content(pages[i]);
        info.content_digest = digest::sha256_hex(content.data(), content.size());
        for (const auto& p : per_page[pages[i]]) {
            auto obj = doc.object(p.object_number);
            if (!obj || !obj->is_stream()) continue;
            const Dict& dict = obj->as_stream().dict;
            ImageInfo img;
            img.object_number = p.object_number;
            img.name = p.name;
            auto w = doc.resolve(pdf::dict_get(dict, "Width"));
            auto h = doc.resolve(pdf::dict_get(dict, "Height"));
            img.width_px = w && w->is_int() ? static_cast<int>(w->as_int()) : 0;
            img.height_px = h && h->is_int() ? static_cast<int>(h->as_int()) : 0;
            img.display_width_pt = p.display_width_pt;
            img.display_height_pt = p.display_height_pt;
            if (p.display_width_pt > 0) img.dpi_x = img.width_px * 72.0 / p.display_width_pt;
            if (p.display_height_pt > 0) img.dpi_y = img.height_px * 72.0 / p.display_height_pt;
            img.resampled = touched.count(p.object_number) > 0;
            info.images.push_back(std::move(img));
        }
        out.pages.push_back(std::move(info));
    }
    return out;
}

} // namespace reviewkit::ingest
