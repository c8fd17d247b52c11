#include "reviewkit/pdf/raster.hpp"

#include "reviewkit/util/error.hpp"

#include <jpeglib.h>

#include <csetjmp>
#include <cstring>

namespace reviewkit::pdf {

namespace {

struct JpegErrorMgr {
    jpeg_error_mgr pub;
    std::jmp_buf jump;
};

void jpeg_error_exit(j_common_ptr cinfo) {
    auto* mgr = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
    std::longjmp(mgr->jump, 1);
}

} // namespace

Raster jpeg_decode(std::span<const uint8_t> data) {
    jpeg_decompress_struct cinfo{};
    JpegErrorMgr err{};
    cinfo.err = jpeg_std_error(&err.pub);
    err.pub.error_exit = jpeg_error_exit;
    if (setjmp(err.jump)) {
        jpeg_destroy_decompress(&cinfo);
        throw Error("malformed_pdf", "JPEG image data is corrupt");
    }

    jpeg_create_decompress(&cinfo);
    jpeg_mem_src(&cinfo, data.data(), static_cast<unsigned long>(data.size()));
    jpeg_read_header(&cinfo, TRUE);
    jpeg_start_decompress(&cinfo);

    Raster out;
    out.width = static_cast<int>(cinfo.output_width);
    out.height = static_cast<int>(cinfo.output_height);
    out.channels = cinfo.output_components;
    out.samples.resize(out.row_bytes() * out.height);

    while (cinfo.output_scanline < cinfo.output_height) {
        uint8_t* row = out.samples.data() + out.row_bytes() * cinfo.output_scanline;
        JSAMPROW rows[1] = {row};
        jpeg_read_scanlines(&cinfo, rows, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return out;
}

std::vector<uint8_t> jpeg_encode(const Raster& raster, int quality) {
    jpeg_compress_struct cinfo{};
    JpegErrorMgr err{};
    cinfo.err = jpeg_std_error(&err.pub);
    err.pub.error_exit = jpeg_error_exit;

    unsigned char* buffer = nullptr;
    unsigned long buffer_size = 0;

    if (setjmp(err.jump)) {
        jpeg_destroy_compress(&cinfo);
        if (buffer) free(buffer);
        throw Error("malformed_pdf", "JPEG encoding failed");
    }

    jpeg_create_compress(&cinfo);
    jpeg_mem_dest(&cinfo, &buffer, &buffer_size);

    cinfo.image_width = static_cast<JDIMENSION>(raster.width);
    cinfo.image_height = static_cast<JDIMENSION>(raster.height);
    cinfo.input_components = raster.channels;
    cinfo.in_color_space = raster.channels == 1   ? JCS_GRAYSCALE
                           : raster.channels == 4 ? JCS_CMYK
                                                  : JCS_RGB;
    jpeg_set_defaults(&cinfo);
    jpeg_set_quality(&cinfo, quality, TRUE);
    jpeg_start_compress(&cinfo, TRUE);

    while (cinfo.next_scanline < cinfo.image_height) {
        const uint8_t* row = raster.samples.data() + raster.row_bytes() * cinfo.next_scanline;
        JSAMPROW rows[1] = {const_cast<uint8_t*>(row)};
        jpeg_write_scanlines(&cinfo, rows, 1);
    }
    jpeg_finish_compress(&cinfo);
    jpeg_destroy_compress(&cinfo);

    std::vector<uint8_t> out(buffer, buffer + buffer_size);
    free(buffer);
    return out;
}

} // namespace reviewkit::pdf
