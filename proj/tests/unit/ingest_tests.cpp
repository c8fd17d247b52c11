#include <doctest.h>

#include "reviewkit/ingest/bundle.hpp"
#include "reviewkit/pdf/document.hpp"
#include "reviewkit/ingest/normalize.hpp"
#include "reviewkit/ingest/ocr.hpp"
#include "reviewkit/util/error.hpp"
#include "reviewkit/util/fs.hpp"

#include "support/pdf_fixtures.hpp"

#include <cmath>
#include <filesystem>
#include <random>

using namespace reviewkit;
using namespace reviewkit::ingest;

namespace {

std::span<const uint8_t> as_bytes(const std::string& s) {
    return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

std::string as_string(const std::vector<uint8_t>& v) {
    return {v.begin(), v.end()};
}

} // namespace

TEST_CASE("normalize downsamples a 600-dpi image to the 250-dpi target") {
    // 600x600 px drawn over 72x72 pt (1 inch): 600 dpi.
    const std::string input = fixtures::pdf_with_image(600, 600, 72.0, 72.0);
    auto norm = normalize_pdf(as_bytes(input), 250, "p1");

    REQUIRE(norm.pages.size() == 1);
    REQUIRE(norm.pages[0].images.size() == 1);
    const auto& img = norm.pages[0].images[0];
    CHECK(img.resampled);
    CHECK(img.width_px == 250);
    CHECK(img.height_px == 250);
    CHECK(std::lround(img.dpi_x) == 250);
    CHECK(std::lround(img.dpi_y) == 250);
    CHECK(norm.image_dpi == 250);

    // Independent byte-level inspection of the serialized output.
    auto inspected = fixtures::inspect_images(as_string(norm.bytes));
    REQUIRE(inspected.size() == 1);
    CHECK(inspected[0].width == 250);
    CHECK(inspected[0].height == 250);
}

TEST_CASE("normalize upsamples a 100-dpi image, scaling dimensions by 2.5x") {
    // 100x80 px over 72x57.6 pt: 100 dpi on both axes.
    const std::string input = fixtures::pdf_with_image(100, 80, 72.0, 57.6);
    auto norm = normalize_pdf(as_bytes(input), 250, "p2");

    REQUIRE(norm.pages[0].images.size() == 1);
    const auto& img = norm.pages[0].images[0];
    CHECK(img.width_px == 250);   // 100 * 2.5
    CHECK(img.height_px == 200);  // 80 * 2.5
    CHECK(std::lround(img.dpi_x) == 250);

    auto inspected = fixtures::inspect_images(as_string(norm.bytes));
    REQUIRE(inspected.size() == 1);
    CHECK(inspected[0].width == 250);
    CHECK(inspected[0].height == 200);
}

TEST_CASE("normalize leaves image-free pages byte-identical in content") {
    const std::string input = fixtures::pdf_without_images(2);
    auto norm = normalize_pdf(as_bytes(input), 250, "p3");

    CHECK(norm.pages.size() == 2);
    CHECK(norm.image_dpi == 250);
    // The exact content stream bytes must survive re-serialization.
    const std::string out = as_string(norm.bytes);
    CHECK(out.find("q 0.9 0 0 0.9 30 30 cm 0 0 m 100 100 l S Q") != std::string::npos);
    CHECK(out.find("q 0.9 0 0 0.9 30 30 cm 0 0 m 100 101 l S Q") != std::string::npos);
    CHECK(fixtures::count_pages_by_scan(out) == 2);
}

TEST_CASE("normalize is idempotent on image metadata") {
    const std::string input = fixtures::pdf_with_image(600, 400, 144.0, 96.0);
    auto first = normalize_pdf(as_bytes(input), 250, "p4");
    auto second = normalize_pdf(first.bytes, 250, "p4");

    REQUIRE(first.pages.size() == second.pages.size());
    REQUIRE(first.pages[0].images.size() == second.pages[0].images.size());
    const auto& a = first.pages[0].images[0];
    const auto& b = second.pages[0].images[0];
    CHECK(a.width_px == b.width_px);
    CHECK(a.height_px == b.height_px);
    CHECK_FALSE(b.resampled);  // second pass finds nothing to change
    CHECK(first.pages[0].content_digest == second.pages[0].content_digest);
}

TEST_CASE("normalize preserves page count") {
    for (int pages : {1, 2, 5}) {
        const std::string input = fixtures::pdf_without_images(pages);
        auto norm = normalize_pdf(as_bytes(input), 250, "p");
        CHECK(norm.pages.size() == static_cast<size_t>(pages));
        CHECK(fixtures::count_pages_by_scan(as_string(norm.bytes)) ==
              static_cast<size_t>(pages));
    }
}

TEST_CASE("normalize is deterministic and source_hash is stable") {
    const std::string input = fixtures::pdf_with_image(300, 300, 72.0, 72.0);
    auto a = normalize_pdf(as_bytes(input), 250, "px");
    auto b = normalize_pdf(as_bytes(input), 250, "px");
    CHECK(a.source_hash == b.source_hash);
    CHECK(a.bytes == b.bytes);
    CHECK(a.byte_size == b.bytes.size());
}

TEST_CASE("normalize rejects junk, encrypted input and bad dpi") {
    const std::string junk = "this is not a pdf at all";
    try {
        (void)normalize_pdf(as_bytes(junk), 250);
        FAIL("expected malformed_pdf");
    } catch (const Error& e) {
        CHECK(e.code() == "malformed_pdf");
    }

    const std::string enc = fixtures::pdf_encrypted();
    try {
        (void)normalize_pdf(as_bytes(enc), 250);
        FAIL("expected encrypted_pdf");
    } catch (const Error& e) {
        CHECK(e.code() == "encrypted_pdf");
    }

    const std::string ok = fixtures::pdf_without_images(1);
    try {
        (void)normalize_pdf(as_bytes(ok), 0);
        FAIL("expected invalid_argument");
    } catch (const Error& e) {
        CHECK(e.code() == "invalid_argument");
    }
}

TEST_CASE("fixture OCR passes scripted markdown through verbatim") {
    const std::string input = fixtures::pdf_without_images(2);
    auto norm = normalize_pdf(as_bytes(input), 250, "paper-eq");

    const std::string scripted =
        "<!-- page 0 -->\n# A Two Page Paper\n\n"
        "The key identity is\n\n$$E = mc^2$$\n\n"
        "<!-- page 1 -->\n| a | b |\n|---|---|\n| 1 | 2 |\n| 3 | 4 |\n| 5 | 6 |\n";
    FixtureOcr ocr({{"paper-eq", scripted}});
    auto md = convert_to_markdown(norm, ocr);

    CHECK(md.text == scripted);  // pass-through fidelity
    CHECK(md.text.find("$$E = mc^2$$") != std::string::npos);
    REQUIRE(md.page_anchors.size() == 2);
    CHECK(md.page_anchors[0].second < md.page_anchors[1].second);
    CHECK(md.ocr_engine_id == ocr.engine_id());

    SUBCASE("3x2 table rows survive") {
        size_t rows = 0;
        size_t pos = 0;
        while ((pos = md.text.find("|\n", pos)) != std::string::npos) {
            ++rows;
            ++pos;
        }
        CHECK(rows == 5);  // header + separator + 3 data rows
    }

    SUBCASE("deterministic for fixed input") {
        auto again = convert_to_markdown(norm, ocr);
        CHECK(again.text == md.text);
        CHECK(again.page_anchors == md.page_anchors);
    }
}

TEST_CASE("convert_to_markdown rejects zero-page input") {
    const std::string input = fixtures::pdf_zero_pages();
    auto norm = normalize_pdf(as_bytes(input), 250, "empty");
    CHECK(norm.pages.empty());
    FixtureOcr ocr;
    try {
        (void)convert_to_markdown(norm, ocr);
        FAIL("expected empty_document");
    } catch (const Error& e) {
        CHECK(e.code() == "empty_document");
    }
}

TEST_CASE("bundle construction guards ids and round-trips through disk") {
    const std::string input = fixtures::pdf_without_images(1);
    auto norm = normalize_pdf(as_bytes(input), 250, "bundle-1");
    FixtureOcr ocr;
    auto md = convert_to_markdown(norm, ocr);

    auto bundle = build_bundle(norm, md, {"A Title", "VenueX", "Track Y"});
    CHECK(bundle.paper_id == "bundle-1");
    CHECK_FALSE(bundle.degraded);

    MarkdownDoc wrong = md;
    wrong.paper_id = "other";
    try {
        (void)build_bundle(norm, wrong);
        FAIL("expected id_mismatch");
    } catch (const Error& e) {
        CHECK(e.code() == "id_mismatch");
    }

    auto dir = std::filesystem::temp_directory_path() / "rk_bundle_test";
    std::filesystem::remove_all(dir);
    write_bundle_dir(bundle, dir);
    auto loaded = load_bundle_dir(dir);
    CHECK(loaded.paper_id == bundle.paper_id);
    CHECK(loaded.pdf.bytes == bundle.pdf.bytes);
    CHECK(loaded.markdown.text == bundle.markdown.text);
    CHECK(loaded.markdown.page_anchors == bundle.markdown.page_anchors);
    CHECK(loaded.pdf.image_dpi == bundle.pdf.image_dpi);
    CHECK(loaded.metadata.title == "A Title");
    // Serialize the loaded bundle again: bit-identical manifest.
    auto dir2 = std::filesystem::temp_directory_path() / "rk_bundle_test2";
    std::filesystem::remove_all(dir2);
    write_bundle_dir(loaded, dir2);
    CHECK(reviewkit::fs::read_text(dir / "bundle.json") ==
          reviewkit::fs::read_text(dir2 / "bundle.json"));
    std::filesystem::remove_all(dir);
    std::filesystem::remove_all(dir2);
}

TEST_CASE("ingest degrades to a pdf-only bundle when OCR is unreachable") {
    struct DownOcr final : OcrBackend {
        MarkdownDoc run(const NormalizedPdf&) override {
            throw Error("ocr_unavailable", "endpoint down");
        }
        std::string engine_id() const override { return "down"; }
    };

    const std::string input = fixtures::pdf_without_images(1);
    DownOcr ocr;
    auto bundle = ingest_pdf(as_bytes(input), ocr, {}, "degraded-1");
    CHECK(bundle.degraded);
    CHECK(bundle.markdown.text.find("markdown unavailable") != std::string::npos);
    CHECK(bundle.pdf.paper_id == "degraded-1");
}

TEST_CASE("parser handles xref streams and object streams") {
    const std::string input = fixtures::pdf_with_xref_stream();
    auto doc = reviewkit::pdf::Document::parse(as_bytes(input));
    auto pages = doc.page_object_numbers();
    REQUIRE(pages.size() == 1);
    auto content = doc.page_content(pages[0]);
    std::string text(content.begin(), content.end());
    CHECK(text.find("0 0 m 50 50 l S") != std::string::npos);

    SUBCASE("normalize reserializes it as a classic-xref document") {
        auto norm = normalize_pdf(as_bytes(input), 250, "modern");
        CHECK(norm.pages.size() == 1);
        const std::string out = as_string(norm.bytes);
        CHECK(out.find("/Type /ObjStm") == std::string::npos);
        CHECK(out.find("/Type /XRef") == std::string::npos);
        CHECK(out.find("xref\n") != std::string::npos);
        // And the output parses again.
        auto reparsed = reviewkit::pdf::Document::parse(norm.bytes);
        CHECK(reparsed.page_object_numbers().size() == 1);
    }
}

TEST_CASE("parser falls back to a linear scan when the xref is broken") {
    const std::string input = fixtures::pdf_with_broken_xref();
    auto doc = reviewkit::pdf::Document::parse(as_bytes(input));
    CHECK(doc.page_object_numbers().size() == 2);

    auto norm = normalize_pdf(as_bytes(input), 250, "rescued");
    CHECK(norm.pages.size() == 2);
}

TEST_CASE("writer output is stable under reparse") {
    const std::string input = fixtures::pdf_with_image(120, 90, 72.0, 54.0);
    auto first = normalize_pdf(as_bytes(input), 250, "stable");
    auto second = normalize_pdf(first.bytes, 250, "stable");
    // A second normalization of already-normalized bytes is a fixed point.
    auto third = normalize_pdf(second.bytes, 250, "stable");
    CHECK(second.bytes == third.bytes);
}

TEST_CASE("parser survives random garbage without crashing") {
    std::mt19937_64 rng(0xfeedface);
    for (int trial = 0; trial < 150; ++trial) {
        std::string junk = "%PDF-1.4\n";  // plausible header, then noise
        size_t n = 16 + rng() % 4096;
        for (size_t i = 0; i < n; ++i) junk.push_back(static_cast<char>(rng() & 0xff));
        try {
            (void)normalize_pdf(as_bytes(junk), 250, "junk");
        } catch (const Error& e) {
            CHECK((e.code() == "malformed_pdf" || e.code() == "encrypted_pdf"));
        }
    }

    // Truncations of a valid document must also fail cleanly, not crash.
    const std::string valid = fixtures::pdf_with_image(60, 60, 72.0, 72.0);
    for (size_t cut = 8; cut < valid.size(); cut += 97) {
        try {
            (void)normalize_pdf(as_bytes(valid.substr(0, cut)), 250, "cut");
        } catch (const Error& e) {
            CHECK((e.code() == "malformed_pdf" || e.code() == "encrypted_pdf"));
        }
    }
}
