#include "reviewkit/engine/batch.hpp"
#include "reviewkit/eval/mcnemar.hpp"
#include "reviewkit/gateway/retry.hpp"
#include "reviewkit/ingest/normalize.hpp"
#include "reviewkit/review/citations.hpp"
#include "reviewkit/review/review.hpp"
#include "reviewkit/survey/likert.hpp"
#include "reviewkit/survey/mann_whitney.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace reviewkit;

namespace {

review::StructureReport validate_structure_py(const std::string& body) {
    return review::validate_structure(body);
}

py::dict audit_citations_py(const std::vector<std::string>& references,
                            const std::vector<py::dict>& index, double unsure_threshold) {
    std::vector<review::BibEntry> entries;
    for (const auto& item : index) {
        review::BibEntry e;
        e.authors = item.contains("authors") ? item["authors"].cast<std::string>() : "";
        e.title = item.contains("title") ? item["title"].cast<std::string>() : "";
        e.venue = item.contains("venue") ? item["venue"].cast<std::string>() : "";
        e.year = item.contains("year") ? item["year"].cast<int>() : 0;
        entries.push_back(std::move(e));
    }
    review::OfflineIndexResolver resolver(std::move(entries));
    review::Review r;
    r.sections.references = references;
    review::AuditOptions options;
    options.unsure_threshold = unsure_threshold;
    auto audit = review::audit_citations(r, resolver, options);

    py::dict out;
    out["valid"] = audit.count(review::Verdict::valid);
    out["unsure"] = audit.count(review::Verdict::unsure);
    out["fake"] = audit.count(review::Verdict::fake);
    py::list records;
    for (const auto& c : audit.citations) {
        py::dict rec;
        rec["raw"] = c.raw;
        rec["verdict"] = std::string(review::to_string(c.verdict));
        rec["evidence"] = c.evidence;
        records.append(std::move(rec));
    }
    out["citations"] = std::move(records);
    return out;
}

py::dict normalize_pdf_py(py::bytes raw, int target_dpi, const std::string& paper_id) {
    std::string buffer = raw;
    auto normalized = ingest::normalize_pdf(
        {reinterpret_cast<const uint8_t*>(buffer.data()), buffer.size()}, target_dpi,
        paper_id);
    py::dict out;
    out["paper_id"] = normalized.paper_id;
    out["page_count"] = normalized.page_count();
    out["image_dpi"] = normalized.image_dpi;
    out["source_hash"] = normalized.source_hash;
    out["byte_size"] = normalized.byte_size;
    out["bytes"] = py::bytes(reinterpret_cast<const char*>(normalized.bytes.data()),
                             normalized.bytes.size());
    py::list images;
    for (const auto& page : normalized.pages) {
        for (const auto& img : page.images) {
            py::dict rec;
            rec["page"] = page.index;
            rec["width_px"] = img.width_px;
            rec["height_px"] = img.height_px;
            rec["dpi_x"] = img.dpi_x;
            rec["dpi_y"] = img.dpi_y;
            rec["resampled"] = img.resampled;
            images.append(std::move(rec));
        }
    }
    out["images"] = std::move(images);
    return out;
}

survey::ResponseSet make_set(const std::vector<int>& values) {
    survey::ResponseSet r;
    r.item_id = "py";
    r.values = values;
    survey::validate(r);
    return r;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "core operations of the staged-review and perturbation-benchmark harness";

    py::register_exception<Error>(m, "ReviewkitError");

    // structure validation -------------------------------------------------
    py::class_<review::StructureReport>(m, "StructureReport")
        .def_property_readonly("valid", &review::StructureReport::valid)
        .def_property_readonly("missing",
                               [](const review::StructureReport& r) {
                                   std::vector<std::string> out;
                                   for (auto e : r.missing) out.emplace_back(review::to_string(e));
                                   return out;
                               })
        .def("__repr__", [](const review::StructureReport& r) {
            return "<StructureReport missing=" + std::to_string(r.missing.size()) + ">";
        });
    m.def("validate_structure", &validate_structure_py, py::arg("body"),
          "Check a review body for the six required structural elements.");

    // statistics -----------------------------------------------------------
    py::class_<eval::McNemarResult>(m, "McNemarResult")
        .def_readonly("b", &eval::McNemarResult::b)
        .def_readonly("c", &eval::McNemarResult::c)
        .def_readonly("p_value", &eval::McNemarResult::p_value);
    m.def(
        "mcnemar_exact",
        [](size_t b, size_t c) { return eval::mcnemar_from_counts(b, c); },
        py::arg("b"), py::arg("c"),
        "Two-sided exact McNemar p from discordant-pair counts.");

    py::class_<survey::MannWhitneyResult>(m, "MannWhitneyResult")
        .def_readonly("u", &survey::MannWhitneyResult::u)
        .def_readonly("p_two_sided", &survey::MannWhitneyResult::p_two_sided)
        .def_readonly("exact", &survey::MannWhitneyResult::exact);
    m.def(
        "mann_whitney_u",
        [](const std::vector<int>& a, const std::vector<int>& b, const std::string& method) {
            survey::MwMethod mode = survey::MwMethod::automatic;
            if (method == "exact") mode = survey::MwMethod::exact;
            else if (method == "approx") mode = survey::MwMethod::normal_approx;
            return survey::mann_whitney_u(a, b, mode);
        },
        py::arg("a"), py::arg("b"), py::arg("method") = "auto",
        "Two-sided Mann-Whitney U with midrank tie handling.");

    m.def(
        "likert_mean",
        [](const std::vector<int>& values) { return survey::mean(make_set(values)).to_double(); },
        py::arg("values"));
    m.def(
        "likert_mean_exact",
        [](const std::vector<int>& values) {
            auto r = survey::mean(make_set(values));
            return py::make_tuple(r.num(), r.den());
        },
        py::arg("values"), "Exact mean as a (numerator, denominator) pair.");
    m.def(
        "pooled_mean",
        [](const std::vector<std::vector<int>>& groups) {
            std::vector<survey::ResponseSet> sets;
            for (const auto& g : groups) sets.push_back(make_set(g));
            return survey::pooled_mean(sets).to_double();
        },
        py::arg("groups"), "Size-weighted pooled mean over response groups.");
    m.def(
        "agreement_fractions",
        [](const std::vector<int>& values) {
            auto f = survey::agreement_fractions(make_set(values));
            return py::make_tuple(f.agree.to_double(), f.disagree.to_double(),
                                  f.neutral.to_double());
        },
        py::arg("values"), "(agree, disagree, neutral) fractions of a Likert collection.");

    // rollout / retry arithmetic --------------------------------------------
    m.def("initial_batch_size", &engine::initial_batch_size, py::arg("n"), py::arg("fraction"),
          "floor(fraction * n), the size of the gated initial rollout.");
    m.def(
        "planned_retry_delays_ms",
        [](int max_retries, int64_t base_ms, double factor) {
            gateway::RetryPolicy policy;
            policy.max_retries = max_retries;
            policy.base_delay = std::chrono::milliseconds(base_ms);
            policy.factor = factor;
            std::vector<int64_t> out;
            for (auto d : policy.planned_delays()) out.push_back(d.count());
            return out;
        },
        py::arg("max_retries") = 5, py::arg("base_ms") = 1000, py::arg("factor") = 2.0);

    // citations / ingest ------------------------------------------------------
    m.def("audit_citations", &audit_citations_py, py::arg("references"), py::arg("index"),
          py::arg("unsure_threshold") = 0.8,
          "Resolve citation strings against a bibliographic index.");
    m.def("normalize_pdf", &normalize_pdf_py, py::arg("raw_pdf"), py::arg("target_dpi") = 250,
          py::arg("paper_id") = "",
          "Resample every placed raster image to the target density.");

    m.attr("__version__") = "0.1.0";
}
