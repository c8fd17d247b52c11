#pragma once

#include "reviewkit/review/citations.hpp"
#include "reviewkit/review/critic.hpp"

#include <filesystem>

namespace reviewkit::review {

struct OversightEntry {
    std::string paper_id;
    CriticFindings findings;
    CitationAudit audit;
};

struct OversightReport {
    std::string csv;   // RFC 4180, flagged rows first then paper_id ascending
    std::string json;  // structured sidecar with the same rows
    size_t flagged_count = 0;
    size_t total = 0;
};

// A row is flagged when the critic raised any issue or concern, or the
// audit found any non-valid citation.
bool is_flagged(const OversightEntry& entry);

OversightReport compile_oversight_report(std::vector<OversightEntry> entries);

void write_oversight_report(const OversightReport& report,
                            const std::filesystem::path& csv_path,
                            const std::filesystem::path& json_path);

} // namespace reviewkit::review
