#include "reviewkit/review/oversight.hpp"

#include "reviewkit/util/csv.hpp"
#include "reviewkit/util/fs.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace reviewkit::review {

using nlohmann::json;

bool is_flagged(const OversightEntry& entry) {
    if (!entry.findings.review_issues.empty()) return true;
    if (!entry.findings.editorial_concerns.empty()) return true;
    if (entry.audit.count(Verdict::fake) > 0) return true;
    if (entry.audit.count(Verdict::unsure) > 0) return true;
    return false;
}

OversightReport compile_oversight_report(std::vector<OversightEntry> entries) {
    std::stable_sort(entries.begin(), entries.end(),
                     [](const OversightEntry& a, const OversightEntry& b) {
                         bool fa = is_flagged(a), fb = is_flagged(b);
                         if (fa != fb) return fa;  // flagged rows lead
                         return a.paper_id < b.paper_id;
                     });

    OversightReport report;
    report.total = entries.size();

    std::ostringstream csv_out;
    std::vector<std::string> header = {"paper_id", "flagged"};
    for (auto issue : {ReviewIssue::identity_reveal, ReviewIssue::offensive_content,
                       ReviewIssue::bias_concern, ReviewIssue::missing_structure}) {
        header.push_back(to_string(issue));
    }
    for (auto concern :
         {EditorialConcern::ethical_concern, EditorialConcern::author_identity_in_paper,
          EditorialConcern::policy_violation}) {
        header.push_back(to_string(concern));
    }
    header.insert(header.end(), {"appears_llm_written", "apparent_effort", "overall_quality",
                                 "citations_valid", "citations_unsure", "citations_fake",
                                 "rationales"});
    csv::write_row(csv_out, header);

    json rows = json::array();
    for (const auto& entry : entries) {
        const bool flagged = is_flagged(entry);
        if (flagged) ++report.flagged_count;

        std::vector<std::string> row;
        row.push_back(entry.paper_id);
        row.push_back(flagged ? "1" : "0");
        for (auto issue : {ReviewIssue::identity_reveal, ReviewIssue::offensive_content,
                           ReviewIssue::bias_concern, ReviewIssue::missing_structure}) {
            row.push_back(entry.findings.review_issues.count(issue) ? "1" : "0");
        }
        for (auto concern :
             {EditorialConcern::ethical_concern, EditorialConcern::author_identity_in_paper,
              EditorialConcern::policy_violation}) {
            row.push_back(entry.findings.editorial_concerns.count(concern) ? "1" : "0");
        }
        row.push_back(to_string(entry.findings.appears_llm_written));
        row.push_back(std::to_string(entry.findings.apparent_effort));
        row.push_back(std::to_string(entry.findings.overall_quality));
        row.push_back(std::to_string(entry.audit.count(Verdict::valid)));
        row.push_back(std::to_string(entry.audit.count(Verdict::unsure)));
        row.push_back(std::to_string(entry.audit.count(Verdict::fake)));

        std::string rationale_blob;
        for (const auto& [name, rationale] : entry.findings.rationales) {
            if (!rationale_blob.empty()) rationale_blob += "; ";
            rationale_blob += name + ": " + rationale;
        }
        row.push_back(rationale_blob);
        csv::write_row(csv_out, row);

        json jrow;
        jrow["paper_id"] = entry.paper_id;
        jrow["flagged"] = flagged;
        jrow["review_issues"] = json::array();
        for (auto issue : entry.findings.review_issues) {
            jrow["review_issues"].push_back(to_string(issue));
        }
        jrow["editorial_concerns"] = json::array();
        for (auto concern : entry.findings.editorial_concerns) {
            jrow["editorial_concerns"].push_back(to_string(concern));
        }
        jrow["auxiliary"] = {{"appears_llm_written", to_string(entry.findings.appears_llm_written)},
                             {"apparent_effort", entry.findings.apparent_effort},
                             {"overall_quality", entry.findings.overall_quality}};
        jrow["rationales"] = entry.findings.rationales;
        jrow["citations"] = {{"valid", entry.audit.count(Verdict::valid)},
                             {"unsure", entry.audit.count(Verdict::unsure)},
                             {"fake", entry.audit.count(Verdict::fake)}};
        json cited = json::array();
        for (const auto& c : entry.audit.citations) {
            cited.push_back({{"raw", c.raw},
                             {"verdict", to_string(c.verdict)},
                             {"evidence", c.evidence}});
        }
        jrow["citation_records"] = std::move(cited);
        rows.push_back(std::move(jrow));
    }

    json sidecar;
    sidecar["total"] = report.total;
    sidecar["flagged"] = report.flagged_count;
    sidecar["rows"] = std::move(rows);

    report.csv = csv_out.str();
    report.json = sidecar.dump(2) + "\n";
    return report;
}

void write_oversight_report(const OversightReport& report,
                            const std::filesystem::path& csv_path,
                            const std::filesystem::path& json_path) {
    fs::write_text(csv_path, report.csv);
    fs::write_text(json_path, report.json);
}

} // namespace reviewkit::review
