#include "reviewkit/curation/perturb.hpp"

#include "reviewkit/util/fs.hpp"
#include "reviewkit/util/strings.hpp"

#include <json.hpp>

#include <sstream>

namespace reviewkit::curation {

using nlohmann::json;

const char* to_string(Rejection::Reason r) {
    return r == Rejection::Reason::span_mismatch ? "span_mismatch" : "compile_failure";
}

namespace {

PerturbationProposal proposal_from(const json& item, const SubtypeRegistry& registry) {
    PerturbationProposal p;
    p.criterion = item.value("criterion", "");
    p.subtype = item.value("subtype", "");
    p.description = item.value("description", "");
    p.target_file = item.value("target_file", "");
    p.original_span = item.value("original_span", "");
    p.modified_span = item.value("modified_span", "");
    if (!item.contains("line_start") || !item.contains("line_end") ||
        !item["line_start"].is_number_integer() || !item["line_end"].is_number_integer()) {
        throw Error("malformed_proposal", "proposal omits line numbers");
    }
    p.line_start = item["line_start"].get<int>();
    p.line_end = item["line_end"].get<int>();

    if (!is_criterion(p.criterion)) {
        throw Error("malformed_proposal", "criterion '" + p.criterion + "' is not one of the five");
    }
    if (!registry.contains(p.criterion, p.subtype)) {
        throw Error("malformed_proposal",
                    "subtype '" + p.subtype + "' is not registered for " + p.criterion);
    }
    if (p.description.empty()) throw Error("malformed_proposal", "proposal without description");
    if (p.target_file.empty()) throw Error("malformed_proposal", "proposal without target file");
    if (p.original_span.empty()) throw Error("malformed_proposal", "proposal without original span");
    if (p.line_start < 1 || p.line_end < p.line_start) {
        throw Error("malformed_proposal", "bad line range");
    }
    return p;
}

} // namespace

std::vector<PerturbationProposal> parse_proposals(const std::string& text,
                                                  const SubtypeRegistry& registry) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.contains("proposals") || !doc["proposals"].is_array()) {
        throw Error("malformed_proposal", "generator output is not a proposals document");
    }
    std::vector<PerturbationProposal> out;
    for (const auto& item : doc["proposals"]) {
        out.push_back(proposal_from(item, registry));
    }
    return out;
}

std::vector<PerturbationProposal> generate_perturbations(
    const std::filesystem::path& source_tree, const std::string& criterion,
    const std::string& subtype, const SubtypeRegistry& registry,
    const gateway::Gateway& gateway, const std::string& backend_id) {
    if (!registry.contains(criterion, subtype)) {
        throw Error("invalid_argument",
                    "criterion/subtype pair " + criterion + "/" + subtype +
                        " is not in the taxonomy");
    }

    std::ostringstream sources;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(source_tree)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".tex") continue;
        auto rel = std::filesystem::relative(entry.path(), source_tree).string();
        sources << "<file name=\"" << rel << "\">\n" << fs::read_text(entry.path())
                << "\n</file>\n";
    }

    gateway::ModelRequest request;
    request.tag = "perturbation_generator";
    request.segments.push_back(
        {gateway::SegmentRole::system,
         "You design controlled edits to typeset paper sources that each inject "
         "exactly one scientific error of a named criterion and subtype. Output "
         "JSON: {\"proposals\": [{criterion, subtype, description, target_file, "
         "line_start, line_end, original_span, modified_span}]}. description "
         "must say what the error is and why a careful reviewer should catch "
         "it. original_span must reproduce the current source exactly at the "
         "cited file and line range."});
    request.segments.push_back(
        {gateway::SegmentRole::user,
         "criterion: " + criterion + "\nsubtype: " + subtype + "\n\n" + sources.str()});

    auto response = gateway.invoke(request, backend_id);
    auto proposals = parse_proposals(response.text, registry);
    return proposals;
}

std::string proposal_to_json(const PerturbationProposal& proposal) {
    json doc;
    doc["criterion"] = proposal.criterion;
    doc["subtype"] = proposal.subtype;
    doc["description"] = proposal.description;
    doc["target_file"] = proposal.target_file;
    doc["line_start"] = proposal.line_start;
    doc["line_end"] = proposal.line_end;
    doc["original_span"] = proposal.original_span;
    doc["modified_span"] = proposal.modified_span;
    return doc.dump(2) + "\n";
}

PerturbationProposal proposal_from_json(const std::string& text) {
    json doc = json::parse(text);
    return proposal_from(doc, SubtypeRegistry::with_defaults());
}

namespace {

// Splits into lines preserving count semantics: N newline-terminated
// lines plus an optional trailing fragment.
std::vector<std::string> source_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string current;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) lines.push_back(current);
    return lines;
}

} // namespace

AcceptOutcome accept_perturbation(const std::filesystem::path& pristine_tree,
                                  const PerturbationProposal& proposal,
                                  const CompileOptions& compile_options,
                                  const std::filesystem::path& out_dir,
                                  const std::string& perturbation_id,
                                  const std::string& paper_id) {
    const auto target = pristine_tree / proposal.target_file;
    if (!std::filesystem::exists(target)) {
        return Rejection{Rejection::Reason::span_mismatch,
                         "target file '" + proposal.target_file + "' does not exist"};
    }

    const std::string file_text = strings::normalize_lf(fs::read_text(target));
    auto lines = source_lines(file_text);
    const size_t start = static_cast<size_t>(proposal.line_start);
    const size_t end = static_cast<size_t>(proposal.line_end);
    if (start < 1 || end > lines.size()) {
        return Rejection{Rejection::Reason::span_mismatch,
                         "line range " + std::to_string(start) + "-" + std::to_string(end) +
                             " outside file of " + std::to_string(lines.size()) + " lines"};
    }

    std::string actual;
    for (size_t i = start; i <= end; ++i) {
        if (i > start) actual.push_back('\n');
        actual += lines[i - 1];
    }
    const std::string claimed = strings::normalize_lf(proposal.original_span);
    if (actual != claimed) {
        // Pinpoint the first differing byte for the audit trail.
        size_t at = 0;
        while (at < actual.size() && at < claimed.size() && actual[at] == claimed[at]) ++at;
        return Rejection{Rejection::Reason::span_mismatch,
                         "span differs from source at byte " + std::to_string(at) +
                             " of the claimed span"};
    }

    // Apply the edit on a copy of the pristine tree.
    const auto modified_tree = out_dir / "modified-tree";
    std::filesystem::remove_all(modified_tree);
    fs::copy_tree(pristine_tree, modified_tree);

    std::vector<std::string> new_lines;
    new_lines.reserve(lines.size());
    for (size_t i = 1; i <= lines.size(); ++i) {
        if (i == start) {
            for (const auto& repl : source_lines(strings::normalize_lf(proposal.modified_span))) {
                new_lines.push_back(repl);
            }
        }
        if (i >= start && i <= end) continue;
        new_lines.push_back(lines[i - 1]);
    }
    std::string new_text;
    for (const auto& line : new_lines) {
        new_text += line;
        new_text.push_back('\n');
    }
    fs::write_text(modified_tree / proposal.target_file, new_text);

    auto compile = verify_compiles(modified_tree, compile_options);
    if (!compile.ok) {
        std::filesystem::remove_all(modified_tree);
        return Rejection{Rejection::Reason::compile_failure,
                         compile.timed_out ? "toolchain timeout\n" + compile.log_excerpt
                                           : compile.log_excerpt};
    }

    Perturbation accepted;
    accepted.perturbation_id = perturbation_id;
    accepted.paper_id = paper_id;
    accepted.criterion = proposal.criterion;
    accepted.subtype = proposal.subtype;
    accepted.description = proposal.description;
    accepted.target_file = proposal.target_file;
    accepted.line_start = proposal.line_start;
    accepted.line_end = proposal.line_end;
    accepted.original_span = claimed;
    accepted.modified_span = strings::normalize_lf(proposal.modified_span);
    accepted.modified_tree = modified_tree;
    accepted.output_pdf = out_dir / "output.pdf";

    std::filesystem::copy_file(compile.pdf_path, accepted.output_pdf,
                               std::filesystem::copy_options::overwrite_existing);
    fs::write_text(out_dir / "proposal.json", proposal_to_json(proposal));
    return accepted;
}

} // namespace reviewkit::curation
