#pragma once

#include "reviewkit/curation/compile_gate.hpp"
#include "reviewkit/curation/types.hpp"
#include "reviewkit/gateway/gateway.hpp"

#include <variant>

namespace reviewkit::curation {

// Parses generator output. Expected JSON:
//   {"proposals": [{"criterion": ..., "subtype": ..., "description": ...,
//     "target_file": ..., "line_start": N, "line_end": N,
//     "original_span": ..., "modified_span": ...}]}
// Error("malformed_proposal") on schema violations (missing line numbers,
// unknown criterion, empty spans...).
std::vector<PerturbationProposal> parse_proposals(const std::string& text,
                                                  const SubtypeRegistry& registry);

// Prompts the generator backend with the criterion/subtype descriptions
// and the source files, parses the proposals.
std::vector<PerturbationProposal> generate_perturbations(
    const std::filesystem::path& source_tree, const std::string& criterion,
    const std::string& subtype, const SubtypeRegistry& registry,
    const gateway::Gateway& gateway, const std::string& backend_id);

struct Rejection {
    enum class Reason { span_mismatch, compile_failure };
    Reason reason = Reason::span_mismatch;
    std::string detail;  // mismatch description or toolchain log excerpt
};

const char* to_string(Rejection::Reason r);

using AcceptOutcome = std::variant<Perturbation, Rejection>;

// Acceptance gate: (a) the proposal's original span must equal the
// pristine source at target_file:[line_start,line_end] byte-for-byte
// after LF normalization; (b) the edited tree must compile. Accepted
// perturbations are materialized under out_dir:
//   out_dir/{proposal.json, modified-tree/, output.pdf}
AcceptOutcome accept_perturbation(const std::filesystem::path& pristine_tree,
                                  const PerturbationProposal& proposal,
                                  const CompileOptions& compile_options,
                                  const std::filesystem::path& out_dir,
                                  const std::string& perturbation_id,
                                  const std::string& paper_id);

std::string proposal_to_json(const PerturbationProposal& proposal);
PerturbationProposal proposal_from_json(const std::string& text);

} // namespace reviewkit::curation
