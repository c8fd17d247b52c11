#include "reviewkit/gateway/mock.hpp"

#include "reviewkit/util/digest.hpp"
#include "reviewkit/util/strings.hpp"

#include <json.hpp>

#include <sstream>

namespace reviewkit::gateway {

using nlohmann::json;

namespace {

std::string payload_of(const ModelRequest& request) {
    std::string all;
    for (const auto& seg : request.segments) {
        all += seg.text;
        all.push_back('\n');
    }
    return all;
}

std::string short_digest(const std::string& text) {
    return digest::sha256_hex(text).substr(0, 8);
}

std::string structured_review(const std::string& seed) {
    std::ostringstream out;
    out << "# Review " << seed << "\n\n";
    out << "## Synopsis\nThe paper under review is summarized deterministically ("
        << seed << ").\n\n";
    out << "## Summary\nOffline mock assessment; findings are synthesized.\n\n";
    out << "## Strengths\n- Clear exposition (mock finding " << seed << ")\n"
        << "- Reproducible setup\n\n";
    out << "## Weaknesses\n- Evaluation breadth is limited (mock finding)\n"
        << "- Some claims lack support\n\n";
    out << "## References\n- Doe, J. (2020). A related study. Journal of Examples.\n";
    return out.str();
}

std::string judge_response(const ModelRequest& request) {
    const std::string payload = payload_of(request);
    const std::string marker = "review under judgment:";
    std::string excerpt;
    size_t pos = payload.find(marker);
    if (pos != std::string::npos) {
        for (const auto& line : strings::split(payload.substr(pos + marker.size()), '\n')) {
            auto t = strings::trim(line);
            if (t.size() > 12) {
                excerpt = t;
                break;
            }
        }
    }
    // Stable pseudo-verdict from the payload content.
    const bool caught = !excerpt.empty() && (digest::sha256_hex(payload)[0] % 2 == 0);
    json doc;
    doc["caught"] = caught;
    doc["excerpt"] = caught ? excerpt : "";
    doc["justification"] = caught
                               ? "mock judge: the quoted passage names the injected issue"
                               : "mock judge: no passage identifies the injected issue";
    return doc.dump();
}

std::string critic_response(const ModelRequest& request) {
    const std::string payload = payload_of(request);
    json doc;
    doc["review_issues"] = json::array();
    doc["editorial_concerns"] = json::array();
    doc["auxiliary"] = {{"appears_llm_written", "unsure"},
                        {"apparent_effort", 3 + static_cast<int>(payload.size() % 3)},
                        {"overall_quality", 3}};
    return doc.dump();
}

std::string generator_response(const ModelRequest& request) {
    const std::string payload = payload_of(request);
    std::string criterion = "evaluations", subtype = "missing_baseline";
    if (auto pos = payload.find("criterion: "); pos != std::string::npos) {
        criterion = strings::trim(strings::split(payload.substr(pos + 11), '\n')[0]);
    }
    if (auto pos = payload.find("subtype: "); pos != std::string::npos) {
        subtype = strings::trim(strings::split(payload.substr(pos + 9), '\n')[0]);
    }

    json proposal;
    proposal["criterion"] = criterion;
    proposal["subtype"] = subtype;
    proposal["description"] =
        "deterministic mock edit injecting a " + criterion + "/" + subtype + " error";

    // First file block: <file name="...">\n ... \n</file>
    size_t file_pos = payload.find("<file name=\"");
    if (file_pos != std::string::npos) {
        size_t name_end = payload.find('"', file_pos + 12);
        std::string file_name = payload.substr(file_pos + 12, name_end - file_pos - 12);
        size_t body_start = payload.find('\n', name_end) + 1;
        size_t body_end = payload.find("</file>", body_start);
        std::string body = payload.substr(body_start, body_end - body_start);
        auto lines = strings::split(body, '\n');
        // A safe line: non-empty, no TeX syntax to unbalance.
        for (size_t i = 0; i < lines.size(); ++i) {
            const std::string& line = lines[i];
            if (line.size() > 8 && line.find('\\') == std::string::npos &&
                line.find('{') == std::string::npos && line.find('}') == std::string::npos &&
                line.find('%') == std::string::npos) {
                proposal["target_file"] = file_name;
                proposal["line_start"] = i + 1;
                proposal["line_end"] = i + 1;
                proposal["original_span"] = line;
                proposal["modified_span"] = line + " (deliberately weakened claim)";
                break;
            }
        }
    }
    if (!proposal.contains("target_file")) {
        proposal["target_file"] = "main.tex";
        proposal["line_start"] = 1;
        proposal["line_end"] = 1;
        proposal["original_span"] = "";
        proposal["modified_span"] = "";
    }
    json doc;
    doc["proposals"] = json::array({proposal});
    return doc.dump();
}

} // namespace

BackendOutput MockBackend::complete(const ModelRequest& request) {
    BackendOutput output;
    const std::string& tag = request.tag;

    if (tag == "initial_review" || tag == "final_review" || tag == "baseline_review") {
        output.text = structured_review(short_digest(payload_of(request)));
    } else if (tag == "judge") {
        output.text = judge_response(request);
    } else if (tag == "quality_critic") {
        output.text = critic_response(request);
    } else if (tag == "perturbation_generator") {
        output.text = generator_response(request);
    } else {
        output.text = "mock findings for stage '" + tag + "' (" +
                      short_digest(payload_of(request)) + "): no blocking issues; two "
                      "minor observations recorded.";
        if (request.tools.code_execution) {
            output.tool_traces.push_back(
                {"code_execution", "check: 2 + 2", "4", std::chrono::milliseconds(1)});
        }
        if (request.tools.web_search) {
            output.tool_traces.push_back({"web_search", "closely related published work",
                                          "3 results (mock)", std::chrono::milliseconds(1)});
        }
    }
    output.token_usage.input = estimate_request_tokens(request);
    output.token_usage.output = static_cast<int64_t>((output.text.size() + 3) / 4);
    return output;
}

} // namespace reviewkit::gateway
