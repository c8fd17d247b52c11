#include "reviewkit/review/review.hpp"

#include "reviewkit/util/strings.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace reviewkit::review {

const char* to_string(Element e) {
    switch (e) {
    case Element::title: return "title";
    case Element::synopsis: return "synopsis";
    case Element::summary: return "summary";
    case Element::strengths: return "strengths";
    case Element::weaknesses: return "weaknesses";
    case Element::references: return "references";
    }
    return "?";
}

namespace {

const std::map<Element, std::vector<std::string>>& heading_synonyms() {
    static const std::map<Element, std::vector<std::string>> table = {
        {Element::synopsis, {"synopsis", "paper synopsis", "brief synopsis"}},
        {Element::summary, {"summary", "review summary", "summary of the review"}},
        {Element::strengths, {"strengths", "strength"}},
        {Element::weaknesses, {"weaknesses", "weakness", "concerns", "limitations"}},
        {Element::references, {"references", "citations", "bibliography"}},
    };
    return table;
}

struct Line {
    size_t begin = 0;
    size_t end = 0;  // exclusive, without the newline
    std::string text;
};

std::vector<Line> split_lines(const std::string& body) {
    std::vector<Line> lines;
    size_t pos = 0;
    while (pos <= body.size()) {
        size_t nl = body.find('\n', pos);
        size_t end = nl == std::string::npos ? body.size() : nl;
        lines.push_back({pos, end, body.substr(pos, end - pos)});
        if (nl == std::string::npos) break;
        pos = nl + 1;
    }
    return lines;
}

// Extracts the heading text when the line is a heading, in any of the
// three accepted shapes: "#... text", "**text**", "text:".
std::optional<std::string> heading_text(const std::string& line) {
    std::string t = strings::trim(line);
    if (t.empty()) return std::nullopt;
    if (t[0] == '#') {
        size_t i = 0;
        while (i < t.size() && t[i] == '#') ++i;
        if (i < t.size() && t[i] == ' ') return strings::trim(t.substr(i));
        return std::nullopt;
    }
    if (t.size() > 4 && t.rfind("**", 0) == 0 && t.substr(t.size() - 2) == "**") {
        std::string inner = strings::trim(t.substr(2, t.size() - 4));
        if (!inner.empty() && inner.back() == ':') inner.pop_back();
        return strings::trim(inner);
    }
    if (t.back() == ':' && t.size() <= 48) {
        return strings::trim(t.substr(0, t.size() - 1));
    }
    return std::nullopt;
}

std::optional<Element> classify_heading(const std::string& heading) {
    const std::string key = strings::to_lower(strings::trim(heading));
    for (const auto& [element, names] : heading_synonyms()) {
        for (const auto& name : names) {
            if (key == name) return element;
        }
    }
    return std::nullopt;
}

bool is_list_item(const std::string& line, std::string* item) {
    std::string t = strings::trim(line);
    if (t.size() >= 2 && (t[0] == '-' || t[0] == '*') && t[1] == ' ') {
        *item = strings::trim(t.substr(2));
        return true;
    }
    size_t i = 0;
    while (i < t.size() && isdigit(static_cast<unsigned char>(t[i]))) ++i;
    if (i > 0 && i + 1 < t.size() && (t[i] == '.' || t[i] == ')') && t[i + 1] == ' ') {
        *item = strings::trim(t.substr(i + 2));
        return true;
    }
    return false;
}

} // namespace

StructureReport validate_structure(const std::string& body) {
    StructureReport report;
    for (size_t i = 0; i < kAllElements.size(); ++i) {
        report.elements[i].element = kAllElements[i];
    }
    auto verdict = [&](Element e) -> ElementVerdict& {
        return report.elements[static_cast<size_t>(e)];
    };

    const std::vector<Line> lines = split_lines(body);

    // Title: the first level-1 markdown heading, or a leading "Title:" line.
    for (const auto& line : lines) {
        std::string t = strings::trim(line.text);
        if (t.empty()) continue;
        if (t.rfind("# ", 0) == 0 && strings::trim(t.substr(2)).size() > 0) {
            verdict(Element::title) = {Element::title, true, line.begin, line.end};
        } else if (strings::to_lower(t).rfind("title:", 0) == 0 &&
                   strings::trim(t.substr(6)).size() > 0) {
            verdict(Element::title) = {Element::title, true, line.begin, line.end};
        }
        break;  // only the first non-blank line can carry the title
    }

    // Sections: from each recognized heading to the next heading.
    struct Found {
        Element element;
        size_t content_begin;
        size_t heading_begin;
    };
    std::vector<Found> found;
    for (size_t i = 0; i < lines.size(); ++i) {
        auto h = heading_text(lines[i].text);
        if (!h) continue;
        if (auto element = classify_heading(*h)) {
            size_t content_begin = lines[i].end < body.size() ? lines[i].end + 1 : body.size();
            found.push_back({*element, content_begin, lines[i].begin});
        }
    }
    for (size_t i = 0; i < found.size(); ++i) {
        size_t end = body.size();
        // Section ends at the next recognized-or-unrecognized heading line.
        for (const auto& line : lines) {
            if (line.begin <= found[i].heading_begin) continue;
            if (heading_text(line.text)) {
                end = line.begin;
                break;
            }
        }
        auto& v = verdict(found[i].element);
        if (!v.present) {
            v = {found[i].element, true, found[i].heading_begin, end};
        }
    }

    for (Element e : kAllElements) {
        if (!verdict(e).present) report.missing.push_back(e);
    }
    return report;
}

Review parse_review(std::string paper_id, std::string body) {
    Review review;
    review.paper_id = std::move(paper_id);
    review.body = std::move(body);

    StructureReport report = validate_structure(review.body);
    auto span_text = [&](Element e) -> std::string {
        const auto& v = report.elements[static_cast<size_t>(e)];
        if (!v.present) return "";
        return review.body.substr(v.begin, v.end - v.begin);
    };

    if (report.elements[0].present) {
        std::string t = strings::trim(span_text(Element::title));
        if (t.rfind("# ", 0) == 0) t = strings::trim(t.substr(2));
        else if (strings::to_lower(t).rfind("title:", 0) == 0) t = strings::trim(t.substr(6));
        review.sections.title = t;
    }

    auto body_without_heading = [&](Element e) {
        std::string text = span_text(e);
        size_t nl = text.find('\n');
        return nl == std::string::npos ? std::string() : strings::trim(text.substr(nl + 1));
    };
    review.sections.synopsis = body_without_heading(Element::synopsis);
    review.sections.summary = body_without_heading(Element::summary);

    auto extract_list = [&](Element e) {
        std::vector<std::string> items;
        std::string text = span_text(e);
        for (const auto& line : split_lines(text)) {
            std::string item;
            if (is_list_item(line.text, &item) && !item.empty()) items.push_back(item);
        }
        return items;
    };
    review.sections.strengths = extract_list(Element::strengths);
    review.sections.weaknesses = extract_list(Element::weaknesses);

    // References: list items preferred, plain non-empty lines otherwise.
    {
        std::string text = span_text(Element::references);
        auto items = extract_list(Element::references);
        if (items.empty() && !text.empty()) {
            auto ls = split_lines(text);
            for (size_t i = 1; i < ls.size(); ++i) {  // skip the heading line
                std::string t = strings::trim(ls[i].text);
                if (!t.empty()) items.push_back(t);
            }
        }
        review.sections.references = items;
    }
    return review;
}

} // namespace reviewkit::review
