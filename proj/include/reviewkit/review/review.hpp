#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace reviewkit::review {

// The six structural elements every finished review must contain.
enum class Element { title, synopsis, summary, strengths, weaknesses, references };

constexpr std::array<Element, 6> kAllElements = {
    Element::title,     Element::synopsis,   Element::summary,
    Element::strengths, Element::weaknesses, Element::references,
};

const char* to_string(Element e);

struct ParsedSections {
    std::string title;
    std::string synopsis;
    std::string summary;
    std::vector<std::string> strengths;
    std::vector<std::string> weaknesses;
    std::vector<std::string> references;  // citation strings, APA-style
};

struct Review {
    std::string paper_id;
    std::string body;
    ParsedSections sections;
};

struct ElementVerdict {
    Element element = Element::title;
    bool present = false;
    size_t begin = 0;  // extraction span in the body, valid when present
    size_t end = 0;
};

struct StructureReport {
    std::array<ElementVerdict, 6> elements;
    std::vector<Element> missing;

    bool valid() const { return missing.empty(); }
};

// Heading-based detection with synonym fallbacks ("Concerns" counts as
// weaknesses, "Citations" as references). Empty body: all six missing.
StructureReport validate_structure(const std::string& body);

Review parse_review(std::string paper_id, std::string body);

} // namespace reviewkit::review
