#pragma once

#include "reviewkit/pdf/objects.hpp"

#include <optional>
#include <span>

namespace reviewkit::pdf {

// Parsed PDF: the full indirect-object table plus the trailer dict.
// Error("malformed_pdf") on unparseable input, Error("encrypted_pdf")
// when the trailer carries /Encrypt.
class Document {
public:
    static Document parse(std::span<const uint8_t> bytes);

    // Resolves indirect references (possibly chained); returns the input
    // for direct objects and nullptr for missing targets.
    ObjectPtr resolve(const ObjectPtr& obj) const;

    ObjectPtr object(int num) const;
    void set_object(int num, ObjectPtr obj);
    int max_object_number() const;

    const Dict& trailer() const { return trailer_; }
    Dict& trailer() { return trailer_; }

    // Catalog (/Root) dict. Error("malformed_pdf") when absent.
    const Dict& catalog() const;

    // Page object numbers in document order, page-tree inheritance applied
    // by page_* helpers below.
    std::vector<int> page_object_numbers() const;

    // Concatenated decoded content streams of a page.
    std::vector<uint8_t> page_content(int page_obj_num) const;

    // Resolved /Resources dict of a page (walks up the page tree).
    Dict page_resources(int page_obj_num) const;

    const std::map<int, ObjectPtr>& objects() const { return objects_; }

private:
    std::map<int, ObjectPtr> objects_;
    Dict trailer_;

    ObjectPtr inherited_attr(int page_obj_num, const std::string& key) const;
    void collect_pages(const ObjectPtr& node, std::vector<int>& out, int depth,
                       std::vector<int>& visited) const;
};

} // namespace reviewkit::pdf
