#include "reviewkit/pdf/document.hpp"

#include "reviewkit/pdf/filters.hpp"
#include "reviewkit/util/error.hpp"

#include <algorithm>

namespace reviewkit::pdf {

ObjectPtr dict_get(const Dict& dict, const std::string& key) {
    auto it = dict.find(key);
    return it == dict.end() ? nullptr : it->second;
}

ObjectPtr Document::resolve(const ObjectPtr& obj) const {
    ObjectPtr current = obj;
    for (int hops = 0; current && current->is_ref() && hops < 32; ++hops) {
        current = object(current->as_ref().num);
    }
    return current;
}

ObjectPtr Document::object(int num) const {
    auto it = objects_.find(num);
    return it == objects_.end() ? nullptr : it->second;
}

void Document::set_object(int num, ObjectPtr obj) { objects_[num] = std::move(obj); }

int Document::max_object_number() const {
    return objects_.empty() ? 0 : objects_.rbegin()->first;
}

const Dict& Document::catalog() const {
    auto root = dict_get(trailer_, "Root");
    auto resolved = resolve(root);
    if (!resolved || !(resolved->is_dict() || resolved->is_stream())) {
        throw Error("malformed_pdf", "missing document catalog");
    }
    return resolved->as_dict();
}

void Document::collect_pages(const ObjectPtr& node_ref, std::vector<int>& out, int depth,
                             std::vector<int>& visited) const {
    if (depth > 64) throw Error("malformed_pdf", "page tree too deep");
    int num = node_ref && node_ref->is_ref() ? node_ref->as_ref().num : -1;
    if (num >= 0 && std::find(visited.begin(), visited.end(), num) != visited.end()) {
        throw Error("malformed_pdf", "page tree cycle");
    }
    if (num >= 0) visited.push_back(num);

    auto node = resolve(node_ref);
    if (!node || !(node->is_dict() || node->is_stream())) {
        throw Error("malformed_pdf", "bad page tree node");
    }
    const Dict& dict = node->as_dict();
    auto type = resolve(dict_get(dict, "Type"));
    const std::string type_name = type && type->is_name() ? type->as_name().value : "";

    if (type_name == "Pages" || (type_name.empty() && dict_get(dict, "Kids"))) {
        auto kids = resolve(dict_get(dict, "Kids"));
        if (!kids || !kids->is_array()) throw Error("malformed_pdf", "pages node without kids");
        for (const auto& kid : kids->as_array()) {
            collect_pages(kid, out, depth + 1, visited);
        }
    } else {
        if (num < 0) throw Error("malformed_pdf", "page object must be indirect");
        out.push_back(num);
    }
}

std::vector<int> Document::page_object_numbers() const {
    auto pages_ref = dict_get(catalog(), "Pages");
    if (!pages_ref) throw Error("malformed_pdf", "catalog has no page tree");
    std::vector<int> out;
    std::vector<int> visited;
    collect_pages(pages_ref, out, 0, visited);
    return out;
}

ObjectPtr Document::inherited_attr(int page_obj_num, const std::string& key) const {
    int current = page_obj_num;
    for (int hops = 0; hops < 64; ++hops) {
        auto node = object(current);
        if (!node || !(node->is_dict() || node->is_stream())) return nullptr;
        const Dict& dict = node->as_dict();
        if (auto value = dict_get(dict, key)) return value;
        auto parent = dict_get(dict, "Parent");
        if (!parent || !parent->is_ref()) return nullptr;
        current = parent->as_ref().num;
    }
    return nullptr;
}

std::vector<uint8_t> Document::page_content(int page_obj_num) const {
    auto page = object(page_obj_num);
    if (!page) throw Error("malformed_pdf", "unknown page object");
    auto contents = resolve(dict_get(page->as_dict(), "Contents"));
    if (!contents) return {};

    auto resolve_cb = [this](const ObjectPtr& o) { return resolve(o); };
    std::vector<uint8_t> out;
    auto append_stream = [&](const ObjectPtr& s) {
        auto stream_obj = resolve(s);
        if (!stream_obj || !stream_obj->is_stream()) return;
        auto decoded = decode_stream(stream_obj->as_stream(), resolve_cb);
        if (decoded.still_dct) return;
        out.insert(out.end(), decoded.bytes.begin(), decoded.bytes.end());
        out.push_back('\n');
    };

    if (contents->is_array()) {
        for (const auto& part : contents->as_array()) append_stream(part);
    } else {
        append_stream(contents);
    }
    return out;
}

Dict Document::page_resources(int page_obj_num) const {
    auto res = resolve(inherited_attr(page_obj_num, "Resources"));
    if (res && (res->is_dict() || res->is_stream())) return res->as_dict();
    return {};
}

} // namespace reviewkit::pdf
