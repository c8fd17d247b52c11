#include "reviewkit/pdf/image_scan.hpp"

#include "reviewkit/pdf/filters.hpp"
#include "reviewkit/pdf/lexer.hpp"
#include "reviewkit/util/error.hpp"

#include <array>
#include <cmath>

namespace reviewkit::pdf {

namespace {

// Row-major 2x3 affine matrix [a b c d e f] as used by the 'cm' operator.
using Matrix = std::array<double, 6>;

constexpr Matrix kIdentity = {1, 0, 0, 1, 0, 0};

Matrix multiply(const Matrix& m, const Matrix& n) {
    return {m[0] * n[0] + m[1] * n[2],        m[0] * n[1] + m[1] * n[3],
            m[2] * n[0] + m[3] * n[2],        m[2] * n[1] + m[3] * n[3],
            m[4] * n[0] + m[5] * n[2] + n[4], m[4] * n[1] + m[5] * n[3] + n[5]};
}

struct ScanState {
    const Document& doc;
    std::vector<ImagePlacement>& out;
    int depth = 0;
};

void scan_content(ScanState& state, std::span<const uint8_t> content, const Dict& resources,
                  const Matrix& base);

void handle_do(ScanState& state, const std::string& name, const Dict& resources,
               const Matrix& ctm) {
    auto xobjects = state.doc.resolve(dict_get(resources, "XObject"));
    if (!xobjects || !(xobjects->is_dict() || xobjects->is_stream())) return;
    auto target_ref = dict_get(xobjects->as_dict(), name);
    if (!target_ref) return;
    auto target = state.doc.resolve(target_ref);
    if (!target || !target->is_stream()) return;

    const Dict& dict = target->as_stream().dict;
    auto subtype = state.doc.resolve(dict_get(dict, "Subtype"));
    const std::string kind = subtype && subtype->is_name() ? subtype->as_name().value : "";

    if (kind == "Image") {
        ImagePlacement placement;
        placement.object_number = target_ref->is_ref() ? target_ref->as_ref().num : 0;
        placement.name = name;
        // The image occupies the unit square mapped through the CTM.
        placement.display_width_pt = std::hypot(ctm[0], ctm[1]);
        placement.display_height_pt = std::hypot(ctm[2], ctm[3]);
        state.out.push_back(placement);
    } else if (kind == "Form" && state.depth < 8) {
        Matrix form_matrix = kIdentity;
        if (auto m = state.doc.resolve(dict_get(dict, "Matrix")); m && m->is_array()) {
            const auto& arr = m->as_array();
            for (size_t i = 0; i < 6 && i < arr.size(); ++i) {
                auto e = state.doc.resolve(arr[i]);
                if (e && e->is_number()) form_matrix[i] = e->as_number();
            }
        }
        Dict form_resources = resources;
        if (auto r = state.doc.resolve(dict_get(dict, "Resources"));
            r && (r->is_dict() || r->is_stream())) {
            form_resources = r->as_dict();
        }
        auto resolve_cb = [&](const ObjectPtr& o) { return state.doc.resolve(o); };
        auto decoded = decode_stream(target->as_stream(), resolve_cb);
        if (!decoded.still_dct) {
            ++state.depth;
            scan_content(state, decoded.bytes, form_resources, multiply(form_matrix, ctm));
            --state.depth;
        }
    }
}

void scan_content(ScanState& state, std::span<const uint8_t> content, const Dict& resources,
                  const Matrix& base) {
    Lexer lex(content);
    std::vector<Matrix> stack;
    Matrix ctm = base;
    std::vector<Token> operands;

    while (true) {
        Token tok;
        try {
            tok = lex.next();
        } catch (const Error&) {
            break;  // tolerate junk in content streams
        }
        if (tok.kind == Token::Kind::end) break;

        if (tok.kind == Token::Kind::keyword) {
            const std::string& op = tok.text;
            if (op == "q") {
                stack.push_back(ctm);
            } else if (op == "Q") {
                if (!stack.empty()) {
                    ctm = stack.back();
                    stack.pop_back();
                }
            } else if (op == "cm" && operands.size() >= 6) {
                Matrix m{};
                bool ok = true;
                for (size_t i = 0; i < 6; ++i) {
                    const Token& t = operands[operands.size() - 6 + i];
                    if (t.kind == Token::Kind::number_int) {
                        m[i] = static_cast<double>(t.int_value);
                    } else if (t.kind == Token::Kind::number_real) {
                        m[i] = t.real_value;
                    } else {
                        ok = false;
                    }
                }
                if (ok) ctm = multiply(m, ctm);
            } else if (op == "Do" && !operands.empty() &&
                       operands.back().kind == Token::Kind::name) {
                handle_do(state, operands.back().text, resources, ctm);
            } else if (op == "BI") {
                // Inline image: skip to EI.
                while (true) {
                    Token t;
                    try {
                        t = lex.next();
                    } catch (const Error&) {
                        break;
                    }
                    if (t.kind == Token::Kind::end) break;
                    if (t.kind == Token::Kind::keyword && t.text == "EI") break;
                }
            }
            operands.clear();
        } else {
            operands.push_back(tok);
            if (operands.size() > 16) operands.erase(operands.begin());
        }
    }
}

} // namespace

std::vector<ImagePlacement> scan_image_placements(const Document& doc, int page_obj_num) {
    std::vector<ImagePlacement> out;
    auto content = doc.page_content(page_obj_num);
    Dict resources = doc.page_resources(page_obj_num);
    ScanState state{doc, out};
    scan_content(state, content, resources, kIdentity);
    return out;
}

} // namespace reviewkit::pdf
