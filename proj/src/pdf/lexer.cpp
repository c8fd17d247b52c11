#include "reviewkit/pdf/lexer.hpp"

#include "reviewkit/util/error.hpp"

#include <cctype>
#include <cstdlib>

namespace reviewkit::pdf {

bool is_pdf_whitespace(uint8_t c) {
    return c == 0x00 || c == 0x09 || c == 0x0a || c == 0x0c || c == 0x0d || c == 0x20;
}

bool is_pdf_delimiter(uint8_t c) {
    switch (c) {
    case '(': case ')': case '<': case '>': case '[': case ']':
    case '{': case '}': case '/': case '%':
        return true;
    default:
        return false;
    }
}

void Lexer::skip_whitespace_and_comments() {
    while (pos_ < data_.size()) {
        uint8_t c = data_[pos_];
        if (is_pdf_whitespace(c)) {
            ++pos_;
        } else if (c == '%') {
            while (pos_ < data_.size() && data_[pos_] != '\n' && data_[pos_] != '\r') ++pos_;
        } else {
            break;
        }
    }
}

Token Lexer::peek() {
    if (!has_peeked_) {
        peeked_ = lex();
        has_peeked_ = true;
    }
    return peeked_;
}

Token Lexer::next() {
    if (has_peeked_) {
        has_peeked_ = false;
        return peeked_;
    }
    return lex();
}

Token Lexer::lex() {
    skip_whitespace_and_comments();
    Token tok;
    tok.offset = pos_;
    if (pos_ >= data_.size()) {
        tok.kind = Token::Kind::end;
        return tok;
    }

    uint8_t c = data_[pos_];

    if (c == '<') {
        if (pos_ + 1 < data_.size() && data_[pos_ + 1] == '<') {
            pos_ += 2;
            tok.kind = Token::Kind::dict_open;
            return tok;
        }
        // hex string
        ++pos_;
        std::string bytes;
        std::string pair;
        while (pos_ < data_.size() && data_[pos_] != '>') {
            uint8_t h = data_[pos_++];
            if (is_pdf_whitespace(h)) continue;
            if (!std::isxdigit(h)) throw Error("malformed_pdf", "bad hex string digit");
            pair.push_back(static_cast<char>(h));
            if (pair.size() == 2) {
                bytes.push_back(static_cast<char>(std::strtol(pair.c_str(), nullptr, 16)));
                pair.clear();
            }
        }
        if (pos_ >= data_.size()) throw Error("malformed_pdf", "unterminated hex string");
        ++pos_;
        if (!pair.empty()) {
            pair.push_back('0');
            bytes.push_back(static_cast<char>(std::strtol(pair.c_str(), nullptr, 16)));
        }
        tok.kind = Token::Kind::string;
        tok.text = std::move(bytes);
        return tok;
    }
    if (c == '>') {
        if (pos_ + 1 < data_.size() && data_[pos_ + 1] == '>') {
            pos_ += 2;
            tok.kind = Token::Kind::dict_close;
            return tok;
        }
        throw Error("malformed_pdf", "stray '>'");
    }
    if (c == '[') {
        ++pos_;
        tok.kind = Token::Kind::array_open;
        return tok;
    }
    if (c == ']') {
        ++pos_;
        tok.kind = Token::Kind::array_close;
        return tok;
    }
    if (c == '/') {
        ++pos_;
        std::string name;
        while (pos_ < data_.size() && !is_pdf_whitespace(data_[pos_]) &&
               !is_pdf_delimiter(data_[pos_])) {
            uint8_t n = data_[pos_++];
            if (n == '#' && pos_ + 1 < data_.size() && std::isxdigit(data_[pos_]) &&
                std::isxdigit(data_[pos_ + 1])) {
                char hex[3] = {static_cast<char>(data_[pos_]), static_cast<char>(data_[pos_ + 1]), 0};
                name.push_back(static_cast<char>(std::strtol(hex, nullptr, 16)));
                pos_ += 2;
            } else {
                name.push_back(static_cast<char>(n));
            }
        }
        tok.kind = Token::Kind::name;
        tok.text = std::move(name);
        return tok;
    }
    if (c == '(') {
        ++pos_;
        std::string text;
        int depth = 1;
        while (pos_ < data_.size() && depth > 0) {
            uint8_t s = data_[pos_++];
            if (s == '\\') {
                if (pos_ >= data_.size()) break;
                uint8_t esc = data_[pos_++];
                switch (esc) {
                case 'n': text.push_back('\n'); break;
                case 'r': text.push_back('\r'); break;
                case 't': text.push_back('\t'); break;
                case 'b': text.push_back('\b'); break;
                case 'f': text.push_back('\f'); break;
                case '(': text.push_back('('); break;
                case ')': text.push_back(')'); break;
                case '\\': text.push_back('\\'); break;
                case '\r':
                    if (pos_ < data_.size() && data_[pos_] == '\n') ++pos_;
                    break;  // line continuation
                case '\n': break;
                default:
                    if (esc >= '0' && esc <= '7') {
                        int code = esc - '0';
                        for (int i = 0; i < 2 && pos_ < data_.size() && data_[pos_] >= '0' &&
                                        data_[pos_] <= '7';
                             ++i) {
                            code = code * 8 + (data_[pos_++] - '0');
                        }
                        text.push_back(static_cast<char>(code & 0xff));
                    } else {
                        text.push_back(static_cast<char>(esc));
                    }
                }
            } else if (s == '(') {
                ++depth;
                text.push_back('(');
            } else if (s == ')') {
                --depth;
                if (depth > 0) text.push_back(')');
            } else {
                text.push_back(static_cast<char>(s));
            }
        }
        if (depth != 0) throw Error("malformed_pdf", "unterminated literal string");
        tok.kind = Token::Kind::string;
        tok.text = std::move(text);
        return tok;
    }
    if (c == '+' || c == '-' || c == '.' || std::isdigit(c)) {
        size_t start = pos_;
        bool is_real = false;
        if (c == '+' || c == '-') ++pos_;
        while (pos_ < data_.size() && (std::isdigit(data_[pos_]) || data_[pos_] == '.')) {
            if (data_[pos_] == '.') is_real = true;
            ++pos_;
        }
        std::string num(reinterpret_cast<const char*>(data_.data()) + start, pos_ - start);
        if (num.empty() || num == "+" || num == "-" || num == ".") {
            throw Error("malformed_pdf", "malformed number");
        }
        if (is_real) {
            tok.kind = Token::Kind::number_real;
            tok.real_value = std::strtod(num.c_str(), nullptr);
        } else {
            tok.kind = Token::Kind::number_int;
            tok.int_value = std::strtoll(num.c_str(), nullptr, 10);
        }
        return tok;
    }

    // keyword / operator
    {
        size_t start = pos_;
        while (pos_ < data_.size() && !is_pdf_whitespace(data_[pos_]) &&
               !is_pdf_delimiter(data_[pos_])) {
            ++pos_;
        }
        if (pos_ == start) throw Error("malformed_pdf", "unexpected byte in input");
        tok.kind = Token::Kind::keyword;
        tok.text.assign(reinterpret_cast<const char*>(data_.data()) + start, pos_ - start);
        return tok;
    }
}

} // namespace reviewkit::pdf
