#pragma once

#include <cstdint>
#include <span>
#include <string>

namespace reviewkit::pdf {

struct Token {
    enum class Kind {
        number_int,
        number_real,
        name,
        string,
        dict_open,
        dict_close,
        array_open,
        array_close,
        keyword,  // obj, endobj, stream, R, true, ... and content operators
        end,
    };

    Kind kind = Kind::end;
    int64_t int_value = 0;
    double real_value = 0.0;
    std::string text;  // name payload, string payload, or keyword spelling
    size_t offset = 0; // byte offset of the token start
};

// Tokenizer over raw PDF bytes; also used for content streams, whose
// operators surface as keyword tokens.
class Lexer {
public:
    explicit Lexer(std::span<const uint8_t> data, size_t pos = 0) : data_(data), pos_(pos) {}

    Token next();
    Token peek();

    size_t pos() const { return pos_; }
    void seek(size_t pos) { pos_ = pos; has_peeked_ = false; }
    std::span<const uint8_t> data() const { return data_; }

    void skip_whitespace_and_comments();

private:
    Token lex();

    std::span<const uint8_t> data_;
    size_t pos_ = 0;
    bool has_peeked_ = false;
    Token peeked_;
};

bool is_pdf_whitespace(uint8_t c);
bool is_pdf_delimiter(uint8_t c);

} // namespace reviewkit::pdf
