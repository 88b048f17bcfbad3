#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "krivine/term.hpp"

namespace krivine {

// Character cursor shared by the text parsers.
class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    char peek_raw(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }
    bool starts_with(std::string_view s) {
        skip_ws();
        return text_.substr(pos_, s.size()) == s;
    }
    // Keyword match that refuses to split an identifier.
    bool starts_with_word(std::string_view s) {
        if (!starts_with(s)) return false;
        char next = peek_raw(s.size());
        return !(std::isalnum(static_cast<unsigned char>(next)) || next == '_' || next == '\'');
    }
    bool accept(std::string_view s) {
        if (!starts_with(s)) return false;
        pos_ += s.size();
        return true;
    }
    bool accept_word(std::string_view s) {
        if (!starts_with_word(s)) return false;
        pos_ += s.size();
        return true;
    }
    void expect(std::string_view s) {
        if (!accept(s)) fail("expected '" + std::string(s) + "'");
    }
    static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    }
    bool at_ident() { return ident_start(peek()); }
    std::string ident() {
        skip_ws();
        if (!ident_start(peek_raw())) fail("expected identifier");
        std::size_t start = pos_;
        while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }
    bool at_nat() { return std::isdigit(static_cast<unsigned char>(peek())); }
    unsigned long nat() {
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek_raw()))) fail("expected natural number");
        unsigned long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + static_cast<unsigned long>(text_[pos_] - '0');
            if (v > 100000000UL) fail("number too large");
            ++pos_;
        }
        return v;
    }
    std::size_t pos() const { return pos_; }
    void set_pos(std::size_t p) { pos_ = p; }
    std::string_view rest() const { return text_.substr(pos_); }
    [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, pos_); }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

TermPtr parse_term_at(Cursor& c, const InstructionRegistry& reg);
StackPtr parse_stack_at(Cursor& c, const InstructionRegistry& reg);
bool at_term_start(Cursor& c);

}  // namespace krivine
