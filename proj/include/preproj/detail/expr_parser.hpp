#ifndef PREPROJ_DETAIL_EXPR_PARSER_HPP
#define PREPROJ_DETAIL_EXPR_PARSER_HPP

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

#include "../errors.hpp"

namespace preproj::detail {

// Recursive-descent parser for the scalar grammar
//
//   expr     := term (("+"|"-") term)*
//   term     := factor (("*"|"/") factor)*
//   factor   := atom ("^" integer)?
//   atom     := rational | "i" | "zeta(" integer ")" | "(" expr ")" | "-" atom
//               | <variable>                     (only when the builder has one)
//   rational := integer ("/" integer)?
//
// Note that unary minus is part of `atom`, so "-x^2" reads as (-x)^2.
//
// The builder supplies the value type and the leaf constructors:
//   value_type  rational(const mpq_class&)
//   value_type  zeta(unsigned long m)
//   value_type  power(const value_type&, unsigned long e)
//   const char* variable_name()      (nullptr when no variable is allowed)
//   value_type  variable()
template <class Builder>
class ExprParser {
public:
    using value_type = typename Builder::value_type;

    ExprParser(std::string_view text, Builder builder) : text_(text), builder_(std::move(builder)) {}

    value_type parse() {
        skip_ws();
        if (at_end()) fail("empty expression");
        value_type v = expr();
        skip_ws();
        if (!at_end()) fail(std::string("unexpected character '") + text_[pos_] + "'");
        return v;
    }

private:
    std::string_view text_;
    Builder builder_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

    bool at_end() const { return pos_ >= text_.size(); }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char ch) {
        skip_ws();
        return !at_end() && text_[pos_] == ch;
    }

    bool consume(char ch) {
        if (peek(ch)) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool starts_with(std::string_view word) {
        skip_ws();
        return text_.substr(pos_, word.size()) == word;
    }

    bool digit_ahead() {
        skip_ws();
        return !at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
    }

    std::string integer_token() {
        skip_ws();
        std::size_t begin = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (begin == pos_) fail("expected an integer");
        return std::string(text_.substr(begin, pos_ - begin));
    }

    unsigned long small_integer() {
        std::size_t where = pos_;
        std::string tok = integer_token();
        if (tok.size() > 9) throw ParseError(where, "integer too large here");
        return std::stoul(tok);
    }

    value_type expr() {
        value_type acc = term();
        for (;;) {
            if (consume('+')) {
                acc = acc + term();
            } else if (consume('-')) {
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    value_type term() {
        value_type acc = factor();
        for (;;) {
            if (consume('*')) {
                acc = acc * factor();
            } else if (consume('/')) {
                acc = acc / factor();
            } else {
                return acc;
            }
        }
    }

    value_type factor() {
        value_type base = atom();
        if (consume('^')) {
            unsigned long e = small_integer();
            return builder_.power(base, e);
        }
        return base;
    }

    value_type atom() {
        skip_ws();
        if (at_end()) fail("unexpected end of input");
        if (consume('-')) return -atom();
        if (consume('(')) {
            value_type v = expr();
            if (!consume(')')) fail("expected ')'");
            return v;
        }
        if (digit_ahead()) {
            mpq_class q{mpz_class(integer_token())};
            // A '/' directly followed by digits belongs to the rational literal.
            std::size_t save = pos_;
            if (consume('/') && digit_ahead()) {
                std::size_t where = pos_;
                mpz_class den(integer_token());
                if (den == 0) throw ZeroDivisionError("division by zero in rational literal at position " +
                                                      std::to_string(where));
                q = mpq_class(q.get_num(), den);
                q.canonicalize();
            } else {
                pos_ = save;
            }
            return builder_.rational(q);
        }
        if (starts_with("zeta")) {
            pos_ += 4;
            if (!consume('(')) fail("expected '(' after zeta");
            std::size_t where = pos_;
            unsigned long m = small_integer();
            if (m == 0) throw ParseError(where, "zeta order must be positive");
            if (!consume(')')) fail("expected ')'");
            return builder_.zeta(m);
        }
        if (const char* var = builder_.variable_name(); var != nullptr && starts_with(var)) {
            std::size_t len = std::char_traits<char>::length(var);
            if (!identifier_continues(pos_ + len)) {
                pos_ += len;
                return builder_.variable();
            }
        }
        if (starts_with("i") && !identifier_continues(pos_ + 1)) {
            ++pos_;
            return builder_.zeta(4);
        }
        fail(std::string("unexpected character '") + text_[pos_] + "'");
    }

    bool identifier_continues(std::size_t at) const {
        return at < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[at])) || text_[at] == '_');
    }
};

}  // namespace preproj::detail

#endif  // PREPROJ_DETAIL_EXPR_PARSER_HPP
