#pragma once

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bigbracket/polynomial.hpp"

namespace bigbracket {

/// Syntax or name-resolution error, with the 0-based character position.
struct ParseError : std::runtime_error {
    std::size_t position;

    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

namespace detail {

/// Grammar:
///   rational  ::= int | int "/" int
///   atom      ::= rational | generator ["^" int]
///   term      ::= atom {"*" atom}
///   expr      ::= ["-"] term {("+"|"-") term}
/// Generator names are family prefix + 1-based index (x1, p2, xi1, th3, e2,
/// eps1). Whitespace is insignificant. A repeated odd generator in one term
/// is accepted and normalizes to zero; an exponent above 1 on an odd
/// generator is rejected.
class ExprParser {
public:
    ExprParser(std::string_view text, TablePtr table)
        : text_(text), table_(std::move(table)) {}

    Polynomial parse() {
        Polynomial p = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
        return p;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    long parse_int() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == start) throw ParseError("expected an integer", pos_);
        return std::stol(std::string(text_.substr(start, pos_ - start)));
    }

    Rat parse_rational() {
        long num = parse_int();
        if (eat('/')) {
            std::size_t dpos = pos_;
            long den = parse_int();
            if (den == 0) throw ParseError("zero denominator", dpos);
            Rat q(num, den);
            q.canonicalize();
            return q;
        }
        return Rat(num);
    }

    Polynomial parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("expected an atom", pos_);
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)))
            return Polynomial::constant(table_, parse_rational());
        if (!std::isalpha(static_cast<unsigned char>(c)))
            throw ParseError("expected a number or generator", pos_);
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        auto g = table_->find(name);
        if (!g) throw ParseError("unknown generator '" + name + "'", start);
        int exp = 1;
        if (eat('^')) {
            std::size_t epos = pos_;
            long e = parse_int();
            if (e < 0) throw ParseError("negative exponent", epos);
            if (table_->odd(*g) && e > 1)
                throw ParseError("exponent > 1 on odd generator '" + name + "'", epos);
            exp = static_cast<int>(e);
        }
        Polynomial p = Polynomial::constant(table_, Rat(1));
        for (int i = 0; i < exp; ++i) p = p * Polynomial::generator(table_, *g);
        return p;
    }

    Polynomial parse_term() {
        Polynomial p = parse_atom();
        while (true) {
            skip_ws();
            if (!eat('*')) break;
            p = p * parse_atom();
        }
        return p;
    }

    Polynomial parse_expr() {
        bool neg = eat('-');
        Polynomial p = parse_term();
        if (neg) p = -p;
        while (true) {
            char c = peek();
            if (c == '+') {
                ++pos_;
                p += parse_term();
            } else if (c == '-') {
                ++pos_;
                p -= parse_term();
            } else {
                break;
            }
        }
        return p;
    }

    std::string_view text_;
    TablePtr table_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial parse_expression(std::string_view text, const TablePtr& table) {
    return detail::ExprParser(text, table).parse();
}

/// Canonical, deterministic, re-parseable rendering; zero prints as "0".
/// Terms follow the canonical monomial key order; coefficient 1 is omitted
/// on non-constant monomials.
inline std::string format_poly(const Polynomial& p) {
    if (p.is_zero()) return "0";
    const GeneratorTable& t = *p.table();
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        bool negative = c < 0;
        if (first) {
            if (negative) os << "-";
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        Rat mag = negative ? Rat(-c) : c;
        std::vector<std::string> factors;
        if (mag != 1 || m.is_constant()) factors.push_back(mag.get_str());
        for (auto [g, e] : m.even) {
            std::string f = t.gen(g).name;
            if (e > 1) f += "^" + std::to_string(e);
            factors.push_back(std::move(f));
        }
        for (GenId g : m.odd) factors.push_back(t.gen(g).name);
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i) os << "*";
            os << factors[i];
        }
    }
    return os.str();
}

}  // namespace bigbracket
