#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "poly.hpp"

namespace grsat {

struct ParseError : std::runtime_error {
    size_t pos;
    ParseError(size_t pos, const std::string& what)
        : std::runtime_error("parse error at position " + std::to_string(pos) + ": " + what),
          pos(pos) {}
};

inline Rat scalar_from_digits(const std::string& digits, const Rat&) {
    return Rat(mpq_class(digits));
}
inline GFp scalar_from_digits(const std::string& digits, const GFp& like) {
    uint32_t p = like.modulus();
    GFp acc(0, p), ten(10, p);
    for (char c : digits) acc = acc * ten + GFp(c - '0', p);
    return acc;
}

/// Recursive-descent parser for the polynomial grammar:
///
///   poly   := [ '-' ] term { ('+'|'-') term }
///   term   := factor { '*' factor }
///   factor := atom [ '^' nat ]
///   atom   := coeff | var | '(' poly ')'
///   coeff  := nat [ '/' nat ]
///
/// Subexpressions may be x-inhomogeneous; homogeneity of the final value is
/// checked once at the end, reporting the two conflicting degrees.
template <Field K>
class PolyParser {
public:
    PolyParser(const Ctx<K>& ctx, const std::string& text) : ctx_(ctx), s_(text) {}

    Poly<K> run() {
        Raw r = parse_poly();
        skip_ws();
        if (pos_ != s_.size()) throw ParseError(pos_, "trailing input");
        return Poly<K>::make(ctx_, std::move(r)); // homogeneity check happens here
    }

private:
    using Raw = std::vector<typename Poly<K>::Term>;

    Raw raw_const(K c) { return {{ctx_.one_mono(), std::move(c)}}; }

    static Raw raw_add(Raw a, const Raw& b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    }
    Raw raw_neg(Raw a) {
        for (auto& [m, c] : a) c = -c;
        return a;
    }
    Raw raw_mul(const Raw& a, const Raw& b) {
        Raw r;
        r.reserve(a.size() * b.size());
        for (auto& [ma, ca] : a)
            for (auto& [mb, cb] : b) r.emplace_back(mono_mul(ma, mb), ca * cb);
        return r;
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
    }
    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool accept(char c) {
        if (peek(c)) { ++pos_; return true; }
        return false;
    }

    Raw parse_poly() {
        bool neg = false;
        skip_ws();
        if (accept('-')) neg = true;
        else accept('+');
        Raw acc = parse_term();
        if (neg) acc = raw_neg(std::move(acc));
        while (true) {
            skip_ws();
            if (accept('+')) acc = raw_add(std::move(acc), parse_term());
            else if (accept('-')) acc = raw_add(std::move(acc), raw_neg(parse_term()));
            else break;
        }
        return acc;
    }

    Raw parse_term() {
        Raw acc = parse_factor();
        while (accept('*')) acc = raw_mul(acc, parse_factor());
        return acc;
    }

    Raw parse_factor() {
        Raw base = parse_atom();
        if (accept('^')) {
            long e = parse_nat();
            Raw acc = raw_const(ctx_.one());
            for (long i = 0; i < e; ++i) acc = raw_mul(acc, base);
            return acc;
        }
        return base;
    }

    Raw parse_atom() {
        skip_ws();
        if (pos_ >= s_.size()) throw ParseError(pos_, "unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Raw r = parse_poly();
            if (!accept(')')) throw ParseError(pos_, "expected ')'");
            return r;
        }
        if (std::isdigit((unsigned char)c)) {
            K num = parse_number();
            if (accept('/')) {
                K den = parse_number();
                if (den.is_zero()) throw ParseError(pos_, "zero denominator");
                return raw_const(num / den);
            }
            return raw_const(num);
        }
        if (std::isalpha((unsigned char)c) || c == '_') return parse_var();
        throw ParseError(pos_, std::string("unexpected character '") + c + "'");
    }

    K parse_number() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
        if (pos_ == start) throw ParseError(pos_, "expected a number");
        return scalar_from_digits(s_.substr(start, pos_ - start), ctx_.one());
    }

    long parse_nat() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
        if (pos_ == start) throw ParseError(pos_, "expected an exponent");
        return std::stol(s_.substr(start, pos_ - start));
    }

    Raw parse_var() {
        size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum((unsigned char)s_[pos_]) || s_[pos_] == '_'))
            ++pos_;
        std::string name = s_.substr(start, pos_ - start);
        for (int i = 0; i < ctx_.nvars(); ++i) {
            if (ctx_.var_name(i) == name)
                return {{ctx_.var_mono(i), ctx_.one()}};
        }
        throw ParseError(start, "unknown variable '" + name + "'");
    }

    Ctx<K> ctx_;
    const std::string& s_;
    size_t pos_ = 0;
};

template <Field K>
Poly<K> parse_poly(const Ctx<K>& ctx, const std::string& text) {
    return PolyParser<K>(ctx, text).run();
}

} // namespace grsat
