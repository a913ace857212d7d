#pragma once

#include <optional>
#include <sstream>
#include <vector>

#include "ring.hpp"

namespace grsat {

/// A polynomial homogeneous in the x-variables (y-variables are degree 0
/// and unrestricted). The zero polynomial has no degree. Terms are kept in
/// a canonical order so equality is structural.
template <Field K>
class Poly {
public:
    using Term = std::pair<Monomial, K>;

    Poly() = default;

    static Poly zero() { return Poly(); }

    /// Build from raw terms; combines duplicates, drops zeros, checks
    /// x-homogeneity. Throws on inhomogeneous input.
    static Poly make(const Ctx<K>& ctx, std::vector<Term> terms) {
        Poly p;
        std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
            return mono_cmp_plain(a.first, b.first) < 0;
        });
        for (auto& [m, c] : terms) {
            if (c.is_zero()) continue;
            if (!p.terms_.empty() && p.terms_.back().first == m) {
                p.terms_.back().second += c;
                if (p.terms_.back().second.is_zero()) p.terms_.pop_back();
            } else {
                p.terms_.emplace_back(m, c);
            }
        }
        for (auto& [m, c] : p.terms_) {
            int d = ctx.xdeg(m);
            if (!p.xdeg_) p.xdeg_ = d;
            else if (*p.xdeg_ != d)
                throw std::invalid_argument(
                    "Poly: inhomogeneous in x (degrees " + std::to_string(*p.xdeg_) +
                    " and " + std::to_string(d) + ")");
        }
        if (p.terms_.empty()) p.xdeg_.reset();
        return p;
    }

    static Poly monomial(const Ctx<K>& ctx, Monomial m, K c) {
        return make(ctx, {{std::move(m), std::move(c)}});
    }
    static Poly constant(const Ctx<K>& ctx, K c) {
        return monomial(ctx, ctx.one_mono(), std::move(c));
    }
    static Poly variable(const Ctx<K>& ctx, int i) {
        return monomial(ctx, ctx.var_mono(i), ctx.one());
    }

    bool is_zero() const { return terms_.empty(); }
    std::optional<int> xdeg() const { return xdeg_; }
    const std::vector<Term>& terms() const { return terms_; }
    size_t num_terms() const { return terms_.size(); }

    /// True iff the polynomial is a single constant term (a unit of B when
    /// nonzero over a field, or of k over k[y]).
    bool is_unit_constant() const {
        return terms_.size() == 1 && terms_[0].first.is_one();
    }
    const K& unit_value() const { return terms_[0].second; }

    Poly operator-() const {
        Poly r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }

    Poly operator+(const Poly& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        if (*xdeg_ != *o.xdeg_)
            throw std::invalid_argument("Poly: adding different x-degrees");
        Poly r;
        r.xdeg_ = xdeg_;
        auto a = terms_.begin(), b = o.terms_.begin();
        while (a != terms_.end() || b != o.terms_.end()) {
            if (b == o.terms_.end() ||
                (a != terms_.end() && mono_cmp_plain(a->first, b->first) < 0)) {
                r.terms_.push_back(*a++);
            } else if (a == terms_.end() || mono_cmp_plain(b->first, a->first) < 0) {
                r.terms_.push_back(*b++);
            } else {
                K c = a->second + b->second;
                if (!c.is_zero()) r.terms_.emplace_back(a->first, c);
                ++a; ++b;
            }
        }
        if (r.terms_.empty()) r.xdeg_.reset();
        return r;
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }

    Poly operator*(const Poly& o) const {
        Poly r;
        if (is_zero() || o.is_zero()) return r;
        std::vector<Term> acc;
        acc.reserve(terms_.size() * o.terms_.size());
        for (auto& [ma, ca] : terms_)
            for (auto& [mb, cb] : o.terms_) {
                K c = ca * cb;
                if (!c.is_zero()) acc.emplace_back(mono_mul(ma, mb), c);
            }
        std::sort(acc.begin(), acc.end(), [](const Term& a, const Term& b) {
            return mono_cmp_plain(a.first, b.first) < 0;
        });
        for (auto& [m, c] : acc) {
            if (!r.terms_.empty() && r.terms_.back().first == m) {
                r.terms_.back().second += c;
                if (r.terms_.back().second.is_zero()) r.terms_.pop_back();
            } else {
                r.terms_.emplace_back(m, c);
            }
        }
        if (!r.terms_.empty()) r.xdeg_ = *xdeg_ + *o.xdeg_;
        return r;
    }

    Poly scaled(const K& c) const {
        Poly r;
        if (c.is_zero() || is_zero()) return r;
        r = *this;
        for (auto& [m, k] : r.terms_) k = k * c;
        return r;
    }

    /// Multiply by c * m where m has the given x-degree. Plain-lex term
    /// order is translation invariant, so no re-sort is needed.
    Poly mono_scaled(const Monomial& m, const K& c, int m_xdeg) const {
        Poly r;
        if (c.is_zero() || is_zero()) return r;
        r.xdeg_ = *xdeg_ + m_xdeg;
        r.terms_.reserve(terms_.size());
        for (auto& [mm, k] : terms_) r.terms_.emplace_back(mono_mul(mm, m), k * c);
        return r;
    }

    bool operator==(const Poly& o) const { return terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

private:
    std::vector<Term> terms_;
    std::optional<int> xdeg_;
};

/// Deterministic printing: terms in descending monomial order, canonical
/// coefficients.
template <Field K>
std::string print_poly(const Ctx<K>& ctx, const Poly<K>& p) {
    if (p.is_zero()) return "0";
    auto terms = p.terms();
    std::sort(terms.begin(), terms.end(), [&ctx](const auto& a, const auto& b) {
        return ctx.order().cmp(a.first, b.first) > 0;
    });
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms) {
        K a = c.abs();
        if (first) {
            if (c.is_negative()) os << "-";
            first = false;
        } else {
            os << (c.is_negative() ? " - " : " + ");
        }
        bool have_factor = false;
        if (!a.is_one() || m.is_one()) {
            os << to_string(a);
            have_factor = true;
        }
        for (int i = 0; i < ctx.nvars(); ++i) {
            if (m.e[i] == 0) continue;
            if (have_factor) os << "*";
            os << ctx.var_name(i);
            if (m.e[i] > 1) os << "^" << m.e[i];
            have_factor = true;
        }
    }
    return os.str();
}

} // namespace grsat
