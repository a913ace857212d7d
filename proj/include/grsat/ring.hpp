#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "scalar.hpp"

namespace grsat {

enum class BaseKind { rationals, prime_field, poly_ring };

/// The coefficient base B: the rationals, a prime field, or a one-level
/// polynomial ring over one of those.
struct BaseRing {
    BaseKind kind = BaseKind::rationals;
    uint32_t p = 0;                    // prime_field, or underlying field of poly_ring
    BaseKind coeff_kind = BaseKind::rationals; // for poly_ring
    std::vector<std::string> yvars;    // poly_ring only

    static BaseRing rationals() { return {}; }
    static BaseRing prime_field(uint32_t p) {
        if (!is_prime(p)) throw std::invalid_argument("BaseRing: p must be prime");
        BaseRing b; b.kind = BaseKind::prime_field; b.p = p; return b;
    }
    static BaseRing poly_over_rationals(std::vector<std::string> vars) {
        BaseRing b; b.kind = BaseKind::poly_ring; b.coeff_kind = BaseKind::rationals;
        b.yvars = std::move(vars); return b;
    }
    static BaseRing poly_over_prime_field(uint32_t p, std::vector<std::string> vars) {
        if (!is_prime(p)) throw std::invalid_argument("BaseRing: p must be prime");
        BaseRing b; b.kind = BaseKind::poly_ring; b.coeff_kind = BaseKind::prime_field;
        b.p = p; b.yvars = std::move(vars); return b;
    }

    bool is_field() const { return kind != BaseKind::poly_ring; }
    uint32_t characteristic() const {
        if (kind == BaseKind::prime_field) return p;
        if (kind == BaseKind::poly_ring && coeff_kind == BaseKind::prime_field) return p;
        return 0;
    }
    size_t num_yvars() const { return kind == BaseKind::poly_ring ? yvars.size() : 0; }
    /// The base stripped to its coefficient field (poly_ring -> field).
    BaseRing coefficient_field() const {
        BaseRing b;
        b.kind = kind == BaseKind::poly_ring ? coeff_kind : kind;
        b.p = b.kind == BaseKind::prime_field ? p : 0;
        return b;
    }

    bool operator==(const BaseRing& o) const {
        return kind == o.kind && p == o.p && coeff_kind == o.coeff_kind && yvars == o.yvars;
    }
};

/// A monomial in the x- and y-variables, stored as one exponent vector
/// (x-block first). The x-degree is the grading degree; y-variables have
/// degree zero.
struct Monomial {
    std::vector<int32_t> e;

    bool operator==(const Monomial& o) const { return e == o.e; }
    bool is_one() const {
        return std::all_of(e.begin(), e.end(), [](int32_t v) { return v == 0; });
    }
};

inline Monomial mono_one(size_t nvars) { return Monomial{std::vector<int32_t>(nvars, 0)}; }

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] += b.e[i];
    return r;
}

inline bool mono_divides(const Monomial& a, const Monomial& b) {
    // does a divide b?
    for (size_t i = 0; i < a.e.size(); ++i)
        if (a.e[i] > b.e[i]) return false;
    return true;
}

inline Monomial mono_quot(const Monomial& b, const Monomial& a) {
    Monomial r = b;
    for (size_t i = 0; i < r.e.size(); ++i) {
        r.e[i] -= a.e[i];
        if (r.e[i] < 0) throw std::logic_error("mono_quot: not divisible");
    }
    return r;
}

inline Monomial mono_lcm(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = std::max(r.e[i], b.e[i]);
    return r;
}

/// Canonical order-independent comparison, used only to normalize the term
/// lists inside Poly.
inline int mono_cmp_plain(const Monomial& a, const Monomial& b) {
    if (a.e < b.e) return -1;
    if (b.e < a.e) return 1;
    return 0;
}

/// Block monomial order: graded reverse lexicographic within each block,
/// blocks compared left to right. The default order has the x-block first,
/// which eliminates the x-variables over the y-variables.
struct BlockOrder {
    std::vector<std::pair<int, int>> blocks; // (start, length)

    // +1 if a > b, -1 if a < b, 0 if equal
    int cmp(const Monomial& a, const Monomial& b) const {
        for (auto [s, len] : blocks) {
            int da = 0, db = 0;
            for (int i = s; i < s + len; ++i) { da += a.e[i]; db += b.e[i]; }
            if (da != db) return da > db ? 1 : -1;
            for (int i = s + len - 1; i >= s; --i) {
                if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1; // revlex
            }
        }
        return 0;
    }
    bool greater(const Monomial& a, const Monomial& b) const { return cmp(a, b) > 0; }
};

inline Rat make_scalar(long v, const Rat&) { return Rat(v); }
inline GFp make_scalar(long v, const GFp& like) { return GFp(v, like.modulus()); }

template <Field K>
struct RingData {
    BaseRing base;
    int n = 0; // -1 encodes the base ring itself (no x-variables)
    std::vector<std::string> var_names;
    K one;
    BlockOrder order;
};

/// Shared, immutable ring context for S = B[x0..xn]. Cheap to copy.
template <Field K>
class Ctx {
public:
    Ctx() = default;
    Ctx(BaseRing base, int n) {
        if (n < -1) throw std::invalid_argument("Ctx: n must be >= -1");
        auto d = std::make_shared<RingData<K>>();
        d->base = base;
        d->n = n;
        for (int i = 0; i <= n; ++i) d->var_names.push_back("x" + std::to_string(i));
        for (auto& y : base.yvars) d->var_names.push_back(y);
        d->one = make_scalar(1, probe(base));
        if (n >= 0) d->order.blocks.push_back({0, n + 1});
        if (base.num_yvars() > 0)
            d->order.blocks.push_back({n + 1, (int)base.num_yvars()});
        data_ = std::move(d);
    }

    bool valid() const { return (bool)data_; }
    const BaseRing& base() const { return data_->base; }
    int n() const { return data_->n; }
    int nx() const { return data_->n + 1; }
    int ny() const { return (int)data_->base.num_yvars(); }
    int nvars() const { return nx() + ny(); }
    const std::string& var_name(int i) const { return data_->var_names[i]; }
    const BlockOrder& order() const { return data_->order; }

    const K& one() const { return data_->one; }
    K zero() const { return data_->one - data_->one; }
    K scalar(long v) const { return make_scalar(v, data_->one); }

    int xdeg(const Monomial& m) const {
        int d = 0;
        for (int i = 0; i < nx(); ++i) d += m.e[i];
        return d;
    }
    Monomial one_mono() const { return mono_one(nvars()); }
    Monomial var_mono(int i) const {
        Monomial m = one_mono();
        m.e[i] = 1;
        return m;
    }

    /// Context for the base ring B itself, with no x-variables. For a field
    /// base this is the trivial ring; for a polynomial base it is k[y1..ym].
    Ctx base_ctx() const { return Ctx(base(), -1); }

    bool operator==(const Ctx& o) const {
        return base() == o.base() && n() == o.n();
    }
    bool operator!=(const Ctx& o) const { return !(*this == o); }

private:
    static K probe(const BaseRing& b);
    std::shared_ptr<const RingData<K>> data_;
};

template <>
inline Rat Ctx<Rat>::probe(const BaseRing&) { return Rat(); }
template <>
inline GFp Ctx<GFp>::probe(const BaseRing& b) {
    uint32_t p = b.characteristic();
    if (p == 0) throw std::invalid_argument("Ctx<GFp>: base has characteristic 0");
    return GFp(0, p);
}

/// All monomials of the given x-degree (y-part trivial), in descending
/// monomial order. Negative degree yields the empty list.
template <Field K>
std::vector<Monomial> monomial_basis(const Ctx<K>& ctx, int degree) {
    std::vector<Monomial> out;
    if (degree < 0 || ctx.nx() == 0) return out;
    int nx = ctx.nx();
    std::vector<int32_t> c(nx, 0);
    c[0] = degree;
    while (true) {
        Monomial m = ctx.one_mono();
        for (int i = 0; i < nx; ++i) m.e[i] = c[i];
        out.push_back(m);
        int i = nx - 2;
        while (i >= 0 && c[i] == 0) --i;
        if (i < 0) break;
        int tail = 0;
        for (int j = i + 1; j < nx; ++j) { tail += c[j]; c[j] = 0; }
        c[i] -= 1;
        c[i + 1] = tail + 1;
    }
    std::sort(out.begin(), out.end(), [&ctx](const Monomial& a, const Monomial& b) {
        return ctx.order().cmp(a, b) > 0;
    });
    return out;
}

inline long long binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace grsat
