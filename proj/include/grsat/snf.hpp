#pragma once

#include "bmodule.hpp"

namespace grsat {

/// Dense univariate polynomial over K, coefficients by ascending degree.
template <Field K>
struct UniPoly {
    std::vector<K> c;

    bool is_zero() const { return c.empty(); }
    size_t deg() const { return c.size() - 1; }
    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
};

template <Field K>
UniPoly<K> uni_from_poly(const Poly<K>& p, const K& zero) {
    UniPoly<K> u;
    for (auto& [m, cc] : p.terms()) {
        size_t d = (size_t)m.e[0];
        if (u.c.size() <= d) u.c.resize(d + 1, zero);
        u.c[d] = cc;
    }
    u.trim();
    return u;
}

template <Field K>
UniPoly<K> uni_mul(const UniPoly<K>& a, const UniPoly<K>& b, const K& zero) {
    if (a.is_zero() || b.is_zero()) return {};
    UniPoly<K> r;
    r.c.assign(a.c.size() + b.c.size() - 1, zero);
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
}

template <Field K>
UniPoly<K> uni_sub(UniPoly<K> a, const UniPoly<K>& b, const K& zero) {
    if (a.c.size() < b.c.size()) a.c.resize(b.c.size(), zero);
    for (size_t i = 0; i < b.c.size(); ++i) a.c[i] = a.c[i] - b.c[i];
    a.trim();
    return a;
}

/// a = q b + r with deg r < deg b.
template <Field K>
std::pair<UniPoly<K>, UniPoly<K>> uni_divmod(UniPoly<K> a, const UniPoly<K>& b,
                                             const K& zero) {
    UniPoly<K> q;
    if (b.is_zero()) throw std::domain_error("uni_divmod: division by zero");
    if (a.is_zero()) return {q, a};
    if (a.c.size() >= b.c.size()) q.c.assign(a.c.size() - b.c.size() + 1, zero);
    while (!a.is_zero() && a.c.size() >= b.c.size()) {
        K f = a.c.back() / b.c.back();
        size_t shift = a.c.size() - b.c.size();
        q.c[shift] = f;
        for (size_t i = 0; i < b.c.size(); ++i)
            a.c[shift + i] = a.c[shift + i] - f * b.c[i];
        a.trim();
    }
    q.trim();
    return {q, a};
}

template <Field K>
void uni_make_monic(UniPoly<K>& a) {
    if (a.is_zero() || a.c.back().is_one()) return;
    K inv = a.c.back().inv();
    for (auto& v : a.c) v = v * inv;
}

/// Invariant factors of a finitely presented module over k[y] (one base
/// variable): free rank plus the nontrivial monic invariant factors, via
/// Smith normal form with polynomial division.
struct SnfInvariants {
    long free_rank = 0;
    std::vector<std::string> factors; // printed monic polynomials, divisibility chain
    bool operator==(const SnfInvariants& o) const {
        return free_rank == o.free_rank && factors == o.factors;
    }
};

template <Field K>
SnfInvariants snf_invariants(const BModule<K>& b) {
    if (b.field_case()) return {b.dim(), {}};
    const Ctx<K>& bctx = b.bctx();
    if (bctx.ny() != 1)
        throw std::invalid_argument("snf_invariants: one base variable only");
    K zero = bctx.zero();
    size_t rows = b.rep().gens().rank();
    size_t cols = b.rep().rels().cols();
    std::vector<std::vector<UniPoly<K>>> a(rows, std::vector<UniPoly<K>>(cols));
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c)
            a[r][c] = uni_from_poly(b.rep().rels().at(r, c), zero);
    size_t t = 0;
    std::vector<UniPoly<K>> diag;
    while (t < rows && t < cols) {
        // locate a nonzero entry of minimal degree in the remaining block
        size_t br = rows, bc = cols;
        for (size_t r = t; r < rows; ++r)
            for (size_t c = t; c < cols; ++c)
                if (!a[r][c].is_zero() &&
                    (br == rows || a[r][c].c.size() < a[br][bc].c.size())) {
                    br = r;
                    bc = c;
                }
        if (br == rows) break;
        std::swap(a[t], a[br]);
        for (size_t r = 0; r < rows; ++r) std::swap(a[r][t], a[r][bc]);
        bool clean = true;
        for (size_t r = t + 1; r < rows; ++r) {
            if (a[r][t].is_zero()) continue;
            auto [q, rem] = uni_divmod(a[r][t], a[t][t], zero);
            for (size_t c = t; c < cols; ++c)
                a[r][c] = uni_sub(a[r][c], uni_mul(q, a[t][c], zero), zero);
            if (!rem.is_zero()) clean = false;
        }
        for (size_t c = t + 1; c < cols; ++c) {
            if (a[t][c].is_zero()) continue;
            auto [q, rem] = uni_divmod(a[t][c], a[t][t], zero);
            for (size_t r = t; r < rows; ++r)
                a[r][c] = uni_sub(a[r][c], uni_mul(q, a[r][t], zero), zero);
            if (!rem.is_zero()) clean = false;
        }
        if (!clean) continue; // smaller remainders appeared; redo this pivot
        bool off_diagonal_zero = true;
        for (size_t r = t + 1; r < rows && off_diagonal_zero; ++r)
            if (!a[r][t].is_zero()) off_diagonal_zero = false;
        for (size_t c = t + 1; c < cols && off_diagonal_zero; ++c)
            if (!a[t][c].is_zero()) off_diagonal_zero = false;
        if (!off_diagonal_zero) continue;
        diag.push_back(a[t][t]);
        ++t;
    }
    // divisibility chain
    for (size_t i = 0; i + 1 < diag.size(); ++i)
        for (size_t j = i + 1; j < diag.size(); ++j) {
            auto [q, rem] = uni_divmod(diag[j], diag[i], zero);
            if (!rem.is_zero()) {
                // gcd/lcm swap via euclid
                UniPoly<K> x = diag[i], y = diag[j];
                while (!y.is_zero()) {
                    auto [qq, rr] = uni_divmod(x, y, zero);
                    x = y;
                    y = rr;
                }
                UniPoly<K> g = x; // gcd
                auto [l, lr] = uni_divmod(uni_mul(diag[i], diag[j], zero), g, zero);
                diag[i] = g;
                diag[j] = l;
            }
        }
    SnfInvariants out;
    out.free_rank = (long)rows - (long)diag.size();
    Ctx<K> bctx2 = bctx;
    for (auto& dpoly : diag) {
        UniPoly<K> m = dpoly;
        uni_make_monic(m);
        if (m.c.size() == 1) continue; // unit: trivial factor
        std::vector<typename Poly<K>::Term> terms;
        for (size_t i = 0; i < m.c.size(); ++i) {
            if (m.c[i].is_zero()) continue;
            Monomial mono = mono_one(1);
            mono.e[0] = (int)i;
            terms.emplace_back(mono, m.c[i]);
        }
        out.factors.push_back(print_poly(bctx2, Poly<K>::make(bctx2, terms)));
    }
    std::sort(out.factors.begin(), out.factors.end());
    return out;
}

} // namespace grsat
