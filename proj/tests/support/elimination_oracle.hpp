#pragma once

// Elimination-ordering oracle for the pushforward over B = k[y]: for each
// i, dehomogenize at x_i = 1, compute a Groebner basis with a block order
// eliminating the remaining x-variables, intersect with k[y], and combine.
// Independent of the saturation engines (it never leaves the raw engine).

#include <grsat/sections.hpp>

namespace elim_oracle {

using namespace grsat;

/// gcd of univariate polynomials, monic.
template <Field K>
UniPoly<K> uni_gcd(UniPoly<K> a, UniPoly<K> b, const K& zero) {
    while (!b.is_zero()) {
        auto [q, r] = uni_divmod(a, b, zero);
        a = b;
        b = r;
    }
    uni_make_monic(a);
    return a;
}

template <Field K>
UniPoly<K> uni_lcm(const UniPoly<K>& a, const UniPoly<K>& b, const K& zero) {
    if (a.is_zero() || b.is_zero()) return {};
    auto g = uni_gcd(a, b, zero);
    auto [l, r] = uni_divmod(uni_mul(a, b, zero), g, zero);
    uni_make_monic(l);
    return l;
}

/// Generator of (I|_{x_i = 1}) cap k[y] for a homogeneous ideal I given by
/// generators over S = k[y][x_0..x_n] with one y-variable. Returns the
/// monic generator (zero polynomial for the zero ideal).
template <Field K>
UniPoly<K> dehomogenized_intersection(const Ctx<K>& ctx,
                                      const std::vector<Poly<K>>& gens, int xi) {
    int nx = ctx.nx(), ny = ctx.ny();
    // oracle ring: the remaining x-variables then the y-variables, all flat
    std::vector<std::string> vars;
    for (int j = 0; j < nx; ++j)
        if (j != xi) vars.push_back(ctx.var_name(j));
    for (int j = 0; j < ny; ++j) vars.push_back(ctx.var_name(nx + j));
    BaseRing base = ctx.base().coefficient_field().kind == BaseKind::rationals
                        ? BaseRing::poly_over_rationals(vars)
                        : BaseRing::poly_over_prime_field(ctx.base().p, vars);
    Ctx<K> octx(base, -1);
    ModOrder elim;
    elim.mono.blocks = {{0, nx - 1}, {nx - 1, ny}};
    GBEngine<K> eng(octx, 1, elim);
    for (auto& g : gens) {
        std::vector<typename Poly<K>::Term> terms;
        for (auto& [m, c] : g.terms()) {
            Monomial o = octx.one_mono();
            int k = 0;
            for (int j = 0; j < nx; ++j)
                if (j != xi) o.e[k++] = m.e[j];
            for (int j = 0; j < ny; ++j) o.e[nx - 1 + j] = m.e[nx + j];
            terms.emplace_back(o, c);
        }
        auto p = Poly<K>::make(octx, std::move(terms));
        if (!p.is_zero()) eng.add_seed(flat_from_vec<K>({p}, elim));
    }
    eng.run();
    UniPoly<K> out; // zero ideal unless a y-only element shows up
    K zero = ctx.zero();
    for (auto& e : eng.basis()) {
        bool y_only = true;
        for (auto& t : e)
            for (int j = 0; j < nx - 1; ++j)
                if (t.m.e[j] != 0) { y_only = false; break; }
        if (!y_only) continue;
        // convert to a univariate polynomial in the single y variable
        UniPoly<K> u;
        for (auto& t : e) {
            size_t d = (size_t)t.m.e[nx - 1];
            if (u.c.size() <= d) u.c.resize(d + 1, zero);
            u.c[d] = t.c;
        }
        u.trim();
        out = out.is_zero() ? u : uni_gcd(out, u, zero);
    }
    uni_make_monic(out);
    return out;
}

/// pi_*(S/I) degree-zero invariants: k[y]/J with
/// J = cap_i (I|_{x_i=1} cap k[y]).
template <Field K>
SnfInvariants pushforward_oracle(const Ctx<K>& ctx, const std::vector<Poly<K>>& gens) {
    K zero = ctx.zero();
    UniPoly<K> j; // intersection accumulates by lcm; start with the unit ideal
    bool first = true;
    for (int xi = 0; xi < ctx.nx(); ++xi) {
        auto ji = dehomogenized_intersection(ctx, gens, xi);
        if (first) {
            j = ji;
            first = false;
        } else {
            j = uni_lcm(j, ji, zero);
        }
    }
    SnfInvariants out;
    if (j.is_zero()) {
        out.free_rank = 1;
        return out;
    }
    out.free_rank = 0;
    if (j.c.size() > 1) {
        // print via the base context of the input ring
        Ctx<K> bctx = ctx.base_ctx();
        std::vector<typename Poly<K>::Term> terms;
        for (size_t i = 0; i < j.c.size(); ++i) {
            if (j.c[i].is_zero()) continue;
            Monomial m = mono_one(1);
            m.e[0] = (int)i;
            terms.emplace_back(m, j.c[i]);
        }
        out.factors.push_back(print_poly(bctx, Poly<K>::make(bctx, terms)));
    }
    return out;
}

} // namespace elim_oracle
