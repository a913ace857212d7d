#pragma once

// Deterministic random generators shared by the test suites.

#include <random>

#include <grsat/parser.hpp>
#include <grsat/poly.hpp>

namespace testgen {

using namespace grsat;

inline Rat random_scalar(std::mt19937_64& rng, const Ctx<Rat>& ctx) {
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    return Rat(num(rng), den(rng));
}

inline GFp random_scalar(std::mt19937_64& rng, const Ctx<GFp>& ctx) {
    std::uniform_int_distribution<long> v(0, ctx.base().characteristic() - 1);
    return ctx.scalar(v(rng));
}

template <grsat::Field K>
Monomial random_monomial(std::mt19937_64& rng, const Ctx<K>& ctx, int xdeg, int max_ydeg) {
    Monomial m = ctx.one_mono();
    std::uniform_int_distribution<int> pick(0, ctx.nx() - 1);
    for (int i = 0; i < xdeg; ++i) m.e[pick(rng)]++;
    if (ctx.ny() > 0) {
        std::uniform_int_distribution<int> yd(0, max_ydeg);
        for (int j = ctx.nx(); j < ctx.nvars(); ++j) m.e[j] = yd(rng);
    }
    return m;
}

template <grsat::Field K>
Poly<K> random_poly(std::mt19937_64& rng, const Ctx<K>& ctx, int xdeg, int max_terms = 4,
                    int max_ydeg = 2) {
    if (xdeg < 0) return Poly<K>::zero();
    std::uniform_int_distribution<int> nt(0, max_terms);
    std::vector<typename Poly<K>::Term> terms;
    int count = nt(rng);
    for (int i = 0; i < count; ++i)
        terms.emplace_back(random_monomial(rng, ctx, xdeg, max_ydeg),
                           random_scalar(rng, ctx));
    return Poly<K>::make(ctx, std::move(terms));
}

/// Random presentation matrix: generators in degrees [0, max_gen_deg],
/// relation columns in degrees up to max_rel_deg.
template <grsat::Field K>
GradedMatrix<K> random_presentation(std::mt19937_64& rng, const Ctx<K>& ctx, int max_gens,
                                    int max_rels, int max_gen_deg, int max_rel_deg) {
    std::uniform_int_distribution<int> ng(1, max_gens), nr(0, max_rels);
    std::uniform_int_distribution<int> gd(0, max_gen_deg);
    int gens = ng(rng), rels = nr(rng);
    std::vector<int> gdegs, rdegs;
    for (int i = 0; i < gens; ++i) gdegs.push_back(gd(rng));
    int lo = *std::min_element(gdegs.begin(), gdegs.end());
    std::uniform_int_distribution<int> rd(lo + 1, std::max(lo + 1, max_rel_deg));
    for (int j = 0; j < rels; ++j) rdegs.push_back(rd(rng));
    std::vector<std::vector<Poly<K>>> e(gens, std::vector<Poly<K>>(rels));
    for (int r = 0; r < gens; ++r)
        for (int c = 0; c < rels; ++c)
            e[r][c] = random_poly(rng, ctx, rdegs[c] - gdegs[r], 3, 1);
    return GradedMatrix<K>(ctx, FreeModule::graded(gdegs), FreeModule::graded(rdegs),
                           std::move(e));
}

template <grsat::Field K>
Poly<K> random_nonzero_poly(std::mt19937_64& rng, const Ctx<K>& ctx, int xdeg,
                            int max_terms = 4, int max_ydeg = 2) {
    for (int tries = 0; tries < 64; ++tries) {
        auto p = random_poly(rng, ctx, xdeg, max_terms, max_ydeg);
        if (!p.is_zero()) return p;
    }
    return Poly<K>::monomial(ctx, random_monomial(rng, ctx, xdeg, max_ydeg), ctx.one());
}

} // namespace testgen
