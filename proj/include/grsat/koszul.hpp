#pragma once

#include "bmodule.hpp"
#include "degree_parts.hpp"

namespace grsat {

/// Sorted k-subsets of {0..n} in lexicographic order.
inline std::vector<std::vector<int>> index_subsets(int n_plus_1, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n_plus_1) return out;
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n_plus_1 - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

/// Sign of removing t from the sorted set T: (-1)^{position}.
inline int removal_sign(const std::vector<int>& T, int t) {
    for (size_t i = 0; i < T.size(); ++i)
        if (T[i] == t) return i % 2 == 0 ? 1 : -1;
    throw std::logic_error("removal_sign: t not in T");
}

inline std::vector<int> without(const std::vector<int>& T, int t) {
    std::vector<int> r;
    for (int v : T)
        if (v != t) r.push_back(v);
    return r;
}

inline size_t subset_index(const std::vector<std::vector<int>>& subsets,
                           const std::vector<int>& s) {
    for (size_t i = 0; i < subsets.size(); ++i)
        if (subsets[i] == s) return i;
    throw std::logic_error("subset_index: not found");
}

/// Koszul differential d_i: K_i -> K_{i-1} for the resolution of B = S/m,
/// generators of K_i in degree i indexed by i-subsets.
template <Field K>
GradedMatrix<K> koszul_matrix(const Ctx<K>& ctx, int i) {
    auto rows_idx = index_subsets(ctx.nx(), i - 1);
    auto cols_idx = index_subsets(ctx.nx(), i);
    FreeModule tgt = FreeModule::standard(rows_idx.size(), i - 1);
    FreeModule src = FreeModule::standard(cols_idx.size(), i);
    std::vector<std::vector<Poly<K>>> e(tgt.rank(), std::vector<Poly<K>>(src.rank()));
    for (size_t c = 0; c < cols_idx.size(); ++c)
        for (int t : cols_idx[c]) {
            size_t r = subset_index(rows_idx, without(cols_idx[c], t));
            K sign = ctx.scalar(removal_sign(cols_idx[c], t));
            e[r][c] = Poly<K>::monomial(ctx, ctx.var_mono(t), sign);
        }
    return GradedMatrix<K>(ctx, tgt, src, std::move(e));
}

/// Homology at the middle of f then g (module maps with g o f = 0):
/// ker(g) / im(f).
template <Field K>
GradedModule<K> module_homology(const ModuleMap<K>& f, const ModuleMap<K>& g) {
    auto ker = kernel(g);
    auto x = factor_through(ker.incl, f.matrix());
    ModuleMap<K> into_ker(f.source(), ker.module, x, Certify::trusted);
    return prune(cokernel(into_ker).module).module;
}

/// K_i (x) M with its two neighbouring differentials, as graded modules.
template <Field K>
GradedModule<K> koszul_tensor_term(const GradedModule<K>& m, int i) {
    auto b = index_subsets(m.ctx().nx(), i);
    return tensor(GradedModule<K>::free_module(
                      m.ctx(), FreeModule::standard(b.size(), i)),
                  m);
}

template <Field K>
ModuleMap<K> koszul_tensor_step(const GradedModule<K>& m, int i,
                                const GradedModule<K>& term_i,
                                const GradedModule<K>& term_im1) {
    const Ctx<K>& ctx = m.ctx();
    size_t gm = m.gens().rank();
    auto rows_idx = index_subsets(ctx.nx(), i - 1);
    auto cols_idx = index_subsets(ctx.nx(), i);
    std::vector<std::vector<Poly<K>>> e(term_im1.gens().rank(),
                                        std::vector<Poly<K>>(term_i.gens().rank()));
    for (size_t c = 0; c < cols_idx.size(); ++c)
        for (int t : cols_idx[c]) {
            size_t r = subset_index(rows_idx, without(cols_idx[c], t));
            K sign = ctx.scalar(removal_sign(cols_idx[c], t));
            auto xt = Poly<K>::monomial(ctx, ctx.var_mono(t), sign);
            for (size_t u = 0; u < gm; ++u) e[r * gm + u][c * gm + u] = xt;
        }
    return ModuleMap<K>(term_i, term_im1,
                        GradedMatrix<K>(ctx, term_im1.gens(), term_i.gens(),
                                        std::move(e)),
                        Certify::trusted);
}

/// Tor_i(B, M) computed from the Koszul resolution of B; quasi-zero and
/// annihilated by the irrelevant ideal.
template <Field K>
GradedModule<K> tor_module(const GradedModule<K>& m, int i) {
    const Ctx<K>& ctx = m.ctx();
    int top = ctx.nx();
    if (i < 0 || i > top + 1)
        throw std::invalid_argument("tor_module: index out of range");
    if (i > top) return GradedModule<K>::zero(ctx);
    auto term_i = koszul_tensor_term(m, i);
    ModuleMap<K> out = [&] {
        if (i == 0)
            return ModuleMap<K>::zero_map(term_i, GradedModule<K>::zero(ctx));
        auto term_im1 = koszul_tensor_term(m, i - 1);
        return koszul_tensor_step(m, i, term_i, term_im1);
    }();
    ModuleMap<K> in = [&] {
        if (i == top)
            return ModuleMap<K>::zero_map(GradedModule<K>::zero(ctx), term_i);
        auto term_ip1 = koszul_tensor_term(m, i + 1);
        return koszul_tensor_step(m, i + 1, term_ip1, term_i);
    }();
    return module_homology(in, out);
}

/// Hom(K_j, M) term: (+)_{|T|=j} M(j).
template <Field K>
GradedModule<K> koszul_hom_term(const GradedModule<K>& m, int j) {
    auto b = index_subsets(m.ctx().nx(), j);
    return tensor(GradedModule<K>::free_module(
                      m.ctx(), FreeModule::standard(b.size(), -j)),
                  m);
}

/// Hom(d_j, M): Hom(K_{j-1}, M) -> Hom(K_j, M).
template <Field K>
ModuleMap<K> koszul_hom_step(const GradedModule<K>& m, int j,
                             const GradedModule<K>& term_jm1,
                             const GradedModule<K>& term_j) {
    const Ctx<K>& ctx = m.ctx();
    size_t gm = m.gens().rank();
    auto rows_idx = index_subsets(ctx.nx(), j);     // target blocks
    auto cols_idx = index_subsets(ctx.nx(), j - 1); // source blocks
    std::vector<std::vector<Poly<K>>> e(term_j.gens().rank(),
                                        std::vector<Poly<K>>(term_jm1.gens().rank()));
    for (size_t rT = 0; rT < rows_idx.size(); ++rT)
        for (int t : rows_idx[rT]) {
            size_t cT = subset_index(cols_idx, without(rows_idx[rT], t));
            K sign = ctx.scalar(removal_sign(rows_idx[rT], t));
            auto xt = Poly<K>::monomial(ctx, ctx.var_mono(t), sign);
            for (size_t u = 0; u < gm; ++u) e[rT * gm + u][cT * gm + u] = xt;
        }
    return ModuleMap<K>(term_jm1, term_j,
                        GradedMatrix<K>(ctx, term_j.gens(), term_jm1.gens(),
                                        std::move(e)),
                        Certify::trusted);
}

/// Ext^j(B, M) via Hom of the Koszul resolution into M; quasi-zero and
/// annihilated by the irrelevant ideal.
template <Field K>
GradedModule<K> ext_module(const GradedModule<K>& m, int j) {
    const Ctx<K>& ctx = m.ctx();
    int top = ctx.nx();
    if (j < 0 || j > top + 1)
        throw std::invalid_argument("ext_module: index out of range");
    if (j > top) return GradedModule<K>::zero(ctx);
    auto term_j = koszul_hom_term(m, j);
    ModuleMap<K> in = [&] {
        if (j == 0)
            return ModuleMap<K>::zero_map(GradedModule<K>::zero(ctx), term_j);
        auto term_jm1 = koszul_hom_term(m, j - 1);
        return koszul_hom_step(m, j, term_jm1, term_j);
    }();
    ModuleMap<K> out = [&] {
        if (j == top)
            return ModuleMap<K>::zero_map(term_j, GradedModule<K>::zero(ctx));
        auto term_jp1 = koszul_hom_term(m, j + 1);
        return koszul_hom_step(m, j + 1, term_j, term_jp1);
    }();
    return module_homology(in, out);
}

/// Regularity max{p : N_p != 0} of a module known to be annihilated by the
/// irrelevant ideal (Tor/Ext strands). Appends the x-multiples of the
/// generators as relations, extracts the degree-0 relations from the
/// reduced basis per generator degree, and zero-tests over B.
template <Field K>
ExtDeg m_annihilated_reg(const GradedModule<K>& n) {
    const Ctx<K>& ctx = n.ctx();
    if (n.gens().rank() == 0) return ExtDeg::minus_inf();
    std::vector<int> xdegs;
    std::vector<std::vector<Poly<K>>> xcols(n.gens().rank());
    for (size_t k = 0; k < n.gens().rank(); ++k)
        for (int j = 0; j < ctx.nx(); ++j) {
            xdegs.push_back(n.gens().deg(k) + 1);
            for (size_t r = 0; r < n.gens().rank(); ++r)
                xcols[r].push_back(r == k ? Poly<K>::variable(ctx, j) : Poly<K>());
        }
    GradedMatrix<K> xm(ctx, n.gens(), FreeModule::graded(xdegs), std::move(xcols));
    auto aug = n.rels().augmented(xm);
    auto gb = GroebnerBasis<K>::of_matrix(aug, false);
    // bucket the x-degree-0 basis elements by generator degree
    std::map<int, std::vector<VecPoly<K>>> bucket;
    for (auto& h : gb.image_basis()) {
        bool deg0 = true;
        for (auto& p : h)
            if (!p.is_zero() && *p.xdeg() != 0) { deg0 = false; break; }
        if (deg0) bucket[column_degree(n.gens(), h, 0)].push_back(h);
    }
    std::vector<int> degrees;
    for (size_t k = 0; k < n.gens().rank(); ++k) degrees.push_back(n.gens().deg(k));
    std::sort(degrees.begin(), degrees.end());
    degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
    Ctx<K> bctx = ctx.base_ctx();
    for (auto it = degrees.rbegin(); it != degrees.rend(); ++it) {
        int p = *it;
        std::vector<size_t> slots;
        for (size_t k = 0; k < n.gens().rank(); ++k)
            if (n.gens().deg(k) == p) slots.push_back(k);
        std::vector<VecPoly<K>> rel_cols;
        for (auto& h : bucket[p]) {
            VecPoly<K> col(slots.size());
            for (size_t s = 0; s < slots.size(); ++s) {
                const Poly<K>& entry = h[slots[s]];
                if (entry.is_zero()) continue;
                // strip the (trivial) x-part into the base context
                std::vector<typename Poly<K>::Term> terms;
                for (auto& [mono, c] : entry.terms()) {
                    Monomial ym = mono_one(bctx.nvars());
                    for (int v = 0; v < bctx.nvars(); ++v)
                        ym.e[v] = mono.e[ctx.nx() + v];
                    terms.emplace_back(ym, c);
                }
                col[s] = Poly<K>::make(bctx, std::move(terms));
            }
            rel_cols.push_back(std::move(col));
        }
        auto bm = BModule<K>::from_presentation(bctx, slots.size(), std::move(rel_cols));
        if (!bm.is_zero()) return ExtDeg::of(p);
    }
    return ExtDeg::minus_inf();
}

/// The degree-p layer of an m-annihilated module as a B-module (used for
/// Betti/Bass strand comparisons): generators of degree p modulo the
/// degree-0 relations.
template <Field K>
BModule<K> m_annihilated_layer(const GradedModule<K>& n, int p) {
    return hf_bmodule(n, p);
}

} // namespace grsat
