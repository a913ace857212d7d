#pragma once

#include "bmodule.hpp"

namespace grsat {

/// The degree-i part of a graded module, as a finitely presented B-module
/// together with labelled generators. Over a field base the labels are the
/// standard monomials (canonical basis); over a polynomial base they are
/// all degree-i monomial multiples of the generators, with the degree-0
/// relations extracted from the reduced Groebner basis.
template <Field K>
struct DegreePart {
    BModule<K> part;
    std::vector<std::pair<int, Monomial>> labels; // (generator slot, x-monomial)
};

template <Field K>
DegreePart<K> degree_part_bmodule(const GradedModule<K>& m, int i) {
    const Ctx<K>& ctx = m.ctx();
    Ctx<K> bctx = ctx.base_ctx();
    if (ctx.base().is_field()) {
        auto labels = m.standard_monomials(i);
        return {BModule<K>::vector_space(bctx, (long)labels.size()), std::move(labels)};
    }
    // labels: every monomial multiple of a generator landing in degree i
    std::vector<std::pair<int, Monomial>> labels;
    std::map<std::pair<int, std::vector<int32_t>>, size_t> index;
    for (size_t k = 0; k < m.gens().rank(); ++k)
        for (auto& mono : monomial_basis(ctx, i - m.gens().deg(k))) {
            index[{(int)k, mono.e}] = labels.size();
            labels.emplace_back((int)k, mono);
        }
    // degree-i layer of the relation submodule: x-monomial multiples of the
    // reduced basis, coordinates over the labels with y-coefficients
    std::vector<VecPoly<K>> rel_cols;
    for (auto& h : m.rel_gb().image_basis()) {
        int hdeg = column_degree(m.gens(), h, 0);
        for (auto& beta : monomial_basis(ctx, i - hdeg)) {
            VecPoly<K> col(labels.size(), Poly<K>());
            for (size_t s = 0; s < h.size(); ++s) {
                if (h[s].is_zero()) continue;
                Poly<K> shifted = h[s].mono_scaled(beta, ctx.one(), ctx.xdeg(beta));
                for (auto& [mono, c] : shifted.terms()) {
                    // split into pure-x part (label) and y-part (coefficient)
                    Monomial xpart = ctx.one_mono(), ypart = mono_one(bctx.nvars());
                    for (int v = 0; v < ctx.nx(); ++v) xpart.e[v] = mono.e[v];
                    for (int v = 0; v < bctx.nvars(); ++v)
                        ypart.e[v] = mono.e[ctx.nx() + v];
                    size_t idx = index.at({(int)s, xpart.e});
                    auto t = Poly<K>::monomial(bctx, ypart, c);
                    col[idx] = col[idx].is_zero() ? t : col[idx] + t;
                }
            }
            rel_cols.push_back(std::move(col));
        }
    }
    return {BModule<K>::from_presentation(bctx, labels.size(), std::move(rel_cols)),
            std::move(labels)};
}

/// Hilbert function value as a B-module.
template <Field K>
BModule<K> hf_bmodule(const GradedModule<K>& m, int p) {
    return degree_part_bmodule(m, p).part;
}

template <Field K>
struct DegreePartResult {
    GradedModule<K> submodule; // <M_i> <= M, finitely presented
    ModuleMap<K> incl;
    BModule<K> part;
    std::vector<std::pair<int, Monomial>> labels;
};

/// The paper's degree-part algorithm: the submodule generated by M_i (two
/// syzygy computations) plus the B-module M_i itself.
template <Field K>
DegreePartResult<K> degree_part(const GradedModule<K>& m, int i) {
    const Ctx<K>& ctx = m.ctx();
    // submodule generated by all degree-i elements
    std::vector<int> gdegs;
    std::vector<std::vector<Poly<K>>> g(m.gens().rank());
    for (size_t k = 0; k < m.gens().rank(); ++k)
        for (auto& mono : monomial_basis(ctx, i - m.gens().deg(k))) {
            gdegs.push_back(i);
            for (size_t r = 0; r < m.gens().rank(); ++r)
                g[r].push_back(r == k ? Poly<K>::monomial(ctx, mono, ctx.one())
                                      : Poly<K>());
        }
    GradedMatrix<K> gmat(ctx, m.gens(), FreeModule::graded(gdegs), std::move(g));
    auto rels = preimage_relations(gmat, m.rel_gb_matrix(), true);
    GradedModule<K> sub(rels);
    ModuleMap<K> incl(sub, m, gmat, Certify::trusted);
    auto p = prune(sub);
    auto dp = degree_part_bmodule(m, i);
    return {p.module, compose_maps(incl, p.to_old), std::move(dp.part),
            std::move(dp.labels)};
}

/// The B-linear multiplication map mu^i(x_j): M_i -> M_{i+1} on the chosen
/// bases (row convention, matching the displayed matrices).
template <Field K>
BModuleMap<K> multiplication_map(const GradedModule<K>& m, int i, int j) {
    const Ctx<K>& ctx = m.ctx();
    if (j < 0 || j >= ctx.nx())
        throw std::invalid_argument("multiplication_map: variable index out of range");
    auto src = degree_part_bmodule(m, i);
    auto tgt = degree_part_bmodule(m, i + 1);
    if (ctx.base().is_field()) {
        Mat<K> mat(src.labels.size(), tgt.labels.size(), ctx.zero());
        std::map<std::pair<int, std::vector<int32_t>>, size_t> tindex;
        for (size_t t = 0; t < tgt.labels.size(); ++t)
            tindex[{tgt.labels[t].first, tgt.labels[t].second.e}] = t;
        for (size_t s = 0; s < src.labels.size(); ++s) {
            auto [slot, mono] = src.labels[s];
            VecPoly<K> v(m.gens().rank());
            v[slot] = Poly<K>::monomial(ctx, mono_mul(mono, ctx.var_mono(j)), ctx.one());
            auto nf = m.rel_gb().normal_form(v);
            for (size_t r = 0; r < nf.size(); ++r)
                for (auto& [mm, cc] : nf[r].terms())
                    mat.at(s, tindex.at({(int)r, mm.e})) = cc;
        }
        return BModuleMap<K>::of_mat(src.part, tgt.part, std::move(mat));
    }
    // polynomial base: label (k, alpha) -> label (k, alpha * x_j)
    std::map<std::pair<int, std::vector<int32_t>>, size_t> tindex;
    for (size_t t = 0; t < tgt.labels.size(); ++t)
        tindex[{tgt.labels[t].first, tgt.labels[t].second.e}] = t;
    std::vector<std::vector<Poly<K>>> rows(
        src.labels.size(), std::vector<Poly<K>>(tgt.labels.size()));
    Ctx<K> bctx = ctx.base_ctx();
    for (size_t s = 0; s < src.labels.size(); ++s) {
        auto [slot, mono] = src.labels[s];
        size_t t = tindex.at({slot, mono_mul(mono, ctx.var_mono(j)).e});
        rows[s][t] = Poly<K>::constant(bctx, ctx.one());
    }
    return BModuleMap<K>::of_entries(src.part, tgt.part, rows, Certify::trusted);
}

} // namespace grsat
