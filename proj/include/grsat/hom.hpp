#pragma once

#include "graded_module.hpp"

namespace grsat {

/// Internal Hom computed at presentation level: Hom(M,N) is the kernel of
/// Hom(F0,N) -> Hom(F1,N) induced by the presentation of M. The inclusion
/// into Hom(F0,N) = (+)_i N(a_i) is kept so that concrete homomorphisms can
/// be expressed as elements and elements read back as maps.
template <Field K>
struct HomData {
    GradedModule<K> module; // Hom(M, N), finitely presented
    ModuleMap<K> incl;      // into h0 = (+)_i N(a_i)
    GradedModule<K> h0;
    std::vector<int> block_offsets; // generator offsets of the N-blocks in h0
    GradedModule<K> arg_m, arg_n;
};

template <Field K>
HomData<K> hom_module(const GradedModule<K>& m, const GradedModule<K>& n) {
    const Ctx<K>& ctx = m.ctx();
    size_t gm = m.gens().rank();
    size_t gn = n.gens().rank();
    // h0 = (+)_i N(a_i), generator (i,u) at index i*gn + u
    std::vector<int> h0deg, h0rel_deg;
    for (size_t i = 0; i < gm; ++i)
        for (size_t u = 0; u < gn; ++u)
            h0deg.push_back(n.gens().deg(u) - m.gens().deg(i));
    std::vector<std::vector<Poly<K>>> h0rels(h0deg.size());
    for (size_t i = 0; i < gm; ++i)
        for (size_t c = 0; c < n.rels().cols(); ++c) {
            h0rel_deg.push_back(n.rels().source().deg(c) - m.gens().deg(i));
            for (size_t r = 0; r < h0deg.size(); ++r)
                h0rels[r].push_back(r / gn == i ? n.rels().at(r % gn, c) : Poly<K>());
        }
    GradedModule<K> h0(GradedMatrix<K>(ctx, FreeModule::graded(h0deg),
                                       FreeModule::graded(h0rel_deg), std::move(h0rels)));
    {
        std::vector<VecPoly<K>> cols;
        for (size_t i = 0; i < gm; ++i)
            for (auto& c : n.rel_gb().image_basis()) {
                VecPoly<K> v(gm * gn);
                for (size_t r = 0; r < gn; ++r) v[i * gn + r] = c[r];
                cols.push_back(std::move(v));
            }
        h0.install_gb(std::move(cols));
    }
    // h1 = (+)_j N(b_j) over the relation degrees b_j of M
    size_t rm = m.rels().cols();
    std::vector<int> h1deg, h1rel_deg;
    for (size_t j = 0; j < rm; ++j)
        for (size_t u = 0; u < gn; ++u)
            h1deg.push_back(n.gens().deg(u) - m.rels().source().deg(j));
    std::vector<std::vector<Poly<K>>> h1rels(h1deg.size());
    for (size_t j = 0; j < rm; ++j)
        for (size_t c = 0; c < n.rels().cols(); ++c) {
            h1rel_deg.push_back(n.rels().source().deg(c) - m.rels().source().deg(j));
            for (size_t r = 0; r < h1deg.size(); ++r)
                h1rels[r].push_back(r / gn == j ? n.rels().at(r % gn, c) : Poly<K>());
        }
    GradedModule<K> h1(GradedMatrix<K>(ctx, FreeModule::graded(h1deg),
                                       FreeModule::graded(h1rel_deg), std::move(h1rels)));
    {
        std::vector<VecPoly<K>> cols;
        for (size_t j = 0; j < rm; ++j)
            for (auto& c : n.rel_gb().image_basis()) {
                VecPoly<K> v(rm * gn);
                for (size_t r = 0; r < gn; ++r) v[j * gn + r] = c[r];
                cols.push_back(std::move(v));
            }
        h1.install_gb(std::move(cols));
    }
    // the induced map: (nu_i) -> (sum_i m_{ij} nu_i)_j
    std::vector<std::vector<Poly<K>>> e(h1deg.size(),
                                        std::vector<Poly<K>>(h0deg.size()));
    for (size_t j = 0; j < rm; ++j)
        for (size_t i = 0; i < gm; ++i)
            for (size_t u = 0; u < gn; ++u)
                e[j * gn + u][i * gn + u] = m.rels().at(i, j);
    ModuleMap<K> h(h0, h1,
                   GradedMatrix<K>(ctx, h1.gens(), h0.gens(), std::move(e)),
                   Certify::trusted);
    auto ker = kernel(h);
    auto p = prune(ker.module);
    std::vector<int> offs;
    for (size_t i = 0; i < gm; ++i) offs.push_back((int)(i * gn));
    return {p.module, compose_maps(ker.incl, p.to_old), h0, offs, m, n};
}

/// Express a homomorphism M -> N, given by the images of the generators of
/// M (columns over the generators of N, degree uniform shift `p`), as a
/// column over the generators of Hom(M,N).
template <Field K>
GradedMatrix<K> hom_element(const HomData<K>& h, const GradedMatrix<K>& images, int p) {
    const Ctx<K>& ctx = h.h0.ctx();
    size_t gm = h.arg_m.gens().rank(), gn = h.arg_n.gens().rank();
    if (images.cols() != gm || images.rows() != gn)
        throw std::invalid_argument("hom_element: image shape mismatch");
    std::vector<std::vector<Poly<K>>> col(gm * gn, std::vector<Poly<K>>(1));
    for (size_t i = 0; i < gm; ++i)
        for (size_t u = 0; u < gn; ++u) col[i * gn + u][0] = images.at(u, i);
    GradedMatrix<K> v(ctx, h.h0.gens(), FreeModule::graded({p}), std::move(col));
    return factor_through(h.incl, v);
}

/// Read a degree-p element of Hom(M,N) (column over its generators) back as
/// the matrix of generator images.
template <Field K>
GradedMatrix<K> hom_element_to_images(const HomData<K>& h, const GradedMatrix<K>& elem,
                                      int p) {
    auto v = compose(h.incl.matrix(), elem);
    size_t gm = h.arg_m.gens().rank(), gn = h.arg_n.gens().rank();
    std::vector<std::vector<Poly<K>>> e(gn, std::vector<Poly<K>>(gm));
    for (size_t i = 0; i < gm; ++i)
        for (size_t u = 0; u < gn; ++u) e[u][i] = v.at(i * gn + u, 0);
    return GradedMatrix<K>(h.h0.ctx(), h.arg_n.gens(),
                           h.arg_m.gens().twisted(-p), std::move(e));
}

/// Covariant functoriality: the induced map Hom(P,M) -> Hom(P,N) for
/// phi: M -> N.
template <Field K>
ModuleMap<K> hom_functorial(const HomData<K>& hm, const HomData<K>& hn,
                            const ModuleMap<K>& phi) {
    const Ctx<K>& ctx = phi.ctx();
    size_t gp = hm.arg_m.gens().rank();
    size_t gm = phi.source().gens().rank(), gn = phi.target().gens().rank();
    // blockwise phi on h0(M) -> h0(N)
    std::vector<std::vector<Poly<K>>> e(gp * gn, std::vector<Poly<K>>(gp * gm));
    for (size_t i = 0; i < gp; ++i)
        for (size_t u = 0; u < gn; ++u)
            for (size_t w = 0; w < gm; ++w)
                e[i * gn + u][i * gm + w] = phi.matrix().at(u, w);
    GradedMatrix<K> block(ctx, hn.h0.gens(), hm.h0.gens(), std::move(e));
    auto images = compose(block, hm.incl.matrix());
    auto x = factor_through(hn.incl, images);
    return ModuleMap<K>(hm.module, hn.module, x, Certify::trusted);
}

} // namespace grsat
