#pragma once

#include "hom.hpp"

namespace grsat {

enum class PowerKind { plain, frobenius, tensor };

/// A presentation of m^l, m^[l], or (x)^l m together with the image in S of
/// each generator (the polynomial it stands for).
template <Field K>
struct PowerIdeal {
    GradedModule<K> module;
    std::vector<Poly<K>> gen_images;
    int power = 0;
    PowerKind kind = PowerKind::plain;
};

template <Field K>
PowerIdeal<K> irrelevant_power(const Ctx<K>& ctx, int l, PowerKind kind) {
    if (l < 0) throw std::invalid_argument("irrelevant_power: negative power");
    if (l == 0 || ctx.nx() == 0) {
        PowerIdeal<K> p;
        p.module = GradedModule<K>::ring(ctx);
        p.gen_images = {Poly<K>::constant(ctx, ctx.one())};
        p.power = l;
        p.kind = kind;
        return p;
    }
    auto of_polys = [&](std::vector<Poly<K>> polys, int deg) {
        std::vector<std::vector<Poly<K>>> row(1);
        row[0] = polys;
        GradedMatrix<K> gens(ctx, FreeModule::standard(1),
                             FreeModule::standard(polys.size(), deg), std::move(row));
        auto rels = syzygy_matrix(gens);
        PowerIdeal<K> p;
        p.module = GradedModule<K>(rels);
        p.gen_images = std::move(polys);
        p.power = l;
        p.kind = kind;
        return p;
    };
    switch (kind) {
        case PowerKind::plain: {
            std::vector<Poly<K>> polys;
            for (auto& m : monomial_basis(ctx, l))
                polys.push_back(Poly<K>::monomial(ctx, m, ctx.one()));
            return of_polys(std::move(polys), l);
        }
        case PowerKind::frobenius: {
            std::vector<Poly<K>> polys;
            for (int j = 0; j < ctx.nx(); ++j) {
                Monomial m = ctx.one_mono();
                m.e[j] = l;
                polys.push_back(Poly<K>::monomial(ctx, m, ctx.one()));
            }
            return of_polys(std::move(polys), l);
        }
        case PowerKind::tensor: {
            PowerIdeal<K> acc = irrelevant_power(ctx, 1, PowerKind::plain);
            PowerIdeal<K> one = acc;
            for (int k = 2; k <= l; ++k) {
                GradedModule<K> t = tensor(acc.module, one.module);
                std::vector<Poly<K>> images;
                for (auto& a : acc.gen_images)
                    for (auto& b : one.gen_images) images.push_back(a * b);
                acc.module = std::move(t);
                acc.gen_images = std::move(images);
            }
            acc.power = l;
            acc.kind = PowerKind::tensor;
            return acc;
        }
    }
    throw std::logic_error("irrelevant_power: unreachable");
}

template <Field K>
struct HomFromPower {
    GradedModule<K> module; // Hom_{>=d}(m^l, M)
    ModuleMap<K> eta;       // from the (truncated) input
    HomData<K> hom;         // untruncated internal Hom data
    std::optional<TruncateResult<K>> trunc; // truncation of hom.module, if d given
};

/// Hom_{>=d}(P, M) for a power ideal P, with the natural map
/// eta: g -> (f -> f*g) expressed over the computed presentation.
template <Field K>
HomFromPower<K> hom_from_power(const GradedModule<K>& m, const PowerIdeal<K>& p,
                               std::optional<int> d) {
    if (d && *d > 0) throw std::invalid_argument("hom_from_power: d must be <= 0");
    const Ctx<K>& ctx = m.ctx();
    HomData<K> h = hom_module(p.module, m);
    size_t gp = p.module.gens().rank();
    size_t gm = m.gens().rank();
    // eta(g_k) as an element of h0 = (+)_i M(deg_i): block i holds f_i * g_k
    std::vector<std::vector<Poly<K>>> cols(gp * gm,
                                           std::vector<Poly<K>>(gm));
    for (size_t k = 0; k < gm; ++k)
        for (size_t i = 0; i < gp; ++i)
            cols[i * gm + k][k] = p.gen_images[i];
    GradedMatrix<K> v(ctx, h.h0.gens(), m.gens(), std::move(cols));
    GradedMatrix<K> eta_mat = factor_through(h.incl, v);
    if (!d) {
        ModuleMap<K> eta(m, h.module, eta_mat, Certify::checked);
        return {h.module, std::move(eta), h, std::nullopt};
    }
    auto t = truncate(h.module, *d);
    auto expressed = factor_through(t.incl, eta_mat);
    ModuleMap<K> eta(m, t.module, expressed, Certify::checked);
    return {t.module, std::move(eta), h, t};
}

} // namespace grsat
