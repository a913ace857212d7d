#pragma once

#include "linear_complex.hpp"
#include "regularity.hpp"

namespace grsat {

/// Lift a base-ring polynomial (y-variables only) into the full ring.
template <Field K>
Poly<K> lift_base_poly(const Ctx<K>& ctx, const Poly<K>& bp) {
    std::vector<typename Poly<K>::Term> terms;
    for (auto& [m, c] : bp.terms()) {
        Monomial full = ctx.one_mono();
        for (size_t v = 0; v < m.e.size(); ++v) full.e[ctx.nx() + v] = m.e[v];
        terms.emplace_back(full, c);
    }
    return Poly<K>::make(ctx, std::move(terms));
}

/// R-complex of a module truncated at d: socles are the degree parts, maps
/// the multiplication maps. Auto window is max(reg, d) + 1.
template <Field K>
LinearComplex<K> r_functor(const GradedModule<K>& m, int d,
                           std::optional<int> window_top = std::nullopt,
                           std::optional<int> known_reg_bound = std::nullopt) {
    int reg_bound;
    if (known_reg_bound) {
        reg_bound = *known_reg_bound;
    } else {
        ExtDeg reg = castelnuovo_mumford_reg(m);
        reg_bound = reg.is_minus_inf() ? d - 1 : reg.value();
    }
    int top = window_top ? *window_top : std::max(reg_bound, d) + 1;
    if (top <= reg_bound)
        throw std::invalid_argument("r_functor: window_top must exceed reg M");
    std::vector<BModule<K>> socles;
    for (int i = d; i <= top; ++i) socles.push_back(degree_part_bmodule(m, i).part);
    std::vector<std::vector<BModuleMap<K>>> maps;
    for (int i = d; i < top; ++i) {
        maps.emplace_back();
        for (int t = 0; t < m.ctx().nx(); ++t)
            maps.back().push_back(multiplication_map(m, i, t));
    }
    return LinearComplex<K>(m.ctx(), d, top, std::min(reg_bound, top - 1),
                            std::move(socles), std::move(maps), true);
}

/// Degree-i component of a module map, on the degree-part bases.
template <Field K>
BModuleMap<K> degree_component_of_map(const ModuleMap<K>& phi, int i) {
    const Ctx<K>& ctx = phi.ctx();
    auto src = degree_part_bmodule(phi.source(), i);
    auto tgt = degree_part_bmodule(phi.target(), i);
    const GradedModule<K>& n = phi.target();
    if (ctx.base().is_field()) {
        Mat<K> mat(src.labels.size(), tgt.labels.size(), ctx.zero());
        std::map<std::pair<int, std::vector<int32_t>>, size_t> tindex;
        for (size_t t = 0; t < tgt.labels.size(); ++t)
            tindex[{tgt.labels[t].first, tgt.labels[t].second.e}] = t;
        for (size_t s = 0; s < src.labels.size(); ++s) {
            auto [slot, mono] = src.labels[s];
            VecPoly<K> img(n.gens().rank());
            for (size_t u = 0; u < n.gens().rank(); ++u) {
                const Poly<K>& coef = phi.matrix().at(u, slot);
                if (!coef.is_zero())
                    img[u] = coef.mono_scaled(mono, ctx.one(), ctx.xdeg(mono));
            }
            auto nf = n.rel_gb().normal_form(img);
            for (size_t u = 0; u < nf.size(); ++u)
                for (auto& [mm, cc] : nf[u].terms())
                    mat.at(s, tindex.at({(int)u, mm.e})) = cc;
        }
        return BModuleMap<K>::of_mat(src.part, tgt.part, std::move(mat));
    }
    Ctx<K> bctx = ctx.base_ctx();
    std::map<std::pair<int, std::vector<int32_t>>, size_t> tindex;
    for (size_t t = 0; t < tgt.labels.size(); ++t)
        tindex[{tgt.labels[t].first, tgt.labels[t].second.e}] = t;
    std::vector<std::vector<Poly<K>>> rows(src.labels.size(),
                                           std::vector<Poly<K>>(tgt.labels.size()));
    for (size_t s = 0; s < src.labels.size(); ++s) {
        auto [slot, mono] = src.labels[s];
        for (size_t u = 0; u < n.gens().rank(); ++u) {
            const Poly<K>& coef = phi.matrix().at(u, slot);
            if (coef.is_zero()) continue;
            Poly<K> prod = coef.mono_scaled(mono, ctx.one(), ctx.xdeg(mono));
            for (auto& [mm, cc] : prod.terms()) {
                Monomial xpart = ctx.one_mono(), ypart = mono_one(bctx.nvars());
                for (int v = 0; v < ctx.nx(); ++v) xpart.e[v] = mm.e[v];
                for (int v = 0; v < bctx.nvars(); ++v) ypart.e[v] = mm.e[ctx.nx() + v];
                size_t idx = tindex.at({(int)u, xpart.e});
                auto t = Poly<K>::monomial(bctx, ypart, cc);
                rows[s][idx] = rows[s][idx].is_zero() ? t : rows[s][idx] + t;
            }
        }
    }
    return BModuleMap<K>::of_entries(src.part, tgt.part, rows, Certify::trusted);
}

/// R on morphisms: componentwise degree parts.
template <Field K>
LinearComplexMap<K> r_on_map(const ModuleMap<K>& phi, const LinearComplex<K>& csrc,
                             const LinearComplex<K>& ctgt) {
    LinearComplexMap<K> out{csrc, ctgt, {}};
    int top = std::min(csrc.window_top(), ctgt.window_top());
    for (int i = csrc.d(); i <= top; ++i)
        out.comps.push_back(degree_component_of_map(phi, i));
    return out;
}

/// The sum adjoint (+)_t P_r -> P_{r+1}, (p_t) -> sum mu(x_t)(p_t); it is
/// surjective whenever window_top > reg.
template <Field K>
BModuleMap<K> sum_adjoint(const LinearComplex<K>& c, int i) {
    const Ctx<K>& ctx = c.ctx();
    std::vector<BModule<K>> srcs(ctx.nx(), c.socle(i));
    std::vector<BModule<K>> tgts{c.socle(i + 1)};
    std::vector<std::vector<BModuleMap<K>>> blocks(ctx.nx());
    for (int t = 0; t < ctx.nx(); ++t) blocks[t].push_back(c.mu(i, t));
    return bblock_map(srcs, tgts, blocks);
}

template <Field K>
struct MFunctorResult {
    GradedModule<K> module; // unpruned: generators are the socle coordinates
    std::vector<size_t> block_offset; // generator offset per position i - d
    int d = 0, r = 0;                 // generator blocks cover [d, r]
};

/// M functor: generators one block per socle P_i (i in [d, window_top-1]),
/// descent relations x_t g - mu(x_t)(g), top relations from the kernel of
/// the sum adjoint, plus the lifted B-relations of each socle over a
/// polynomial base.
template <Field K>
MFunctorResult<K> m_functor(const LinearComplex<K>& c) {
    const Ctx<K>& ctx = c.ctx();
    int d = c.d(), r = c.window_top() - 1;
    bool field = ctx.base().is_field();
    MFunctorResult<K> out;
    out.d = d;
    out.r = r;
    std::vector<int> gdegs;
    for (int i = d; i <= r; ++i) {
        out.block_offset.push_back(gdegs.size());
        for (size_t u = 0; u < c.socle(i).ngens(); ++u) gdegs.push_back(i);
    }
    FreeModule gens = FreeModule::graded(gdegs);
    auto off = [&](int i) { return out.block_offset[i - d]; };
    std::vector<int> rdegs;
    std::vector<std::vector<Poly<K>>> e(gens.rank());
    auto add_col = [&](int deg) {
        rdegs.push_back(deg);
        for (auto& row : e) row.emplace_back();
        return rdegs.size() - 1;
    };
    // descent relations for i in [d, r-1]
    for (int i = d; i + 1 <= r; ++i) {
        size_t src_n = c.socle(i).ngens(), tgt_n = c.socle(i + 1).ngens();
        for (size_t u = 0; u < src_n; ++u)
            for (int t = 0; t < ctx.nx(); ++t) {
                size_t col = add_col(i + 1);
                e[off(i) + u][col] = Poly<K>::variable(ctx, t);
                const auto& mu = c.mu(i, t);
                for (size_t w = 0; w < tgt_n; ++w) {
                    Poly<K> coef;
                    if (field) {
                        const K& v = mu.mat().at(u, w);
                        if (!v.is_zero()) coef = Poly<K>::constant(ctx, v);
                    } else {
                        const Poly<K>& v = mu.pmap().matrix().at(w, u);
                        if (!v.is_zero()) coef = lift_base_poly(ctx, v);
                    }
                    if (!coef.is_zero()) e[off(i + 1) + w][col] = -coef;
                }
            }
    }
    // top relations: kernel of the sum adjoint at r
    {
        auto psi = sum_adjoint(c, r);
        auto ker = bkernel(psi);
        size_t pr_n = c.socle(r).ngens();
        for (size_t g = 0; g < ker.module.ngens(); ++g) {
            size_t col = add_col(r + 1);
            for (int t = 0; t < ctx.nx(); ++t)
                for (size_t u = 0; u < pr_n; ++u) {
                    Poly<K> coef;
                    if (field) {
                        const K& v = ker.incl.mat().at(g, t * pr_n + u);
                        if (!v.is_zero())
                            coef = Poly<K>::monomial(ctx, ctx.var_mono(t), v);
                    } else {
                        const Poly<K>& v = ker.incl.pmap().matrix().at(t * pr_n + u, g);
                        if (!v.is_zero())
                            coef = lift_base_poly(ctx, v) * Poly<K>::variable(ctx, t);
                    }
                    if (!coef.is_zero()) {
                        auto& cell = e[off(r) + u][col];
                        cell = cell.is_zero() ? coef : cell + coef;
                    }
                }
        }
    }
    // lifted socle relations over a polynomial base
    if (!field) {
        for (int i = d; i <= r; ++i) {
            const auto& rels = c.socle(i).rep().rels();
            for (size_t cc = 0; cc < rels.cols(); ++cc) {
                size_t col = add_col(i);
                for (size_t u = 0; u < rels.rows(); ++u)
                    if (!rels.at(u, cc).is_zero())
                        e[off(i) + u][col] = lift_base_poly(ctx, rels.at(u, cc));
            }
        }
    }
    out.module = GradedModule<K>(
        GradedMatrix<K>(ctx, gens, FreeModule::graded(rdegs), std::move(e)));
    return out;
}

/// M on morphisms, from the socle components.
template <Field K>
ModuleMap<K> m_on_map(const LinearComplexMap<K>& phi, const MFunctorResult<K>& msrc,
                      const MFunctorResult<K>& mtgt) {
    const Ctx<K>& ctx = msrc.module.ctx();
    bool field = ctx.base().is_field();
    std::vector<std::vector<Poly<K>>> e(mtgt.module.gens().rank(),
                                        std::vector<Poly<K>>(msrc.module.gens().rank()));
    for (int i = msrc.d; i <= std::min(msrc.r, mtgt.r); ++i) {
        const auto& f = phi.comp(i);
        size_t sn = phi.source.socle(i).ngens(), tn = phi.target.socle(i).ngens();
        for (size_t u = 0; u < sn; ++u)
            for (size_t w = 0; w < tn; ++w) {
                Poly<K> coef;
                if (field) {
                    const K& v = f.mat().at(u, w);
                    if (!v.is_zero()) coef = Poly<K>::constant(ctx, v);
                } else {
                    const Poly<K>& v = f.pmap().matrix().at(w, u);
                    if (!v.is_zero()) coef = lift_base_poly(ctx, v);
                }
                if (!coef.is_zero())
                    e[mtgt.block_offset[i - mtgt.d] + w]
                     [msrc.block_offset[i - msrc.d] + u] = coef;
            }
    }
    return ModuleMap<K>(msrc.module, mtgt.module,
                        GradedMatrix<K>(ctx, mtgt.module.gens(), msrc.module.gens(),
                                        std::move(e)),
                        Certify::checked);
}

/// Counit M(R(M)) -> M: the block-i generator carrying the degree-part
/// label (slot, alpha) goes to the element x^alpha * e_slot of M. An
/// isomorphism whenever the window exceeds reg M.
template <Field K>
ModuleMap<K> counit(const MFunctorResult<K>& mf, const GradedModule<K>& m) {
    const Ctx<K>& ctx = m.ctx();
    std::vector<std::vector<Poly<K>>> e(m.gens().rank(),
                                        std::vector<Poly<K>>(mf.module.gens().rank()));
    for (int i = mf.d; i <= mf.r; ++i) {
        auto dp = degree_part_bmodule(m, i);
        for (size_t u = 0; u < dp.labels.size(); ++u) {
            auto [slot, mono] = dp.labels[u];
            e[slot][mf.block_offset[i - mf.d] + u] =
                Poly<K>::monomial(ctx, mono, ctx.one());
        }
    }
    return ModuleMap<K>(mf.module, m,
                        GradedMatrix<K>(ctx, m.gens(), mf.module.gens(), std::move(e)),
                        Certify::checked);
}

template <Field K>
struct WindowExtension {
    LinearComplex<K> complex;
    LinearComplexMap<K> unit; // from the original complex
};

/// Extend the stored window to new_top by the round trip R(M(C)); the unit
/// isomorphism identifies the original window inside the extension.
template <Field K>
WindowExtension<K> extend_window(const LinearComplex<K>& c, int new_top) {
    const Ctx<K>& ctx = c.ctx();
    int d = c.d(), r = c.window_top() - 1;
    auto mf = m_functor(c);
    auto c2 = r_functor(mf.module, d, new_top, c.reg_bound());
    LinearComplexMap<K> unit{c, c2, {}};
    bool field = ctx.base().is_field();
    for (int i = d; i <= r; ++i) {
        // generator (i,u) of M(C), expressed in the degree-part basis
        size_t sn = c.socle(i).ngens();
        auto dp = degree_part_bmodule(mf.module, i);
        std::vector<std::vector<Poly<K>>> rows(sn,
                                               std::vector<Poly<K>>(dp.labels.size()));
        std::map<std::pair<int, std::vector<int32_t>>, size_t> tindex;
        for (size_t t = 0; t < dp.labels.size(); ++t)
            tindex[{dp.labels[t].first, dp.labels[t].second.e}] = t;
        Ctx<K> bctx = ctx.base_ctx();
        for (size_t u = 0; u < sn; ++u) {
            int slot = (int)(mf.block_offset[i - d] + u);
            if (field) {
                VecPoly<K> v(mf.module.gens().rank());
                v[slot] = Poly<K>::constant(ctx, ctx.one());
                auto nf = mf.module.rel_gb().normal_form(v);
                for (size_t w = 0; w < nf.size(); ++w)
                    for (auto& [mm, cc] : nf[w].terms())
                        rows[u][tindex.at({(int)w, mm.e})] =
                            Poly<K>::constant(bctx, cc);
            } else {
                rows[u][tindex.at({slot, ctx.one_mono().e})] =
                    Poly<K>::constant(bctx, ctx.one());
            }
        }
        unit.comps.push_back(
            BModuleMap<K>::of_entries(c.socle(i), c2.socle(i), rows, Certify::trusted));
    }
    // top component: write each socle generator at r+1 through the sum
    // adjoint, then map into degree r+1 of M(C)
    {
        auto psi = sum_adjoint(c, r);
        auto section = bfactor_through(psi, BModuleMap<K>::identity(c.socle(r + 1)));
        size_t sn = c.socle(r + 1).ngens(), pr_n = c.socle(r).ngens();
        auto dp = degree_part_bmodule(mf.module, r + 1);
        std::map<std::pair<int, std::vector<int32_t>>, size_t> tindex;
        for (size_t t = 0; t < dp.labels.size(); ++t)
            tindex[{dp.labels[t].first, dp.labels[t].second.e}] = t;
        Ctx<K> bctx = ctx.base_ctx();
        std::vector<std::vector<Poly<K>>> rows(sn,
                                               std::vector<Poly<K>>(dp.labels.size()));
        for (size_t q = 0; q < sn; ++q) {
            // element sum_t x_t * (p_t at block r) of M(C)
            VecPoly<K> v(mf.module.gens().rank());
            for (int t = 0; t < ctx.nx(); ++t)
                for (size_t u = 0; u < pr_n; ++u) {
                    Poly<K> coef;
                    if (field) {
                        const K& s = section.mat().at(q, t * pr_n + u);
                        if (!s.is_zero())
                            coef = Poly<K>::monomial(ctx, ctx.var_mono(t), s);
                    } else {
                        const Poly<K>& s = section.pmap().matrix().at(t * pr_n + u, q);
                        if (!s.is_zero())
                            coef = lift_base_poly(ctx, s) * Poly<K>::variable(ctx, t);
                    }
                    if (coef.is_zero()) continue;
                    size_t slot = mf.block_offset[r - d] + u;
                    v[slot] = v[slot].is_zero() ? coef : v[slot] + coef;
                }
            if (field) {
                auto nf = mf.module.rel_gb().normal_form(v);
                for (size_t w = 0; w < nf.size(); ++w)
                    for (auto& [mm, cc] : nf[w].terms())
                        rows[q][tindex.at({(int)w, mm.e})] =
                            Poly<K>::constant(bctx, cc);
            } else {
                for (size_t w = 0; w < v.size(); ++w)
                    for (auto& [mm, cc] : v[w].terms()) {
                        Monomial xpart = ctx.one_mono(), ypart = mono_one(bctx.nvars());
                        for (int vv = 0; vv < ctx.nx(); ++vv) xpart.e[vv] = mm.e[vv];
                        for (int vv = 0; vv < bctx.nvars(); ++vv)
                            ypart.e[vv] = mm.e[ctx.nx() + vv];
                        size_t idx = tindex.at({(int)w, xpart.e});
                        auto term = Poly<K>::monomial(bctx, ypart, cc);
                        rows[q][idx] = rows[q][idx].is_zero() ? term : rows[q][idx] + term;
                    }
            }
        }
        unit.comps.push_back(BModuleMap<K>::of_entries(c.socle(r + 1), c2.socle(r + 1),
                                                       rows, Certify::trusted));
    }
    return {std::move(c2), std::move(unit)};
}

/// Linear regularity of a complex from its top-two strands. The strand
/// H^a(C)_{a+n+1} is Ext^0(B, M(C))_a and contributes a; by the same
/// key-lemma indexing, H^a(C)_{a+n} is Ext^1(B, M(C))_{a-1} and contributes
/// a-1 (reading it at a itself would overshoot linreg M(C) by one). The
/// truncated variant keeps contributions >= d, which subsumes the
/// lowest-map purely-linear-kernel tail rule.
template <Field K>
ExtDeg complex_linear_regularity(const LinearComplex<K>& c, std::optional<int> d_rule) {
    if (d_rule && *d_rule != c.d())
        throw std::invalid_argument("complex_linear_regularity: d must equal C.d");
    const Ctx<K>& ctx = c.ctx();
    ExtDeg best = ExtDeg::minus_inf();
    for (int a = std::min(c.reg_bound(), c.window_top() - 1); a >= c.d(); --a) {
        if (!strand_cohomology(c, a, ctx.nx()).is_zero())
            best = ExtDeg::max(best, ExtDeg::of(a));
        if (!strand_cohomology(c, a, ctx.n()).is_zero())
            best = ExtDeg::max(best, ExtDeg::of(a - 1));
        if (best >= ExtDeg::of(a)) break; // lower positions contribute less
    }
    if (d_rule) return best.truncated(*d_rule);
    return best;
}

template <Field K>
struct SaturateResult {
    LinearComplex<K> complex;
    LinearComplexMap<K> eta;
    int steps = 0;
};

/// Purely linear saturation truncated in degree d = C.d: keep positions
/// above linreg_d, rebuild downward by purely linear kernels; eta comes
/// from the universal property. steps = max{linreg_d - d + 1, 0}.
template <Field K>
SaturateResult<K> saturate_complex(const LinearComplex<K>& c_in) {
    const Ctx<K>& ctx = c_in.ctx();
    int d = c_in.d();
    ExtDeg lr = complex_linear_regularity(c_in, d);
    if (lr.is_minus_inf())
        return {c_in, LinearComplexMap<K>::identity(c_in), 0};
    int r = lr.value();
    int steps = r - d + 1;
    // make sure the map at position r+1 is stored
    const LinearComplex<K>* base = &c_in;
    std::optional<WindowExtension<K>> ext;
    LinearComplexMap<K> into_base = LinearComplexMap<K>::identity(c_in);
    if (c_in.window_top() < r + 2) {
        ext = extend_window(c_in, r + 2);
        base = &ext->complex;
        into_base = ext->unit;
    }
    int top2 = base->window_top();
    int nx = ctx.nx();
    // rebuild socles and maps downward
    std::vector<BModule<K>> socles(top2 - d + 1);
    std::vector<std::vector<BModuleMap<K>>> maps(top2 - d);
    for (int i = r + 1; i <= top2; ++i) socles[i - d] = base->socle(i);
    for (int i = r + 1; i < top2; ++i) maps[i - d] = base->step(i);
    std::vector<BModuleMap<K>> incls(top2 - d); // PLK inclusion per rebuilt i
    for (int i = r; i >= d; --i) {
        LinearComplex<K> partial(ctx, i + 1, top2, std::min(base->reg_bound(), top2 - 1),
                                 std::vector<BModule<K>>(socles.begin() + (i + 1 - d),
                                                         socles.end()),
                                 std::vector<std::vector<BModuleMap<K>>>(
                                     maps.begin() + (i + 1 - d), maps.end()),
                                 false);
        auto plk = purely_linear_kernel(partial, i + 1);
        socles[i - d] = plk.socle;
        maps[i - d] = plk.maps;
        incls[i - d] = plk.incl;
    }
    LinearComplex<K> sat(ctx, d, top2, base->reg_bound(), socles, maps, false);
    // eta by descending universal-property squares
    LinearComplexMap<K> eta{*base, sat, {}};
    eta.comps.resize(top2 - d + 1);
    for (int i = r + 1; i <= top2; ++i)
        eta.comps[i - d] = BModuleMap<K>::identity(base->socle(i));
    for (int i = r; i >= d; --i) {
        // tuple (mu_base(x_t) then eta^{i+1})_t lands in the compat kernel
        std::vector<BModule<K>> tgts(nx, socles[i + 1 - d]);
        std::vector<std::vector<BModuleMap<K>>> blocks(1);
        for (int t = 0; t < nx; ++t)
            blocks[0].push_back(bcompose(base->mu(i, t), eta.comps[i + 1 - d]));
        auto tuple = bblock_map({base->socle(i)}, tgts, blocks);
        eta.comps[i - d] = bfactor_through(incls[i - d], tuple);
    }
    // restrict everything back to the original window
    int orig_top = c_in.window_top();
    LinearComplex<K> trimmed = sat.trimmed(orig_top);
    LinearComplexMap<K> eta_out{c_in, trimmed, {}};
    for (int i = d; i <= orig_top; ++i)
        eta_out.comps.push_back(
            bcompose(into_base.comps[i - d], eta.comps[i - d]));
    return {std::move(trimmed), std::move(eta_out), steps};
}

} // namespace grsat
