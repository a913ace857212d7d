#pragma once

#include "degree_parts.hpp"
#include "koszul.hpp"

namespace grsat {

/// Orientation and sign conventions for E = /\V and omega_E = /\W:
/// /\-bases ordered lexicographically by index set, contraction by e_t acts
/// with the removal sign, /\^{n+1}W = B via x_0^...^x_n -> 1 and
/// /\^n W = V via x_0^..x^_j..^x_n -> (-1)^j e_j. With these choices the
/// top component of a differential is the plain stacked tuple
/// p -> (mu(x_0)p, ..., mu(x_n)p).
template <Field K>
struct ExteriorContext {
    Ctx<K> ctx;

    int n_plus_1() const { return ctx.nx(); }
    std::vector<std::vector<int>> wedge_basis(int k) const {
        return index_subsets(ctx.nx(), k);
    }
    K contraction_sign(const std::vector<int>& T, int t) const {
        return ctx.scalar(removal_sign(T, t));
    }
    K orientation_sign(int j) const { return ctx.scalar(j % 2 == 0 ? 1 : -1); }
};

/// A window [d, window_top] of a linear complex over E, stored purely by
/// socle B-modules P_i (C^i = omega_E (x) P_i) and the n+1 multiplication
/// maps mu^i(x_t): P_i -> P_{i+1} per step. H^a vanishes for a > reg_bound
/// by contract.
template <Field K>
class LinearComplex {
public:
    LinearComplex() = default;
    LinearComplex(Ctx<K> ctx, int d, int window_top, int reg_bound,
                  std::vector<BModule<K>> socles,
                  std::vector<std::vector<BModuleMap<K>>> maps, bool check = true)
        : ctx_(std::move(ctx)), d_(d), top_(window_top), reg_bound_(reg_bound),
          socles_(std::move(socles)), maps_(std::move(maps)) {
        if (reg_bound_ >= top_)
            throw std::invalid_argument("LinearComplex: need reg_bound < window_top");
        if ((int)socles_.size() != top_ - d_ + 1 || (int)maps_.size() != top_ - d_)
            throw std::invalid_argument("LinearComplex: window shape mismatch");
        for (auto& step : maps_)
            if ((int)step.size() != ctx_.nx())
                throw std::invalid_argument("LinearComplex: need n+1 maps per step");
        if (check && !complex_condition())
            throw std::invalid_argument("LinearComplex: complex condition fails");
    }

    const Ctx<K>& ctx() const { return ctx_; }
    int d() const { return d_; }
    int window_top() const { return top_; }
    int reg_bound() const { return reg_bound_; }

    const BModule<K>& socle(int i) const { return socles_.at(i - d_); }
    /// mu^i(x_t): P_i -> P_{i+1}, defined for d <= i < window_top.
    const BModuleMap<K>& mu(int i, int t) const { return maps_.at(i - d_).at(t); }
    const std::vector<BModuleMap<K>>& step(int i) const { return maps_.at(i - d_); }

    /// mu^{i+1}(x_a) o mu^i(x_b) symmetric in (a,b) for every seam.
    bool complex_condition() const {
        for (int i = d_; i + 1 < top_; ++i)
            for (int a = 0; a < ctx_.nx(); ++a)
                for (int b = a + 1; b < ctx_.nx(); ++b) {
                    auto ab = bcompose(mu(i, b), mu(i + 1, a));
                    auto ba = bcompose(mu(i, a), mu(i + 1, b));
                    if (!bmaps_equal(ab, ba)) return false;
                }
        return true;
    }

    /// Trim the stored window down to new_top (requires new_top > reg_bound).
    LinearComplex trimmed(int new_top) const {
        if (new_top > top_) throw std::invalid_argument("trimmed: cannot grow");
        if (new_top <= reg_bound_)
            throw std::invalid_argument("trimmed: would cut below reg_bound");
        std::vector<BModule<K>> socles(socles_.begin(),
                                       socles_.begin() + (new_top - d_ + 1));
        std::vector<std::vector<BModuleMap<K>>> maps(maps_.begin(),
                                                     maps_.begin() + (new_top - d_));
        return LinearComplex(ctx_, d_, new_top, reg_bound_, std::move(socles),
                             std::move(maps), false);
    }

private:
    Ctx<K> ctx_;
    int d_ = 0, top_ = 1, reg_bound_ = 0;
    std::vector<BModule<K>> socles_;
    std::vector<std::vector<BModuleMap<K>>> maps_;
};

inline long e_dim(int nx, int k) { return binomial(nx, k); }

/// Component X -> block_t of a map into a direct sum of `copies` equal
/// blocks, by column slicing.
template <Field K>
BModuleMap<K> bsplit_target_component(const BModuleMap<K>& f, const BModule<K>& block,
                                      size_t copies, size_t which) {
    if (f.field_case()) {
        size_t w = block.dim();
        Mat<K> m(f.mat().rows(), w, block.bctx().zero());
        for (size_t r = 0; r < f.mat().rows(); ++r)
            for (size_t cc = 0; cc < w; ++cc)
                m.at(r, cc) = f.mat().at(r, which * w + cc);
        return BModuleMap<K>::of_mat(f.source(), block, std::move(m));
    }
    size_t w = block.ngens();
    auto& gm = f.pmap().matrix();
    std::vector<std::vector<Poly<K>>> e(w, std::vector<Poly<K>>(gm.cols()));
    for (size_t r = 0; r < w; ++r)
        for (size_t cc = 0; cc < gm.cols(); ++cc)
            e[r][cc] = gm.at(which * w + r, cc);
    GradedMatrix<K> sub(gm.ctx(), block.rep().gens(), gm.source(), std::move(e));
    return BModuleMap<K>::of_map(f.source(), block,
                                 ModuleMap<K>(f.pmap().source(), block.rep(),
                                              std::move(sub), Certify::trusted));
}

/// Factor g through the injective map incl (g = h o incl for a unique h).
template <Field K>
BModuleMap<K> bfactor_through(const BModuleMap<K>& incl, const BModuleMap<K>& g) {
    if (g.field_case()) {
        const Ctx<K>& c = g.source().bctx();
        Mat<K> h(g.mat().rows(), incl.mat().rows(), c.zero());
        for (size_t r = 0; r < g.mat().rows(); ++r) {
            std::vector<K> row(g.mat().cols());
            for (size_t j = 0; j < g.mat().cols(); ++j) row[j] = g.mat().at(r, j);
            std::vector<K> x;
            if (!solve_left(incl.mat(), row, x, c.zero(), c.one()))
                throw std::invalid_argument("bfactor_through: not in the image");
            for (size_t j = 0; j < x.size(); ++j) h.at(r, j) = x[j];
        }
        return BModuleMap<K>::of_mat(g.source(), incl.source(), std::move(h));
    }
    auto x = factor_through(incl.pmap(), g.pmap().matrix());
    return BModuleMap<K>::of_map(
        g.source(), incl.source(),
        ModuleMap<K>(g.pmap().source(), incl.pmap().source(), x, Certify::trusted));
}

/// The /\-graded component of the differential at cohomological position i,
/// internal degree i+k: d_k: /\^k W (x) P_i -> /\^{k-1} W (x) P_{i+1},
/// x_T (x) p -> sum sign(t,T) x_{T-t} (x) mu^i(x_t)(p).
template <Field K>
BModuleMap<K> strand_differential(const LinearComplex<K>& c, int i, int k) {
    const Ctx<K>& ctx = c.ctx();
    ExteriorContext<K> e{ctx};
    auto src_idx = e.wedge_basis(k);
    auto tgt_idx = e.wedge_basis(k - 1);
    const BModule<K>& p = c.socle(i);
    const BModule<K>& q = c.socle(i + 1);
    std::vector<BModule<K>> srcs(src_idx.size(), p);
    std::vector<BModule<K>> tgts(tgt_idx.size(), q);
    if (srcs.empty() || tgts.empty()) {
        // degenerate wedge degree: the zero map between the sums
        BModule<K> zs = p.power_copies(src_idx.size());
        BModule<K> zt = q.power_copies(tgt_idx.size());
        return BModuleMap<K>::zero_map(zs, zt);
    }
    std::vector<std::vector<BModuleMap<K>>> blocks(
        srcs.size(), std::vector<BModuleMap<K>>(tgts.size()));
    for (size_t s = 0; s < srcs.size(); ++s)
        for (size_t t = 0; t < tgts.size(); ++t)
            blocks[s][t] = BModuleMap<K>::zero_map(p, q);
    for (size_t s = 0; s < src_idx.size(); ++s)
        for (int t : src_idx[s]) {
            size_t ti = subset_index(tgt_idx, without(src_idx[s], t));
            blocks[s][ti] = bscaled(c.mu(i, t), e.contraction_sign(src_idx[s], t));
        }
    return bblock_map(srcs, tgts, blocks);
}

/// H^a(C)_{a+s} as a B-module: homology of
/// /\^{s+1}W (x) P_{a-1} -> /\^s W (x) P_a -> /\^{s-1} W (x) P_{a+1}.
template <Field K>
BModule<K> strand_cohomology(const LinearComplex<K>& c, int a, int s) {
    const Ctx<K>& ctx = c.ctx();
    if (a < c.d() || a + 1 > c.window_top())
        throw std::invalid_argument("strand_cohomology: position outside window");
    if (s < 0 || s > ctx.nx())
        throw std::invalid_argument("strand_cohomology: wedge degree out of range");
    Ctx<K> bctx = ctx.base_ctx();
    BModule<K> mid = c.socle(a).power_copies(e_dim(ctx.nx(), s));
    BModuleMap<K> out =
        s == 0 ? BModuleMap<K>::zero_map(mid, BModule<K>::zero_module(bctx))
               : strand_differential(c, a, s);
    BModuleMap<K> in =
        a == c.d()
            ? BModuleMap<K>::zero_map(BModule<K>::zero_module(bctx), mid)
            : strand_differential(c, a - 1, s + 1);
    return bhomology(in, out);
}

/// Stacked adjoint p -> (mu(x_0)p, ..., mu(x_n)p) of the step at i; the map
/// at i is purely linear iff this is injective.
template <Field K>
BModuleMap<K> stacked_adjoint(const LinearComplex<K>& c, int i) {
    const Ctx<K>& ctx = c.ctx();
    std::vector<BModule<K>> srcs{c.socle(i)};
    std::vector<BModule<K>> tgts(ctx.nx(), c.socle(i + 1));
    std::vector<std::vector<BModuleMap<K>>> blocks(1);
    for (int t = 0; t < ctx.nx(); ++t) blocks[0].push_back(c.mu(i, t));
    return bblock_map(srcs, tgts, blocks);
}

template <Field K>
bool is_purely_linear(const LinearComplex<K>& c, int i) {
    return bkernel(stacked_adjoint(c, i)).module.is_zero();
}

template <Field K>
struct PurelyLinearKernel {
    BModule<K> socle;                 // new socle, one position below
    std::vector<BModuleMap<K>> maps;  // its n+1 multiplication maps into P_i
    BModuleMap<K> incl;               // into (+)_t P_i (the V (x) P_i coordinates)
};

/// The purely linear kernel of the (purely linear) map at position i. In
/// the orientation coordinates the socle is the compatibility kernel
/// {(q_0..q_n) : mu(x_a) q_b = mu(x_b) q_a} inside V (x) P_i, with the new
/// maps the coordinate projections. With require_purely_linear = false the
/// construction is carried out regardless (the degree-(i+n) kernel exists
/// for any map; only the universal property needs pure linearity).
template <Field K>
PurelyLinearKernel<K> purely_linear_kernel(const LinearComplex<K>& c, int i,
                                           bool require_purely_linear = true) {
    const Ctx<K>& ctx = c.ctx();
    if (require_purely_linear) {
        auto k = bkernel(stacked_adjoint(c, i));
        if (!k.module.is_zero())
            throw std::invalid_argument(
                "purely_linear_kernel: map is not purely linear (kernel ngens " +
                std::to_string(k.module.ngens()) + ")");
    }
    int nx = ctx.nx();
    const BModule<K>& p = c.socle(i);
    const BModule<K>& q = c.socle(i + 1);
    std::vector<BModule<K>> srcs(nx, p);
    // one target block per pair a < b
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < nx; ++a)
        for (int b = a + 1; b < nx; ++b) pairs.emplace_back(a, b);
    BModuleMap<K> phi;
    if (pairs.empty()) {
        // n = 0: every tuple is compatible
        BModule<K> src = p.power_copies(nx);
        phi = BModuleMap<K>::zero_map(src, BModule<K>::zero_module(ctx.base_ctx()));
    } else {
        std::vector<BModule<K>> tgts(pairs.size(), q);
        std::vector<std::vector<BModuleMap<K>>> blocks(
            nx, std::vector<BModuleMap<K>>(pairs.size()));
        for (int j = 0; j < nx; ++j)
            for (size_t pi = 0; pi < pairs.size(); ++pi) {
                auto [a, b] = pairs[pi];
                if (j == b) blocks[j][pi] = c.mu(i, a);
                else if (j == a) blocks[j][pi] = bscaled(c.mu(i, b), ctx.scalar(-1));
                else blocks[j][pi] = BModuleMap<K>::zero_map(p, q);
            }
        phi = bblock_map(srcs, tgts, blocks);
    }
    auto ker = bkernel(phi);
    PurelyLinearKernel<K> out;
    out.socle = ker.module;
    out.incl = ker.incl;
    out.maps.reserve(nx);
    for (int t = 0; t < nx; ++t)
        out.maps.push_back(bsplit_target_component(ker.incl, p, nx, t));
    return out;
}

/// Morphism of linear complexes, stored by socle components on the shared
/// window. Chain condition: component o mu_target = mu_source o component.
template <Field K>
struct LinearComplexMap {
    LinearComplex<K> source, target;
    std::vector<BModuleMap<K>> comps; // index i - d

    const BModuleMap<K>& comp(int i) const { return comps.at(i - source.d()); }

    bool chain_condition() const {
        int top = std::min(source.window_top(), target.window_top());
        for (int i = source.d(); i < top; ++i)
            for (int t = 0; t < source.ctx().nx(); ++t) {
                auto lhs = bcompose(comp(i), target.mu(i, t));
                auto rhs = bcompose(source.mu(i, t), comp(i + 1));
                if (!bmaps_equal(lhs, rhs)) return false;
            }
        return true;
    }

    bool is_iso() const {
        for (auto& f : comps)
            if (!b_is_iso(f)) return false;
        return true;
    }

    static LinearComplexMap identity(const LinearComplex<K>& c) {
        LinearComplexMap m{c, c, {}};
        for (int i = c.d(); i <= c.window_top(); ++i)
            m.comps.push_back(BModuleMap<K>::identity(c.socle(i)));
        return m;
    }
};

template <Field K>
LinearComplexMap<K> compose_complex_maps(const LinearComplexMap<K>& g,
                                         const LinearComplexMap<K>& f) {
    // g after f
    LinearComplexMap<K> out{f.source, g.target, {}};
    size_t len = std::min(f.comps.size(), g.comps.size());
    for (size_t i = 0; i < len; ++i)
        out.comps.push_back(bcompose(f.comps[i], g.comps[i]));
    return out;
}

} // namespace grsat
