#pragma once

#include "graded_module.hpp"
#include "linalg.hpp"

namespace grsat {

/// Finitely presented module over the base ring B. Over a field base this
/// is a plain dimension (constructions always hand over reduced
/// coordinates); over a polynomial base it is a graded module over the
/// base context (every generator in degree 0).
template <Field K>
class BModule {
public:
    BModule() = default;

    static BModule vector_space(Ctx<K> bctx, long dim) {
        BModule b;
        b.bctx_ = std::move(bctx);
        b.field_ = true;
        b.dim_ = dim;
        return b;
    }
    static BModule of_module(GradedModule<K> rep) {
        BModule b;
        b.bctx_ = rep.ctx();
        b.field_ = false;
        b.rep_ = std::move(rep);
        return b;
    }
    /// Presentation by relation columns over B (entries are y-polynomials;
    /// constants over a field base, where the quotient dimension is taken).
    static BModule from_presentation(const Ctx<K>& bctx, size_t ngens,
                                     std::vector<VecPoly<K>> rel_cols) {
        if (bctx.base().is_field()) {
            Mat<K> m(rel_cols.size(), ngens, bctx.zero());
            for (size_t c = 0; c < rel_cols.size(); ++c)
                for (size_t r = 0; r < ngens; ++r)
                    if (!rel_cols[c][r].is_zero()) m.at(c, r) = rel_cols[c][r].unit_value();
            return vector_space(bctx, (long)ngens - (long)m.rank());
        }
        std::vector<std::vector<Poly<K>>> e(ngens, std::vector<Poly<K>>(rel_cols.size()));
        for (size_t c = 0; c < rel_cols.size(); ++c)
            for (size_t r = 0; r < ngens; ++r) e[r][c] = rel_cols[c][r];
        return of_module(GradedModule<K>(
            GradedMatrix<K>(bctx, FreeModule::standard(ngens),
                            FreeModule::standard(rel_cols.size()), std::move(e))));
    }
    static BModule zero_module(const Ctx<K>& bctx) {
        if (bctx.base().is_field()) return vector_space(bctx, 0);
        return of_module(GradedModule<K>::zero(bctx));
    }

    const Ctx<K>& bctx() const { return bctx_; }
    bool field_case() const { return field_; }
    long dim() const {
        if (!field_) throw std::logic_error("BModule: dim on polynomial base");
        return dim_;
    }
    const GradedModule<K>& rep() const {
        if (field_) throw std::logic_error("BModule: rep on field base");
        return *rep_;
    }

    size_t ngens() const { return field_ ? (size_t)dim_ : rep_->gens().rank(); }
    bool is_zero() const { return field_ ? dim_ == 0 : rep_->is_zero(); }

    BModule direct_sum(const BModule& o) const {
        if (field_) return vector_space(bctx_, dim_ + o.dim_);
        return of_module(grsat::direct_sum(*rep_, *o.rep_).module);
    }

    /// B^{copies} (x) this, used for exterior-power layers. Folds exactly
    /// like bblock_map so shapes line up.
    BModule power_copies(size_t copies) const {
        if (field_) return vector_space(bctx_, dim_ * (long)copies);
        if (copies == 0) return zero_module(bctx_);
        BModule acc = *this;
        for (size_t i = 1; i < copies; ++i) acc = acc.direct_sum(*this);
        return acc;
    }

private:
    Ctx<K> bctx_;
    bool field_ = true;
    long dim_ = 0;
    std::optional<GradedModule<K>> rep_;
};

/// B-linear map in row convention: the image of source coordinate i is the
/// i-th row applied to the target coordinates.
template <Field K>
class BModuleMap {
public:
    BModuleMap() = default;

    static BModuleMap of_mat(BModule<K> src, BModule<K> tgt, Mat<K> m) {
        if ((long)m.rows() != src.dim() || (long)m.cols() != tgt.dim())
            throw std::invalid_argument("BModuleMap: shape mismatch");
        BModuleMap f;
        f.src_ = std::move(src);
        f.tgt_ = std::move(tgt);
        f.mat_ = std::move(m);
        return f;
    }
    static BModuleMap of_map(BModule<K> src, BModule<K> tgt, ModuleMap<K> m) {
        BModuleMap f;
        f.src_ = std::move(src);
        f.tgt_ = std::move(tgt);
        f.pmap_ = std::move(m);
        return f;
    }
    /// From row-major entries over the generators (either base kind).
    static BModuleMap of_entries(const BModule<K>& src, const BModule<K>& tgt,
                                 const std::vector<std::vector<Poly<K>>>& rows,
                                 Certify cert = Certify::trusted) {
        if (src.field_case()) {
            Mat<K> m(src.ngens(), tgt.ngens(), src.bctx().zero());
            for (size_t i = 0; i < src.ngens(); ++i)
                for (size_t j = 0; j < tgt.ngens(); ++j) {
                    const Poly<K>& p = rows[i][j];
                    if (!p.is_zero()) m.at(i, j) = p.unit_value();
                }
            return of_mat(src, tgt, std::move(m));
        }
        // module map matrix has columns indexed by source generators
        std::vector<std::vector<Poly<K>>> e(tgt.ngens(),
                                            std::vector<Poly<K>>(src.ngens()));
        for (size_t i = 0; i < src.ngens(); ++i)
            for (size_t j = 0; j < tgt.ngens(); ++j) e[j][i] = rows[i][j];
        GradedMatrix<K> gm(src.bctx(), tgt.rep().gens(), src.rep().gens(), std::move(e));
        return of_map(src, tgt, ModuleMap<K>(src.rep(), tgt.rep(), std::move(gm), cert));
    }

    static BModuleMap zero_map(const BModule<K>& src, const BModule<K>& tgt) {
        if (src.field_case())
            return of_mat(src, tgt, Mat<K>(src.dim(), tgt.dim(), src.bctx().zero()));
        return of_map(src, tgt, ModuleMap<K>::zero_map(src.rep(), tgt.rep()));
    }
    static BModuleMap identity(const BModule<K>& m) {
        if (m.field_case())
            return of_mat(m, m,
                          Mat<K>::identity(m.dim(), m.bctx().zero(), m.bctx().one()));
        return of_map(m, m, ModuleMap<K>::identity(m.rep()));
    }

    const BModule<K>& source() const { return src_; }
    const BModule<K>& target() const { return tgt_; }
    const Mat<K>& mat() const { return mat_; }
    const ModuleMap<K>& pmap() const { return *pmap_; }
    bool field_case() const { return src_.field_case(); }

    bool is_zero_map() const {
        if (field_case()) {
            for (size_t i = 0; i < mat_.rows(); ++i)
                for (size_t j = 0; j < mat_.cols(); ++j)
                    if (!mat_.at(i, j).is_zero()) return false;
            return true;
        }
        // zero iff every generator image lies in the target relations
        for (size_t c = 0; c < pmap_->matrix().cols(); ++c)
            if (!pmap_->target().rel_gb().contains(pmap_->matrix().col(c))) return false;
        return true;
    }

private:
    BModule<K> src_, tgt_;
    Mat<K> mat_;
    std::optional<ModuleMap<K>> pmap_;
};

/// g after f, in row convention: matrix product f.mat * g.mat.
template <Field K>
BModuleMap<K> bcompose(const BModuleMap<K>& f, const BModuleMap<K>& g) {
    if (f.field_case())
        return BModuleMap<K>::of_mat(f.source(), g.target(),
                                     f.mat().mul(g.mat(), f.source().bctx().zero()));
    return BModuleMap<K>::of_map(f.source(), g.target(),
                                 compose_maps(g.pmap(), f.pmap()));
}

template <Field K>
struct BKernel {
    BModule<K> module;
    BModuleMap<K> incl;
};

template <Field K>
BKernel<K> bkernel(const BModuleMap<K>& f) {
    if (f.field_case()) {
        const Ctx<K>& c = f.source().bctx();
        // rows x with x * M = 0: right kernel of the transpose
        Mat<K> kt = f.mat().transposed().right_kernel(c.zero(), c.one());
        // columns of kt are kernel vectors; rows of incl = those vectors
        Mat<K> incl(kt.cols(), f.mat().rows(), c.zero());
        for (size_t j = 0; j < kt.cols(); ++j)
            for (size_t i = 0; i < kt.rows(); ++i) incl.at(j, i) = kt.at(i, j);
        auto ker = BModule<K>::vector_space(c, (long)kt.cols());
        return {ker, BModuleMap<K>::of_mat(ker, f.source(), std::move(incl))};
    }
    auto kr = kernel(f.pmap());
    auto m = BModule<K>::of_module(kr.module);
    return {m, BModuleMap<K>::of_map(m, f.source(), kr.incl)};
}

template <Field K>
BModule<K> bcokernel(const BModuleMap<K>& f) {
    if (f.field_case())
        return BModule<K>::vector_space(f.source().bctx(),
                                        (long)f.target().dim() - (long)f.mat().rank());
    return BModule<K>::of_module(cokernel(f.pmap()).module);
}

template <Field K>
bool b_is_iso(const BModuleMap<K>& f) {
    if (f.field_case())
        return f.source().dim() == f.target().dim() &&
               (long)f.mat().rank() == f.source().dim();
    return is_iso(f.pmap());
}

/// Homology at Y of the two-step complex X -> Y -> Z (f then g, with
/// f o g = 0 in row convention).
template <Field K>
BModule<K> bhomology(const BModuleMap<K>& f, const BModuleMap<K>& g) {
    if (f.field_case()) {
        long ker = (long)g.source().dim() - (long)g.mat().rank();
        long im = (long)f.mat().rank();
        return BModule<K>::vector_space(f.source().bctx(), ker - im);
    }
    auto kr = bkernel(g);
    auto x = factor_through(kr.incl.pmap(), f.pmap().matrix());
    ModuleMap<K> into_ker(f.pmap().source(), kr.incl.pmap().source(), x, Certify::trusted);
    return BModule<K>::of_module(cokernel(into_ker).module);
}

/// Assemble a map between direct sums from a grid of blocks;
/// blocks[i][j]: src_i -> tgt_j, row convention.
template <Field K>
BModuleMap<K> bblock_map(const std::vector<BModule<K>>& srcs,
                         const std::vector<BModule<K>>& tgts,
                         const std::vector<std::vector<BModuleMap<K>>>& blocks) {
    if (srcs.empty() || tgts.empty())
        throw std::invalid_argument("bblock_map: empty grid");
    BModule<K> src = srcs[0];
    for (size_t i = 1; i < srcs.size(); ++i) src = src.direct_sum(srcs[i]);
    BModule<K> tgt = tgts[0];
    for (size_t j = 1; j < tgts.size(); ++j) tgt = tgt.direct_sum(tgts[j]);
    if (srcs[0].field_case()) {
        const Ctx<K>& c = srcs[0].bctx();
        Mat<K> m(src.dim(), tgt.dim(), c.zero());
        size_t roff = 0;
        for (size_t i = 0; i < srcs.size(); ++i) {
            size_t coff = 0;
            for (size_t j = 0; j < tgts.size(); ++j) {
                const Mat<K>& b = blocks[i][j].mat();
                for (size_t r = 0; r < b.rows(); ++r)
                    for (size_t cc = 0; cc < b.cols(); ++cc)
                        m.at(roff + r, coff + cc) = b.at(r, cc);
                coff += tgts[j].dim();
            }
            roff += srcs[i].dim();
        }
        return BModuleMap<K>::of_mat(src, tgt, std::move(m));
    }
    // polynomial base: assemble the generator-level matrix
    size_t srank = 0, trank = 0;
    for (auto& s : srcs) srank += s.ngens();
    for (auto& t : tgts) trank += t.ngens();
    std::vector<std::vector<Poly<K>>> e(trank, std::vector<Poly<K>>(srank));
    size_t coff = 0;
    for (size_t i = 0; i < srcs.size(); ++i) {
        size_t roff = 0;
        for (size_t j = 0; j < tgts.size(); ++j) {
            const GradedMatrix<K>& b = blocks[i][j].pmap().matrix();
            for (size_t r = 0; r < b.rows(); ++r)
                for (size_t cc = 0; cc < b.cols(); ++cc)
                    e[roff + r][coff + cc] = b.at(r, cc);
            roff += tgts[j].ngens();
        }
        coff += srcs[i].ngens();
    }
    GradedMatrix<K> gm(srcs[0].bctx(), tgt.rep().gens(), src.rep().gens(), std::move(e));
    return BModuleMap<K>::of_map(src, tgt,
                                 ModuleMap<K>(src.rep(), tgt.rep(), std::move(gm),
                                              Certify::trusted));
}

/// Scale a map by a base-field constant (signs in strand differentials).
template <Field K>
BModuleMap<K> bscaled(const BModuleMap<K>& f, const K& c) {
    if (f.field_case()) {
        Mat<K> m = f.mat();
        for (size_t i = 0; i < m.rows(); ++i)
            for (size_t j = 0; j < m.cols(); ++j) m.at(i, j) = m.at(i, j) * c;
        return BModuleMap<K>::of_mat(f.source(), f.target(), std::move(m));
    }
    auto e = matrix_entries(f.pmap().matrix());
    for (auto& row : e)
        for (auto& p : row) p = p.scaled(c);
    GradedMatrix<K> gm(f.pmap().ctx(), f.pmap().matrix().target(),
                       f.pmap().matrix().source(), std::move(e));
    return BModuleMap<K>::of_map(f.source(), f.target(),
                                 ModuleMap<K>(f.pmap().source(), f.pmap().target(),
                                              std::move(gm), Certify::trusted));
}

template <Field K>
BModuleMap<K> bsum(const BModuleMap<K>& f, const BModuleMap<K>& g) {
    if (f.field_case()) {
        Mat<K> m = f.mat();
        for (size_t i = 0; i < m.rows(); ++i)
            for (size_t j = 0; j < m.cols(); ++j)
                m.at(i, j) = m.at(i, j) + g.mat().at(i, j);
        return BModuleMap<K>::of_mat(f.source(), f.target(), std::move(m));
    }
    auto e = matrix_entries(f.pmap().matrix());
    auto e2 = matrix_entries(g.pmap().matrix());
    for (size_t r = 0; r < e.size(); ++r)
        for (size_t c = 0; c < e[r].size(); ++c) {
            if (e2[r][c].is_zero()) continue;
            e[r][c] = e[r][c].is_zero() ? e2[r][c] : e[r][c] + e2[r][c];
        }
    GradedMatrix<K> gm(f.pmap().ctx(), f.pmap().matrix().target(),
                       f.pmap().matrix().source(), std::move(e));
    return BModuleMap<K>::of_map(f.source(), f.target(),
                                 ModuleMap<K>(f.pmap().source(), f.pmap().target(),
                                              std::move(gm), Certify::trusted));
}

template <Field K>
bool bmaps_equal(const BModuleMap<K>& f, const BModuleMap<K>& g) {
    if (f.field_case()) return f.mat() == g.mat();
    // equality as maps: difference is the zero map
    return bsum(f, bscaled(g, f.source().bctx().scalar(-1))).is_zero_map();
}

} // namespace grsat
