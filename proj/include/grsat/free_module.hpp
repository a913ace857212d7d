#pragma once

#include <vector>

#include "parser.hpp"
#include "poly.hpp"

namespace grsat {

/// A graded free module, recorded by the actual degrees of its generators
/// (the generator of S(g) is stored with degree -g).
struct FreeModule {
    std::vector<int> degs;

    size_t rank() const { return degs.size(); }
    int deg(size_t i) const { return degs[i]; }
    bool operator==(const FreeModule& o) const { return degs == o.degs; }
    bool operator!=(const FreeModule& o) const { return !(*this == o); }

    FreeModule twisted(int t) const {
        FreeModule r = *this;
        for (auto& d : r.degs) d -= t;
        return r;
    }
    static FreeModule graded(std::vector<int> degs) { return {std::move(degs)}; }
    static FreeModule standard(size_t rank, int deg = 0) {
        return {std::vector<int>(rank, deg)};
    }
    FreeModule concat(const FreeModule& o) const {
        FreeModule r = *this;
        r.degs.insert(r.degs.end(), o.degs.begin(), o.degs.end());
        return r;
    }
};

/// Matrix of homogeneous polynomials between graded free modules. Columns
/// are elements of the target; entry (r,c) must be homogeneous of x-degree
/// source.deg(c) - target.deg(r) (or zero).
template <Field K>
class GradedMatrix {
public:
    GradedMatrix() = default;
    GradedMatrix(Ctx<K> ctx, FreeModule target, FreeModule source,
                 std::vector<std::vector<Poly<K>>> entries)
        : ctx_(std::move(ctx)), target_(std::move(target)), source_(std::move(source)),
          e_(std::move(entries)) {
        check();
    }

    static GradedMatrix zero(const Ctx<K>& ctx, FreeModule target, FreeModule source) {
        std::vector<std::vector<Poly<K>>> e(
            target.rank(), std::vector<Poly<K>>(source.rank()));
        return GradedMatrix(ctx, std::move(target), std::move(source), std::move(e));
    }
    static GradedMatrix identity(const Ctx<K>& ctx, const FreeModule& f) {
        auto m = zero(ctx, f, f);
        for (size_t i = 0; i < f.rank(); ++i)
            m.e_[i][i] = Poly<K>::constant(ctx, ctx.one());
        return m;
    }

    const Ctx<K>& ctx() const { return ctx_; }
    const FreeModule& target() const { return target_; }
    const FreeModule& source() const { return source_; }
    size_t rows() const { return target_.rank(); }
    size_t cols() const { return source_.rank(); }
    const Poly<K>& at(size_t r, size_t c) const { return e_[r][c]; }
    Poly<K>& at(size_t r, size_t c) { return e_[r][c]; }

    std::vector<Poly<K>> col(size_t c) const {
        std::vector<Poly<K>> v(rows());
        for (size_t r = 0; r < rows(); ++r) v[r] = e_[r][c];
        return v;
    }

    bool is_zero() const {
        for (auto& row : e_)
            for (auto& p : row)
                if (!p.is_zero()) return false;
        return true;
    }

    GradedMatrix twisted(int t) const {
        GradedMatrix m = *this;
        m.target_ = target_.twisted(t);
        m.source_ = source_.twisted(t);
        return m;
    }

    /// Block-diagonal juxtaposition.
    GradedMatrix direct_sum(const GradedMatrix& o) const {
        auto m = zero(ctx_, target_.concat(o.target_), source_.concat(o.source_));
        for (size_t r = 0; r < rows(); ++r)
            for (size_t c = 0; c < cols(); ++c) m.e_[r][c] = e_[r][c];
        for (size_t r = 0; r < o.rows(); ++r)
            for (size_t c = 0; c < o.cols(); ++c)
                m.e_[rows() + r][cols() + c] = o.e_[r][c];
        return m;
    }

    /// Horizontal juxtaposition [this | o]; targets must agree.
    GradedMatrix augmented(const GradedMatrix& o) const {
        if (target_ != o.target_)
            throw std::invalid_argument("GradedMatrix: augment target mismatch");
        auto m = zero(ctx_, target_, source_.concat(o.source_));
        for (size_t r = 0; r < rows(); ++r) {
            for (size_t c = 0; c < cols(); ++c) m.e_[r][c] = e_[r][c];
            for (size_t c = 0; c < o.cols(); ++c) m.e_[r][cols() + c] = o.e_[r][c];
        }
        return m;
    }

private:
    void check() const {
        if (e_.size() != target_.rank())
            throw std::invalid_argument("GradedMatrix: row count mismatch");
        for (size_t r = 0; r < rows(); ++r) {
            if (e_[r].size() != source_.rank())
                throw std::invalid_argument("GradedMatrix: column count mismatch");
            for (size_t c = 0; c < cols(); ++c) {
                const auto& p = e_[r][c];
                if (p.is_zero()) continue;
                int want = source_.deg(c) - target_.deg(r);
                if (*p.xdeg() != want)
                    throw std::invalid_argument(
                        "GradedMatrix: entry (" + std::to_string(r) + "," +
                        std::to_string(c) + ") has x-degree " +
                        std::to_string(*p.xdeg()) + ", expected " + std::to_string(want));
            }
        }
    }

    Ctx<K> ctx_;
    FreeModule target_, source_;
    std::vector<std::vector<Poly<K>>> e_;
};

/// Matrix product a*b with the degree bookkeeping re-verified; requires
/// source(a) == target(b).
template <Field K>
GradedMatrix<K> compose(const GradedMatrix<K>& a, const GradedMatrix<K>& b) {
    if (a.source() != b.target())
        throw std::invalid_argument("compose: inner free modules differ");
    std::vector<std::vector<Poly<K>>> e(a.rows(), std::vector<Poly<K>>(b.cols()));
    for (size_t r = 0; r < a.rows(); ++r)
        for (size_t c = 0; c < b.cols(); ++c) {
            Poly<K> acc;
            for (size_t k = 0; k < a.cols(); ++k) {
                if (a.at(r, k).is_zero() || b.at(k, c).is_zero()) continue;
                acc = acc + a.at(r, k) * b.at(k, c);
            }
            e[r][c] = std::move(acc);
        }
    return GradedMatrix<K>(a.ctx(), a.target(), b.source(), std::move(e));
}

template <Field K>
GradedMatrix<K> parse_matrix(const Ctx<K>& ctx, FreeModule target, FreeModule source,
                             const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::vector<Poly<K>>> e;
    for (auto& row : rows) {
        e.emplace_back();
        for (auto& s : row) e.back().push_back(parse_poly(ctx, s));
    }
    return GradedMatrix<K>(ctx, std::move(target), std::move(source), std::move(e));
}

} // namespace grsat
