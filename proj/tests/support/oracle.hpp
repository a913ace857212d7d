#pragma once

// Independent brute-force oracles used to cross-check the Groebner-based
// machinery. Deliberately implemented with their own plain Gaussian
// elimination over the coefficient field, not via the library's solvers.
// Field bases only (no y-variables).

#include <map>
#include <vector>

#include <grsat/groebner.hpp>

namespace oracle {

using namespace grsat;

template <Field K>
size_t row_rank(std::vector<std::vector<K>> rows) {
    size_t rank = 0;
    if (rows.empty()) return 0;
    size_t cols = rows[0].size();
    for (size_t col = 0; col < cols && rank < rows.size(); ++col) {
        size_t sel = rank;
        while (sel < rows.size() && rows[sel][col].is_zero()) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[sel], rows[rank]);
        K inv = rows[rank][col].inv();
        for (size_t j = col; j < cols; ++j) rows[rank][j] = rows[rank][j] * inv;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][col].is_zero()) continue;
            K f = rows[i][col];
            for (size_t j = col; j < cols; ++j)
                rows[i][j] = rows[i][j] - f * rows[rank][j];
        }
        ++rank;
    }
    return rank;
}

/// Coordinate layout for the degree-d layer of a graded free module over a
/// field base: one axis per (slot, monomial of degree d - deg(slot)).
template <Field K>
struct Layer {
    Layer(const Ctx<K>& ctx, const FreeModule& f, int d) : ctx(ctx), f(f), d(d) {
        for (size_t s = 0; s < f.rank(); ++s) {
            auto mb = monomial_basis(ctx, d - f.deg(s));
            for (size_t i = 0; i < mb.size(); ++i) index[{(int)s, mb[i].e}] = dim_ + i;
            dim_ += mb.size();
        }
    }

    size_t dim() const { return dim_; }

    std::vector<K> coords(const VecPoly<K>& v) const {
        std::vector<K> out(dim_, ctx.zero());
        for (size_t s = 0; s < v.size(); ++s)
            for (auto& [m, c] : v[s].terms())
                out[index.at({(int)s, m.e})] = c;
        return out;
    }

    Ctx<K> ctx;
    FreeModule f;
    int d;
    size_t dim_ = 0;
    std::map<std::pair<int, std::vector<int32_t>>, size_t> index;
};

/// All monomial multiples of the given columns that land in degree d.
template <Field K>
std::vector<std::vector<K>> degree_layer_rows(const GradedMatrix<K>& m, int d) {
    Layer<K> layer(m.ctx(), m.target(), d);
    std::vector<std::vector<K>> rows;
    for (size_t j = 0; j < m.cols(); ++j) {
        auto col = m.col(j);
        for (auto& beta : monomial_basis(m.ctx(), d - m.source().deg(j))) {
            VecPoly<K> shifted(col.size());
            for (size_t s = 0; s < col.size(); ++s)
                shifted[s] = col[s].mono_scaled(beta, m.ctx().one(), m.ctx().xdeg(beta));
            rows.push_back(layer.coords(shifted));
        }
    }
    return rows;
}

/// dim of the degree-d layer of the submodule spanned by the columns.
template <Field K>
size_t span_dim(const GradedMatrix<K>& m, int d) {
    return row_rank(degree_layer_rows(m, d));
}

/// Membership of a homogeneous element in the span, tested degreewise.
template <Field K>
bool in_span(const GradedMatrix<K>& m, const VecPoly<K>& v, int vdeg) {
    auto rows = degree_layer_rows(m, vdeg);
    size_t r0 = row_rank(rows);
    Layer<K> layer(m.ctx(), m.target(), vdeg);
    rows.push_back(layer.coords(v));
    return row_rank(rows) == r0;
}

/// Hilbert function of coker(m) at degree d, by rank of the relation layer.
template <Field K>
long hf_oracle(const GradedMatrix<K>& m, int d) {
    Layer<K> layer(m.ctx(), m.target(), d);
    return (long)layer.dim() - (long)span_dim(m, d);
}

/// Kernel dimension of the degree-d coefficient matrix of m.
template <Field K>
long kernel_dim_oracle(const GradedMatrix<K>& m, int d) {
    Layer<K> src(m.ctx(), m.source(), d);
    Layer<K> tgt(m.ctx(), m.target(), d);
    std::vector<std::vector<K>> rows;
    for (size_t s = 0; s < m.cols(); ++s) {
        for (auto& beta : monomial_basis(m.ctx(), d - m.source().deg(s))) {
            VecPoly<K> img(m.rows());
            for (size_t r = 0; r < m.rows(); ++r)
                img[r] = m.at(r, s).mono_scaled(beta, m.ctx().one(), m.ctx().xdeg(beta));
            rows.push_back(tgt.coords(img));
        }
    }
    return (long)src.dim() - (long)row_rank(rows);
}

/// Dimension of the space of degree-p module homomorphisms M -> N between
/// the cokernels of the two presentations.
///
/// A hom is a tuple v_k in (F0_N)_{p + a_k} over the generators of M with
/// m^T v landing in the relation layers of N; two tuples give the same hom
/// iff they differ by relation layers. All of it is plain rank arithmetic.
template <Field K>
long hom_dim_oracle(const GradedMatrix<K>& mpres, const GradedMatrix<K>& npres, int p) {
    const Ctx<K>& ctx = mpres.ctx();
    const FreeModule& MG = mpres.target();
    const FreeModule& NG = npres.target();

    std::vector<Layer<K>> gen_layers;
    for (size_t k = 0; k < MG.rank(); ++k)
        gen_layers.emplace_back(ctx, NG, p + MG.deg(k));

    std::vector<Layer<K>> rel_layers;
    std::vector<size_t> tgt_offs;
    size_t tgt_total = 0;
    for (size_t j = 0; j < mpres.cols(); ++j) {
        rel_layers.emplace_back(ctx, NG, p + mpres.source().deg(j));
        tgt_offs.push_back(tgt_total);
        tgt_total += rel_layers.back().dim();
    }

    // columns of the constraint map, one per unknown coordinate
    std::vector<std::vector<K>> t_cols;
    for (size_t k = 0; k < MG.rank(); ++k) {
        for (auto& [key, idx] : gen_layers[k].index) {
            auto& [slot, exps] = key;
            std::vector<K> col(tgt_total, ctx.zero());
            for (size_t j = 0; j < mpres.cols(); ++j) {
                const Poly<K>& coef = mpres.at(k, j);
                if (coef.is_zero()) continue;
                Poly<K> prod =
                    coef * Poly<K>::monomial(ctx, Monomial{exps}, ctx.one());
                for (auto& [mm, cc] : prod.terms())
                    col[tgt_offs[j] + rel_layers[j].index.at({slot, mm.e})] = cc;
            }
            t_cols.push_back(std::move(col));
        }
    }
    // columns spanning the allowed targets (relation layers of N, blockwise)
    std::vector<std::vector<K>> r_cols;
    for (size_t j = 0; j < mpres.cols(); ++j) {
        for (auto& row : degree_layer_rows(npres, p + mpres.source().deg(j))) {
            std::vector<K> col(tgt_total, ctx.zero());
            for (size_t t = 0; t < row.size(); ++t) col[tgt_offs[j] + t] = row[t];
            r_cols.push_back(std::move(col));
        }
    }

    size_t unknowns = t_cols.size();
    size_t rank_r = row_rank(r_cols);
    auto tr = t_cols;
    tr.insert(tr.end(), r_cols.begin(), r_cols.end());
    size_t rank_tr = row_rank(tr);

    long solutions = (long)unknowns - ((long)rank_tr - (long)rank_r);
    long trivial = 0;
    for (size_t k = 0; k < MG.rank(); ++k)
        trivial += (long)row_rank(degree_layer_rows(npres, p + MG.deg(k)));
    return solutions - trivial;
}

} // namespace oracle
