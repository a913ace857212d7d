#pragma once

#include <cstddef>
#include <set>
#include <tuple>
#include <vector>

#include "free_module.hpp"

namespace grsat {

template <Field K>
using VecPoly = std::vector<Poly<K>>; // element of a free module, one Poly per slot

template <Field K>
struct MTerm {
    int slot;
    Monomial m;
    K c;
    bool operator==(const MTerm& o) const {
        return slot == o.slot && m == o.m && c == o.c;
    }
};

/// Position-over-term module order: smaller slot index dominates; ties are
/// broken by the block monomial order.
struct ModOrder {
    BlockOrder mono;

    template <Field K>
    int cmp(const MTerm<K>& a, const MTerm<K>& b) const {
        if (a.slot != b.slot) return a.slot < b.slot ? 1 : -1;
        return mono.cmp(a.m, b.m);
    }
};

/// Terms sorted ascending by the module order; the leading term sits at the
/// back (O(1) removal during reduction).
template <Field K>
using FlatElem = std::vector<MTerm<K>>;

template <Field K>
const MTerm<K>& lead(const FlatElem<K>& e) { return e.back(); }

template <Field K>
FlatElem<K> flat_from_vec(const VecPoly<K>& v, const ModOrder& ord) {
    FlatElem<K> e;
    for (size_t s = 0; s < v.size(); ++s)
        for (auto& [m, c] : v[s].terms()) e.push_back({(int)s, m, c});
    std::sort(e.begin(), e.end(), [&ord](const MTerm<K>& a, const MTerm<K>& b) {
        return ord.cmp(a, b) < 0;
    });
    return e;
}

template <Field K>
VecPoly<K> vec_from_flat(const Ctx<K>& ctx, size_t nslots, const FlatElem<K>& e) {
    std::vector<std::vector<typename Poly<K>::Term>> per(nslots);
    for (auto& t : e) per[t.slot].emplace_back(t.m, t.c);
    VecPoly<K> v(nslots);
    for (size_t s = 0; s < nslots; ++s) v[s] = Poly<K>::make(ctx, std::move(per[s]));
    return v;
}

/// a - c * x^q * b, both sorted ascending; stays sorted because monomial
/// multiplication is order-monotone.
template <Field K>
FlatElem<K> sub_scaled(const FlatElem<K>& a, const FlatElem<K>& b, const K& c,
                       const Monomial& q, const ModOrder& ord) {
    FlatElem<K> r;
    r.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size()) { r.push_back(a[i++]); continue; }
        MTerm<K> bt{b[j].slot, mono_mul(b[j].m, q), b[j].c * c};
        if (i == a.size()) { bt.c = -bt.c; r.push_back(std::move(bt)); ++j; continue; }
        int cv = ord.cmp(a[i], bt);
        if (cv < 0) { r.push_back(a[i++]); }
        else if (cv > 0) { bt.c = -bt.c; r.push_back(std::move(bt)); ++j; }
        else {
            K nc = a[i].c - bt.c;
            if (!nc.is_zero()) r.push_back({a[i].slot, a[i].m, std::move(nc)});
            ++i; ++j;
        }
    }
    return r;
}

/// Buchberger engine over a free module with a fixed module order. Makes no
/// grading assumption, so it also serves the inhomogeneous elimination-order
/// cross-check. S-pairs are processed by ascending lcm degree (normal
/// strategy); the finished basis is reduced and monic. Reducers are indexed
/// by leading slot.
template <Field K>
class GBEngine {
public:
    GBEngine(Ctx<K> ctx, size_t nslots, ModOrder ord)
        : ctx_(std::move(ctx)), nslots_(nslots), ord_(std::move(ord)),
          by_slot_(nslots) {}

    /// Seeds flagged complete are assumed to form a Groebner basis among
    /// themselves: they are inserted unreduced and their mutual S-pairs are
    /// skipped (they reduce to zero by assumption).
    void add_seed(FlatElem<K> e, bool complete = false) {
        if (e.empty()) return;
        make_monic(e);
        if (complete) {
            by_slot_[lead(e).slot].push_back(basis_.size());
            basis_.push_back(std::move(e));
        } else {
            seeds_.push_back(std::move(e));
        }
    }

    void run(bool tail_reduce = true) {
        // pairs among the pre-inserted complete seeds are never formed
        for (auto& s : seeds_) {
            s = reduce_full(std::move(s), npos);
            if (s.empty()) continue;
            make_monic(s);
            append(std::move(s));
        }
        seeds_.clear();
        while (!pairs_.empty()) {
            auto it = pairs_.begin();
            auto [deg, i, j] = *it;
            pairs_.erase(it);
            FlatElem<K> s = spair(basis_[i], basis_[j]);
            s = reduce_full(std::move(s), npos);
            if (!s.empty()) {
                make_monic(s);
                append(std::move(s));
            }
        }
        interreduce(tail_reduce);
    }

    FlatElem<K> normal_form(FlatElem<K> v) const { return reduce_full(std::move(v), npos); }

    const std::vector<FlatElem<K>>& basis() const { return basis_; }
    const ModOrder& order() const { return ord_; }
    size_t nslots() const { return nslots_; }
    const Ctx<K>& ctx() const { return ctx_; }

private:
    static constexpr size_t npos = (size_t)-1;

    void make_monic(FlatElem<K>& e) const {
        if (lead(e).c.is_one()) return;
        K inv = lead(e).c.inv();
        for (auto& t : e) t.c = t.c * inv;
    }

    size_t find_reducer(const MTerm<K>& t, size_t skip) const {
        for (size_t i : by_slot_[t.slot]) {
            if (i == skip || basis_[i].empty()) continue;
            if (mono_divides(lead(basis_[i]).m, t.m)) return i;
        }
        return npos;
    }

    FlatElem<K> reduce_full(FlatElem<K> v, size_t skip) const {
        FlatElem<K> rem; // collected in descending order, reversed at the end
        while (!v.empty()) {
            const MTerm<K>& t = v.back();
            size_t g = find_reducer(t, skip);
            if (g != npos) {
                Monomial q = mono_quot(t.m, lead(basis_[g]).m);
                v = sub_scaled(v, basis_[g], t.c, q, ord_); // reducers are monic
            } else {
                rem.push_back(t);
                v.pop_back();
            }
        }
        std::reverse(rem.begin(), rem.end());
        return rem;
    }

    FlatElem<K> spair(const FlatElem<K>& f, const FlatElem<K>& g) const {
        Monomial u = mono_lcm(lead(f).m, lead(g).m);
        K one = lead(f).c; // monic
        FlatElem<K> a = sub_scaled(FlatElem<K>{}, f, -one, mono_quot(u, lead(f).m), ord_);
        return sub_scaled(a, g, one, mono_quot(u, lead(g).m), ord_);
    }

    void append(FlatElem<K> e) {
        size_t idx = basis_.size();
        for (size_t i = 0; i < idx; ++i) {
            if (basis_[i].empty() || lead(basis_[i]).slot != lead(e).slot) continue;
            Monomial u = mono_lcm(lead(basis_[i]).m, lead(e).m);
            long deg = 0;
            for (auto v : u.e) deg += v;
            pairs_.insert({deg, (long)i, (long)idx});
        }
        by_slot_[lead(e).slot].push_back(idx);
        basis_.push_back(std::move(e));
    }

    void interreduce(bool tail_reduce) {
        // minimal: drop elements whose lead is divisible by another's lead
        std::vector<bool> keep(basis_.size(), true);
        for (size_t i = 0; i < basis_.size(); ++i) {
            for (size_t j : by_slot_[lead(basis_[i]).slot]) {
                if (i == j || !keep[j]) continue;
                if (mono_divides(lead(basis_[j]).m, lead(basis_[i]).m)) {
                    bool equal_lead = lead(basis_[j]).m == lead(basis_[i]).m;
                    if (!equal_lead || j < i) { keep[i] = false; break; }
                }
            }
        }
        std::vector<FlatElem<K>> kept;
        for (size_t i = 0; i < basis_.size(); ++i)
            if (keep[i]) kept.push_back(std::move(basis_[i]));
        basis_ = std::move(kept);
        rebuild_buckets();
        if (tail_reduce) {
            bool changed = true;
            while (changed) {
                changed = false;
                for (size_t i = 0; i < basis_.size(); ++i) {
                    FlatElem<K> r = reduce_full(basis_[i], i);
                    if (!(r == basis_[i])) {
                        basis_[i] = std::move(r);
                        changed = true;
                    }
                }
            }
        }
        std::sort(basis_.begin(), basis_.end(),
                  [this](const FlatElem<K>& a, const FlatElem<K>& b) {
                      return ord_.cmp(lead(a), lead(b)) > 0;
                  });
        rebuild_buckets();
    }

    void rebuild_buckets() {
        for (auto& b : by_slot_) b.clear();
        for (size_t i = 0; i < basis_.size(); ++i)
            by_slot_[lead(basis_[i]).slot].push_back(i);
    }

    Ctx<K> ctx_;
    size_t nslots_;
    ModOrder ord_;
    std::vector<FlatElem<K>> seeds_;
    std::vector<FlatElem<K>> basis_;
    std::vector<std::vector<size_t>> by_slot_;
    std::set<std::tuple<long, long, long>> pairs_;
};

/// Reduced Groebner basis of the submodule generated by the columns of a
/// graded matrix. In graph mode, the basis is computed for the graph
/// {(g_j, e_j)} in F (+) E, which yields membership witnesses (column j of
/// the input is generator j) and a generating set of the syzygy module.
template <Field K>
class GroebnerBasis {
public:
    GroebnerBasis() = default;

    /// Wrap an already-computed Groebner basis (columns of a matrix whose
    /// image the basis generates) without running Buchberger.
    static GroebnerBasis from_columns(const Ctx<K>& ctx, const FreeModule& ambient,
                                      const std::vector<VecPoly<K>>& cols) {
        GroebnerBasis gb;
        gb.ctx_ = ctx;
        gb.ambient_ = ambient;
        gb.gens_ = FreeModule::graded({});
        gb.graph_ = false;
        gb.fslots_ = ambient.rank();
        ModOrder ord{ctx.order()};
        gb.order_ = ord;
        for (auto& c : cols) {
            auto e = flat_from_vec(c, ord);
            if (e.empty()) continue;
            if (!lead(e).c.is_one()) {
                K inv = lead(e).c.inv();
                for (auto& t : e) t.c = t.c * inv;
            }
            gb.elems_.push_back(std::move(e));
        }
        gb.buckets_.assign(gb.fslots_, {});
        for (size_t i = 0; i < gb.elems_.size(); ++i)
            gb.buckets_[lead(gb.elems_[i]).slot].push_back(i);
        return gb;
    }

    /// Graph basis of [A | B] with witness markers on the A-columns only.
    /// When b_complete is set, the B-columns are taken to be a Groebner
    /// basis of their span and their mutual S-pairs are skipped.
    static GroebnerBasis augmented_graph(const GradedMatrix<K>& A,
                                         const GradedMatrix<K>& B, bool b_complete,
                                         bool tail_reduce = true) {
        if (A.target() != B.target())
            throw std::invalid_argument("augmented_graph: target mismatch");
        GroebnerBasis gb;
        gb.ctx_ = A.ctx();
        gb.ambient_ = A.target();
        gb.gens_ = A.source();
        gb.graph_ = true;
        gb.fslots_ = A.rows();
        size_t nslots = A.rows() + A.cols();
        ModOrder ord{A.ctx().order()};
        GBEngine<K> eng(A.ctx(), nslots, ord);
        for (size_t j = 0; j < B.cols(); ++j) {
            VecPoly<K> v(nslots);
            for (size_t r = 0; r < B.rows(); ++r) v[r] = B.at(r, j);
            eng.add_seed(flat_from_vec(v, ord), b_complete);
        }
        for (size_t j = 0; j < A.cols(); ++j) {
            VecPoly<K> v(nslots);
            for (size_t r = 0; r < A.rows(); ++r) v[r] = A.at(r, j);
            v[A.rows() + j] = Poly<K>::constant(A.ctx(), A.ctx().one());
            eng.add_seed(flat_from_vec(v, ord));
        }
        eng.run(tail_reduce);
        gb.order_ = ord;
        gb.elems_ = eng.basis();
        gb.buckets_.assign(nslots, {});
        for (size_t i = 0; i < gb.elems_.size(); ++i)
            gb.buckets_[lead(gb.elems_[i]).slot].push_back(i);
        return gb;
    }

    static GroebnerBasis of_matrix(const GradedMatrix<K>& m, bool graph,
                                   bool tail_reduce = true) {
        GroebnerBasis gb;
        gb.ctx_ = m.ctx();
        gb.ambient_ = m.target();
        gb.gens_ = m.source();
        gb.graph_ = graph;
        gb.fslots_ = m.rows();
        size_t nslots = m.rows() + (graph ? m.cols() : 0);
        ModOrder ord{m.ctx().order()};
        GBEngine<K> eng(m.ctx(), nslots, ord);
        for (size_t j = 0; j < m.cols(); ++j) {
            VecPoly<K> v(nslots);
            for (size_t r = 0; r < m.rows(); ++r) v[r] = m.at(r, j);
            if (graph)
                v[m.rows() + j] = Poly<K>::constant(m.ctx(), m.ctx().one());
            eng.add_seed(flat_from_vec(v, ord));
        }
        eng.run(tail_reduce);
        gb.order_ = ord;
        gb.elems_ = eng.basis();
        gb.buckets_.assign(nslots, {});
        for (size_t i = 0; i < gb.elems_.size(); ++i)
            gb.buckets_[lead(gb.elems_[i]).slot].push_back(i);
        return gb;
    }

    const Ctx<K>& ctx() const { return ctx_; }
    const FreeModule& ambient() const { return ambient_; }
    const FreeModule& gens() const { return gens_; }
    bool has_graph() const { return graph_; }
    size_t fslots() const { return fslots_; }

    /// Leading (slot, monomial) pairs of the image part of the basis.
    std::vector<std::pair<int, Monomial>> image_leads() const {
        std::vector<std::pair<int, Monomial>> out;
        for (auto& e : elems_)
            if ((size_t)lead(e).slot < fslots_)
                out.emplace_back(lead(e).slot, lead(e).m);
        return out;
    }

    /// The reduced basis elements of the image submodule.
    std::vector<VecPoly<K>> image_basis() const {
        std::vector<VecPoly<K>> out;
        for (auto& e : elems_) {
            if ((size_t)lead(e).slot >= fslots_) continue;
            FlatElem<K> f;
            for (auto& t : e)
                if ((size_t)t.slot < fslots_) f.push_back(t);
            out.push_back(vec_from_flat(ctx_, fslots_, f));
        }
        return out;
    }

    /// Generators of the syzygy module of the seeded columns (graph mode).
    std::vector<VecPoly<K>> syzygy_columns() const {
        std::vector<VecPoly<K>> out;
        for (auto& e : elems_) {
            if ((size_t)lead(e).slot < fslots_) continue; // mixed element
            FlatElem<K> f;
            for (auto& t : e) f.push_back({t.slot - (int)fslots_, t.m, t.c});
            out.push_back(vec_from_flat(ctx_, gens_.rank(), f));
        }
        return out;
    }

    /// Fully reduced remainder of v modulo the image submodule.
    VecPoly<K> normal_form(const VecPoly<K>& v) const {
        FlatElem<K> e = embed(v);
        e = reduce(std::move(e));
        FlatElem<K> f;
        for (auto& t : e)
            if ((size_t)t.slot < fslots_) f.push_back(t);
        return vec_from_flat(ctx_, fslots_, f);
    }

    bool contains(const VecPoly<K>& v) const {
        FlatElem<K> e = reduce(embed(v));
        for (auto& t : e)
            if ((size_t)t.slot < fslots_) return false;
        return true;
    }

    /// Remainder and witness: v = gens * w + r. Requires graph mode.
    std::pair<VecPoly<K>, VecPoly<K>> normal_form_with_witness(const VecPoly<K>& v) const {
        if (!graph_) throw std::logic_error("GroebnerBasis: no witness data");
        FlatElem<K> e = reduce(embed(v));
        FlatElem<K> f, w;
        for (auto& t : e) {
            if ((size_t)t.slot < fslots_) f.push_back(t);
            else w.push_back({t.slot - (int)fslots_, t.m, -t.c});
        }
        return {vec_from_flat(ctx_, fslots_, f), vec_from_flat(ctx_, gens_.rank(), w)};
    }

private:
    FlatElem<K> embed(const VecPoly<K>& v) const {
        if (v.size() != fslots_)
            throw std::invalid_argument("GroebnerBasis: ambient mismatch");
        VecPoly<K> padded = v;
        padded.resize(fslots_ + (graph_ ? gens_.rank() : 0));
        return flat_from_vec(padded, order_);
    }

    FlatElem<K> reduce(FlatElem<K> v) const {
        FlatElem<K> rem;
        while (!v.empty()) {
            const MTerm<K>& t = v.back();
            const FlatElem<K>* g = nullptr;
            for (size_t i : buckets_[t.slot]) {
                if (mono_divides(lead(elems_[i]).m, t.m)) { g = &elems_[i]; break; }
            }
            if (g) {
                v = sub_scaled(v, *g, t.c, mono_quot(t.m, lead(*g).m), order_);
            } else {
                rem.push_back(t);
                v.pop_back();
            }
        }
        std::reverse(rem.begin(), rem.end());
        return rem;
    }

    Ctx<K> ctx_;
    FreeModule ambient_, gens_;
    bool graph_ = false;
    size_t fslots_ = 0;
    ModOrder order_;
    std::vector<FlatElem<K>> elems_;
    std::vector<std::vector<size_t>> buckets_;
};

template <Field K>
int column_degree(const FreeModule& target, const VecPoly<K>& v, int fallback) {
    for (size_t r = 0; r < v.size(); ++r)
        if (!v[r].is_zero()) return target.deg(r) + *v[r].xdeg();
    return fallback;
}

/// Matrix whose columns generate the full syzygy module of the columns of m.
template <Field K>
GradedMatrix<K> syzygy_matrix(const GradedMatrix<K>& m, bool tail_reduce = true) {
    auto gb = GroebnerBasis<K>::of_matrix(m, true, tail_reduce);
    auto cols = gb.syzygy_columns();
    std::vector<int> degs;
    std::vector<std::vector<Poly<K>>> e(m.cols());
    for (auto& col : cols) {
        if (std::all_of(col.begin(), col.end(),
                        [](const Poly<K>& p) { return p.is_zero(); }))
            continue;
        degs.push_back(column_degree(m.source(), col, 0));
        for (size_t r = 0; r < m.cols(); ++r) e[r].push_back(col[r]);
    }
    return GradedMatrix<K>(m.ctx(), m.source(), FreeModule::graded(degs), std::move(e));
}

/// Columns r over source(A) with A r in the image of B; both matrices must
/// share their target. Computed from the partial graph on the A-columns
/// (the B-coefficients of the syzygies are never materialized). Pass
/// b_complete when B's columns are already a Groebner basis of their span.
template <Field K>
GradedMatrix<K> preimage_relations(const GradedMatrix<K>& A, const GradedMatrix<K>& B,
                                   bool b_complete = false) {
    auto gb = GroebnerBasis<K>::augmented_graph(A, B, b_complete);
    std::vector<std::vector<Poly<K>>> e(A.cols());
    std::vector<int> degs;
    for (auto& col : gb.syzygy_columns()) {
        bool nonzero = false;
        for (auto& p : col)
            if (!p.is_zero()) { nonzero = true; break; }
        if (!nonzero) continue;
        degs.push_back(column_degree(A.source(), col, 0));
        for (size_t r = 0; r < A.cols(); ++r) e[r].push_back(col[r]);
    }
    return GradedMatrix<K>(A.ctx(), A.source(), FreeModule::graded(degs), std::move(e));
}

} // namespace grsat
