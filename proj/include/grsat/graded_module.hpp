#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "degree.hpp"
#include "groebner.hpp"

namespace grsat {

template <Field K>
std::vector<std::vector<Poly<K>>> matrix_entries(const GradedMatrix<K>& m) {
    std::vector<std::vector<Poly<K>>> e(m.rows());
    for (size_t r = 0; r < m.rows(); ++r) {
        e[r].reserve(m.cols());
        for (size_t c = 0; c < m.cols(); ++c) e[r].push_back(m.at(r, c));
    }
    return e;
}

/// Vertical stack [top; bottom]; sources must agree.
template <Field K>
GradedMatrix<K> stack_matrices(const GradedMatrix<K>& top, const GradedMatrix<K>& bot) {
    if (top.source() != bot.source())
        throw std::invalid_argument("stack_matrices: source mismatch");
    auto e = matrix_entries(top);
    auto e2 = matrix_entries(bot);
    e.insert(e.end(), e2.begin(), e2.end());
    return GradedMatrix<K>(top.ctx(), top.target().concat(bot.target()), top.source(),
                           std::move(e));
}

/// Finitely presented graded S-module: cokernel of a graded matrix whose
/// target carries the generators. Immutable; the reduced Groebner basis of
/// the relation submodule is cached with single-flight semantics.
template <Field K>
class GradedModule {
public:
    GradedModule() = default;
    explicit GradedModule(GradedMatrix<K> pres)
        : pres_(std::move(pres)), cache_(std::make_shared<Cache>()) {}

    static GradedModule free_module(const Ctx<K>& ctx, FreeModule f) {
        std::vector<std::vector<Poly<K>>> e(f.rank());
        return GradedModule(
            GradedMatrix<K>(ctx, std::move(f), FreeModule::graded({}), std::move(e)));
    }
    static GradedModule zero(const Ctx<K>& ctx) {
        return free_module(ctx, FreeModule::graded({}));
    }
    /// S itself (rank-one free, generator in degree 0).
    static GradedModule ring(const Ctx<K>& ctx) {
        return free_module(ctx, FreeModule::standard(1));
    }
    /// B = S/m as a graded S-module, generator placed in the given degree;
    /// base_point(ctx, t) is B(-t).
    static GradedModule base_point(const Ctx<K>& ctx, int gen_degree = 0) {
        std::vector<std::vector<Poly<K>>> e(1);
        for (int j = 0; j < ctx.nx(); ++j) e[0].push_back(Poly<K>::variable(ctx, j));
        return GradedModule(GradedMatrix<K>(ctx, FreeModule::standard(1, gen_degree),
                                            FreeModule::standard(ctx.nx(), gen_degree + 1),
                                            std::move(e)));
    }

    const Ctx<K>& ctx() const { return pres_.ctx(); }
    const FreeModule& gens() const { return pres_.target(); }
    const GradedMatrix<K>& rels() const { return pres_; }

    const GroebnerBasis<K>& rel_gb() const {
        std::call_once(cache_->once, [this] {
            cache_->gb = GroebnerBasis<K>::of_matrix(pres_, false);
        });
        return *cache_->gb;
    }

    /// Reduced basis of the relation submodule as matrix columns (cached).
    const GradedMatrix<K>& rel_gb_matrix() const {
        std::call_once(cache_->gbmat_once, [this] {
            auto cols = rel_gb().image_basis();
            std::vector<int> degs;
            std::vector<std::vector<Poly<K>>> e(gens().rank());
            for (auto& col : cols) {
                degs.push_back(column_degree(gens(), col, 0));
                for (size_t r = 0; r < e.size(); ++r) e[r].push_back(col[r]);
            }
            cache_->gbmat = GradedMatrix<K>(ctx(), gens(), FreeModule::graded(degs),
                                            std::move(e));
        });
        return *cache_->gbmat;
    }

    /// Pre-seed the relation basis when it is known by construction (block
    /// sums assembled from cached bases). No-op if already computed.
    void install_gb(std::vector<VecPoly<K>> cols) const {
        std::call_once(cache_->once, [&] {
            cache_->gb = GroebnerBasis<K>::from_columns(ctx(), gens(), std::move(cols));
        });
    }

    bool is_zero() const {
        for (size_t k = 0; k < gens().rank(); ++k) {
            VecPoly<K> e(gens().rank());
            e[k] = Poly<K>::constant(ctx(), ctx().one());
            if (!rel_gb().contains(e)) return false;
        }
        return true;
    }

    /// Standard monomial labels of the degree-p part (field base): pairs
    /// (generator slot, monomial), slots ascending, monomials descending.
    std::vector<std::pair<int, Monomial>> standard_monomials(int p) const {
        auto leads = rel_gb().image_leads();
        std::vector<std::pair<int, Monomial>> out;
        for (size_t k = 0; k < gens().rank(); ++k) {
            for (auto& m : monomial_basis(ctx(), p - gens().deg(k))) {
                bool standard = true;
                for (auto& [slot, lm] : leads)
                    if (slot == (int)k && mono_divides(lm, m)) { standard = false; break; }
                if (standard) out.emplace_back((int)k, m);
            }
        }
        return out;
    }

    /// Field base: dimension of the degree-p part.
    long hf(int p) const {
        if (!ctx().base().is_field())
            throw std::logic_error("GradedModule::hf: field base only");
        return (long)standard_monomials(p).size();
    }

    GradedModule shifted(int t) const { return GradedModule(pres_.twisted(t)); }

    /// Memoized derived invariants (regularity strands etc.). Keys are the
    /// computing function's business; copies of a module share the memo.
    std::optional<ExtDeg> memo_get(const std::string& key) const {
        std::lock_guard<std::mutex> lk(cache_->memo_mu);
        auto it = cache_->memo.find(key);
        if (it == cache_->memo.end()) return std::nullopt;
        return it->second;
    }
    void memo_put(const std::string& key, ExtDeg v) const {
        std::lock_guard<std::mutex> lk(cache_->memo_mu);
        cache_->memo.emplace(key, v);
    }

private:
    struct Cache {
        std::once_flag once;
        std::optional<GroebnerBasis<K>> gb;
        std::once_flag gbmat_once;
        std::optional<GradedMatrix<K>> gbmat;
        std::mutex memo_mu;
        std::map<std::string, ExtDeg> memo;
    };
    GradedMatrix<K> pres_;
    std::shared_ptr<Cache> cache_;
};

enum class Certify { checked, trusted };

/// Degree-zero morphism of graded modules, given on generators. The
/// checked constructor certifies well-definedness by Groebner membership of
/// the image of every source relation.
template <Field K>
class ModuleMap {
public:
    ModuleMap() = default;
    ModuleMap(GradedModule<K> src, GradedModule<K> tgt, GradedMatrix<K> mat,
              Certify cert = Certify::checked)
        : src_(std::move(src)), tgt_(std::move(tgt)), mat_(std::move(mat)) {
        if (mat_.target() != tgt_.gens() || mat_.source() != src_.gens())
            throw std::invalid_argument("ModuleMap: matrix shape mismatch");
        if (cert == Certify::checked && !well_defined())
            throw std::invalid_argument("ModuleMap: not well defined on relations");
    }

    static ModuleMap identity(const GradedModule<K>& m) {
        return ModuleMap(m, m, GradedMatrix<K>::identity(m.ctx(), m.gens()),
                         Certify::trusted);
    }
    static ModuleMap zero_map(const GradedModule<K>& src, const GradedModule<K>& tgt) {
        return ModuleMap(src, tgt,
                         GradedMatrix<K>::zero(src.ctx(), tgt.gens(), src.gens()),
                         Certify::trusted);
    }

    const GradedModule<K>& source() const { return src_; }
    const GradedModule<K>& target() const { return tgt_; }
    const GradedMatrix<K>& matrix() const { return mat_; }
    const Ctx<K>& ctx() const { return mat_.ctx(); }

    bool well_defined() const {
        for (size_t c = 0; c < src_.rels().cols(); ++c) {
            VecPoly<K> img(tgt_.gens().rank());
            for (size_t r = 0; r < mat_.rows(); ++r) {
                Poly<K> acc;
                for (size_t k = 0; k < mat_.cols(); ++k) {
                    auto t = mat_.at(r, k) * src_.rels().at(k, c);
                    if (!t.is_zero()) acc = acc.is_zero() ? t : acc + t;
                }
                img[r] = acc;
            }
            if (!tgt_.rel_gb().contains(img)) return false;
        }
        return true;
    }

    ModuleMap shifted(int t) const {
        return ModuleMap(src_.shifted(t), tgt_.shifted(t), mat_.twisted(t),
                         Certify::trusted);
    }

private:
    GradedModule<K> src_, tgt_;
    GradedMatrix<K> mat_;
};

template <Field K>
ModuleMap<K> compose_maps(const ModuleMap<K>& g, const ModuleMap<K>& f) {
    // g after f
    if (f.target().gens() != g.source().gens())
        throw std::invalid_argument("compose_maps: shape mismatch");
    return ModuleMap<K>(f.source(), g.target(), compose(g.matrix(), f.matrix()),
                        Certify::trusted);
}

/// Express the columns of V (elements of the target of g, written over its
/// generators) through g: find X with V == g.matrix * X modulo the target
/// relations. Throws if some column is not in the image.
template <Field K>
GradedMatrix<K> factor_through(const ModuleMap<K>& g, const GradedMatrix<K>& V) {
    if (V.target() != g.target().gens())
        throw std::invalid_argument("factor_through: ambient mismatch");
    auto gb = GroebnerBasis<K>::augmented_graph(g.matrix(), g.target().rel_gb_matrix(),
                                                true);
    std::vector<std::vector<Poly<K>>> e(g.source().gens().rank());
    for (size_t c = 0; c < V.cols(); ++c) {
        auto [nf, wit] = gb.normal_form_with_witness(V.col(c));
        for (auto& p : nf)
            if (!p.is_zero())
                throw std::invalid_argument("factor_through: column not in image");
        for (size_t r = 0; r < e.size(); ++r) e[r].push_back(wit[r]);
    }
    return GradedMatrix<K>(V.ctx(), g.source().gens(), V.source(), std::move(e));
}

template <Field K>
struct KernelResult {
    GradedModule<K> module;
    ModuleMap<K> incl; // into the source of the map
};

template <Field K>
KernelResult<K> kernel(const ModuleMap<K>& f) {
    auto gens = preimage_relations(f.matrix(), f.target().rel_gb_matrix(), true);
    auto rels = preimage_relations(gens, f.source().rel_gb_matrix(), true);
    GradedModule<K> ker(rels);
    ModuleMap<K> incl(ker, f.source(), gens, Certify::trusted);
    return {std::move(ker), std::move(incl)};
}

template <Field K>
struct CokernelResult {
    GradedModule<K> module;
    ModuleMap<K> proj; // from the target of the map
};

template <Field K>
CokernelResult<K> cokernel(const ModuleMap<K>& f) {
    auto rels = f.matrix().augmented(f.target().rels());
    GradedModule<K> coker(rels);
    ModuleMap<K> proj(f.target(), coker,
                      GradedMatrix<K>::identity(f.ctx(), f.target().gens()),
                      Certify::trusted);
    return {std::move(coker), std::move(proj)};
}

template <Field K>
bool is_iso(const ModuleMap<K>& f) {
    return kernel(f).module.is_zero() && cokernel(f).module.is_zero();
}

template <Field K>
struct DirectSum {
    GradedModule<K> module;
    ModuleMap<K> inj1, inj2, proj1, proj2;
};

template <Field K>
DirectSum<K> direct_sum(const GradedModule<K>& a, const GradedModule<K>& b) {
    GradedModule<K> s(a.rels().direct_sum(b.rels()));
    {
        // the union of the reduced bases is the reduced basis of the sum
        std::vector<VecPoly<K>> cols;
        size_t ra = a.gens().rank(), rb = b.gens().rank();
        for (auto& c : a.rel_gb().image_basis()) {
            VecPoly<K> v(ra + rb);
            for (size_t r = 0; r < ra; ++r) v[r] = c[r];
            cols.push_back(std::move(v));
        }
        for (auto& c : b.rel_gb().image_basis()) {
            VecPoly<K> v(ra + rb);
            for (size_t r = 0; r < rb; ++r) v[ra + r] = c[r];
            cols.push_back(std::move(v));
        }
        s.install_gb(std::move(cols));
    }
    auto za = GradedMatrix<K>::zero(a.ctx(), b.gens(), a.gens());
    auto zb = GradedMatrix<K>::zero(a.ctx(), a.gens(), b.gens());
    auto ia = GradedMatrix<K>::identity(a.ctx(), a.gens());
    auto ib = GradedMatrix<K>::identity(a.ctx(), b.gens());
    ModuleMap<K> inj1(a, s, stack_matrices(ia, za), Certify::trusted);
    ModuleMap<K> inj2(b, s, stack_matrices(zb, ib), Certify::trusted);
    ModuleMap<K> proj1(s, a, ia.augmented(zb), Certify::trusted);
    ModuleMap<K> proj2(s, b, za.augmented(ib), Certify::trusted);
    return {std::move(s), std::move(inj1), std::move(inj2), std::move(proj1),
            std::move(proj2)};
}

/// Tensor product of finitely presented modules; generator (i,j) is stored
/// at index i * rank(N) + j.
template <Field K>
GradedModule<K> tensor(const GradedModule<K>& m, const GradedModule<K>& n) {
    const Ctx<K>& ctx = m.ctx();
    size_t gm = m.gens().rank(), gn = n.gens().rank();
    std::vector<int> degs;
    for (size_t i = 0; i < gm; ++i)
        for (size_t j = 0; j < gn; ++j) degs.push_back(m.gens().deg(i) + n.gens().deg(j));
    FreeModule tgt = FreeModule::graded(degs);
    std::vector<int> rdegs;
    std::vector<std::vector<Poly<K>>> e(tgt.rank());
    auto add_col = [&](auto fill, int deg) {
        rdegs.push_back(deg);
        for (size_t r = 0; r < tgt.rank(); ++r) e[r].push_back(fill(r));
    };
    for (size_t c = 0; c < m.rels().cols(); ++c)
        for (size_t j = 0; j < gn; ++j)
            add_col(
                [&](size_t r) {
                    return r % gn == j ? m.rels().at(r / gn, c) : Poly<K>();
                },
                m.rels().source().deg(c) + n.gens().deg(j));
    for (size_t i = 0; i < gm; ++i)
        for (size_t c = 0; c < n.rels().cols(); ++c)
            add_col(
                [&](size_t r) {
                    return r / gn == i ? n.rels().at(r % gn, c) : Poly<K>();
                },
                n.rels().source().deg(c) + m.gens().deg(i));
    GradedModule<K> out(
        GradedMatrix<K>(ctx, tgt, FreeModule::graded(rdegs), std::move(e)));
    if (m.rels().cols() == 0) {
        // blocks of copies of N: assemble the relation basis directly
        std::vector<VecPoly<K>> cols;
        for (size_t i = 0; i < gm; ++i)
            for (auto& c : n.rel_gb().image_basis()) {
                VecPoly<K> v(gm * gn);
                for (size_t r = 0; r < gn; ++r) v[i * gn + r] = c[r];
                cols.push_back(std::move(v));
            }
        out.install_gb(std::move(cols));
    }
    return out;
}

template <Field K>
struct PruneResult {
    GradedModule<K> module;
    ModuleMap<K> to_new;  // original -> pruned
    ModuleMap<K> to_old;  // pruned -> original
};

/// Cancel unit entries of the presentation (isomorphism-preserving): the
/// full minimalization over a field base; over a polynomial base it cancels
/// the constant units of k, which is as far as unit entries go.
template <Field K>
PruneResult<K> prune(const GradedModule<K>& m) {
    const Ctx<K>& ctx = m.ctx();
    auto e = matrix_entries(m.rels());
    std::vector<int> gdeg = m.gens().degs;
    std::vector<int> rdeg = m.rels().source().degs;
    // to_new as entries over the shrinking generator list
    auto id = GradedMatrix<K>::identity(ctx, m.gens());
    auto tn = matrix_entries(id); // rows: current gens, cols: original gens
    std::vector<size_t> orig_index(m.gens().rank());
    for (size_t i = 0; i < orig_index.size(); ++i) orig_index[i] = i;
    while (true) {
        size_t pr = (size_t)-1, pc = (size_t)-1;
        for (size_t r = 0; r < e.size() && pr == (size_t)-1; ++r)
            for (size_t c = 0; c < rdeg.size(); ++c)
                if (e[r][c].is_unit_constant()) { pr = r; pc = c; break; }
        if (pr == (size_t)-1) break;
        K u = e[pr][pc].unit_value();
        K uinv = u.inv();
        // adjust the remaining presentation entries and the to_new rows
        for (size_t r = 0; r < e.size(); ++r) {
            if (r == pr) continue;
            const Poly<K>& fr = e[r][pc];
            if (!fr.is_zero()) {
                for (size_t c = 0; c < rdeg.size(); ++c) {
                    if (c == pc || e[pr][c].is_zero()) continue;
                    auto t = fr * e[pr][c].scaled(uinv);
                    e[r][c] = e[r][c].is_zero() ? -t : e[r][c] - t;
                }
            }
        }
        // generator pr is expressed by the others: e_pr = -u^{-1} sum_{r != pr} e[r][pc] e_r
        // rewrite the accumulated projection rows accordingly
        for (size_t c = 0; c < tn[pr].size(); ++c) {
            const Poly<K>& v = tn[pr][c];
            if (v.is_zero()) continue;
            for (size_t r = 0; r < e.size(); ++r) {
                if (r == pr || e[r][pc].is_zero()) continue;
                auto t = e[r][pc].scaled(uinv) * v;
                tn[r][c] = tn[r][c].is_zero() ? -t : tn[r][c] - t;
            }
        }
        // drop row pr and column pc
        e.erase(e.begin() + pr);
        tn.erase(tn.begin() + pr);
        gdeg.erase(gdeg.begin() + pr);
        orig_index.erase(orig_index.begin() + pr);
        for (auto& row : e) row.erase(row.begin() + pc);
        rdeg.erase(rdeg.begin() + pc);
    }
    FreeModule ngens = FreeModule::graded(gdeg);
    GradedModule<K> pruned(
        GradedMatrix<K>(ctx, ngens, FreeModule::graded(rdeg), std::move(e)));
    GradedMatrix<K> to_new_mat(ctx, ngens, m.gens(), std::move(tn));
    // surviving generators keep their meaning: pruned gen k is original
    // generator orig_index[k]
    std::vector<std::vector<Poly<K>>> to(m.gens().rank(),
                                         std::vector<Poly<K>>(ngens.rank()));
    for (size_t k = 0; k < ngens.rank(); ++k)
        to[orig_index[k]][k] = Poly<K>::constant(ctx, ctx.one());
    GradedMatrix<K> to_old_mat(ctx, m.gens(), ngens, std::move(to));
    ModuleMap<K> to_new(m, pruned, std::move(to_new_mat), Certify::trusted);
    ModuleMap<K> to_old(pruned, m, std::move(to_old_mat), Certify::trusted);
    return {std::move(pruned), std::move(to_new), std::move(to_old)};
}

template <Field K>
struct TruncateResult {
    GradedModule<K> module;
    ModuleMap<K> incl; // into the original module
};

/// The truncation M_{>=d}: generated by the original generators of degree
/// >= d plus the degree-d monomial multiples of the lower ones; Hilbert
/// function agrees with M in degrees >= d and vanishes below.
template <Field K>
TruncateResult<K> truncate(const GradedModule<K>& m, int d, bool do_prune = true) {
    // defined below with the preimage against the cached relation basis
    const Ctx<K>& ctx = m.ctx();
    std::vector<int> gdegs;
    std::vector<std::vector<Poly<K>>> g(m.gens().rank());
    auto add_gen = [&](size_t slot, const Monomial& mono, int deg) {
        gdegs.push_back(deg);
        for (size_t r = 0; r < m.gens().rank(); ++r)
            g[r].push_back(r == slot
                               ? Poly<K>::monomial(ctx, mono, ctx.one())
                               : Poly<K>());
    };
    for (size_t k = 0; k < m.gens().rank(); ++k) {
        int gd = m.gens().deg(k);
        if (gd >= d) add_gen(k, ctx.one_mono(), gd);
        else
            for (auto& mono : monomial_basis(ctx, d - gd)) add_gen(k, mono, d);
    }
    GradedMatrix<K> gmat(ctx, m.gens(), FreeModule::graded(gdegs), std::move(g));
    auto rels = preimage_relations(gmat, m.rel_gb_matrix(), true);
    GradedModule<K> t(rels);
    ModuleMap<K> incl(t, m, gmat, Certify::trusted);
    if (!do_prune) return {std::move(t), std::move(incl)};
    auto p = prune(t);
    return {p.module, compose_maps(incl, p.to_old)};
}

/// Shift then truncate, as one operation: returns M(twist) when d is absent.
template <Field K>
GradedModule<K> shift_truncate(const GradedModule<K>& m, int twist,
                               std::optional<int> d) {
    GradedModule<K> s = m.shifted(twist);
    if (!d) return s;
    return truncate(s, *d).module;
}

/// Induced map M_{>=d} -> N_{>=d} on truncations of the given map.
template <Field K>
ModuleMap<K> truncate_map(const ModuleMap<K>& f, const TruncateResult<K>& src_t,
                          const TruncateResult<K>& tgt_t) {
    // images of the truncated source generators, as elements of the target
    auto images = compose(f.matrix(), src_t.incl.matrix());
    auto x = factor_through(tgt_t.incl, images);
    return ModuleMap<K>(src_t.module, tgt_t.module, x, Certify::trusted);
}

} // namespace grsat
