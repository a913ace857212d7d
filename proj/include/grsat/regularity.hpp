#pragma once

#include <set>

#include "koszul.hpp"
#include "power_hom.hpp"
#include "resolution.hpp"

namespace grsat {

/// Graded Betti numbers. Over a field base the ranks come from the minimal
/// free resolution; over a polynomial base the entries are the Tor classes
/// from the Koszul route, without minimality claims.
template <Field K>
struct BettiTable {
    std::map<std::pair<int, int>, long> ranks;          // field base
    std::map<std::pair<int, int>, BModule<K>> classes;  // polynomial base
    int max_step = 0;
    bool minimal = true;

    long rank(int i, int j) const {
        auto it = ranks.find({i, j});
        return it == ranks.end() ? 0 : it->second;
    }
};

template <Field K>
BettiTable<K> betti_table(const GradedModule<K>& m) {
    BettiTable<K> t;
    const Ctx<K>& ctx = m.ctx();
    if (ctx.base().is_field()) {
        auto res = free_resolution(m, ctx.nx() + 1);
        for (size_t k = 0; k < res[0].map.target().rank(); ++k)
            t.ranks[{0, res[0].map.target().deg(k)}]++;
        for (auto& step : res) {
            for (size_t c = 0; c < step.map.cols(); ++c)
                t.ranks[{step.index, step.map.source().deg(c)}]++;
            t.max_step = std::max(t.max_step, step.index);
        }
        return t;
    }
    t.minimal = false;
    for (int i = 0; i <= ctx.nx(); ++i) {
        auto tor = tor_module(m, i);
        std::vector<int> degs = tor.gens().degs;
        std::sort(degs.begin(), degs.end());
        degs.erase(std::unique(degs.begin(), degs.end()), degs.end());
        for (int j : degs) {
            auto layer = hf_bmodule(tor, j);
            if (!layer.is_zero()) {
                t.classes.emplace(std::make_pair(i, j), layer);
                t.max_step = std::max(t.max_step, i);
            }
        }
    }
    return t;
}

/// reg M = max { reg Tor_i(B,M) - i | i = 0..n+1 }; -inf iff M = 0. Over a
/// field base this equals max { j - i : beta_ij != 0 } of the minimal
/// resolution, which is what is computed there.
template <Field K>
ExtDeg castelnuovo_mumford_reg(const GradedModule<K>& m) {
    if (auto v = m.memo_get("reg")) return *v;
    ExtDeg r = ExtDeg::minus_inf();
    if (m.ctx().base().is_field()) {
        auto t = betti_table(m);
        for (auto& [ij, rank] : t.ranks)
            if (rank > 0) r = ExtDeg::max(r, ExtDeg::of(ij.second - ij.first));
    } else {
        for (int i = 0; i <= m.ctx().nx(); ++i)
            r = ExtDeg::max(r, m_annihilated_reg(tor_module(m, i)) - i);
    }
    m.memo_put("reg", r);
    return r;
}

/// Quasi-zero test: compute r = reg M and check that the Hilbert function
/// vanishes on the window (r, r+n+1].
template <Field K>
bool is_quasi_zero(const GradedModule<K>& m) {
    ExtDeg r = castelnuovo_mumford_reg(m);
    if (r.is_minus_inf()) return true;
    for (int p = r.value() + 1; p <= r.value() + m.ctx().nx(); ++p) {
        if (m.ctx().base().is_field()) {
            if (m.hf(p) != 0) return false;
        } else {
            if (!hf_bmodule(m, p).is_zero()) return false;
        }
    }
    return true;
}

enum class LinregRoute { ext, tor };

/// Strand regularities reg Ext^0(B,M) and reg Ext^1(B,M), computed either
/// from the Koszul-Hom route or from the top two Tor strands via the
/// Betti=Bass identification Ext^j(B,M)_e = Tor_{n+1-j}(B,M)_{e+n+1}.
template <Field K>
std::pair<ExtDeg, ExtDeg> linreg_strands(const GradedModule<K>& m, LinregRoute route) {
    std::string key = route == LinregRoute::ext ? "linstrand.ext" : "linstrand.tor";
    auto e0 = m.memo_get(key + "0");
    auto e1 = m.memo_get(key + "1");
    if (e0 && e1) return {*e0, *e1};
    std::pair<ExtDeg, ExtDeg> out;
    int top = m.ctx().nx();
    if (route == LinregRoute::ext) {
        out.first = m_annihilated_reg(ext_module(m, 0));
        out.second = m_annihilated_reg(ext_module(m, 1));
    } else {
        out.first = m_annihilated_reg(tor_module(m, top)) - (top);
        out.second = m_annihilated_reg(tor_module(m, top - 1)) - (top);
    }
    m.memo_put(key + "0", out.first);
    m.memo_put(key + "1", out.second);
    return out;
}

/// linreg M (or the d-truncated variant for M in grS-grmod_{>=d}, d <= 0).
template <Field K>
ExtDeg linear_regularity(const GradedModule<K>& m, std::optional<int> d = std::nullopt,
                         LinregRoute route = LinregRoute::ext) {
    if (d && *d > 0) throw std::invalid_argument("linear_regularity: d must be <= 0");
    auto [e0, e1] = linreg_strands(m, route);
    ExtDeg r = ExtDeg::max(e0, e1);
    return d ? r.truncated(*d) : r;
}

struct SaturationInterval {
    int delta0 = 0;
    int delta1 = 0;
    std::optional<int> defect;

    SaturationInterval(int d0, int d1) : delta0(d0), delta1(d1) {
        if (d0 < 0 || d0 > d1)
            throw std::invalid_argument("SaturationInterval: need 0 <= delta0 <= delta1");
    }
};

/// [delta0, delta1] with delta0 = max{reg Hom_{>=d}(B,M) - d + 1, 0} and
/// delta1 = max{linreg_{>=d} M - d + 1, 0}.
template <Field K>
SaturationInterval saturation_interval(const GradedModule<K>& m, int d) {
    if (d > 0) throw std::invalid_argument("saturation_interval: d must be <= 0");
    auto [e0, e1] = linreg_strands(m, LinregRoute::ext);
    ExtDeg hom_reg = e0.truncated(d);
    ExtDeg lin = ExtDeg::max(e0, e1).truncated(d);
    int d0 = hom_reg.is_minus_inf() ? 0 : std::max(hom_reg.value() - d + 1, 0);
    int d1 = lin.is_minus_inf() ? 0 : std::max(lin.value() - d + 1, 0);
    return SaturationInterval(d0, d1);
}

enum class SaturationMethod { extB, tor, etaIso, linreg, all };

struct SaturationCheck {
    bool saturated = false;
    std::map<std::string, bool> criteria;
};

/// The natural map eta^1: M -> Hom_{(>=d)}(m, M).
template <Field K>
HomFromPower<K> eta_one(const GradedModule<K>& m, std::optional<int> d) {
    auto p = irrelevant_power(m.ctx(), 1, PowerKind::plain);
    return hom_from_power(m, p, d);
}

template <Field K>
SaturationCheck is_saturated(const GradedModule<K>& m,
                             std::optional<int> d = std::nullopt,
                             SaturationMethod method = SaturationMethod::extB) {
    if (d && *d > 0) throw std::invalid_argument("is_saturated: d must be <= 0");
    SaturationCheck out;
    auto run = [&](SaturationMethod which) -> bool {
        switch (which) {
            case SaturationMethod::extB: {
                auto [e0, e1] = linreg_strands(m, LinregRoute::ext);
                if (d) return e0.truncated(*d).is_minus_inf() &&
                              e1.truncated(*d).is_minus_inf();
                return e0.is_minus_inf() && e1.is_minus_inf();
            }
            case SaturationMethod::tor: {
                auto [t0, t1] = linreg_strands(m, LinregRoute::tor);
                if (d) return t0.truncated(*d).is_minus_inf() &&
                              t1.truncated(*d).is_minus_inf();
                return t0.is_minus_inf() && t1.is_minus_inf();
            }
            case SaturationMethod::etaIso: {
                auto h = eta_one(m, d);
                return is_iso(h.eta);
            }
            case SaturationMethod::linreg:
                return linear_regularity(m, d).is_minus_inf();
            default:
                throw std::logic_error("is_saturated: bad method");
        }
    };
    if (method != SaturationMethod::all) {
        out.saturated = run(method);
        return out;
    }
    out.criteria["extB"] = run(SaturationMethod::extB);
    out.criteria["tor"] = run(SaturationMethod::tor);
    out.criteria["etaIso"] = run(SaturationMethod::etaIso);
    out.criteria["linreg"] = run(SaturationMethod::linreg);
    bool first = out.criteria.begin()->second;
    for (auto& [name, v] : out.criteria)
        if (v != first)
            throw std::logic_error("is_saturated: criteria disagree at " + name);
    out.saturated = first;
    return out;
}

struct RegularityReport {
    ExtDeg reg;
    ExtDeg linreg;
    std::optional<std::pair<int, ExtDeg>> truncated_linreg;
    bool saturated = false;
};

template <Field K>
RegularityReport regularity_report(const GradedModule<K>& m,
                                   std::optional<int> d = std::nullopt) {
    RegularityReport r;
    r.reg = castelnuovo_mumford_reg(m);
    r.linreg = linear_regularity(m);
    if (d) r.truncated_linreg = std::make_pair(*d, linear_regularity(m, d));
    r.saturated = is_saturated(m, d, SaturationMethod::extB).saturated;
    return r;
}

/// Betti=Bass: beta_{i,j} = dim Ext^{n+1-i}(B,M)_{j-n-1} on every strand
/// (field base). Returns the paired table and whether all strands agree.
struct BettiBassResult {
    bool ok = true;
    // (i, j) -> (betti rank, bass number)
    std::map<std::pair<int, int>, std::pair<long, long>> table;
};

template <Field K>
BettiBassResult betti_bass_check(const GradedModule<K>& m) {
    if (!m.ctx().base().is_field())
        throw std::invalid_argument("betti_bass_check: field base only");
    int top = m.ctx().nx();
    BettiBassResult out;
    auto betti = betti_table(m);
    std::vector<GradedModule<K>> exts;
    for (int j = 0; j <= top; ++j) exts.push_back(ext_module(m, j));
    // candidate (i, j) pairs from both sides
    std::set<std::pair<int, int>> support;
    for (auto& [ij, rank] : betti.ranks)
        if (rank > 0) support.insert(ij);
    for (int i = 0; i <= top; ++i) {
        const auto& e = exts[top - i];
        for (size_t k = 0; k < e.gens().rank(); ++k)
            support.insert({i, e.gens().deg(k) + top});
    }
    for (auto& [i, j] : support) {
        long b = betti.rank(i, j);
        long bass = exts[top - i].hf(j - top);
        out.table[{i, j}] = {b, bass};
        if (b != bass) out.ok = false;
    }
    return out;
}

} // namespace grsat
