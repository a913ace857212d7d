#pragma once

#include <chrono>

#include "regularity.hpp"

namespace grsat {

enum class TransformStrategy { power, frobenius, iterated };

inline const char* strategy_name(TransformStrategy s) {
    switch (s) {
        case TransformStrategy::power: return "power";
        case TransformStrategy::frobenius: return "frobenius";
        case TransformStrategy::iterated: return "iterated";
    }
    return "?";
}

/// The minimal power l with Hom_{>=d}(m^l, M) saturated; the ascending
/// search is guaranteed to stop by delta1 of the saturation interval.
template <Field K>
int defect_of_saturation(const GradedModule<K>& m, int d) {
    if (d > 0) throw std::invalid_argument("defect_of_saturation: d must be <= 0");
    auto iv = saturation_interval(m, d);
    for (int l = 0; l <= iv.delta1; ++l) {
        if (l == 0) {
            if (is_saturated(m, d).saturated) return 0;
            continue;
        }
        auto p = irrelevant_power(m.ctx(), l, PowerKind::plain);
        auto h = hom_from_power(m, p, d);
        if (is_saturated(h.module, d).saturated) return l;
    }
    throw std::logic_error("defect_of_saturation: no saturating power within delta1");
}

template <Field K>
struct TransformResult {
    GradedModule<K> saturated;
    ModuleMap<K> eta;     // from the truncated input
    int power_used = 0;   // power l (or recursion count for iterated)
    TransformStrategy strategy = TransformStrategy::power;
    SaturationInterval interval{0, 0};
    double wall_seconds = 0;
};

/// The truncated ideal transform D_{m,>=d}(M). The input is truncated at d
/// first; the saturated result, the composite natural map eta, the power
/// used, and the saturation interval (with the defect filled in) are all
/// reported.
template <Field K>
TransformResult<K> ideal_transform(const GradedModule<K>& m_in, int d,
                                   TransformStrategy strategy = TransformStrategy::power) {
    if (d > 0) throw std::invalid_argument("ideal_transform: d must be <= 0");
    auto t0 = std::chrono::steady_clock::now();
    auto trunc = truncate(m_in, d);
    const GradedModule<K>& m = trunc.module;
    int delta = defect_of_saturation(m, d);
    auto iv = saturation_interval(m, d);
    iv.defect = delta;

    TransformResult<K> out;
    out.strategy = strategy;
    out.interval = iv;
    switch (strategy) {
        case TransformStrategy::power: {
            auto h = hom_from_power(m, irrelevant_power(m.ctx(), delta, PowerKind::plain), d);
            auto p = prune(h.module);
            out.saturated = p.module;
            out.eta = compose_maps(p.to_new, h.eta);
            out.power_used = delta;
            break;
        }
        case TransformStrategy::frobenius: {
            auto h = hom_from_power(m, irrelevant_power(m.ctx(), delta, PowerKind::frobenius), d);
            auto p = prune(h.module);
            out.saturated = p.module;
            out.eta = compose_maps(p.to_new, h.eta);
            out.power_used = delta;
            break;
        }
        case TransformStrategy::iterated: {
            // factor out the torsion part first: ker(eta^{delta1})
            GradedModule<K> cur = m;
            ModuleMap<K> eta_acc = ModuleMap<K>::identity(m);
            if (delta > 0 && iv.delta1 > 0) {
                auto hb = hom_from_power(
                    m, irrelevant_power(m.ctx(), iv.delta1, PowerKind::plain), d);
                auto tors = kernel(hb.eta);
                auto ck = cokernel(tors.incl);
                auto p = prune(ck.module);
                cur = p.module;
                eta_acc = compose_maps(p.to_new, ck.proj);
            }
            // apply Hom_{>=d}(m,-) until saturated; the torsion-free factor
            // needs at most delta steps
            int steps = 0;
            auto mono = irrelevant_power(m.ctx(), 1, PowerKind::plain);
            while (!is_saturated(cur, d).saturated) {
                if (steps >= std::max(delta, 1) + 1)
                    throw std::logic_error("ideal_transform: iterated strategy overran");
                auto h = hom_from_power(cur, mono, d);
                auto p = prune(h.module);
                eta_acc = compose_maps(compose_maps(p.to_new, h.eta), eta_acc);
                cur = p.module;
                ++steps;
            }
            out.saturated = cur;
            out.eta = eta_acc;
            out.power_used = steps;
            break;
        }
    }
    out.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

} // namespace grsat
