#pragma once

#include "graded_module.hpp"

namespace grsat {

template <Field K>
struct ResolutionStep {
    GradedMatrix<K> map; // d_index : F_index -> F_{index-1}
    int index = 0;
};

/// Cancel unit entries across a complex of graded matrices (d_1, d_2, ...)
/// with F_{i-1} <- F_i. Preserves exactness and homotopy type; over a field
/// base the result is the minimal complex.
template <Field K>
void prune_complex(std::vector<GradedMatrix<K>>& steps) {
    auto find_unit = [&](size_t& si, size_t& pr, size_t& pc) {
        for (si = 0; si < steps.size(); ++si)
            for (pr = 0; pr < steps[si].rows(); ++pr)
                for (pc = 0; pc < steps[si].cols(); ++pc)
                    if (steps[si].at(pr, pc).is_unit_constant()) return true;
        return false;
    };
    size_t si, pr, pc;
    while (find_unit(si, pr, pc)) {
        const Ctx<K>& ctx = steps[si].ctx();
        auto e = matrix_entries(steps[si]);
        K uinv = e[pr][pc].unit_value().inv();
        for (size_t r = 0; r < e.size(); ++r) {
            if (r == pr || e[r][pc].is_zero()) continue;
            for (size_t c = 0; c < e[r].size(); ++c) {
                if (c == pc || e[pr][c].is_zero()) continue;
                auto t = e[r][pc] * e[pr][c].scaled(uinv);
                e[r][c] = e[r][c].is_zero() ? -t : e[r][c] - t;
            }
        }
        std::vector<int> tdeg = steps[si].target().degs;
        std::vector<int> sdeg = steps[si].source().degs;
        e.erase(e.begin() + pr);
        tdeg.erase(tdeg.begin() + pr);
        for (auto& row : e) row.erase(row.begin() + pc);
        sdeg.erase(sdeg.begin() + pc);
        GradedMatrix<K> pruned(ctx, FreeModule::graded(tdeg), FreeModule::graded(sdeg),
                               std::move(e));
        if (si > 0) {
            // previous map loses source column pr, entries unchanged
            auto pe = matrix_entries(steps[si - 1]);
            std::vector<int> psdeg = steps[si - 1].source().degs;
            for (auto& row : pe) row.erase(row.begin() + pr);
            psdeg.erase(psdeg.begin() + pr);
            steps[si - 1] = GradedMatrix<K>(ctx, steps[si - 1].target(),
                                            FreeModule::graded(psdeg), std::move(pe));
        }
        if (si + 1 < steps.size()) {
            // next map loses target row pc, entries unchanged
            auto ne = matrix_entries(steps[si + 1]);
            std::vector<int> ntdeg = steps[si + 1].target().degs;
            ne.erase(ne.begin() + pc);
            ntdeg.erase(ntdeg.begin() + pc);
            steps[si + 1] = GradedMatrix<K>(ctx, FreeModule::graded(ntdeg),
                                            steps[si + 1].source(), std::move(ne));
        }
        steps[si] = std::move(pruned);
    }
}

/// Graded free resolution of coker(pres) of length <= max_length. Over a
/// field base the complex is pruned, hence minimal, and step ranks/degrees
/// are the graded Betti numbers.
template <Field K>
std::vector<ResolutionStep<K>> free_resolution(const GradedModule<K>& m, int max_length) {
    std::vector<GradedMatrix<K>> steps;
    steps.push_back(m.rels());
    for (int i = 1; i <= max_length; ++i) {
        if (steps.back().cols() == 0) break;
        steps.push_back(syzygy_matrix(steps.back()));
    }
    if (m.ctx().base().is_field()) prune_complex(steps);
    while (steps.size() > 1 && steps.back().cols() == 0) steps.pop_back();
    std::vector<ResolutionStep<K>> out;
    for (size_t i = 0; i < steps.size(); ++i) out.push_back({steps[i], (int)i + 1});
    return out;
}

template <Field K>
struct MinimalizeResult {
    GradedMatrix<K> pres;
    bool minimalized; // false over a polynomial base (unsupported)
};

/// Presentation of an isomorphic module with no unit entries (field base).
/// Over a polynomial base the input is returned unchanged, flagged.
template <Field K>
MinimalizeResult<K> minimalize(const GradedMatrix<K>& pres) {
    if (!pres.ctx().base().is_field()) return {pres, false};
    return {prune(GradedModule<K>(pres)).module.rels(), true};
}

} // namespace grsat
