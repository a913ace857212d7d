#pragma once

#include <fstream>

#include <json.hpp>

#include "sections.hpp"

namespace grsat {

using nlohmann::json;

constexpr int kFormatVersion = 1;

inline json base_to_json(const BaseRing& b) {
    switch (b.kind) {
        case BaseKind::rationals: return "Q";
        case BaseKind::prime_field: return json{{"Fp", b.p}};
        case BaseKind::poly_ring: {
            json inner = b.coeff_kind == BaseKind::rationals ? json("Q")
                                                             : json{{"Fp", b.p}};
            return json{{"poly", {{"base", inner}, {"vars", b.yvars}}}};
        }
    }
    throw std::logic_error("base_to_json: bad kind");
}

inline BaseRing base_from_json(const json& j) {
    if (j.is_string() && j.get<std::string>() == "Q") return BaseRing::rationals();
    if (j.is_object() && j.contains("Fp"))
        return BaseRing::prime_field(j.at("Fp").get<uint32_t>());
    if (j.is_object() && j.contains("poly")) {
        const json& p = j.at("poly");
        auto vars = p.at("vars").get<std::vector<std::string>>();
        const json& inner = p.at("base");
        if (inner.is_string() && inner.get<std::string>() == "Q")
            return BaseRing::poly_over_rationals(vars);
        if (inner.is_object() && inner.contains("Fp"))
            return BaseRing::poly_over_prime_field(inner.at("Fp").get<uint32_t>(), vars);
        throw std::invalid_argument("base_from_json: poly base must be Q or Fp");
    }
    throw std::invalid_argument("base_from_json: expected \"Q\", {\"Fp\":p} or {\"poly\":...}");
}

template <Field K>
json module_to_json(const GradedModule<K>& m) {
    json j;
    j["formatVersion"] = kFormatVersion;
    j["base"] = base_to_json(m.ctx().base());
    j["n"] = m.ctx().n();
    j["generatorDegrees"] = m.gens().degs;
    json rels = json::array();
    for (size_t c = 0; c < m.rels().cols(); ++c) {
        json col = json::array();
        for (size_t r = 0; r < m.rels().rows(); ++r)
            col.push_back(print_poly(m.ctx(), m.rels().at(r, c)));
        rels.push_back(col);
    }
    j["relations"] = rels;
    return j;
}

template <Field K>
GradedModule<K> module_from_json(const Ctx<K>& ctx, const json& j) {
    auto gdegs = j.at("generatorDegrees").get<std::vector<int>>();
    FreeModule gens = FreeModule::graded(gdegs);
    std::vector<int> rdegs;
    std::vector<std::vector<Poly<K>>> e(gens.rank());
    if (j.contains("relations")) {
        for (const json& col : j.at("relations")) {
            if (col.size() != gens.rank())
                throw std::invalid_argument(
                    "module_from_json: relation entry count must match generators");
            std::vector<Poly<K>> parsed;
            for (const json& s : col)
                parsed.push_back(parse_poly(ctx, s.get<std::string>()));
            // infer the relation degree from any nonzero entry
            std::optional<int> deg;
            for (size_t r = 0; r < parsed.size(); ++r) {
                if (parsed[r].is_zero()) continue;
                int cand = *parsed[r].xdeg() + gens.deg(r);
                if (deg && *deg != cand)
                    throw std::invalid_argument(
                        "module_from_json: inhomogeneous relation column");
                deg = cand;
            }
            if (!deg) continue; // zero relation carries no content
            rdegs.push_back(*deg);
            for (size_t r = 0; r < gens.rank(); ++r) e[r].push_back(parsed[r]);
        }
    }
    return GradedModule<K>(
        GradedMatrix<K>(ctx, gens, FreeModule::graded(rdegs), std::move(e)));
}

inline json extdeg_to_json(const ExtDeg& d) {
    if (d.is_minus_inf()) return "-inf";
    return d.value();
}

template <Field K>
json betti_to_json(const BettiTable<K>& t) {
    json rows = json::array();
    for (auto& [ij, rank] : t.ranks)
        if (rank > 0)
            rows.push_back({{"i", ij.first}, {"j", ij.second}, {"rank", rank}});
    for (auto& [ij, cls] : t.classes)
        rows.push_back({{"i", ij.first}, {"j", ij.second}, {"nonzero", !cls.is_zero()}});
    json j;
    j["entries"] = rows;
    j["minimal"] = t.minimal;
    return j;
}

inline json report_to_json(const RegularityReport& r) {
    json j;
    j["reg"] = extdeg_to_json(r.reg);
    j["linreg"] = extdeg_to_json(r.linreg);
    if (r.truncated_linreg) {
        j["truncatedLinreg"] = {{"d", r.truncated_linreg->first},
                                {"value", extdeg_to_json(r.truncated_linreg->second)}};
    }
    j["saturated"] = r.saturated;
    return j;
}

inline json interval_to_json(const SaturationInterval& iv) {
    json j{{"delta0", iv.delta0}, {"delta1", iv.delta1}};
    if (iv.defect) j["defect"] = *iv.defect;
    return j;
}

template <Field K>
json bmodule_to_json(const BModule<K>& b) {
    json j;
    if (b.field_case()) {
        j["dim"] = b.dim();
        return j;
    }
    j["generators"] = b.ngens();
    json rels = json::array();
    for (size_t c = 0; c < b.rep().rels().cols(); ++c) {
        json col = json::array();
        for (size_t r = 0; r < b.rep().rels().rows(); ++r)
            col.push_back(print_poly(b.bctx(), b.rep().rels().at(r, c)));
        rels.push_back(col);
    }
    j["relations"] = rels;
    if (b.bctx().ny() == 1) {
        auto inv = snf_invariants(b);
        j["freeRank"] = inv.free_rank;
        j["invariantFactors"] = inv.factors;
    }
    return j;
}

template <Field K>
json sections_to_json(const SectionsResult<K>& r) {
    json j;
    j["formatVersion"] = kFormatVersion;
    j["engine"] = engine_name(r.engine);
    if (r.engine == SectionsEngine::ideal_transform) {
        j["strategy"] = strategy_name(r.strategy);
        j["power"] = r.power_or_steps;
    } else {
        j["steps"] = r.power_or_steps;
    }
    j["wallSeconds"] = r.wall_seconds;
    j["module"] = module_to_json(r.module);
    j["reportBefore"] = report_to_json(r.before);
    j["reportAfter"] = report_to_json(r.after);
    return j;
}

/// The linear-complex interchange form: socles as dimensions or
/// presentations, mu-matrices as dense row-major string arrays.
template <Field K>
json linear_complex_to_json(const LinearComplex<K>& c) {
    json j;
    j["formatVersion"] = kFormatVersion;
    j["d"] = c.d();
    j["windowTop"] = c.window_top();
    j["regBound"] = c.reg_bound();
    json socles = json::array();
    for (int i = c.d(); i <= c.window_top(); ++i) socles.push_back(bmodule_to_json(c.socle(i)));
    j["socles"] = socles;
    json steps = json::array();
    for (int i = c.d(); i < c.window_top(); ++i) {
        json per_var = json::array();
        for (int t = 0; t < c.ctx().nx(); ++t) {
            const auto& f = c.mu(i, t);
            json rows = json::array();
            for (size_t r = 0; r < c.socle(i).ngens(); ++r) {
                json row = json::array();
                for (size_t cc = 0; cc < c.socle(i + 1).ngens(); ++cc) {
                    if (f.field_case())
                        row.push_back(to_string(f.mat().at(r, cc)));
                    else
                        row.push_back(
                            print_poly(c.ctx().base_ctx(), f.pmap().matrix().at(cc, r)));
                }
                rows.push_back(row);
            }
            per_var.push_back(rows);
        }
        steps.push_back(per_var);
    }
    j["mu"] = steps;
    return j;
}

template <Field K>
json cross_verify_to_json(const CrossVerifyReport<K>& rep) {
    json j;
    j["formatVersion"] = kFormatVersion;
    j["agree"] = rep.ok;
    j["checks"] = {{"hilbertFunctions", rep.hf_ok},
                   {"outputsSaturated", rep.saturated_ok},
                   {"bettiTables", rep.betti_ok},
                   {"recursionCounts", rep.counts_ok}};
    j["window"] = {{"lo", rep.window_lo}, {"hi", rep.window_hi}};
    j["divergences"] = rep.diffs;
    j["idealTransform"] = sections_to_json(rep.transform_result);
    j["bgg"] = sections_to_json(rep.bgg_result);
    return j;
}

} // namespace grsat
