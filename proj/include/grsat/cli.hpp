#pragma once

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "io_json.hpp"

namespace grsat {

namespace cli_detail {

struct Options {
    std::string input;
    std::string output;
    std::string engine = "ideal-transform";
    std::string strategy = "power";
    int truncate_at = 0;
};

inline json read_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

inline void write_output(const Options& opt, const json& j) {
    if (opt.output.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(opt.output);
    if (!out) throw std::invalid_argument("cannot open output file: " + opt.output);
    out << j.dump(2) << "\n";
}

inline TransformStrategy parse_strategy(const std::string& s) {
    if (s == "power") return TransformStrategy::power;
    if (s == "frobenius") return TransformStrategy::frobenius;
    if (s == "iterated") return TransformStrategy::iterated;
    throw std::invalid_argument("unknown strategy: " + s);
}

template <Field K>
int run_regularity(const Ctx<K>& ctx, const json& input, const Options& opt) {
    auto m = module_from_json(ctx, input);
    json out;
    out["formatVersion"] = kFormatVersion;
    out["betti"] = betti_to_json(betti_table(m));
    out["reg"] = extdeg_to_json(castelnuovo_mumford_reg(m));
    out["linreg"] = extdeg_to_json(linear_regularity(m));
    int d = std::min(opt.truncate_at, 0);
    auto trunc = truncate(m, d).module;
    out["saturationInterval"] = interval_to_json(saturation_interval(trunc, d));
    out["saturated"] = is_saturated(m).saturated;
    write_output(opt, out);
    return 0;
}

template <Field K>
int run_saturate(const Ctx<K>& ctx, const json& input, const Options& opt, int d) {
    auto m = module_from_json(ctx, input);
    if (opt.engine == "both") {
        auto rep = cross_verify(m, d);
        write_output(opt, cross_verify_to_json(rep));
        return rep.ok ? 0 : 2;
    }
    SectionsEngine eng;
    if (opt.engine == "ideal-transform") eng = SectionsEngine::ideal_transform;
    else if (opt.engine == "bgg") eng = SectionsEngine::bgg;
    else throw std::invalid_argument("unknown engine: " + opt.engine);
    auto r = twisted_global_sections(m, d, eng, parse_strategy(opt.strategy));
    write_output(opt, sections_to_json(r));
    return 0;
}

template <Field K>
int run_pushforward(const Ctx<K>& ctx, const json& input, const Options& opt) {
    auto m = module_from_json(ctx, input);
    auto r = pushforward(m);
    json out;
    out["formatVersion"] = kFormatVersion;
    out["degreeZero"] = bmodule_to_json(r.degree_zero);
    out["sections"] = sections_to_json(r.source);
    write_output(opt, out);
    return 0;
}

template <Field K>
int run_verify(const Ctx<K>& ctx, const json& input, const Options& opt, int d) {
    auto m = module_from_json(ctx, input);
    auto rep = cross_verify(m, d);
    write_output(opt, cross_verify_to_json(rep));
    if (!rep.ok) {
        for (auto& msg : rep.diffs) std::cerr << "divergence: " << msg << "\n";
        return 2;
    }
    return 0;
}

template <class F>
int dispatch_base(const json& input, F&& f) {
    BaseRing base = base_from_json(input.at("base"));
    int n = input.at("n").get<int>();
    if (base.characteristic() == 0) {
        Ctx<Rat> ctx(base, n);
        return f(ctx);
    }
    Ctx<GFp> ctx(base, n);
    return f(ctx);
}

} // namespace cli_detail

/// Entry point of the command-line tool; returns the process exit code
/// (0 success, 1 input error, 2 verification failure).
inline int cli_main(std::vector<std::string> args) {
    using namespace cli_detail;
    CLI::App app{"exact truncated twisted global sections via two saturation engines"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub, bool with_engine) {
        sub->add_option("-i,--input", opt.input, "module JSON file")->required();
        sub->add_option("-o,--output", opt.output, "output JSON file (default stdout)");
        if (with_engine) {
            sub->add_option("--engine", opt.engine,
                            "ideal-transform | bgg | both");
            sub->add_option("--strategy", opt.strategy,
                            "power | frobenius | iterated");
        }
    };

    auto* reg = app.add_subcommand("regularity",
                                   "Betti table, reg, linreg, saturation interval");
    add_common(reg, false);
    reg->add_option("--truncate", opt.truncate_at, "truncation degree d <= 0");

    auto* sat = app.add_subcommand("saturate", "saturate a module (both engines on demand)");
    add_common(sat, true);
    int sat_d = 0;
    sat->add_option("--truncate", sat_d, "truncation degree d <= 0");

    auto* sec = app.add_subcommand("sections", "truncated twisted global sections");
    add_common(sec, true);
    int sec_d = 0;
    sec->add_option("--twist-min", sec_d, "lowest twist d");

    auto* push = app.add_subcommand("pushforward", "direct image as a B-module");
    add_common(push, false);

    auto* verify = app.add_subcommand("verify", "cross-check the two engines");
    add_common(verify, false);
    int verify_d = 0;
    verify->add_option("--truncate", verify_d, "truncation degree d <= 0");

    std::reverse(args.begin(), args.end()); // CLI11 parses reversed argv-style
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        json input = read_input(opt.input);
        if (reg->parsed())
            return dispatch_base(input, [&](auto& ctx) {
                return run_regularity(ctx, input, opt);
            });
        if (sat->parsed())
            return dispatch_base(input, [&](auto& ctx) {
                return run_saturate(ctx, input, opt, sat_d);
            });
        if (sec->parsed())
            return dispatch_base(input, [&](auto& ctx) {
                return run_saturate(ctx, input, opt, sec_d);
            });
        if (push->parsed())
            return dispatch_base(input, [&](auto& ctx) {
                return run_pushforward(ctx, input, opt);
            });
        if (verify->parsed())
            return dispatch_base(input, [&](auto& ctx) {
                return run_verify(ctx, input, opt, verify_d);
            });
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace grsat
