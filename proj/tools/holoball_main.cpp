// Command-line front end: identity and monomial checks, per-point
// reconstruction tables, convergence experiments, and the one-variable disc
// analogue. Run specs come from JSON files; flags override their fields.
// Exit codes: 0 on success, 1 when a tolerance gate fails, 2 on bad input.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "holoball/convergence.hpp"
#include "holoball/io.hpp"
#include "holoball/reconstruct.hpp"
#include "holoball/verification.hpp"

namespace {

using holoball::Complex;
using holoball::ConvergenceReport;
using holoball::GridSpec;
using holoball::LineConfig;
using holoball::TaylorSeries2;
using holoball::io::RunSpec;

struct Flags {
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 1;
    bool seed_given = false;
    double tol = -1.0;
    int kmax = -1;
    int trials = -1;
    int points = -1;
};

RunSpec load_spec(const Flags& flags, const std::string& command) {
    RunSpec spec;
    if (!flags.config_path.empty()) {
        spec = holoball::io::load_run_spec(flags.config_path);
        if (!spec.command.empty() && spec.command != command) {
            throw std::invalid_argument("run spec requests command \"" + spec.command +
                                        "\" but \"" + command + "\" was invoked");
        }
    }
    return spec;
}

GridSpec effective_grid(const RunSpec& spec, const Flags& flags) {
    GridSpec grid = spec.grid;
    if (flags.seed_given) grid.seed = flags.seed;
    if (flags.points > 0) grid.count = flags.points;
    return grid;
}

double effective_tol(const RunSpec& spec, const Flags& flags, double fallback) {
    if (flags.tol > 0.0) return flags.tol;
    if (spec.tol > 0.0) return spec.tol;
    return fallback;
}

int effective_int(int flag_value, int spec_value, int fallback) {
    if (flag_value > 0) return flag_value;
    if (spec_value > 0) return spec_value;
    return fallback;
}

std::uint64_t effective_seed(const RunSpec& spec, const Flags& flags) {
    if (flags.seed_given) return flags.seed;
    if (spec.has_grid) return spec.grid.seed;
    return flags.seed;
}

int run_verify_identity(const Flags& flags) {
    const RunSpec spec = load_spec(flags, "verify-identity");
    const double tol = effective_tol(spec, flags, 1e-8);

    if (spec.has_function && !spec.configs.empty()) {
        double worst = 0.0;
        int checked = 0;
        for (const LineConfig& cfg : spec.configs) {
            GridSpec grid = effective_grid(spec, flags);
            const auto pts = holoball::sample_grid(grid, {cfg});
            for (const auto& [z1, z2] : pts) {
                const Complex fv = holoball::eval2(spec.function, z1, z2);
                const Complex gv = holoball::g_general(spec.function, cfg, z1, z2);
                const Complex tv = holoball::tail_sum(spec.function, cfg, z1, z2);
                worst = std::max(worst, std::abs(fv - gv - tv) / (1.0 + std::abs(fv)));
                ++checked;
            }
        }
        const bool pass = worst <= tol;
        std::cout << "verify-identity: " << (pass ? "PASS" : "FAIL")
                  << " max_residual=" << holoball::format_g17(worst)
                  << " tol=" << holoball::format_g17(tol) << " points=" << checked << "\n";
        return pass ? 0 : 1;
    }

    const int trials = effective_int(flags.trials, spec.trials, 50);
    const auto r = holoball::verify::identity_suite(effective_seed(spec, flags), trials, tol);
    std::cout << "verify-identity: " << (r.pass ? "PASS" : "FAIL")
              << " max_residual=" << holoball::format_g17(r.worst)
              << " tol=" << holoball::format_g17(r.tol) << " trials=" << r.trials << "\n";
    return r.pass ? 0 : 1;
}

int run_monomial_check(const Flags& flags) {
    const RunSpec spec = load_spec(flags, "monomial-check");
    const double tol = effective_tol(spec, flags, 1e-9);
    const int kmax = effective_int(flags.kmax, spec.kmax, 6);

    if (!spec.configs.empty()) {
        holoball::SplitMix64 rng(effective_seed(spec, flags));
        const int per_pair = effective_int(flags.points, spec.points, 5);
        double worst = 0.0;
        for (const LineConfig& cfg : spec.configs) {
            for (int k1 = 0; k1 <= kmax; ++k1) {
                for (int k2 = 0; k2 <= kmax; ++k2) {
                    for (int p = 0; p < per_pair; ++p) {
                        const auto [z1, z2] =
                            holoball::verify::random_guarded_point(rng, cfg, 0.8);
                        const Complex mono = holoball::detail::cpow(z1, k1) *
                                             holoball::detail::cpow(z2, k2);
                        const Complex pv =
                            holoball::pv_remainder_monomial(cfg, k1, k2, z1, z2);
                        const Complex ip =
                            holoball::interp_part_monomial(cfg, k1, k2, z1, z2);
                        worst = std::max(worst,
                                         std::abs(pv + ip - mono) / (1.0 + std::abs(mono)));
                    }
                }
            }
        }
        const bool pass = worst <= tol;
        std::cout << "monomial-check: " << (pass ? "PASS" : "FAIL")
                  << " max_residual=" << holoball::format_g17(worst)
                  << " tol=" << holoball::format_g17(tol) << " kmax=" << kmax << "\n";
        return pass ? 0 : 1;
    }

    const int trials = effective_int(flags.trials, spec.trials, 100);
    const auto r =
        holoball::verify::monomial_suite(effective_seed(spec, flags), trials, kmax, tol);
    std::cout << "monomial-check: " << (r.pass ? "PASS" : "FAIL")
              << " max_residual=" << holoball::format_g17(r.worst)
              << " tol=" << holoball::format_g17(r.tol) << " trials=" << r.trials
              << " kmax=" << kmax << "\n";
    return r.pass ? 0 : 1;
}

int run_reconstruct(const Flags& flags) {
    const RunSpec spec = load_spec(flags, "reconstruct");
    if (!spec.has_function) {
        throw std::invalid_argument("reconstruct: run spec must provide \"function\"");
    }
    if (spec.configs.size() != 1) {
        throw std::invalid_argument("reconstruct: run spec must provide exactly one \"config\"");
    }
    const LineConfig& cfg = spec.configs.front();
    const GridSpec grid = effective_grid(spec, flags);
    const auto pts = holoball::sample_grid(grid, {cfg});

    const std::string out = !flags.out_path.empty() ? flags.out_path : spec.out;
    double worst = 0.0;
    if (out.empty()) {
        worst = holoball::write_reconstruction_csv(std::cout, spec.function, cfg, pts);
    } else {
        std::ofstream os(out);
        if (!os) throw std::invalid_argument("reconstruct: cannot open output file " + out);
        worst = holoball::write_reconstruction_csv(os, spec.function, cfg, pts);
    }

    const double tol = effective_tol(spec, flags, -1.0);
    const bool gated = tol > 0.0;
    const bool pass = !gated || worst <= tol;
    std::cout << "reconstruct: " << (pass ? "PASS" : "FAIL") << " rows=" << pts.size()
              << " max_residual=" << holoball::format_g17(worst);
    if (gated) std::cout << " tol=" << holoball::format_g17(tol);
    if (!out.empty()) std::cout << " out=" << out;
    std::cout << "\n";
    return pass ? 0 : 1;
}

int run_convergence(const Flags& flags) {
    const RunSpec spec = load_spec(flags, "convergence");
    const double tol = effective_tol(spec, flags, 0.9);

    TaylorSeries2 f{0};
    std::vector<LineConfig> cfgs;
    if (spec.has_function && !spec.configs.empty()) {
        f = spec.function;
        cfgs = spec.configs;
    } else if (!spec.has_function && spec.configs.empty()) {
        f = holoball::verify::decay_function();
        cfgs = holoball::verify::decay_configs();
    } else {
        throw std::invalid_argument(
            "convergence: provide both \"function\" and \"configs\", or neither");
    }
    if (cfgs.size() < 2) {
        throw std::invalid_argument("convergence: need at least two configurations");
    }

    const GridSpec grid = effective_grid(spec, flags);
    const ConvergenceReport rep = holoball::convergence_experiment(f, cfgs, grid);

    const std::string out = !flags.out_path.empty() ? flags.out_path : spec.out;
    if (out.empty()) {
        holoball::write_convergence_csv(std::cout, rep);
    } else {
        std::ofstream os(out);
        if (!os) throw std::invalid_argument("convergence: cannot open output file " + out);
        holoball::write_convergence_csv(os, rep);
    }

    bool decreasing = true;
    std::vector<double> ratios;
    for (std::size_t i = 1; i < rep.rows.size(); ++i) {
        if (!(rep.rows[i].sup_error < rep.rows[i - 1].sup_error)) decreasing = false;
        ratios.push_back(rep.rows[i].ratio);
    }
    std::sort(ratios.begin(), ratios.end());
    const double median = ratios.empty() ? std::numeric_limits<double>::quiet_NaN()
                                         : ratios[ratios.size() / 2];
    const bool pass = decreasing && median <= tol && rep.fitted_rate < 1.0;
    std::cout << "convergence: " << (pass ? "PASS" : "FAIL")
              << " median_ratio=" << holoball::format_g17(median)
              << " fitted_rate=" << holoball::format_g17(rep.fitted_rate)
              << " tol=" << holoball::format_g17(tol) << " rows=" << rep.rows.size();
    if (!out.empty()) std::cout << " out=" << out;
    std::cout << "\n";
    return pass ? 0 : 1;
}

int run_disc(const Flags& flags) {
    const RunSpec spec = load_spec(flags, "disc");
    const double tol = effective_tol(spec, flags, 1e-6);
    const auto r = holoball::verify::disc_suite(effective_seed(spec, flags), 1e-10, tol);
    std::cout << "disc: " << (r.pass ? "PASS" : "FAIL") << " " << r.detail
              << " tol=" << holoball::format_g17(tol) << "\n";
    return r.pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"reconstruction of functions on the complex two-ball from jets on lines"};
    app.require_subcommand(1);

    Flags flags;
    auto add_common = [&flags](CLI::App* sub, bool with_out, bool with_kmax) {
        sub->add_option("--config", flags.config_path, "JSON run spec file");
        sub->add_option("--seed", flags.seed, "random seed / grid seed");
        sub->add_option("--tol", flags.tol, "tolerance gate");
        sub->add_option("--trials", flags.trials, "number of randomized trials");
        sub->add_option("--points", flags.points, "number of evaluation points");
        if (with_out) sub->add_option("--out", flags.out_path, "output CSV path");
        if (with_kmax) sub->add_option("--kmax", flags.kmax, "largest exponent to test");
    };

    CLI::App* verify = app.add_subcommand(
        "verify-identity", "check f = reconstruction + tail on guarded points");
    add_common(verify, false, false);
    CLI::App* monomial = app.add_subcommand(
        "monomial-check", "check the per-monomial residual/interpolation split");
    add_common(monomial, false, true);
    CLI::App* reconstruct =
        app.add_subcommand("reconstruct", "tabulate f, reconstruction, and tail on a grid");
    add_common(reconstruct, true, false);
    CLI::App* convergence =
        app.add_subcommand("convergence", "error decay against growing line families");
    add_common(convergence, true, false);
    CLI::App* disc = app.add_subcommand("disc", "one-variable disc interpolation checks");
    add_common(disc, false, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    for (CLI::App* sub : {verify, monomial, reconstruct, convergence, disc}) {
        if (sub->parsed() && sub->count("--seed") > 0) flags.seed_given = true;
    }

    try {
        if (verify->parsed()) return run_verify_identity(flags);
        if (monomial->parsed()) return run_monomial_check(flags);
        if (reconstruct->parsed()) return run_reconstruct(flags);
        if (convergence->parsed()) return run_convergence(flags);
        if (disc->parsed()) return run_disc(flags);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "error: no subcommand selected\n";
    return 2;
}
