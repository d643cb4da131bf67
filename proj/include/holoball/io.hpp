#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "holoball/convergence.hpp"
#include "holoball/reconstruct.hpp"

namespace holoball {

// Shortest representation that round-trips a double exactly.
inline std::string format_g17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
}

namespace io {

using nlohmann::json;

inline Complex parse_complex(const json& j, const char* what) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return Complex(j[0].get<double>(), j[1].get<double>());
    }
    throw std::invalid_argument(std::string(what) + ": expected a number or [re, im]");
}

inline json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

inline void require_keys(const json& j, std::initializer_list<const char*> allowed,
                         const char* what) {
    if (!j.is_object()) throw std::invalid_argument(std::string(what) + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed) {
            if (it.key() == k) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            throw std::invalid_argument(std::string(what) + ": unknown key \"" + it.key() + "\"");
        }
    }
}

inline TaylorSeries2 parse_series(const json& j) {
    require_keys(j, {"degree", "terms"}, "series");
    if (!j.contains("degree") || !j["degree"].is_number_integer()) {
        throw std::invalid_argument("series: missing integer \"degree\"");
    }
    const int degree = j["degree"].get<int>();
    std::vector<std::tuple<int, int, Complex>> terms;
    if (j.contains("terms")) {
        if (!j["terms"].is_array()) throw std::invalid_argument("series: \"terms\" must be an array");
        for (const json& t : j["terms"]) {
            if (!t.is_array() || t.size() != 4) {
                throw std::invalid_argument("series: each term must be [k1, k2, re, im]");
            }
            terms.emplace_back(t[0].get<int>(), t[1].get<int>(),
                               Complex(t[2].get<double>(), t[3].get<double>()));
        }
    }
    return build_series(degree, terms);
}

inline json series_to_json(const TaylorSeries2& f) {
    json terms = json::array();
    for (int l = 0; l <= f.degree(); ++l) {
        for (int k1 = l; k1 >= 0; --k1) {
            const Complex c = f.at(k1, l - k1);
            if (c == Complex(0.0, 0.0)) continue;
            terms.push_back(json::array({k1, l - k1, c.real(), c.imag()}));
        }
    }
    return json{{"degree", f.degree()}, {"terms", terms}};
}

// Named function families plus inline series:
//   {"type": "geometric_product", "c1": [re,im], "c2": [re,im], "degree": D}
//   {"type": "geometric_diag", "c": [re,im], "degree": D}
//   {"type": "monomial", "k1": int, "k2": int, "degree": optional int}
//   {"type": "series", "degree": D, "terms": [[k1,k2,re,im], ...]}
inline TaylorSeries2 parse_function(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
        throw std::invalid_argument("function: missing string \"type\"");
    }
    const std::string type = j["type"].get<std::string>();
    if (type == "geometric_product") {
        require_keys(j, {"type", "c1", "c2", "degree"}, "function");
        if (!j.contains("c1") || !j.contains("c2") || !j.contains("degree")) {
            throw std::invalid_argument("function: geometric_product needs c1, c2, degree");
        }
        return geometric_product_series(parse_complex(j["c1"], "c1"),
                                        parse_complex(j["c2"], "c2"), j["degree"].get<int>());
    }
    if (type == "geometric_diag") {
        require_keys(j, {"type", "c", "degree"}, "function");
        if (!j.contains("c") || !j.contains("degree")) {
            throw std::invalid_argument("function: geometric_diag needs c, degree");
        }
        return geometric_diag_series(parse_complex(j["c"], "c"), j["degree"].get<int>());
    }
    if (type == "monomial") {
        require_keys(j, {"type", "k1", "k2", "degree"}, "function");
        if (!j.contains("k1") || !j.contains("k2")) {
            throw std::invalid_argument("function: monomial needs k1, k2");
        }
        const int k1 = j["k1"].get<int>();
        const int k2 = j["k2"].get<int>();
        const int degree = j.contains("degree") ? j["degree"].get<int>() : k1 + k2;
        return TaylorSeries2::monomial(k1, k2, degree);
    }
    if (type == "series") {
        json copy = j;
        copy.erase("type");
        return parse_series(copy);
    }
    throw std::invalid_argument("function: unknown type \"" + type + "\"");
}

// {"m1": int, "middle": [{"eta": [re,im], "mult": int}, ...], "mn": int}
// or the shorthand {"etas": [[re,im], ...]} for simple lines only.
inline LineConfig parse_config(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("config: expected an object");
    if (j.contains("etas")) {
        require_keys(j, {"etas"}, "config");
        std::vector<MiddleLine> mid;
        for (const json& e : j["etas"]) mid.push_back({parse_complex(e, "etas entry"), 1});
        return LineConfig(0, mid, 0);
    }
    require_keys(j, {"m1", "middle", "mn"}, "config");
    const int m1 = j.contains("m1") ? j["m1"].get<int>() : 0;
    const int mn = j.contains("mn") ? j["mn"].get<int>() : 0;
    std::vector<MiddleLine> mid;
    if (j.contains("middle")) {
        if (!j["middle"].is_array()) throw std::invalid_argument("config: \"middle\" must be an array");
        for (const json& m : j["middle"]) {
            require_keys(m, {"eta", "mult"}, "middle line");
            if (!m.contains("eta") || !m.contains("mult")) {
                throw std::invalid_argument("middle line: needs eta and mult");
            }
            mid.push_back({parse_complex(m["eta"], "eta"), m["mult"].get<int>()});
        }
    }
    return LineConfig(m1, mid, mn);
}

inline json config_to_json(const LineConfig& cfg) {
    json mid = json::array();
    for (const MiddleLine& ml : cfg.middle()) {
        mid.push_back(json{{"eta", complex_to_json(ml.eta)}, {"mult", ml.mult}});
    }
    return json{{"m1", cfg.m1()}, {"middle", mid}, {"mn", cfg.mn()}};
}

inline GridSpec parse_grid(const json& j) {
    require_keys(j, {"radius", "count", "seed"}, "grid");
    GridSpec g;
    if (j.contains("radius")) g.radius = j["radius"].get<double>();
    if (j.contains("count")) g.count = j["count"].get<int>();
    if (j.contains("seed")) g.seed = j["seed"].get<std::uint64_t>();
    return g;
}

// One self-contained run request. Command-line flags override these fields;
// a command given both places must agree.
struct RunSpec {
    std::string command;
    bool has_function = false;
    TaylorSeries2 function{0};
    std::vector<LineConfig> configs;
    GridSpec grid;
    bool has_grid = false;
    std::string out;
    double tol = -1.0; // negative means unset
    int kmax = -1;
    int trials = -1;
    int points = -1;
};

inline RunSpec parse_run_spec(const json& j) {
    require_keys(j,
                 {"command", "function", "config", "configs", "grid", "out", "tol", "kmax",
                  "trials", "points"},
                 "run spec");
    RunSpec r;
    if (j.contains("command")) {
        if (!j["command"].is_string()) throw std::invalid_argument("run spec: \"command\" must be a string");
        r.command = j["command"].get<std::string>();
    }
    if (j.contains("function")) {
        r.function = parse_function(j["function"]);
        r.has_function = true;
    }
    if (j.contains("config") && j.contains("configs")) {
        throw std::invalid_argument("run spec: give either \"config\" or \"configs\", not both");
    }
    if (j.contains("config")) r.configs.push_back(parse_config(j["config"]));
    if (j.contains("configs")) {
        for (const json& c : j["configs"]) r.configs.push_back(parse_config(c));
    }
    if (j.contains("grid")) {
        r.grid = parse_grid(j["grid"]);
        r.has_grid = true;
    }
    if (j.contains("out")) r.out = j["out"].get<std::string>();
    if (j.contains("tol")) {
        r.tol = j["tol"].get<double>();
        if (!(r.tol > 0.0)) throw std::invalid_argument("run spec: \"tol\" must be positive");
    }
    if (j.contains("kmax")) r.kmax = j["kmax"].get<int>();
    if (j.contains("trials")) r.trials = j["trials"].get<int>();
    if (j.contains("points")) r.points = j["points"].get<int>();
    return r;
}

inline RunSpec load_run_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open run spec file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("run spec parse error in " + path + ": " + e.what());
    }
    return parse_run_spec(j);
}

} // namespace io

// Per-point reconstruction table. Complex value columns carry moduli so each
// cell is a single number; residual is the modulus of f - g - tail. Returns
// the largest residual written.
inline double write_reconstruction_csv(std::ostream& os, const TaylorSeries2& f,
                                       const LineConfig& cfg,
                                       const std::vector<std::pair<Complex, Complex>>& pts,
                                       const DomainGuard& guard = {}) {
    os << "z1_re,z1_im,z2_re,z2_im,f,g,tail,residual\n";
    double worst = 0.0;
    for (const auto& [z1, z2] : pts) {
        const Complex fv = eval2(f, z1, z2);
        const Complex gv = g_general(f, cfg, z1, z2, guard);
        const Complex tv = tail_sum(f, cfg, z1, z2);
        const double residual = std::abs(fv - gv - tv);
        worst = std::max(worst, residual);
        os << format_g17(z1.real()) << ',' << format_g17(z1.imag()) << ','
           << format_g17(z2.real()) << ',' << format_g17(z2.imag()) << ','
           << format_g17(std::abs(fv)) << ',' << format_g17(std::abs(gv)) << ','
           << format_g17(std::abs(tv)) << ',' << format_g17(residual) << '\n';
    }
    return worst;
}

inline void write_convergence_csv(std::ostream& os, const ConvergenceReport& rep) {
    os << "lines,total_multiplicity,sup_error,mean_error,ratio\n";
    for (const ConvergenceRow& r : rep.rows) {
        os << r.lines << ',' << r.total_multiplicity << ',' << format_g17(r.sup_error) << ','
           << format_g17(r.mean_error) << ',' << format_g17(r.ratio) << '\n';
    }
    os << "# fitted_rate=" << format_g17(rep.fitted_rate) << '\n';
}

} // namespace holoball
