// Acceptance gate for the reconstruction library. Each criterion prints one
// verdict line; the process exits nonzero if any criterion fails or runs past
// its time budget.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "holoball/io.hpp"
#include "holoball/verification.hpp"

namespace {

constexpr std::uint64_t kSeedBase = 0xACCE55;
int criterion_no = 0;
bool all_pass = true;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const std::string& name, bool pass, double elapsed, double budget,
            const std::string& extras) {
    ++criterion_no;
    const bool in_budget = elapsed <= budget;
    const bool ok = pass && in_budget;
    all_pass = all_pass && ok;
    std::printf("[%d/9] %s: %s%s%s%s elapsed=%.2fs (budget %.0fs)\n", criterion_no,
                name.c_str(), ok ? "PASS" : "FAIL",
                (pass && !in_budget) ? " (over time budget)" : "",
                extras.empty() ? "" : " ", extras.c_str(), elapsed, budget);
    std::fflush(stdout);
}

void run_suite(const std::string& name, double budget,
               const std::function<holoball::verify::SuiteResult()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const auto r = fn();
        std::string extras = "worst=" + holoball::format_g17(r.worst) +
                             " tol=" + holoball::format_g17(r.tol) +
                             " trials=" + std::to_string(r.trials);
        if (!r.detail.empty()) extras += " " + r.detail;
        report(name, r.pass, seconds_since(t0), budget, extras);
    } catch (const std::exception& e) {
        report(name, false, seconds_since(t0), budget, std::string("exception: ") + e.what());
    }
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return {};
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void run_cli_determinism(double budget) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const char* spec_path = "acceptance_runspec.json";
        {
            std::ofstream spec(spec_path);
            spec << R"({
  "command": "reconstruct",
  "function": {"type": "geometric_product", "c1": [0.5, 0.1], "c2": [-0.3, 0.2], "degree": 12},
  "config": {"m1": 1,
             "middle": [{"eta": [0.5, 0.25], "mult": 2},
                        {"eta": [-0.7, 0.1], "mult": 1}],
             "mn": 1},
  "grid": {"radius": 0.5, "count": 64, "seed": 7}
}
)";
        }
        const std::string base = std::string("\"") + HOLOBALL_CLI_PATH +
                                 "\" reconstruct --config " + spec_path + " --out ";
        const int rc_a = std::system((base + "acceptance_outA.csv").c_str());
        const int rc_b = std::system((base + "acceptance_outB.csv").c_str());
        const std::string a = slurp("acceptance_outA.csv");
        const std::string b = slurp("acceptance_outB.csv");
        const long lines = std::count(a.begin(), a.end(), '\n');
        const bool pass = rc_a == 0 && rc_b == 0 && !a.empty() && a == b && lines == 65;
        std::string extras = "exit=" + std::to_string(rc_a) + "/" + std::to_string(rc_b) +
                             " bytes=" + std::to_string(a.size()) +
                             " lines=" + std::to_string(lines) +
                             (a == b ? " identical" : " DIFFER");
        report("command-line determinism", pass, seconds_since(t0), budget, extras);
    } catch (const std::exception& e) {
        report("command-line determinism", false, seconds_since(t0), budget,
               std::string("exception: ") + e.what());
    }
}

} // namespace

int main() {
    using holoball::verify::SuiteResult;
    run_suite("identity on random targets", 30.0, [] {
        return holoball::verify::identity_suite(kSeedBase + 1, 200, 1e-8);
    });
    run_suite("per-monomial split recombination", 30.0, [] {
        return holoball::verify::monomial_suite(kSeedBase + 2, 200, 8, 1e-9);
    });
    run_suite("coefficient and measured-data paths agree", 30.0, [] {
        return holoball::verify::path_agreement_suite(kSeedBase + 3, 40, 1e-9);
    });
    run_suite("division and interpolation oracles", 30.0, [] {
        return holoball::verify::division_suite(kSeedBase + 4, 500);
    });
    run_suite("error decay with added lines", 60.0, [] {
        return holoball::verify::decay_suite(kSeedBase + 5, 0.9);
    });
    run_suite("monomial visibility classes and linearity", 30.0, [] {
        return holoball::verify::exact_region_suite(kSeedBase + 6, 1e-10, 1e-9);
    });
    run_suite("two-point cofactor identity", 30.0, [] {
        return holoball::verify::hefer_suite(kSeedBase + 7, 1000, 1e-10);
    });
    run_suite("disc interpolation with contour defect", 10.0, [] {
        return holoball::verify::disc_suite(kSeedBase + 8, 1e-10, 1e-6);
    });
    run_cli_determinism(60.0);

    std::printf("%s\n", all_pass ? "ACCEPTANCE: PASS" : "ACCEPTANCE: FAIL");
    return all_pass ? 0 : 1;
}
