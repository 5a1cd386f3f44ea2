// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fail.
//
// Usage: pettiest_acceptance <path-to-pettiest-cli> [scratch-dir]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pettiest/pettiest.hpp"

#include "greedy_oracle.hpp"
#include "oracles.hpp"

using namespace pettiest;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

Outcome subset_argmin() {
    std::mt19937_64 gen(101);
    std::uniform_real_distribution<double> u(0.05, 10.0);
    std::size_t cases = 0, hits = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t p = 4 + gen() % 5;
        std::vector<double> s;
        while (s.size() < p) {
            const double v = u(gen);
            if (std::find(s.begin(), s.end(), v) == s.end()) s.push_back(v);
        }
        for (std::size_t p_prime = 1; p_prime <= 3; ++p_prime) {
            // Reference: indices of the p' smallest values, found by sorting copies.
            std::vector<double> sorted = s;
            std::sort(sorted.begin(), sorted.end());
            std::vector<std::size_t> expect;
            for (std::size_t j = 0; j < p; ++j) {
                if (s[j] <= sorted[p_prime - 1]) expect.push_back(j);
            }
            ++cases;
            if (subset_volume_scan(s, 0.1, p_prime).argmin_subset == expect) ++hits;
        }
    }
    return {hits == cases, std::to_string(hits) + "/" + std::to_string(cases) + " argmin matches"};
}

Outcome sampled_optimality() {
    const auto r = theorem2_check(paper_sigma(5), 0.1, 2, 100000, 20210);
    bool masses_ok = true;
    for (double m : r.empirical_masses) masses_ok = masses_ok && std::abs(m - 0.1) <= 0.01;
    const std::size_t subsets = r.scan.entries.size();
    return {r.pettiest_empirically_minimal && masses_ok && subsets == 10 && !r.scan.tie,
            std::to_string(subsets) + " subsets, pettiest minimal=" +
                (r.pettiest_empirically_minimal ? "yes" : "no") +
                ", max |mass-0.1|=" + fmt("%.4f", r.max_mass_error)};
}

Outcome calibration() {
    const std::vector<double> sigmas{1.0, 0.3, 2.0};
    double worst = 0.0;
    std::uint64_t seed = 300;
    for (std::size_t p_prime = 1; p_prime <= 3; ++p_prime) {
        std::vector<double> s(sigmas.begin(), sigmas.begin() + static_cast<std::ptrdiff_t>(p_prime));
        Matrix cov(p_prime, p_prime);
        for (std::size_t j = 0; j < p_prime; ++j) cov(j, j) = s[j] * s[j];
        const auto data = sample_mvn(1000000, SymmetricMatrix(cov), seed++);
        for (double beta : {0.05, 0.1, 0.5}) {
            const Box box = central_quantile_box(s, beta);
            worst = std::max(worst, std::abs(empirical_mass(box, data) - beta));
        }
    }
    return {worst <= 0.004, "max |mass-beta|=" + fmt("%.5f", worst)};
}

Outcome density_orderings() {
    SimConfig c;  // n=300, p=100, beta=0.1, t=10, alpha=0.05
    const auto table = density_table(run_experiment(c));
    auto row = [&](Method m) -> const std::vector<double>& {
        for (const auto& r : table) {
            if (r.method == m) return r.density;
        }
        throw Error(ErrorKind::invalid_input, "missing method");
    };
    const auto& prim = row(Method::prim);
    const auto& fp_pet = row(Method::fastprim_pettiest);
    double min_ratio = INFINITY;
    for (auto [pet, pri] : {std::pair{Method::prim_pettiest, Method::prim_principal},
                            std::pair{Method::fastprim_pettiest, Method::fastprim_principal}}) {
        for (std::size_t k = 0; k < c.covering_steps; ++k) {
            min_ratio = std::min(min_ratio, row(pet)[k] / row(pri)[k]);
        }
    }
    const bool a = prim[0] < 1e-50;
    const bool b = min_ratio >= 5.0;
    const bool cc = fp_pet[0] >= 50.0 && fp_pet[0] <= 1000.0;
    const bool d = fp_pet.back() < fp_pet[0];
    return {a && b && cc && d,
            "PRIM step1=" + fmt("%.3g", prim[0]) + ", min pettiest/principal=" +
                fmt("%.2f", min_ratio) + ", fastPRIM-Pettiest step1=" + fmt("%.1f", fp_pet[0]) +
                " step10=" + fmt("%.1f", fp_pet.back())};
}

Outcome spread_orderings() {
    SimConfig c;
    c.reps = 100;
    const auto bv = summarize_bias_variance(run_experiment(c));
    auto get = [&](Method m) {
        for (const auto& r : bv) {
            if (r.method == m) return r;
        }
        throw Error(ErrorKind::invalid_input, "missing method");
    };
    const auto prim = get(Method::prim);
    const auto fpp = get(Method::fastprim_pettiest);
    const auto fpr = get(Method::fastprim_principal);
    bool min_var = true;
    for (const auto& r : bv) min_var = min_var && fpp.variance <= r.variance;
    const bool ok = prim.variance > 10.0 * get(Method::prim_principal).variance && min_var &&
                    fpp.bias < fpr.bias && fpr.bias < prim.bias && fpp.bias < 0.05;
    return {ok, "var PRIM=" + fmt("%.3g", prim.variance) + " PRIM-Principal=" +
                    fmt("%.3g", get(Method::prim_principal).variance) + " fastPRIM-Pettiest=" +
                    fmt("%.3g", fpp.variance) + "; bias " + fmt("%.3g", fpp.bias) + " < " +
                    fmt("%.3g", fpr.bias) + " < " + fmt("%.3g", prim.bias)};
}

Outcome schedule() {
    const double v = beta_schedule(0.1, 10);
    return {std::abs(v - 0.6513215599) <= 1e-10, "beta_T=" + fmt("%.12f", v)};
}

Outcome kernels() {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    double worst_resid = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t p = 1 + gen() % 10;
        Matrix m(p, p);
        for (std::size_t i = 0; i < p; ++i) {
            for (std::size_t j = 0; j <= i; ++j) m(i, j) = m(j, i) = u(gen);
        }
        const auto e = eigh(SymmetricMatrix(m));
        for (std::size_t k = 0; k < p; ++k) {
            for (std::size_t i = 0; i < p; ++i) {
                double sv = 0.0;
                for (std::size_t j = 0; j < p; ++j) sv += m(i, j) * e.eigenvectors(j, k);
                worst_resid = std::max(worst_resid,
                                       std::abs(sv - e.eigenvalues[k] * e.eigenvectors(i, k)));
            }
        }
    }
    double worst_q = 0.0;
    for (int i = 1; i <= 10000; ++i) {
        const double q = 0.001 + 0.998 * static_cast<double>(i) / 10001.0;
        worst_q = std::max(worst_q, std::abs(normal_quantile(q) - oracle::normal_quantile(q)));
    }
    return {worst_resid <= 1e-8 && worst_q <= 1e-9,
            "eigh residual=" + fmt("%.2e", worst_resid) + ", quantile error=" + fmt("%.2e", worst_q)};
}

Outcome prim_contract() {
    std::mt19937_64 gen(8);
    const double betas[] = {0.1, 0.2, 0.5};
    std::size_t failures = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 50 + gen() % 250;
        const std::size_t p = 1 + gen() % 4;
        const double beta = betas[gen() % 3];
        const double alpha = 0.05;
        const auto d = oracle::uniform_data(gen, n, p);
        const auto t = prim_peel_to_beta(d, beta, alpha);
        bool ok = t.final_mass <= beta && t.final_mass > beta - alpha;
        double prev = t.initial_box.volume();
        for (double v : t.volumes) {
            ok = ok && v <= prev;
            prev = v;
        }
        if (!ok) ++failures;
    }
    std::size_t greedy_failures = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 6 + gen() % 25;
        const std::size_t p = 1 + gen() % 2;
        const auto d = oracle::uniform_data(gen, n, p);
        const auto t = prim_peel_to_beta(d, 0.25, 0.5 / static_cast<double>(n));
        const auto g = oracle::greedy_single_point(d, static_cast<std::size_t>(std::floor(0.25 * n)));
        bool ok = t.members == g.members;
        for (std::size_t j = 0; j < p; ++j) {
            ok = ok && t.final_box.intervals()[j].lower == g.lower[j] &&
                 t.final_box.intervals()[j].upper == g.upper[j];
        }
        if (!ok) ++greedy_failures;
    }
    return {failures == 0 && greedy_failures == 0,
            std::to_string(failures) + " contract violations, " + std::to_string(greedy_failures) +
                " greedy mismatches"};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism(const std::string& cli, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    bool ok = true;
    std::string detail;
    for (const char* format : {"json", "csv"}) {
        std::string outputs[2];
        for (int run = 0; run < 2; ++run) {
            const auto out = dir / ("determinism_" + std::to_string(run) + "." + format);
            std::filesystem::remove(out);
            const std::string cmd = "\"" + cli + "\" simulate --reps 3 --seed 99 --format " +
                                    format + " --out \"" + out.string() + "\"";
            if (std::system(cmd.c_str()) != 0) {
                return {false, std::string("simulate failed (") + format + ")"};
            }
            outputs[run] = slurp(out);
        }
        const bool same = !outputs[0].empty() && outputs[0] == outputs[1];
        ok = ok && same;
        detail += std::string(format) + (same ? " identical" : " differ") + " (" +
                  std::to_string(outputs[0].size()) + " bytes); ";
    }
    return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <pettiest-cli> [scratch-dir]\n", argv[0]);
        return 2;
    }
    const std::string cli = argv[1];
    const std::filesystem::path scratch =
        argc > 2 ? std::filesystem::path(argv[2])
                 : std::filesystem::temp_directory_path() / "pettiest_acceptance";

    struct Criterion {
        int id;
        const char* name;
        double budget_seconds;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "pettiest subset minimises analytic volume", 5.0, subset_argmin},
        {2, "pettiest box smallest under sampling", 30.0, sampled_optimality},
        {3, "box probability calibration", 600.0, calibration},
        {4, "single-run density table", 120.0, density_orderings},
        {5, "replicated bias and variance", 1800.0, spread_orderings},
        {6, "cumulative mass schedule", 600.0, schedule},
        {7, "numerical kernels", 600.0, kernels},
        {8, "PRIM contract", 600.0, prim_contract},
        {9, "determinism", 600.0, [&] { return determinism(cli, scratch); }},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.budget_seconds) {
            o.pass = false;
            o.detail += " [over time budget " + fmt("%.0f", c.budget_seconds) + " s]";
        }
        if (!o.pass) ++failed;
        std::printf("criterion %d %s: %s -- %s (%.2f s)\n", c.id, o.pass ? "PASS" : "FAIL", c.name,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
                criteria.size());
    return failed == 0 ? 0 : 1;
}
