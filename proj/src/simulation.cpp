#include "pettiest/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include "pettiest/error.hpp"
#include "pettiest/sampling.hpp"

namespace pettiest {

namespace {

struct MethodInfo {
    Method method;
    std::string_view id;
    std::string_view label;
};

constexpr MethodInfo kMethodInfo[] = {
    {Method::prim, "prim", "PRIM"},
    {Method::prim_principal, "prim-principal", "PRIM-Principal"},
    {Method::prim_pettiest, "prim-pettiest", "PRIM-Pettiest"},
    {Method::fastprim_principal, "fastprim-principal", "fastPRIM-Principal"},
    {Method::fastprim_pettiest, "fastprim-pettiest", "fastPRIM-Pettiest"},
};

bool is_reduced(Method m) { return m != Method::prim; }

ComponentMode mode_of(Method m) {
    return (m == Method::prim_principal || m == Method::fastprim_principal)
               ? ComponentMode::principal
               : ComponentMode::pettiest;
}

bool is_fast(Method m) {
    return m == Method::fastprim_principal || m == Method::fastprim_pettiest;
}

// Standardized data rotated onto its own eigenbasis.
struct RotatedSpace {
    EigenBasis basis;
    Dataset rotated;
};

RotatedSpace prepare_rotation(const Dataset& data) {
    const Dataset z = standardize(data);
    EigenBasis basis = eigh(covariance_matrix(z));
    Dataset rotated = rotate(z, basis);
    return {std::move(basis), std::move(rotated)};
}

MethodRunResult run_prepared(const Dataset& data, const RotatedSpace* space, Method method,
                             const SimConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    MethodRunResult out;
    out.method = method;

    Dataset working;
    CoveringReport report;
    std::optional<ComponentSelection> selection;
    if (!is_reduced(method)) {
        working = data;
        report = prim_cover(working, config.beta, config.alpha, config.covering_steps);
    } else {
        const ComponentSelection sel = select_components(space->basis, config.p_prime, mode_of(method));
        working = space->rotated.select_columns(sel.dims);
        if (is_fast(method)) {
            ComponentSelection local = sel;
            std::iota(local.dims.begin(), local.dims.end(), std::size_t{0});
            report = fastprim_cover(working, local, config.beta, config.covering_steps);
        } else {
            report = prim_cover(working, config.beta, config.alpha, config.covering_steps);
        }
        selection = sel;
    }

    for (const auto& rec : report.boxes) {
        out.steps.push_back({rec.count, rec.mass, rec.volume, rec.density});
    }
    out.center.assign(working.p(), 0.0);
    const auto& first = report.boxes.front().members;
    for (std::size_t row : first) {
        for (std::size_t j = 0; j < working.p(); ++j) out.center[j] += working(row, j);
    }
    if (!first.empty()) {
        for (double& c : out.center) c /= static_cast<double>(first.size());
    }
    out.bias = std::sqrt(std::inner_product(out.center.begin(), out.center.end(),
                                            out.center.begin(), 0.0));
    out.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (config.keep_artifacts) {
        out.covering = std::move(report);
        out.working_data = std::move(working);
        out.selection = std::move(selection);
    }
    return out;
}

std::vector<MethodRunResult> run_replication(const SimConfig& config, const SymmetricMatrix& sigma,
                                             std::size_t rep) {
    Rng rng = Rng::stream(config.seed, rep);
    const Dataset data = sample_mvn(config.n, sigma, rng);
    std::optional<RotatedSpace> space;
    if (std::any_of(config.methods.begin(), config.methods.end(), is_reduced)) {
        space = prepare_rotation(data);
    }
    std::vector<MethodRunResult> out;
    for (Method m : config.methods) {
        try {
            out.push_back(run_prepared(data, space ? &*space : nullptr, m, config));
        } catch (const Error& e) {
            throw Error(e.kind(), "replication " + std::to_string(rep) + ", method " +
                                      std::string(method_id(m)) + ": " + e.what());
        }
        out.back().rep = rep;
    }
    return out;
}

}  // namespace

std::string_view method_id(Method m) noexcept {
    for (const auto& i : kMethodInfo) {
        if (i.method == m) return i.id;
    }
    return "unknown";
}

std::string_view method_label(Method m) noexcept {
    for (const auto& i : kMethodInfo) {
        if (i.method == m) return i.label;
    }
    return "unknown";
}

Method parse_method(std::string_view id) {
    for (const auto& i : kMethodInfo) {
        if (i.id == id) return i.method;
    }
    fail(ErrorKind::usage, "unknown method '" + std::string(id) + "'");
}

std::vector<Method> parse_methods(std::string_view list) {
    if (list == "all") return {std::begin(kAllMethods), std::end(kAllMethods)};
    std::vector<Method> out;
    std::size_t pos = 0;
    while (pos <= list.size()) {
        const std::size_t comma = std::min(list.find(',', pos), list.size());
        const auto token = list.substr(pos, comma - pos);
        if (!token.empty()) {
            const Method m = parse_method(token);
            if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
        }
        pos = comma + 1;
    }
    if (out.empty()) fail(ErrorKind::usage, "empty method list");
    return out;
}

void SimConfig::validate() const {
    if (n < 2) fail(ErrorKind::domain, "n must be at least 2");
    if (p < 4) fail(ErrorKind::domain, "p must be at least 4");
    if (p_prime < 1 || p_prime > p) fail(ErrorKind::domain, "p' must lie in [1, p]");
    if (!(beta > 0.0 && beta < 1.0)) fail(ErrorKind::domain, "beta must lie in (0, 1)");
    if (!(alpha > 0.0 && alpha < 0.5)) fail(ErrorKind::domain, "alpha must lie in (0, 0.5)");
    if (covering_steps < 1) fail(ErrorKind::domain, "need at least one covering step");
    if (reps < 1) fail(ErrorKind::domain, "need at least one replication");
    if (methods.empty()) fail(ErrorKind::usage, "empty method list");
}

SymmetricMatrix paper_sigma(std::size_t p) {
    if (p < 4) fail(ErrorKind::domain, "study covariance needs p >= 4");
    Matrix s(p, p);
    for (std::size_t j = 0; j < p; ++j) s(j, j) = 6.0;
    s(0, 0) = s(1, 1) = 1.0;
    s(0, 1) = s(1, 0) = 0.7;
    s(p - 2, p - 2) = s(p - 1, p - 1) = 12.0;
    s(p - 2, p - 1) = s(p - 1, p - 2) = 8.0;
    return SymmetricMatrix(std::move(s));
}

MethodRunResult run_method(const Dataset& data, Method method, const SimConfig& config) {
    std::optional<RotatedSpace> space;
    if (is_reduced(method)) {
        if (config.p_prime > data.p()) fail(ErrorKind::domain, "p' exceeds the data dimension");
        space = prepare_rotation(data);
    }
    return run_prepared(data, space ? &*space : nullptr, method, config);
}

std::vector<MethodRunResult> run_experiment(const SimConfig& config) {
    config.validate();
    const SymmetricMatrix sigma = paper_sigma(config.p);
    std::vector<std::vector<MethodRunResult>> per_rep(config.reps);

    const std::size_t workers = std::clamp<std::size_t>(config.threads, 1, config.reps);
    if (workers == 1) {
        for (std::size_t rep = 0; rep < config.reps; ++rep) {
            per_rep[rep] = run_replication(config, sigma, rep);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(config.reps);
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t rep = next++; rep < config.reps; rep = next++) {
                    try {
                        per_rep[rep] = run_replication(config, sigma, rep);
                    } catch (...) {
                        errors[rep] = std::current_exception();
                    }
                }
            });
        }
        pool.clear();
        for (const auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    std::vector<MethodRunResult> out;
    for (auto& runs : per_rep) {
        for (auto& r : runs) out.push_back(std::move(r));
    }
    return out;
}

std::vector<BiasVariance> summarize_bias_variance(const std::vector<MethodRunResult>& runs) {
    std::vector<Method> order;
    std::map<Method, std::vector<const MethodRunResult*>> groups;
    for (const auto& r : runs) {
        if (!groups.contains(r.method)) order.push_back(r.method);
        groups[r.method].push_back(&r);
    }
    std::vector<BiasVariance> out;
    for (Method m : order) {
        const auto& g = groups[m];
        if (g.size() < 2) fail(ErrorKind::invalid_input, "bias/variance needs at least 2 replications");
        const std::size_t dim = g.front()->center.size();
        std::vector<double> mean(dim, 0.0);
        for (const auto* r : g) {
            if (r->center.size() != dim) fail(ErrorKind::invalid_input, "centre dimensions differ");
            for (std::size_t j = 0; j < dim; ++j) mean[j] += r->center[j];
        }
        for (double& v : mean) v /= static_cast<double>(g.size());
        double var = 0.0;
        for (const auto* r : g) {
            for (std::size_t j = 0; j < dim; ++j) {
                const double d = r->center[j] - mean[j];
                var += d * d;
            }
        }
        var /= static_cast<double>(g.size());
        const double bias = std::sqrt(std::inner_product(mean.begin(), mean.end(), mean.begin(), 0.0));
        out.push_back({m, g.size(), var, bias});
    }
    return out;
}

std::vector<DensityRow> density_table(const std::vector<MethodRunResult>& runs) {
    std::vector<DensityRow> rows;
    std::vector<std::size_t> counts;
    for (const auto& r : runs) {
        auto it = std::find_if(rows.begin(), rows.end(),
                               [&](const DensityRow& row) { return row.method == r.method; });
        if (it == rows.end()) {
            rows.push_back({r.method, std::vector<double>(r.steps.size(), 0.0)});
            counts.push_back(0);
            it = rows.end() - 1;
        }
        const auto idx = static_cast<std::size_t>(it - rows.begin());
        if (it->density.size() != r.steps.size()) {
            fail(ErrorKind::invalid_input, "runs disagree on the number of covering steps");
        }
        for (std::size_t k = 0; k < r.steps.size(); ++k) it->density[k] += r.steps[k].density;
        ++counts[idx];
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (double& d : rows[i].density) d /= static_cast<double>(counts[i]);
    }
    return rows;
}

}  // namespace pettiest
