#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pettiest/core_stats.hpp"
#include "pettiest/fastprim.hpp"
#include "pettiest/prim.hpp"

namespace pettiest {

enum class Method {
    prim,
    prim_principal,
    prim_pettiest,
    fastprim_principal,
    fastprim_pettiest,
};

inline constexpr Method kAllMethods[] = {Method::prim, Method::prim_principal,
                                         Method::prim_pettiest, Method::fastprim_principal,
                                         Method::fastprim_pettiest};

/// Command-line id, e.g. "fastprim-pettiest".
std::string_view method_id(Method m) noexcept;
/// Table label, e.g. "fastPRIM-Pettiest".
std::string_view method_label(Method m) noexcept;
/// Parses a method id; throws a usage error for unknown names.
Method parse_method(std::string_view id);
/// Comma-separated ids, or "all".
std::vector<Method> parse_methods(std::string_view list);

struct SimConfig {
    std::size_t n = 300;
    std::size_t p = 100;
    double beta = 0.1;
    double alpha = kDefaultAlpha;
    std::size_t p_prime = 2;
    std::size_t covering_steps = 10;
    std::size_t reps = 1;
    std::uint64_t seed = 20210;
    std::vector<Method> methods{std::begin(kAllMethods), std::end(kAllMethods)};
    /// Worker threads for replications; results never depend on it.
    std::size_t threads = 1;
    /// Keep each run's covering report and working data (needed for plots).
    bool keep_artifacts = false;

    /// Throws a domain/usage error naming the offending field.
    void validate() const;
};

struct StepStat {
    std::size_t count = 0;
    double mass = 0.0;
    double volume = 0.0;
    double density = 0.0;
};

struct MethodRunResult {
    Method method = Method::prim;
    std::size_t rep = 0;
    std::vector<StepStat> steps;
    /// Mean of the rows in the first covered box, in the method's working space.
    std::vector<double> center;
    /// Euclidean norm of `center`.
    double bias = 0.0;
    double runtime_seconds = 0.0;

    std::optional<CoveringReport> covering;
    std::optional<Dataset> working_data;
    std::optional<ComponentSelection> selection;
};

/// Covariance of the experiment: a 0.7-correlated unit-variance pair in the
/// first two coordinates, a pair with variances 12 and covariance 8 in the
/// last two, and variance 6 everywhere else.
SymmetricMatrix paper_sigma(std::size_t p = 100);

/// Runs one method on one dataset. Reduced methods standardize, rotate onto
/// the eigenvectors of the standardized covariance and keep p' components.
MethodRunResult run_method(const Dataset& data, Method method, const SimConfig& config);

/// All replications x methods, ordered by replication then by config.methods.
std::vector<MethodRunResult> run_experiment(const SimConfig& config);

struct BiasVariance {
    Method method = Method::prim;
    std::size_t reps = 0;
    /// Mean squared distance of the centre estimates from their average.
    double variance = 0.0;
    /// Norm of the average centre estimate.
    double bias = 0.0;
};

std::vector<BiasVariance> summarize_bias_variance(const std::vector<MethodRunResult>& runs);

/// Mean density per covering step for each method, in first-seen method order.
struct DensityRow {
    Method method = Method::prim;
    std::vector<double> density;
};
std::vector<DensityRow> density_table(const std::vector<MethodRunResult>& runs);

}  // namespace pettiest
