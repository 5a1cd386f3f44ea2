#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pettiest/boxes.hpp"
#include "pettiest/core_stats.hpp"
#include "pettiest/prim.hpp"

namespace pettiest {

enum class ComponentMode { principal, pettiest };

const char* to_string(ComponentMode mode) noexcept;

/// Components kept after dimension reduction.
///
/// `dims` index columns of the rotated data (i.e. positions in the EigenBasis).
/// Pettiest selections list them by increasing variance, principal ones by
/// decreasing variance; equal eigenvalues go to the lower index first.
struct ComponentSelection {
    ComponentMode mode = ComponentMode::pettiest;
    std::size_t p_prime = 0;
    std::vector<std::size_t> dims;
    std::vector<double> variances;
};

ComponentSelection select_components(const EigenBasis& basis, std::size_t p_prime,
                                     ComponentMode mode);

/// Marginal quantile levels (1 -+ beta^{1/p'}) / 2.
std::pair<double, double> fastprim_levels(double beta_target, std::size_t p_prime);

/// Single-step box: on each dim the interval between the empirical quantiles
/// at the two `fastprim_levels`.
Box fastprim_box(const Dataset& rotated, std::span<const std::size_t> dims, double beta_target);
Box fastprim_box(const Dataset& rotated, const ComponentSelection& selection, double beta_target);

/// Cumulative covered mass after t covering steps: 1 - (1 - beta)^t.
double beta_schedule(double beta, std::size_t t);

/// t nested boxes at beta_schedule(beta, 1..t). Record k describes the shell
/// box_k \ box_{k-1}: its rows, its mass and the volume difference.
CoveringReport fastprim_cover(const Dataset& rotated, const ComponentSelection& selection,
                              double beta, std::size_t t);

struct SubsetVolume {
    std::vector<std::size_t> subset;
    double volume = 0.0;
    double log_volume = 0.0;
};

struct SubsetScanResult {
    /// All C(p, p') subsets in lexicographic order.
    std::vector<SubsetVolume> entries;
    /// First subset attaining the smallest volume.
    std::vector<std::size_t> argmin_subset;
    /// Another subset matches the minimum to 1e-12 (relative).
    bool tie = false;
};

inline constexpr std::size_t kMaxScanDimension = 20;

/// Analytic centred-box volume for every p'-subset of `sigmas`.
SubsetScanResult subset_volume_scan(std::span<const double> sigmas, double beta,
                                    std::size_t p_prime);

/// Indices of the p' smallest sigmas (ties to the lower index), ascending.
std::vector<std::size_t> smallest_subset(std::span<const double> sigmas, std::size_t p_prime);

/// Result of checking, for N(0, Sigma), that the pettiest components give the
/// smallest centred box of probability beta.
struct OptimalityReport {
    double beta = 0.0;
    std::size_t p_prime = 0;
    std::vector<double> eigenvalues;
    std::vector<double> sigmas;
    std::vector<std::size_t> pettiest_subset;
    SubsetScanResult scan;
    bool analytic_argmin_is_pettiest = false;

    // Monte Carlo part (empty when n_mc == 0).
    std::size_t n_mc = 0;
    std::vector<double> empirical_volumes;  // aligned with scan.entries
    std::vector<double> empirical_masses;
    std::vector<std::size_t> empirical_argmin_subset;
    bool pettiest_empirically_minimal = false;
    double max_mass_error = 0.0;
    /// Allowed |mass - beta|: 0.01 or three binomial standard errors, whichever is larger.
    double mass_tolerance = 0.0;

    /// Analytic argmin is pettiest (or tied), and when sampled, the pettiest
    /// box is strictly smallest (unless tied) and every mass is within tolerance.
    bool passed() const;
};

inline constexpr std::size_t kMaxMonteCarloDimension = 8;

OptimalityReport theorem2_check(const SymmetricMatrix& sigma, double beta, std::size_t p_prime,
                                std::size_t n_mc, std::uint64_t seed);

}  // namespace pettiest
