#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pettiest/boxes.hpp"
#include "pettiest/core_stats.hpp"

namespace pettiest {

inline constexpr double kDefaultAlpha = 0.05;

enum class Side { low, high };

struct PeelStep {
    std::size_t dim = 0;
    Side side = Side::low;
    /// The order statistic that defines the removed slab.
    double cut = 0.0;
    std::size_t removed_count = 0;
    /// Points per unit volume in the shrunk box.
    double density_after = 0.0;
};

struct PeelResult {
    Box box;
    PeelStep step;
    std::vector<std::size_t> members;
};

struct BoxTrajectory {
    std::vector<PeelStep> steps;
    /// Volume of the box after each step (same length as `steps`).
    std::vector<double> volumes;
    Box initial_box;
    Box final_box;
    std::vector<std::size_t> members;
    /// Fraction of the rows handed to the peeler.
    double final_mass = 0.0;
    double final_volume = 0.0;
};

/// One box found by a covering pass together with the rows it claimed.
struct CoveredBox {
    Box box;
    std::vector<std::size_t> members;
    std::size_t count = 0;
    /// count / n for the full dataset.
    double mass = 0.0;
    /// Volume of the claimed region (for nested covering, the shell).
    double volume = 0.0;
    double log_volume = 0.0;
    /// count / volume
    double density = 0.0;
};

struct CoveringReport {
    std::vector<CoveredBox> boxes;
    /// Total claimed mass.
    double beta_t = 0.0;
    std::size_t n = 0;
    /// Boxes are nested and each record describes the shell box_k \ box_{k-1}.
    bool nested = false;
};

/// Nearest-rank quantile: the ceil(q*m)-th smallest of m values.
double empirical_quantile(std::span<const double> values, double q);

/// 1-based nearest-rank index used by `empirical_quantile`, clamped to [1, m].
std::size_t nearest_rank(double q, std::size_t m);

/// Box just enclosing the given rows on every column (lower bounds sit one
/// ulp below the column minimum so the half-open box keeps every row).
Box bounding_box(const Dataset& data, std::span<const std::size_t> rows);

/// One PRIM peel. Each of the 2*rank candidate slabs removes the ceil(alpha*m)
/// smallest or largest in-box values on one dimension; the slab leaving the
/// highest point density (count / volume) is removed. Ties (within 1e-12 in
/// log density) go to the lowest dimension, then to the low side.
///
/// No candidate may leave fewer than `keep_at_least` points; the removal size
/// is reduced to hit that floor exactly when ceil(alpha*m) would overshoot it.
PeelResult peel(const Dataset& data, const Box& box, std::span<const std::size_t> members,
                double alpha, std::size_t keep_at_least = 1);

/// Peel from the bounding box of `rows` until at most floor(beta * |rows|)
/// of them remain. Mass is measured against |rows|.
BoxTrajectory prim_peel_to_beta(const Dataset& data, std::span<const std::size_t> rows,
                                double beta, double alpha = kDefaultAlpha);
BoxTrajectory prim_peel_to_beta(const Dataset& data, double beta, double alpha = kDefaultAlpha);

/// t rounds of peeling; each round runs on the rows not claimed by earlier rounds.
CoveringReport prim_cover(const Dataset& data, double beta, double alpha, std::size_t t);

/// Recomputes every record of `report` from its stored box and `data`:
/// a row belongs to box k when it lies in box k and in no earlier box.
/// Returns the largest relative density discrepancy; throws on count mismatch.
double audit_covering(const CoveringReport& report, const Dataset& data);

}  // namespace pettiest
