#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pettiest/core_stats.hpp"

namespace pettiest {

/// Half-open interval (lower, upper].
struct Interval {
    double lower = 0.0;
    double upper = 0.0;

    double width() const noexcept { return upper - lower; }
    double midpoint() const noexcept { return 0.5 * (lower + upper); }
    bool contains(double x) const noexcept { return lower < x && x <= upper; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Axis-aligned box over a subset of the dimensions of some ambient space.
///
/// `dims[k]` is the ambient coordinate constrained by `intervals[k]`.
/// Membership is half-open on every side: lower < x <= upper.
class Box {
public:
    Box() = default;
    Box(std::vector<std::size_t> dims, std::vector<Interval> intervals);

    const std::vector<std::size_t>& dims() const noexcept { return dims_; }
    const std::vector<Interval>& intervals() const noexcept { return intervals_; }
    std::size_t rank() const noexcept { return dims_.size(); }

    /// Interval on ambient dimension `dim`; throws if the box does not constrain it.
    const Interval& interval_for(std::size_t dim) const;

    /// Product of widths. Computed through logs above 30 dimensions.
    double volume() const;
    double log_volume() const;

    /// `point` is indexed by ambient dimension.
    bool contains(std::span<const double> point) const;

    std::vector<double> center() const;

    /// Same box restricted to a subset of its own dimensions.
    Box project(std::span<const std::size_t> dims) const;

    Box with_interval(std::size_t position, Interval iv) const;

    friend bool operator==(const Box&, const Box&) = default;

private:
    std::vector<std::size_t> dims_;
    std::vector<Interval> intervals_;
};

/// Above this many dimensions volumes are accumulated in log space.
inline constexpr std::size_t kLogVolumeThreshold = 30;

/// Rows of `data` inside `box`, in row order.
std::vector<std::size_t> contained_rows(const Box& box, const Dataset& data);
std::size_t count_contained(const Box& box, const Dataset& data);

/// Fraction of rows of `data` inside `box`.
double empirical_mass(const Box& box, const Dataset& data);

/// Parameters of the centred box with probability beta under independent
/// N(0, sigma_j^2) marginals: half-widths k * sigma_j.
struct QuantileBoxSpec {
    double beta = 0.0;
    std::size_t p_prime = 0;
    double k = 0.0;
    std::vector<double> sigmas;

    static QuantileBoxSpec make(std::span<const double> sigmas, double beta);

    /// (2k)^{p'} * prod(sigma)
    double volume() const;
};

/// Box (-k sigma_j, k sigma_j] per dim with k = normal_quantile((1 + beta^{1/p'}) / 2).
Box central_quantile_box(std::span<const double> sigmas, double beta,
                         std::span<const std::size_t> dims);
/// Dimensions 0..p'-1.
Box central_quantile_box(std::span<const double> sigmas, double beta);

double analytic_box_volume(std::span<const double> sigmas, double beta);
double log_analytic_box_volume(std::span<const double> sigmas, double beta);

/// log(beta * support_volume / box_volume): active information of a region of
/// probability beta relative to the uniform distribution on the support.
double active_information(double beta, double box_volume, double support_volume);

}  // namespace pettiest
