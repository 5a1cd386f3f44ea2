#include "pettiest/boxes.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "pettiest/error.hpp"

namespace pettiest {

Box::Box(std::vector<std::size_t> dims, std::vector<Interval> intervals)
    : dims_(std::move(dims)), intervals_(std::move(intervals)) {
    if (dims_.size() != intervals_.size()) {
        fail(ErrorKind::invalid_input, "box needs one interval per dimension");
    }
    if (std::set<std::size_t>(dims_.begin(), dims_.end()).size() != dims_.size()) {
        fail(ErrorKind::invalid_input, "box dimensions must be unique");
    }
    for (const auto& iv : intervals_) {
        if (!std::isfinite(iv.lower) || !std::isfinite(iv.upper) || !(iv.lower < iv.upper)) {
            fail(ErrorKind::invalid_input, "box interval needs finite lower < upper");
        }
    }
}

const Interval& Box::interval_for(std::size_t dim) const {
    auto it = std::find(dims_.begin(), dims_.end(), dim);
    if (it == dims_.end()) fail(ErrorKind::invalid_input, "box does not constrain that dimension");
    return intervals_[static_cast<std::size_t>(it - dims_.begin())];
}

double Box::log_volume() const {
    double acc = 0.0;
    for (const auto& iv : intervals_) acc += std::log(iv.width());
    return acc;
}

double Box::volume() const {
    if (rank() > kLogVolumeThreshold) return std::exp(log_volume());
    double acc = 1.0;
    for (const auto& iv : intervals_) acc *= iv.width();
    return acc;
}

bool Box::contains(std::span<const double> point) const {
    for (std::size_t k = 0; k < dims_.size(); ++k) {
        if (dims_[k] >= point.size()) {
            fail(ErrorKind::invalid_input, "point is missing a coordinate the box constrains");
        }
        if (!intervals_[k].contains(point[dims_[k]])) return false;
    }
    return true;
}

std::vector<double> Box::center() const {
    std::vector<double> c(intervals_.size());
    std::transform(intervals_.begin(), intervals_.end(), c.begin(),
                   [](const Interval& iv) { return iv.midpoint(); });
    return c;
}

Box Box::project(std::span<const std::size_t> dims) const {
    std::vector<Interval> ivs;
    ivs.reserve(dims.size());
    for (std::size_t d : dims) ivs.push_back(interval_for(d));
    return Box({dims.begin(), dims.end()}, std::move(ivs));
}

Box Box::with_interval(std::size_t position, Interval iv) const {
    auto ivs = intervals_;
    ivs.at(position) = iv;
    return Box(dims_, std::move(ivs));
}

std::vector<std::size_t> contained_rows(const Box& box, const Dataset& data) {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < data.n(); ++i) {
        if (box.contains(data.row(i))) rows.push_back(i);
    }
    return rows;
}

std::size_t count_contained(const Box& box, const Dataset& data) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < data.n(); ++i) count += box.contains(data.row(i)) ? 1 : 0;
    return count;
}

double empirical_mass(const Box& box, const Dataset& data) {
    return static_cast<double>(count_contained(box, data)) / static_cast<double>(data.n());
}

namespace {

void check_quantile_box_args(std::span<const double> sigmas, double beta) {
    if (!(beta > 0.0 && beta < 1.0)) fail(ErrorKind::domain, "beta must lie in (0, 1)");
    if (sigmas.empty()) fail(ErrorKind::domain, "need at least one sigma");
    for (double s : sigmas) {
        if (!(s > 0.0) || !std::isfinite(s)) fail(ErrorKind::domain, "sigmas must be positive");
    }
}

double half_width_multiplier(double beta, std::size_t p_prime) {
    const double marginal = std::pow(beta, 1.0 / static_cast<double>(p_prime));
    return normal_quantile(0.5 * (1.0 + marginal));
}

}  // namespace

QuantileBoxSpec QuantileBoxSpec::make(std::span<const double> sigmas, double beta) {
    check_quantile_box_args(sigmas, beta);
    QuantileBoxSpec spec;
    spec.beta = beta;
    spec.p_prime = sigmas.size();
    spec.k = half_width_multiplier(beta, sigmas.size());
    spec.sigmas.assign(sigmas.begin(), sigmas.end());
    return spec;
}

double QuantileBoxSpec::volume() const { return analytic_box_volume(sigmas, beta); }

Box central_quantile_box(std::span<const double> sigmas, double beta,
                         std::span<const std::size_t> dims) {
    check_quantile_box_args(sigmas, beta);
    if (dims.size() != sigmas.size()) fail(ErrorKind::domain, "need one sigma per dimension");
    const double k = half_width_multiplier(beta, sigmas.size());
    std::vector<Interval> ivs;
    ivs.reserve(sigmas.size());
    for (double s : sigmas) ivs.push_back({-k * s, k * s});
    return Box({dims.begin(), dims.end()}, std::move(ivs));
}

Box central_quantile_box(std::span<const double> sigmas, double beta) {
    std::vector<std::size_t> dims(sigmas.size());
    for (std::size_t j = 0; j < dims.size(); ++j) dims[j] = j;
    return central_quantile_box(sigmas, beta, dims);
}

double log_analytic_box_volume(std::span<const double> sigmas, double beta) {
    check_quantile_box_args(sigmas, beta);
    const double k = half_width_multiplier(beta, sigmas.size());
    double acc = static_cast<double>(sigmas.size()) * std::log(2.0 * k);
    for (double s : sigmas) acc += std::log(s);
    return acc;
}

double analytic_box_volume(std::span<const double> sigmas, double beta) {
    check_quantile_box_args(sigmas, beta);
    if (sigmas.size() > kLogVolumeThreshold) return std::exp(log_analytic_box_volume(sigmas, beta));
    const double k = half_width_multiplier(beta, sigmas.size());
    double acc = 1.0;
    for (double s : sigmas) acc *= 2.0 * k * s;
    return acc;
}

double active_information(double beta, double box_volume, double support_volume) {
    if (!(beta > 0.0 && beta <= 1.0)) fail(ErrorKind::domain, "beta must lie in (0, 1]");
    if (!(box_volume > 0.0) || !(support_volume > 0.0)) {
        fail(ErrorKind::domain, "volumes must be positive");
    }
    if (box_volume > support_volume) fail(ErrorKind::domain, "box larger than its support");
    return std::log(beta * support_volume / box_volume);
}

}  // namespace pettiest
