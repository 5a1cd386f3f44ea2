#include "pettiest/fastprim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pettiest/error.hpp"
#include "pettiest/sampling.hpp"

namespace pettiest {

namespace {

constexpr double kVolumeTieTolerance = 1e-12;

std::vector<std::size_t> ranked_indices(std::span<const double> values, bool ascending) {
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return ascending ? values[a] < values[b] : values[a] > values[b];
    });
    return idx;
}

// Visits every p'-subset of {0..p-1} in lexicographic order.
template <class Fn>
void for_each_subset(std::size_t p, std::size_t k, Fn&& fn) {
    std::vector<std::size_t> subset(k);
    std::iota(subset.begin(), subset.end(), 0);
    while (true) {
        fn(subset);
        std::size_t i = k;
        while (i > 0 && subset[i - 1] == p - k + i - 1) --i;
        if (i == 0) return;
        ++subset[i - 1];
        for (std::size_t j = i; j < k; ++j) subset[j] = subset[j - 1] + 1;
    }
}

}  // namespace

const char* to_string(ComponentMode mode) noexcept {
    return mode == ComponentMode::principal ? "principal" : "pettiest";
}

ComponentSelection select_components(const EigenBasis& basis, std::size_t p_prime,
                                     ComponentMode mode) {
    if (p_prime < 1 || p_prime > basis.size()) {
        fail(ErrorKind::domain, "p' must lie in [1, p]");
    }
    const auto order = ranked_indices(basis.eigenvalues, mode == ComponentMode::pettiest);
    ComponentSelection sel;
    sel.mode = mode;
    sel.p_prime = p_prime;
    sel.dims.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(p_prime));
    for (std::size_t d : sel.dims) sel.variances.push_back(basis.eigenvalues[d]);
    return sel;
}

std::pair<double, double> fastprim_levels(double beta_target, std::size_t p_prime) {
    if (!(beta_target > 0.0 && beta_target < 1.0)) {
        fail(ErrorKind::domain, "target mass must lie in (0, 1)");
    }
    if (p_prime < 1) fail(ErrorKind::domain, "p' must be positive");
    const double marginal = std::pow(beta_target, 1.0 / static_cast<double>(p_prime));
    return {0.5 * (1.0 - marginal), 0.5 * (1.0 + marginal)};
}

Box fastprim_box(const Dataset& rotated, std::span<const std::size_t> dims, double beta_target) {
    const auto [lo_level, hi_level] = fastprim_levels(beta_target, dims.size());
    const std::size_t n = rotated.n();
    const std::size_t lo_idx = nearest_rank(lo_level, n) - 1;
    const std::size_t hi_idx = nearest_rank(hi_level, n) - 1;
    std::vector<Interval> ivs;
    ivs.reserve(dims.size());
    std::vector<double> column(n);
    for (std::size_t d : dims) {
        if (d >= rotated.p()) fail(ErrorKind::invalid_input, "selected dimension not in the data");
        for (std::size_t i = 0; i < n; ++i) column[i] = rotated(i, d);
        std::nth_element(column.begin(), column.begin() + static_cast<std::ptrdiff_t>(hi_idx),
                         column.end());
        const double hi = column[hi_idx];
        std::nth_element(column.begin(), column.begin() + static_cast<std::ptrdiff_t>(lo_idx),
                         column.begin() + static_cast<std::ptrdiff_t>(hi_idx));
        const double lo = column[lo_idx];
        if (!(lo < hi)) {
            fail(ErrorKind::degenerate_data,
                 "quantile interval collapsed on column '" + rotated.column_ids()[d] + "'");
        }
        ivs.push_back({lo, hi});
    }
    return Box({dims.begin(), dims.end()}, std::move(ivs));
}

Box fastprim_box(const Dataset& rotated, const ComponentSelection& selection, double beta_target) {
    return fastprim_box(rotated, selection.dims, beta_target);
}

double beta_schedule(double beta, std::size_t t) {
    if (!(beta > 0.0 && beta < 1.0)) fail(ErrorKind::domain, "beta must lie in (0, 1)");
    if (t < 1) fail(ErrorKind::domain, "t must be at least 1");
    return -std::expm1(static_cast<double>(t) * std::log1p(-beta));
}

CoveringReport fastprim_cover(const Dataset& rotated, const ComponentSelection& selection,
                              double beta, std::size_t t) {
    if (t < 1) fail(ErrorKind::domain, "need at least one covering step");
    CoveringReport report;
    report.n = rotated.n();
    report.nested = true;

    std::vector<bool> inside(rotated.n(), false);
    double previous_log_volume = -std::numeric_limits<double>::infinity();
    std::size_t claimed = 0;
    for (std::size_t k = 1; k <= t; ++k) {
        Box box = fastprim_box(rotated, selection, beta_schedule(beta, k));
        CoveredBox rec;
        for (std::size_t i = 0; i < rotated.n(); ++i) {
            if (!inside[i] && box.contains(rotated.row(i))) {
                inside[i] = true;
                rec.members.push_back(i);
            }
        }
        const double box_log_volume = box.log_volume();
        const double shrink = std::exp(previous_log_volume - box_log_volume);
        if (!(shrink < 1.0)) {
            fail(ErrorKind::degenerate_data,
                 "covering step " + std::to_string(k) + " adds no volume");
        }
        rec.count = rec.members.size();
        rec.mass = static_cast<double>(rec.count) / static_cast<double>(rotated.n());
        rec.log_volume = box_log_volume + std::log1p(-shrink);
        rec.volume = std::exp(rec.log_volume);
        rec.density = std::exp(std::log(static_cast<double>(rec.count)) - rec.log_volume);
        rec.box = std::move(box);
        previous_log_volume = box_log_volume;
        claimed += rec.count;
        report.boxes.push_back(std::move(rec));
    }
    report.beta_t = static_cast<double>(claimed) / static_cast<double>(rotated.n());
    return report;
}

std::vector<std::size_t> smallest_subset(std::span<const double> sigmas, std::size_t p_prime) {
    if (p_prime < 1 || p_prime > sigmas.size()) fail(ErrorKind::domain, "p' must lie in [1, p]");
    auto order = ranked_indices(sigmas, true);
    order.resize(p_prime);
    std::sort(order.begin(), order.end());
    return order;
}

SubsetScanResult subset_volume_scan(std::span<const double> sigmas, double beta,
                                    std::size_t p_prime) {
    const std::size_t p = sigmas.size();
    if (p > kMaxScanDimension) {
        fail(ErrorKind::size_cap, "subset scan is limited to p <= 20");
    }
    if (p_prime < 1 || p_prime > p) fail(ErrorKind::domain, "p' must lie in [1, p]");

    SubsetScanResult result;
    std::vector<double> picked(p_prime);
    for_each_subset(p, p_prime, [&](const std::vector<std::size_t>& subset) {
        for (std::size_t k = 0; k < p_prime; ++k) picked[k] = sigmas[subset[k]];
        result.entries.push_back(
            {subset, analytic_box_volume(picked, beta), log_analytic_box_volume(picked, beta)});
    });

    std::size_t best = 0;
    for (std::size_t i = 1; i < result.entries.size(); ++i) {
        if (result.entries[i].log_volume < result.entries[best].log_volume) best = i;
    }
    const double min_log = result.entries[best].log_volume;
    result.argmin_subset = result.entries[best].subset;
    for (std::size_t i = 0; i < result.entries.size(); ++i) {
        if (i != best &&
            std::abs(result.entries[i].log_volume - min_log) <= kVolumeTieTolerance) {
            result.tie = true;
        }
    }
    return result;
}

bool OptimalityReport::passed() const {
    if (!analytic_argmin_is_pettiest) return false;
    if (n_mc == 0) return true;
    return (pettiest_empirically_minimal || scan.tie) && max_mass_error <= mass_tolerance;
}

OptimalityReport theorem2_check(const SymmetricMatrix& sigma, double beta, std::size_t p_prime,
                                std::size_t n_mc, std::uint64_t seed) {
    const std::size_t p = sigma.size();
    if (n_mc > 0 && p > kMaxMonteCarloDimension) {
        fail(ErrorKind::size_cap, "Monte Carlo optimality check is limited to p <= 8");
    }
    const EigenBasis basis = eigh(sigma);
    double scale = 0.0;
    for (double ev : basis.eigenvalues) scale = std::max(scale, std::abs(ev));
    for (double ev : basis.eigenvalues) {
        if (ev < -1e-10 * std::max(1.0, scale)) {
            fail(ErrorKind::domain, "covariance is not positive semidefinite");
        }
        if (!(ev > 0.0)) fail(ErrorKind::domain, "covariance is singular");
    }

    OptimalityReport rep;
    rep.beta = beta;
    rep.p_prime = p_prime;
    rep.eigenvalues = basis.eigenvalues;
    for (double ev : basis.eigenvalues) rep.sigmas.push_back(std::sqrt(ev));
    rep.pettiest_subset = smallest_subset(rep.sigmas, p_prime);
    rep.scan = subset_volume_scan(rep.sigmas, beta, p_prime);

    double pettiest_log = 0.0;
    for (const auto& e : rep.scan.entries) {
        if (e.subset == rep.pettiest_subset) pettiest_log = e.log_volume;
    }
    double min_log = std::numeric_limits<double>::infinity();
    for (const auto& e : rep.scan.entries) min_log = std::min(min_log, e.log_volume);
    rep.analytic_argmin_is_pettiest = rep.scan.argmin_subset == rep.pettiest_subset ||
                                      std::abs(pettiest_log - min_log) <= kVolumeTieTolerance;

    if (n_mc == 0) return rep;
    if (n_mc < 2) fail(ErrorKind::invalid_input, "Monte Carlo check needs at least 2 samples");

    rep.n_mc = n_mc;
    const Dataset rotated = rotate(sample_mvn(n_mc, sigma, seed), basis);
    std::size_t best = 0;
    std::size_t pettiest_pos = 0;
    for (std::size_t i = 0; i < rep.scan.entries.size(); ++i) {
        const auto& subset = rep.scan.entries[i].subset;
        const Box box = fastprim_box(rotated, subset, beta);
        rep.empirical_volumes.push_back(box.volume());
        const double mass = empirical_mass(box, rotated);
        rep.empirical_masses.push_back(mass);
        rep.max_mass_error = std::max(rep.max_mass_error, std::abs(mass - beta));
        if (rep.empirical_volumes[i] < rep.empirical_volumes[best]) best = i;
        if (subset == rep.pettiest_subset) pettiest_pos = i;
    }
    rep.empirical_argmin_subset = rep.scan.entries[best].subset;
    rep.pettiest_empirically_minimal = true;
    for (std::size_t i = 0; i < rep.empirical_volumes.size(); ++i) {
        if (i != pettiest_pos && !(rep.empirical_volumes[pettiest_pos] < rep.empirical_volumes[i])) {
            rep.pettiest_empirically_minimal = false;
        }
    }
    rep.mass_tolerance =
        std::max(0.01, 3.0 * std::sqrt(beta * (1.0 - beta) / static_cast<double>(n_mc)));
    return rep;
}

}  // namespace pettiest
