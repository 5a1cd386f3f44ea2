#include "pettiest/prim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pettiest/error.hpp"

namespace pettiest {

namespace {

constexpr double kTieTolerance = 1e-12;
constexpr double kRankSlack = 1e-9;

double just_below(double v) { return std::nextafter(v, -std::numeric_limits<double>::infinity()); }

struct Candidate {
    std::size_t position = 0;
    Side side = Side::low;
    double cut = 0.0;
    Interval interval;
    std::size_t removed = 0;
    double log_density = -std::numeric_limits<double>::infinity();
};

}  // namespace

std::size_t nearest_rank(double q, std::size_t m) {
    const double raw = std::ceil(q * static_cast<double>(m) - kRankSlack);
    return std::clamp<std::size_t>(raw < 1.0 ? 1 : static_cast<std::size_t>(raw), 1, m);
}

double empirical_quantile(std::span<const double> values, double q) {
    if (values.empty()) fail(ErrorKind::invalid_input, "quantile of an empty sample");
    if (!(q > 0.0 && q < 1.0)) fail(ErrorKind::domain, "quantile level must lie in (0, 1)");
    std::vector<double> buf(values.begin(), values.end());
    const std::size_t idx = nearest_rank(q, buf.size()) - 1;
    std::nth_element(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(idx), buf.end());
    return buf[idx];
}

Box bounding_box(const Dataset& data, std::span<const std::size_t> rows) {
    if (rows.empty()) fail(ErrorKind::invalid_input, "bounding box of no rows");
    std::vector<std::size_t> dims(data.p());
    std::vector<Interval> ivs(data.p());
    for (std::size_t j = 0; j < data.p(); ++j) {
        double lo = data(rows.front(), j);
        double hi = lo;
        for (std::size_t r : rows) {
            lo = std::min(lo, data(r, j));
            hi = std::max(hi, data(r, j));
        }
        dims[j] = j;
        ivs[j] = {just_below(lo), hi};
    }
    return Box(std::move(dims), std::move(ivs));
}

PeelResult peel(const Dataset& data, const Box& box, std::span<const std::size_t> members,
                double alpha, std::size_t keep_at_least) {
    const std::size_t m = members.size();
    if (m < 2) fail(ErrorKind::cannot_peel, "box holds fewer than 2 points");
    if (!(alpha > 0.0 && alpha < 0.5)) fail(ErrorKind::domain, "alpha must lie in (0, 0.5)");
    keep_at_least = std::max<std::size_t>(keep_at_least, 1);
    if (keep_at_least >= m) fail(ErrorKind::cannot_peel, "nothing left to peel");

    const std::size_t r = std::min(nearest_rank(alpha, m), m - keep_at_least);
    const double log_volume = box.log_volume();

    std::vector<double> values(m);
    Candidate best;
    Candidate fallback;  // best candidate that undershoots keep_at_least
    bool have_best = false;
    bool have_fallback = false;

    auto consider = [&](const Candidate& c, std::size_t remaining) {
        Candidate& slot = remaining >= keep_at_least ? best : fallback;
        bool& have = remaining >= keep_at_least ? have_best : have_fallback;
        if (!have || c.log_density > slot.log_density + kTieTolerance) {
            slot = c;
            have = true;
        }
    };

    for (std::size_t pos = 0; pos < box.rank(); ++pos) {
        const std::size_t dim = box.dims()[pos];
        const Interval iv = box.intervals()[pos];
        for (std::size_t k = 0; k < m; ++k) values[k] = data(members[k], dim);
        const double old_log_width = std::log(iv.width());
        auto log_density_with = [&](std::size_t remaining, const Interval& next) {
            return std::log(static_cast<double>(remaining)) -
                   (log_volume - old_log_width + std::log(next.width()));
        };

        // Low slab {x <= x_(r)}; the new lower bound hugs the smallest kept value.
        {
            std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(r - 1),
                             values.end());
            const double cut = values[r - 1];
            std::size_t removed = 0;
            double smallest_kept = std::numeric_limits<double>::infinity();
            for (double v : values) {
                if (v <= cut) {
                    ++removed;
                } else {
                    smallest_kept = std::min(smallest_kept, v);
                }
            }
            if (removed < m) {
                const Interval next{just_below(smallest_kept), iv.upper};
                if (next.lower < next.upper) {
                    Candidate c{pos, Side::low, cut, next, removed};
                    c.log_density = log_density_with(m - removed, next);
                    consider(c, m - removed);
                }
            }
        }
        // High slab {x > x_(m-r)}.
        {
            std::nth_element(values.begin(),
                             values.begin() + static_cast<std::ptrdiff_t>(m - r - 1), values.end());
            const double cut = values[m - r - 1];
            const auto removed = static_cast<std::size_t>(
                std::count_if(values.begin(), values.end(), [cut](double v) { return v > cut; }));
            if (removed > 0 && iv.lower < cut) {
                const Interval next{iv.lower, cut};
                Candidate c{pos, Side::high, cut, next, removed};
                c.log_density = log_density_with(m - removed, next);
                consider(c, m - removed);
            }
        }
    }

    if (!have_best && !have_fallback) {
        fail(ErrorKind::cannot_peel, "every candidate slab is degenerate");
    }
    const Candidate& chosen = have_best ? best : fallback;

    PeelResult out;
    out.box = box.with_interval(chosen.position, chosen.interval);
    const std::size_t dim = box.dims()[chosen.position];
    out.members.reserve(m - chosen.removed);
    for (std::size_t row : members) {
        if (chosen.interval.contains(data(row, dim))) out.members.push_back(row);
    }
    out.step = PeelStep{dim, chosen.side, chosen.cut, chosen.removed, std::exp(chosen.log_density)};
    return out;
}

BoxTrajectory prim_peel_to_beta(const Dataset& data, std::span<const std::size_t> rows,
                                double beta, double alpha) {
    if (!(beta > 0.0 && beta <= 1.0)) fail(ErrorKind::domain, "beta must lie in (0, 1]");
    if (!(alpha > 0.0 && alpha < 0.5)) fail(ErrorKind::domain, "alpha must lie in (0, 0.5)");
    const std::size_t n = rows.size();
    const auto target = static_cast<std::size_t>(std::floor(beta * static_cast<double>(n) + kRankSlack));
    if (target < 1) fail(ErrorKind::invalid_input, "n * beta must be at least 1");

    BoxTrajectory traj;
    traj.initial_box = bounding_box(data, rows);
    traj.final_box = traj.initial_box;
    traj.members.assign(rows.begin(), rows.end());
    while (traj.members.size() > target) {
        auto result = peel(data, traj.final_box, traj.members, alpha, target);
        traj.final_box = std::move(result.box);
        traj.members = std::move(result.members);
        traj.steps.push_back(result.step);
        traj.volumes.push_back(traj.final_box.volume());
    }
    traj.final_mass = static_cast<double>(traj.members.size()) / static_cast<double>(n);
    traj.final_volume = traj.final_box.volume();
    return traj;
}

BoxTrajectory prim_peel_to_beta(const Dataset& data, double beta, double alpha) {
    std::vector<std::size_t> rows(data.n());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    return prim_peel_to_beta(data, rows, beta, alpha);
}

CoveringReport prim_cover(const Dataset& data, double beta, double alpha, std::size_t t) {
    if (t < 1) fail(ErrorKind::domain, "need at least one covering round");
    CoveringReport report;
    report.n = data.n();
    std::vector<std::size_t> remaining(data.n());
    for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;

    std::size_t claimed = 0;
    for (std::size_t round = 1; round <= t; ++round) {
        if (remaining.size() < 2 ||
            beta * static_cast<double>(remaining.size()) + kRankSlack < 1.0) {
            fail(ErrorKind::insufficient_points,
                 "covering round " + std::to_string(round) + " has only " +
                     std::to_string(remaining.size()) + " points left");
        }
        auto traj = prim_peel_to_beta(data, remaining, beta, alpha);

        CoveredBox rec;
        rec.count = traj.members.size();
        rec.mass = static_cast<double>(rec.count) / static_cast<double>(data.n());
        rec.log_volume = traj.final_box.log_volume();
        rec.volume = traj.final_box.volume();
        rec.density = std::exp(std::log(static_cast<double>(rec.count)) - rec.log_volume);
        rec.box = std::move(traj.final_box);
        rec.members = std::move(traj.members);

        std::vector<std::size_t> next;
        next.reserve(remaining.size() - rec.count);
        std::set_difference(remaining.begin(), remaining.end(), rec.members.begin(),
                            rec.members.end(), std::back_inserter(next));
        remaining = std::move(next);
        claimed += rec.count;
        report.boxes.push_back(std::move(rec));
    }
    report.beta_t = static_cast<double>(claimed) / static_cast<double>(data.n());
    return report;
}

double audit_covering(const CoveringReport& report, const Dataset& data) {
    if (report.n != data.n()) fail(ErrorKind::invalid_input, "report was built on other data");
    std::vector<bool> taken(data.n(), false);
    double worst = 0.0;
    double previous_log_volume = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < report.boxes.size(); ++k) {
        const auto& rec = report.boxes[k];
        std::size_t count = 0;
        for (std::size_t i = 0; i < data.n(); ++i) {
            if (!taken[i] && rec.box.contains(data.row(i))) {
                taken[i] = true;
                ++count;
            }
        }
        if (count != rec.count) {
            fail(ErrorKind::invalid_input, "box " + std::to_string(k + 1) + " claims " +
                                               std::to_string(rec.count) + " rows but holds " +
                                               std::to_string(count));
        }
        double log_volume = rec.box.log_volume();
        if (report.nested && k > 0) {
            // log(V_k - V_{k-1})
            log_volume += std::log1p(-std::exp(previous_log_volume - log_volume));
        }
        previous_log_volume = rec.box.log_volume();
        const double density = std::exp(std::log(static_cast<double>(count)) - log_volume);
        worst = std::max(worst, std::abs(density - rec.density) / std::max(density, 1e-300));
    }
    return worst;
}

}  // namespace pettiest
