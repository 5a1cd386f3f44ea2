#include "pettiest/core_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include "pettiest/error.hpp"

namespace pettiest {

namespace {

constexpr double kSymmetryTolerance = 1e-9;
constexpr int kMaxJacobiSweeps = 100;

std::vector<double> column_variances(const Dataset& data, std::span<const double> means) {
    std::vector<double> var(data.p(), 0.0);
    for (std::size_t i = 0; i < data.n(); ++i) {
        auto row = data.row(i);
        for (std::size_t j = 0; j < data.p(); ++j) {
            const double d = row[j] - means[j];
            var[j] += d * d;
        }
    }
    for (double& v : var) v /= static_cast<double>(data.n() - 1);
    return var;
}

void require_positive_variance(const Dataset& data, std::span<const double> var) {
    for (std::size_t j = 0; j < var.size(); ++j) {
        if (!(var[j] > 0.0)) {
            fail(ErrorKind::degenerate_column,
                 "column '" + data.column_ids()[j] + "' has zero variance");
        }
    }
}

}  // namespace

Dataset::Dataset(Matrix values, std::vector<std::string> column_ids)
    : values_(std::move(values)), column_ids_(std::move(column_ids)) {
    if (values_.rows() < 2) fail(ErrorKind::invalid_input, "dataset needs at least 2 rows");
    if (values_.cols() < 1) fail(ErrorKind::invalid_input, "dataset needs at least 1 column");
    if (column_ids_.size() != values_.cols()) {
        fail(ErrorKind::invalid_input, "column label count does not match column count");
    }
    std::set<std::string> seen(column_ids_.begin(), column_ids_.end());
    if (seen.size() != column_ids_.size()) {
        fail(ErrorKind::invalid_input, "column labels must be unique");
    }
    for (double v : values_.values()) {
        if (!std::isfinite(v)) fail(ErrorKind::invalid_input, "dataset contains a non-finite value");
    }
}

Dataset::Dataset(Matrix values) {
    auto ids = default_column_ids(values.cols());
    *this = Dataset(std::move(values), std::move(ids));
}

Dataset Dataset::select_columns(std::span<const std::size_t> cols) const {
    Matrix out(n(), cols.size());
    std::vector<std::string> ids;
    ids.reserve(cols.size());
    for (std::size_t c : cols) {
        if (c >= p()) fail(ErrorKind::invalid_input, "column index out of range");
        ids.push_back(column_ids_[c]);
    }
    for (std::size_t i = 0; i < n(); ++i) {
        for (std::size_t k = 0; k < cols.size(); ++k) out(i, k) = values_(i, cols[k]);
    }
    return Dataset(std::move(out), std::move(ids));
}

Dataset Dataset::select_rows(std::span<const std::size_t> rows) const {
    Matrix out(rows.size(), p());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (rows[k] >= n()) fail(ErrorKind::invalid_input, "row index out of range");
        std::copy_n(values_.row(rows[k]).begin(), p(), out.row(k).begin());
    }
    return Dataset(std::move(out), column_ids_);
}

std::vector<std::string> default_column_ids(std::size_t p, const std::string& prefix) {
    std::vector<std::string> ids(p);
    for (std::size_t j = 0; j < p; ++j) ids[j] = prefix + std::to_string(j);
    return ids;
}

SymmetricMatrix::SymmetricMatrix(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) fail(ErrorKind::invalid_input, "matrix is not square");
    const std::size_t n = m_.rows();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!std::isfinite(m_(i, j))) fail(ErrorKind::invalid_input, "matrix has non-finite entries");
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(m_(i, j) - m_(j, i)) > kSymmetryTolerance) {
                fail(ErrorKind::invalid_input, "matrix is not symmetric");
            }
            const double avg = 0.5 * (m_(i, j) + m_(j, i));
            m_(i, j) = avg;
            m_(j, i) = avg;
        }
    }
}

std::vector<double> column_means(const Dataset& data) {
    std::vector<double> means(data.p(), 0.0);
    for (std::size_t i = 0; i < data.n(); ++i) {
        auto row = data.row(i);
        for (std::size_t j = 0; j < data.p(); ++j) means[j] += row[j];
    }
    for (double& m : means) m /= static_cast<double>(data.n());
    return means;
}

SymmetricMatrix covariance_matrix(const Dataset& data) {
    if (data.n() < 2) fail(ErrorKind::invalid_input, "covariance needs at least 2 rows");
    const std::size_t p = data.p();
    const auto means = column_means(data);
    Matrix cov(p, p);
    std::vector<double> centred(p);
    for (std::size_t i = 0; i < data.n(); ++i) {
        auto row = data.row(i);
        for (std::size_t j = 0; j < p; ++j) centred[j] = row[j] - means[j];
        for (std::size_t a = 0; a < p; ++a) {
            const double ca = centred[a];
            for (std::size_t b = a; b < p; ++b) cov(a, b) += ca * centred[b];
        }
    }
    const double denom = static_cast<double>(data.n() - 1);
    for (std::size_t a = 0; a < p; ++a) {
        for (std::size_t b = a; b < p; ++b) {
            cov(a, b) /= denom;
            cov(b, a) = cov(a, b);
        }
    }
    return SymmetricMatrix(std::move(cov));
}

SymmetricMatrix correlation_matrix(const Dataset& data) {
    const auto cov = covariance_matrix(data);
    const std::size_t p = cov.size();
    std::vector<double> var(p);
    for (std::size_t j = 0; j < p; ++j) var[j] = cov(j, j);
    require_positive_variance(data, var);
    Matrix corr(p, p);
    for (std::size_t a = 0; a < p; ++a) {
        corr(a, a) = 1.0;
        for (std::size_t b = a + 1; b < p; ++b) {
            const double r = std::clamp(cov(a, b) / std::sqrt(var[a] * var[b]), -1.0, 1.0);
            corr(a, b) = r;
            corr(b, a) = r;
        }
    }
    return SymmetricMatrix(std::move(corr));
}

Dataset standardize(const Dataset& data) {
    const auto means = column_means(data);
    const auto var = column_variances(data, means);
    require_positive_variance(data, var);
    std::vector<double> sd(var.size());
    std::transform(var.begin(), var.end(), sd.begin(), [](double v) { return std::sqrt(v); });
    Matrix out(data.n(), data.p());
    for (std::size_t i = 0; i < data.n(); ++i) {
        auto src = data.row(i);
        auto dst = out.row(i);
        for (std::size_t j = 0; j < data.p(); ++j) dst[j] = (src[j] - means[j]) / sd[j];
    }
    return Dataset(std::move(out), data.column_ids());
}

EigenBasis eigh(const SymmetricMatrix& s) {
    const std::size_t n = s.size();
    Matrix a = s.matrix();
    Matrix v = Matrix::identity(n);

    double frob = 0.0;
    for (double x : a.values()) frob += x * x;
    frob = std::sqrt(frob);
    const double tol = 1e-12 * std::max(1.0, frob);

    auto off_norm = [&] {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) sum += 2.0 * a(i, j) * a(i, j);
        return std::sqrt(sum);
    };

    bool converged = off_norm() < tol;
    for (int sweep = 0; sweep < kMaxJacobiSweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;

                a(p, p) -= t * apq;
                a(q, q) += t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - sn * akq;
                    a(p, k) = a(k, p);
                    a(k, q) = sn * akp + c * akq;
                    a(q, k) = a(k, q);
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - sn * vkq;
                    v(k, q) = sn * vkp + c * vkq;
                }
            }
        }
        converged = off_norm() < tol;
    }
    if (!converged) {
        fail(ErrorKind::numerical_failure, "Jacobi eigensolver did not converge in 100 sweeps");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

    EigenBasis basis;
    basis.eigenvalues.resize(n);
    basis.eigenvectors = Matrix(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        const std::size_t src = order[col];
        basis.eigenvalues[col] = a(src, src);
        double biggest = 0.0;
        for (std::size_t k = 0; k < n; ++k) biggest = std::max(biggest, std::abs(v(k, src)));
        // First entry within rounding of the largest magnitude decides the sign.
        double sign = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (std::abs(v(k, src)) >= biggest - 1e-12) {
                sign = v(k, src) < 0.0 ? -1.0 : 1.0;
                break;
            }
        }
        for (std::size_t k = 0; k < n; ++k) basis.eigenvectors(k, col) = sign * v(k, src);
    }
    return basis;
}

Dataset rotate(const Dataset& data, const EigenBasis& basis) {
    if (basis.size() != data.p() || basis.eigenvectors.rows() != data.p()) {
        fail(ErrorKind::invalid_input, "basis dimension does not match the data");
    }
    return Dataset(data.values() * basis.eigenvectors, default_column_ids(data.p(), "comp"));
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

namespace {

// Lower half only (q <= 0.5); the upper half is mirrored so that
// normal_quantile(1 - q) == -normal_quantile(q).
double lower_normal_quantile(double q) {
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double tail = 0.02425;

    double x;
    if (q < tail) {
        const double r = std::sqrt(-2.0 * std::log(q));
        x = (((((c[0] * r + c[1]) * r + c[2]) * r + c[3]) * r + c[4]) * r + c[5]) /
            ((((d[0] * r + d[1]) * r + d[2]) * r + d[3]) * r + 1.0);
    } else {
        const double u = q - 0.5;
        const double r = u * u;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * u /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }

    // One Halley step against the exact CDF.
    const double e = normal_cdf(x) - q;
    const double step = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    return x - step / (1.0 + 0.5 * x * step);
}

}  // namespace

double normal_quantile(double q) {
    if (!(q > 0.0 && q < 1.0)) fail(ErrorKind::domain, "normal_quantile needs 0 < q < 1");
    if (q == 0.5) return 0.0;
    if (q > 0.5) return -lower_normal_quantile(1.0 - q);
    return lower_normal_quantile(q);
}

}  // namespace pettiest
