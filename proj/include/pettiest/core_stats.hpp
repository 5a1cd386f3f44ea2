#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pettiest/matrix.hpp"

namespace pettiest {

/// n observations (rows) of p variables (columns), each column labelled.
///
/// Construction enforces n >= 2, p >= 1, finite entries and unique labels.
class Dataset {
public:
    Dataset() = default;
    Dataset(Matrix values, std::vector<std::string> column_ids);
    /// Columns labelled x0, x1, ...
    explicit Dataset(Matrix values);

    std::size_t n() const noexcept { return values_.rows(); }
    std::size_t p() const noexcept { return values_.cols(); }
    const Matrix& values() const noexcept { return values_; }
    const std::vector<std::string>& column_ids() const noexcept { return column_ids_; }

    std::span<const double> row(std::size_t i) const noexcept { return values_.row(i); }
    double operator()(std::size_t i, std::size_t j) const noexcept { return values_(i, j); }

    /// Keeps the listed columns in the given order.
    Dataset select_columns(std::span<const std::size_t> cols) const;
    /// Keeps the listed rows in the given order. Needs at least two.
    Dataset select_rows(std::span<const std::size_t> rows) const;

private:
    Matrix values_;
    std::vector<std::string> column_ids_;
};

std::vector<std::string> default_column_ids(std::size_t p, const std::string& prefix = "x");

/// Square matrix symmetric to 1e-9 on input; stored exactly symmetrized.
class SymmetricMatrix {
public:
    SymmetricMatrix() = default;
    explicit SymmetricMatrix(Matrix m);

    std::size_t size() const noexcept { return m_.rows(); }
    double operator()(std::size_t r, std::size_t c) const noexcept { return m_(r, c); }
    const Matrix& matrix() const noexcept { return m_; }

private:
    Matrix m_;
};

/// Eigenvalues ascending; column j of `eigenvectors` pairs with eigenvalue j.
/// Each eigenvector is scaled so that its largest-magnitude entry is positive.
struct EigenBasis {
    std::vector<double> eigenvalues;
    Matrix eigenvectors;

    std::size_t size() const noexcept { return eigenvalues.size(); }
};

std::vector<double> column_means(const Dataset& data);

/// Sample covariance with the n-1 denominator.
SymmetricMatrix covariance_matrix(const Dataset& data);

/// Throws degenerate_column naming the first zero-variance column.
SymmetricMatrix correlation_matrix(const Dataset& data);

/// Centre every column and scale it to unit sample variance.
Dataset standardize(const Dataset& data);

/// Cyclic Jacobi eigendecomposition. Converges when the off-diagonal
/// Frobenius norm drops below 1e-12 * max(1, ||S||_F); gives up after 100 sweeps.
EigenBasis eigh(const SymmetricMatrix& s);

/// data * V. Output columns are labelled comp0, comp1, ... in basis order.
Dataset rotate(const Dataset& data, const EigenBasis& basis);

/// Standard normal CDF.
double normal_cdf(double x);

/// Inverse standard normal CDF on (0, 1); absolute error below 1e-9.
double normal_quantile(double q);

}  // namespace pettiest
