#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pettiest/core_stats.hpp"
#include "pettiest/error.hpp"
#include "pettiest/sampling.hpp"

using namespace pettiest;

namespace {

Dataset make(const std::vector<std::vector<double>>& rows) {
    return Dataset(Matrix::from_rows(rows));
}

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::usage;
}

SymmetricMatrix random_symmetric(std::mt19937_64& gen, std::size_t p) {
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    Matrix m(p, p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i; j < p; ++j) m(i, j) = m(j, i) = u(gen);
    return SymmetricMatrix(m);
}

}  // namespace

TEST_CASE("dataset invariants") {
    CHECK(kind_of([] { make({{1.0, 2.0}}); }) == ErrorKind::invalid_input);
    CHECK(kind_of([] { make({{1.0, NAN}, {2.0, 3.0}}); }) == ErrorKind::invalid_input);
    CHECK(kind_of([] {
              Dataset(Matrix::from_rows({{1.0, 2.0}, {3.0, 4.0}}), {"a", "a"});
          }) == ErrorKind::invalid_input);
    const auto d = make({{1.0, 2.0}, {3.0, 4.0}});
    CHECK(d.column_ids() == std::vector<std::string>{"x0", "x1"});
}

TEST_CASE("covariance_matrix") {
    const auto cov = covariance_matrix(make({{0.0, 0.0}, {2.0, 2.0}}));
    CHECK(cov(0, 0) == doctest::Approx(2.0));
    CHECK(cov(0, 1) == doctest::Approx(2.0));
    CHECK(cov(1, 1) == doctest::Approx(2.0));

    const auto with_const = covariance_matrix(make({{1.0, 5.0}, {2.0, 5.0}, {4.0, 5.0}}));
    CHECK(with_const(1, 1) == 0.0);
    CHECK(with_const(0, 1) == 0.0);

    Rng rng(7);
    const auto z = standardize(sample_mvn(500, SymmetricMatrix(Matrix::identity(3)), rng));
    const auto zc = covariance_matrix(z);
    for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(zc(j, j) - 1.0) < 1e-12);
}

TEST_CASE("correlation_matrix") {
    const auto corr = correlation_matrix(make({{0.0, 0.0}, {2.0, 2.0}}));
    CHECK(corr(0, 1) == doctest::Approx(1.0));
    CHECK(corr(0, 0) == 1.0);

    const auto single = correlation_matrix(make({{1.0}, {2.0}, {4.0}}));
    CHECK(single.size() == 1);
    CHECK(single(0, 0) == 1.0);

    // Independent columns at n = 1e4: |rho| < 3/sqrt(n).
    const auto data = sample_mvn(10000, SymmetricMatrix(Matrix::identity(4)), 11);
    const auto c = correlation_matrix(data);
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = a + 1; b < 4; ++b) {
            CHECK(std::abs(c(a, b)) < 3.0 / std::sqrt(10000.0));
            CHECK(std::abs(c(a, b)) <= 1.0);
        }
    }

    try {
        correlation_matrix(Dataset(Matrix::from_rows({{1.0, 5.0}, {2.0, 5.0}}), {"a", "flat"}));
        FAIL("expected degenerate column");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::degenerate_column);
        CHECK(std::string(e.what()).find("flat") != std::string::npos);
    }
}

TEST_CASE("standardize") {
    const auto s = standardize(make({{1.0}, {2.0}, {3.0}}));
    CHECK(s(0, 0) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(std::abs(s(1, 0)) < 1e-15);
    CHECK(s(2, 0) == doctest::Approx(1.0).epsilon(1e-14));

    // (5,5,6): mean 16/3, variance 1/3.
    const auto t = standardize(make({{5.0}, {5.0}, {6.0}}));
    const double sd = std::sqrt(1.0 / 3.0);
    CHECK(t(0, 0) == doctest::Approx(-1.0 / 3.0 / sd));
    CHECK(t(2, 0) == doctest::Approx(2.0 / 3.0 / sd));
    const auto m = column_means(t);
    CHECK(std::abs(m[0]) < 1e-12);
    CHECK(std::abs(covariance_matrix(t)(0, 0) - 1.0) < 1e-12);

    const auto again = standardize(t);
    CHECK(max_abs_diff(again.values(), t.values()) < 1e-12);

    CHECK(kind_of([] { standardize(make({{1.0}, {1.0}})); }) == ErrorKind::degenerate_column);
}

TEST_CASE("eigh closed forms") {
    const auto id = eigh(SymmetricMatrix(Matrix::identity(2)));
    CHECK(id.eigenvalues == std::vector<double>{1.0, 1.0});
    CHECK(max_abs_diff(id.eigenvectors, Matrix::identity(2)) < 1e-15);

    const auto b = eigh(SymmetricMatrix(Matrix::from_rows({{1.0, 0.7}, {0.7, 1.0}})));
    CHECK(b.eigenvalues[0] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(b.eigenvalues[1] == doctest::Approx(1.7).epsilon(1e-12));
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(std::abs(b.eigenvectors(0, 0)) - r) < 1e-12);
    CHECK(b.eigenvectors(0, 0) * b.eigenvectors(1, 0) < 0.0);  // (1, -1) direction
    CHECK(b.eigenvectors(0, 1) == doctest::Approx(r));          // (1, 1), positive
    CHECK(b.eigenvectors(1, 1) == doctest::Approx(r));

    const auto c = eigh(SymmetricMatrix(Matrix::from_rows({{12.0, 8.0}, {8.0, 12.0}})));
    CHECK(c.eigenvalues[0] == doctest::Approx(4.0));
    CHECK(c.eigenvalues[1] == doctest::Approx(20.0));
}

TEST_CASE("eigh sign and tie conventions") {
    const auto d = eigh(SymmetricMatrix(Matrix::from_rows({{2.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 2.0}})));
    CHECK(d.eigenvalues == std::vector<double>{1.0, 2.0, 2.0});
    // Equal eigenvalues keep original column order: e0 before e2.
    CHECK(d.eigenvectors(0, 1) == 1.0);
    CHECK(d.eigenvectors(2, 2) == 1.0);

    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 50; ++trial) {
        const auto basis = eigh(random_symmetric(gen, 6));
        for (std::size_t col = 0; col < 6; ++col) {
            double biggest = 0.0;
            double signed_biggest = 0.0;
            for (std::size_t k = 0; k < 6; ++k) {
                if (std::abs(basis.eigenvectors(k, col)) > biggest + 1e-12) {
                    biggest = std::abs(basis.eigenvectors(k, col));
                    signed_biggest = basis.eigenvectors(k, col);
                }
            }
            CHECK(signed_biggest > 0.0);
        }
    }
}

TEST_CASE("eigh properties on random symmetric matrices") {
    std::mt19937_64 gen(12345);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t p = 1 + static_cast<std::size_t>(gen() % 10);
        const auto s = random_symmetric(gen, p);
        const auto basis = eigh(s);
        Matrix lambda(p, p);
        double trace = 0.0;
        double sum = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
            lambda(j, j) = basis.eigenvalues[j];
            trace += s(j, j);
            sum += basis.eigenvalues[j];
            if (j > 0) CHECK(basis.eigenvalues[j - 1] <= basis.eigenvalues[j]);
        }
        const auto& v = basis.eigenvectors;
        CHECK(max_abs_diff(s.matrix() * v, v * lambda) <= 1e-8);
        CHECK(max_abs_diff(v.transposed() * v, Matrix::identity(p)) <= 1e-8);
        CHECK(std::abs(trace - sum) <= 1e-8);
    }
}

TEST_CASE("eigh determinant matches eigenvalue product for well-conditioned matrices") {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> u(-0.3, 0.3);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t p = 2 + static_cast<std::size_t>(gen() % 5);
        Matrix m(p, p);
        for (std::size_t i = 0; i < p; ++i) {
            m(i, i) = 2.0 + u(gen);
            for (std::size_t j = i + 1; j < p; ++j) m(i, j) = m(j, i) = u(gen);
        }
        // Determinant by Gaussian elimination (diagonally dominant, no pivoting needed).
        Matrix g = m;
        double det = 1.0;
        for (std::size_t k = 0; k < p; ++k) {
            det *= g(k, k);
            for (std::size_t i = k + 1; i < p; ++i) {
                const double f = g(i, k) / g(k, k);
                for (std::size_t j = k; j < p; ++j) g(i, j) -= f * g(k, j);
            }
        }
        double prod = 1.0;
        for (double ev : eigh(SymmetricMatrix(m)).eigenvalues) prod *= ev;
        CHECK(std::abs(prod - det) <= 1e-6 * std::abs(det));
    }
}

TEST_CASE("covariance eigenvalues are non-negative") {
    const auto data = sample_mvn(50, SymmetricMatrix(Matrix::identity(8)), 5);
    for (double ev : eigh(covariance_matrix(data)).eigenvalues) CHECK(ev >= -1e-10);
}

TEST_CASE("symmetric matrix validation") {
    CHECK(kind_of([] { SymmetricMatrix(Matrix::from_rows({{1.0, 0.5}, {0.4, 1.0}})); }) ==
          ErrorKind::invalid_input);
    CHECK(kind_of([] { SymmetricMatrix(Matrix(2, 3)); }) == ErrorKind::invalid_input);
    const SymmetricMatrix nearly(Matrix::from_rows({{1.0, 0.5 + 1e-11}, {0.5, 1.0}}));
    CHECK(nearly(0, 1) == nearly(1, 0));
}

TEST_CASE("rotate") {
    const auto data = make({{1.0, 2.0}, {3.0, -1.0}, {0.5, 0.25}});
    EigenBasis id{{1.0, 1.0}, Matrix::identity(2)};
    CHECK(rotate(data, id).values() == data.values());

    const auto sample = sample_mvn(5000, SymmetricMatrix(Matrix::from_rows({{1.0, 0.7}, {0.7, 1.0}})), 21);
    const auto basis = eigh(covariance_matrix(sample));
    const auto rotated = rotate(sample, basis);
    const auto rc = covariance_matrix(rotated);
    CHECK(std::abs(rc(0, 1)) <= 1e-8);
    CHECK(rc(0, 0) == doctest::Approx(basis.eigenvalues[0]).epsilon(1e-9));
    CHECK(rc(1, 1) == doctest::Approx(basis.eigenvalues[1]).epsilon(1e-9));
    CHECK(rc(0, 0) == doctest::Approx(0.3).epsilon(0.1));
    CHECK(rc(1, 1) == doctest::Approx(1.7).epsilon(0.1));

    const Matrix back = rotated.values() * basis.eigenvectors.transposed();
    CHECK(max_abs_diff(back, sample.values()) <= 1e-10);

    for (std::size_t i = 0; i < sample.n(); ++i) {
        double before = 0.0;
        double after = 0.0;
        for (std::size_t j = 0; j < 2; ++j) {
            before += sample(i, j) * sample(i, j);
            after += rotated(i, j) * rotated(i, j);
        }
        CHECK(std::abs(before - after) <= 1e-10);
    }

    EigenBasis wrong{{1.0, 1.0, 1.0}, Matrix::identity(3)};
    CHECK(kind_of([&] { rotate(data, wrong); }) == ErrorKind::invalid_input);
}

TEST_CASE("normal_quantile reference values") {
    CHECK(normal_quantile(0.5) == 0.0);
    CHECK(std::abs(normal_quantile(0.975) - 1.959963984540054) < 1e-9);
    CHECK(std::abs(normal_quantile(0.6581138830084190) - 0.4073210095841714) < 1e-9);
    CHECK(std::abs(normal_quantile(0.55) - 0.1256613468550740) < 1e-9);

    CHECK(std::abs(normal_quantile(0.975) - oracle::normal_quantile(0.975)) < 1e-9);
    CHECK(kind_of([] { normal_quantile(0.0); }) == ErrorKind::domain);
    CHECK(kind_of([] { normal_quantile(1.0); }) == ErrorKind::domain);
    CHECK(kind_of([] { normal_quantile(NAN); }) == ErrorKind::domain);
}

TEST_CASE("normal_quantile is monotone and antisymmetric") {
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> u(1e-8, 1.0 - 1e-8);
    for (int i = 0; i < 2000; ++i) {
        const double q = u(gen);
        CHECK(std::abs(normal_quantile(1.0 - q) + normal_quantile(q)) <= 1e-12);
    }
    double prev = normal_quantile(1e-6);
    for (int i = 1; i < 2000; ++i) {
        const double q = 1e-6 + (1.0 - 2e-6) * i / 2000.0;
        const double x = normal_quantile(q);
        CHECK(x > prev);
        prev = x;
    }
    CHECK(normal_quantile(1e-300) < -37.0);
}

TEST_CASE("normal_cdf inverts normal_quantile") {
    for (double q : {1e-12, 1e-5, 0.01, 0.3, 0.5, 0.77, 0.999}) {
        CHECK(normal_cdf(normal_quantile(q)) == doctest::Approx(q).epsilon(1e-12));
    }
}
