#include "pettiest/sampling.hpp"

#include <cmath>
#include <numbers>
#include <optional>

#include "pettiest/error.hpp"

namespace pettiest {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) {
    return Rng(splitmix64(seed ^ splitmix64(index + 1)));
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

namespace {

std::optional<Matrix> try_cholesky(const Matrix& a, double jitter) {
    const std::size_t n = a.rows();
    Matrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double diag = a(j, j) + jitter;
        for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
        if (!(diag > 0.0)) return std::nullopt;
        l(j, j) = std::sqrt(diag);
        for (std::size_t i = j + 1; i < n; ++i) {
            double v = a(i, j);
            for (std::size_t k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
            l(i, j) = v / l(j, j);
        }
    }
    return l;
}

}  // namespace

Matrix cholesky(const SymmetricMatrix& s) {
    if (auto l = try_cholesky(s.matrix(), 0.0)) return *l;
    if (auto l = try_cholesky(s.matrix(), 1e-10)) return *l;
    fail(ErrorKind::numerical_failure, "Cholesky factorization failed: matrix is not positive definite");
}

Dataset sample_mvn(std::size_t n, const SymmetricMatrix& sigma, Rng& rng) {
    const Matrix l = cholesky(sigma);
    const std::size_t p = sigma.size();
    Matrix out(n, p);
    std::vector<double> z(p);
    for (std::size_t i = 0; i < n; ++i) {
        for (double& v : z) v = rng.normal();
        auto row = out.row(i);
        for (std::size_t a = 0; a < p; ++a) {
            double acc = 0.0;
            for (std::size_t b = 0; b <= a; ++b) acc += l(a, b) * z[b];
            row[a] = acc;
        }
    }
    return Dataset(std::move(out));
}

Dataset sample_mvn(std::size_t n, const SymmetricMatrix& sigma, std::uint64_t seed) {
    Rng rng(seed);
    return sample_mvn(n, sigma, rng);
}

}  // namespace pettiest
