#pragma once

// Test-only reference implementations. None of these call into the library's
// numerical kernels.

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

/// erf by its Maclaurin series in long double; accurate for |x| <= 3.
inline long double erf_series(long double x) {
    long double term = x;  // (-1)^n x^{2n+1} / n!
    long double sum = x;
    const long double x2 = x * x;
    for (int n = 1; n < 200; ++n) {
        term *= -x2 / n;
        const long double add = term / (2 * n + 1);
        sum += add;
        if (std::fabs(add) < 1e-22L) break;
    }
    return sum * 2.0L / std::sqrt(3.14159265358979323846264338327950288L);
}

inline long double normal_cdf(long double x) {
    return 0.5L * (1.0L + erf_series(x / std::sqrt(2.0L)));
}

/// Inverse normal CDF by bisection on the series CDF (|result| <= 4.2).
inline double normal_quantile(double q) {
    long double lo = -4.2L;
    long double hi = 4.2L;
    for (int i = 0; i < 200; ++i) {
        const long double mid = 0.5L * (lo + hi);
        if (normal_cdf(mid) < q) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return static_cast<double>(0.5L * (lo + hi));
}

}  // namespace oracle
