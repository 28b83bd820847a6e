#pragma once

// Test-only oracles, independent of the library implementation paths they
// are used to check.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracles {

// J_n by the plain ascending power series (double precision, naive form).
inline double bessel_series(int n, double x) {
    double term = 1.0;
    for (int i = 1; i <= n; ++i) term *= 0.5 * x / i;
    double sum = term;
    for (int m = 1; m <= 200; ++m) {
        term *= -0.25 * x * x / (m * (m + n));
        sum += term;
        if (std::fabs(term) < 1e-20 * (std::fabs(sum) + 1e-300)) break;
    }
    return sum;
}

// J_n(x) = (1/pi) int_0^pi cos(n t - x sin t) dt via composite Simpson.
inline double bessel_integral(int n, double x) {
    const int steps = 20000;  // even
    const double h = std::numbers::pi / steps;
    auto f = [&](double t) { return std::cos(n * t - x * std::sin(t)); };
    double acc = f(0.0) + f(std::numbers::pi);
    for (int i = 1; i < steps; ++i) acc += f(h * i) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0 / std::numbers::pi;
}

// Root of fn inside [lo, hi] by bisection; fn must change sign.
inline double bisect(const std::function<double(double)>& fn, double lo, double hi) {
    double flo = fn(lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = fn(mid);
        if ((flo < 0.0) == (fm < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// L_k^{(alpha)}(x) from the explicit coefficient formula
//   sum_i (-1)^i binom(k + alpha, k - i) x^i / i!
inline double laguerre_coeffs(int k, double alpha, double x) {
    double sum = 0.0;
    for (int i = 0; i <= k; ++i) {
        // binom(k + alpha, k - i) = Gamma(k+alpha+1) / (Gamma(alpha+i+1) (k-i)!)
        double b = std::exp(std::lgamma(k + alpha + 1.0) - std::lgamma(alpha + i + 1.0) -
                            std::lgamma(k - i + 1.0));
        double xi = 1.0;
        for (int p = 0; p < i; ++p) xi *= x / (p + 1);
        sum += (i % 2 ? -1.0 : 1.0) * b * xi;
    }
    return sum;
}

// Composite-Simpson integral on [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b, int steps) {
    if (steps % 2) ++steps;
    const double h = (b - a) / steps;
    double acc = f(a) + f(b);
    for (int i = 1; i < steps; ++i) acc += f(a + h * i) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

inline std::complex<double> simpson_c(const std::function<std::complex<double>(double)>& f,
                                      double a, double b, int steps) {
    if (steps % 2) ++steps;
    const double h = (b - a) / steps;
    std::complex<double> acc = f(a) + f(b);
    for (int i = 1; i < steps; ++i) acc += f(a + h * i) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

}  // namespace oracles
