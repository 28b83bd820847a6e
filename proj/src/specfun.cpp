#include "sphan/specfun.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sphan/errors.hpp"

namespace sphan::specfun {

namespace detail {

double bessel_j_series(int n, double x) {
    const long double half = 0.5L * static_cast<long double>(x);
    long double term = 1.0L;
    for (int i = 1; i <= n; ++i) term *= half / i;  // (x/2)^n / n!
    long double sum = term;
    const long double ratio = -half * half;
    for (int m = 1; m <= 300; ++m) {
        term *= ratio / (static_cast<long double>(m) * (m + n));
        sum += term;
        if (fabsl(term) < 1e-22L * (fabsl(sum) + 1e-300L)) break;
    }
    return static_cast<double>(sum);
}

double bessel_j_miller(int n, double x) {
    // Downward recurrence started well above max(n, x), normalized with
    // J_0 + 2 J_2 + 2 J_4 + ... = 1.
    int start = std::max(n, static_cast<int>(std::ceil(x))) + 60;
    if (start % 2 != 0) ++start;
    long double jnext = 0.0L;     // J_{k+1}
    long double jcur = 1e-280L;   // J_k, seed value at k = start
    long double even_sum = 0.0L;  // J_2 + J_4 + ...
    long double jn = 0.0L;
    for (int k = start; k >= 1; --k) {
        const long double jprev = (2.0L * k / x) * jcur - jnext;  // J_{k-1}
        jnext = jcur;
        jcur = jprev;
        if (k - 1 == n) jn = jcur;
        if (k - 1 > 0 && (k - 1) % 2 == 0) even_sum += jcur;
        if (fabsl(jcur) > 1e260L) {
            jnext *= 1e-260L;
            jcur *= 1e-260L;
            even_sum *= 1e-260L;
            jn *= 1e-260L;
        }
    }
    const long double norm = jcur + 2.0L * even_sum;  // jcur holds J_0
    return static_cast<double>(jn / norm);
}

}  // namespace detail

double bessel_j(int order, double x) {
    if (order < 0 || order > kMaxBesselOrder)
        throw InputError("bessel_j: order " + std::to_string(order) +
                         " outside supported range [0, " + std::to_string(kMaxBesselOrder) + "]");
    if (!std::isfinite(x)) throw InputError("bessel_j: x must be finite");
    const double ax = std::fabs(x);
    double v = ax <= 12.0 ? detail::bessel_j_series(order, ax) : detail::bessel_j_miller(order, ax);
    if (x < 0.0 && order % 2 != 0) v = -v;
    return v;
}

double laguerre(int k, double alpha, double x) {
    if (k < 0 || k > kMaxLaguerreDegree)
        throw InputError("laguerre: degree " + std::to_string(k) + " outside supported range [0, " +
                         std::to_string(kMaxLaguerreDegree) + "]");
    if (alpha < 0.0) throw InputError("laguerre: alpha must be nonnegative");
    if (x < 0.0) throw InputError("laguerre: x must be nonnegative");
    if (k == 0) return 1.0;
    double prev = 1.0;              // L_0
    double cur = 1.0 + alpha - x;   // L_1
    for (int i = 1; i < k; ++i) {
        const double next = ((2.0 * i + 1.0 + alpha - x) * cur - (i + alpha) * prev) / (i + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

QuadratureRule gauss_legendre(int n, double a, double b) {
    if (n < 1) throw InputError("gauss_legendre: need n >= 1");
    if (!(a < b)) throw InputError("gauss_legendre: need a < b");

    QuadratureRule rule;
    rule.a = a;
    rule.b = b;
    rule.nodes.resize(n);
    rule.weights.resize(n);

    const double eps = 1e-15;
    const double xm = 0.5 * (b + a);
    const double xl = 0.5 * (b - a);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double z1 = 0.0, pp = 0.0;
        int iter = 0;
        do {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            z1 = z;
            z = z1 - p1 / pp;
            if (++iter > 100)
                throw InternalError("gauss_legendre: node " + std::to_string(i) + " did not converge");
        } while (std::fabs(z - z1) > eps);
        rule.nodes[i] = xm - xl * z;
        rule.nodes[n - 1 - i] = xm + xl * z;
        rule.weights[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    return rule;
}

std::complex<double> integrate(const QuadratureRule& rule,
                               const std::function<std::complex<double>(double)>& f) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        std::complex<double> v;
        try {
            v = f(rule.nodes[i]);
        } catch (const std::exception& e) {
            std::ostringstream msg;
            msg << "integrate: evaluator failed at node " << i << " (x = " << rule.nodes[i]
                << "): " << e.what();
            throw InternalError(msg.str());
        }
        acc += rule.weights[i] * v;
    }
    return acc;
}

double integrate_real(const QuadratureRule& rule, const std::function<double(double)>& f) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        double v;
        try {
            v = f(rule.nodes[i]);
        } catch (const std::exception& e) {
            std::ostringstream msg;
            msg << "integrate: evaluator failed at node " << i << " (x = " << rule.nodes[i]
                << "): " << e.what();
            throw InternalError(msg.str());
        }
        acc += rule.weights[i] * v;
    }
    return acc;
}

}  // namespace sphan::specfun
