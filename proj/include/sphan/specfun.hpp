#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace sphan::specfun {

inline constexpr int kMaxBesselOrder = 64;
inline constexpr int kMaxLaguerreDegree = 256;

// Nodes and weights of an n-point rule on [a, b].  Nodes are strictly
// increasing, weights positive with sum b - a; an n-point rule integrates
// polynomials of degree <= 2n - 1 exactly.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    double a = 0.0;
    double b = 0.0;

    std::size_t size() const { return nodes.size(); }
};

// Bessel function of the first kind J_n(x) for integer order 0 <= n <= 64.
// Power series up to |x| = 12, Miller backward recurrence beyond; absolute
// error <= 1e-12 for |x| <= 50.
double bessel_j(int order, double x);

// Generalized Laguerre polynomial L_k^{(alpha)}(x), k <= 256, alpha >= 0,
// x >= 0, by the standard three-term recurrence.
double laguerre(int k, double alpha, double x);

// Gauss-Legendre rule with n nodes on [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

// Sum of weights[i] * f(nodes[i]).  Evaluator failures are rethrown with
// the offending node attached.
std::complex<double> integrate(const QuadratureRule& rule,
                               const std::function<std::complex<double>(double)>& f);

double integrate_real(const QuadratureRule& rule, const std::function<double(double)>& f);

namespace detail {
// The two evaluation branches, exposed so the overlap band can be tested.
double bessel_j_series(int n, double x);
double bessel_j_miller(int n, double x);
}  // namespace detail

}  // namespace sphan::specfun
