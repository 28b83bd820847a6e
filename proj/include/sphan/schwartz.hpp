#pragma once

#include <vector>

#include "sphan/pairs.hpp"
#include "sphan/report.hpp"

namespace sphan::schwartz {

using pairs::cplx;
using pairs::PairId;
using pairs::SampledFunction;
using pairs::SpectrumPoint;

// Smooth compactly supported profile eta(t) = exp(1 - 1/(1 - (t/rho)^2))
// for |t| < rho, zero otherwise; eta(0) = 1.  The radius must stay below
// 1/2 so integer translates have disjoint supports.
struct BumpSpec {
    double radius = 1.0 / 3.0;
};

double bump(const BumpSpec& spec, double t);

// Real data on a contiguous window of the integer lattice (r = 1).
struct LatticeFunction {
    int m_min = 0;
    std::vector<double> values;

    int m_max() const { return m_min + static_cast<int>(values.size()) - 1; }
    double at(int m) const;
};

// h(t) = sum_m a(m) eta(t - m); agrees with a at lattice points exactly.
class BumpInterpolant {
public:
    BumpInterpolant(LatticeFunction a, BumpSpec spec);
    double operator()(double t) const;
    const BumpSpec& spec() const { return spec_; }

private:
    LatticeFunction a_;
    BumpSpec spec_;
};

BumpInterpolant bump_interpolate(const LatticeFunction& a, const BumpSpec& spec);

// A function on R^d sampled over uniform axes, for Euclidean seminorms.
struct EuclidGrid {
    Grid grid;
    std::vector<cplx> values;
};

EuclidGrid sample_euclid(const std::vector<Axis>& axes,
                         const std::function<cplx(const std::vector<double>&)>& fn);

// sup over the grid and |alpha| <= N of (1 + |xi|)^N |d^alpha u| with
// central differences at the grid spacing.
double euclid_seminorm(const EuclidGrid& u, int N);

// Group Schwartz seminorm: sup of w(x)^N |X^alpha f| over |alpha| <= N
// with left-invariant frame differences; w is 1 + ||v|| on flat/e2/u1_c
// and the homogeneous surrogate 1 + (|z|^4 + t^2)^{1/4} on heis1.
// step is the largest admissible grid spacing.
double group_seminorm(const SampledFunction& f, int N, double step);

struct SeminormReport {
    int n_order = 0;      // N
    int decay_order = 0;  // M
    double value = 0.0;   // max per-type seminorm
    std::vector<std::pair<int, double>> per_type;
    double fitted_exponent = 0.0;
    std::vector<std::pair<double, int>> constants;  // (C_M', M') pairs tested
    double tail_norm = 0.0;
    std::string status;  // pass | fail | vacuous | inconclusive
    bool pass = false;
};

struct DecayOptions {
    double xi2_max = 25.0;
    int xi2_half_n = 1251;     // nodes on [0, xi2_max]
    int fit_min_abs_type = 2;  // drop |m| below this from the asymptotic fit
    double floor_rel = 1e-13;  // drop types below floor_rel * max seminorm
};

// Transforms each K-type slice, extends evenly through xi'' = lambda^2,
// computes per-type Euclidean seminorms of order N and fits their decay
// against (1 + |xi'_m|); passes when the fitted slope <= -M + 0.2.
SeminormReport verify_decay(const SampledFunction& f, int N, int M, int max_types,
                            const DecayOptions& opts = {});

struct DecayTable {
    std::vector<double> xi_prime;                // |xi'| per type
    std::vector<std::vector<double>> seminorms;  // [type][N], N = 0..N_max
};

// Threshold radii r_N (least radius past which the order-N seminorm drops
// below |xi'|^{-N}) and the induced piecewise-constant selection N(tau).
std::vector<int> diagonal_select(const DecayTable& table);

struct TypeSlices {
    std::vector<int> m;                     // ascending types
    std::vector<double> xi2;                // uniform ascending nodes from 0
    std::vector<std::vector<cplx>> values;  // [type][xi2 node]
    double tail_norm = 0.0;                 // decomposition remainder
    double source_l2 = 0.0;
};

// Per-type transforms g_m(xi'') of a K-central function on the uniform
// xi'' half grid; the input to schwartz_extend.
TypeSlices compute_type_slices(const SampledFunction& f, int max_types,
                               const DecayOptions& opts = {});

// u(xi', xi'') = sum_m g_m(xi'') eta(xi' - m): exact on the integer lattice,
// supported within radius of it.  Requires a passed decay report at
// (N, M) >= (2, 3).
EuclidGrid schwartz_extend(const TypeSlices& gh, const BumpSpec& spec,
                           const SeminormReport& decay, double xi1_step = 0.05,
                           double xi1_pad = 2.0);

// xi'' >= 0 half of a symmetric extension grid (last axis), used for
// seminorms with one-sided derivatives at the reflection fold.
EuclidGrid upper_half_xi2(const EuclidGrid& u);

struct Monomial {
    std::vector<int> powers;
    double coef = 1.0;
};

struct Polynomial {
    int dim = 0;
    std::vector<Monomial> terms;
    double eval(const std::vector<double>& x) const;
};

struct PolyMap {
    int in_dim = 0, out_dim = 0;
    std::vector<Polynomial> components;
    std::vector<double> eval(const std::vector<double>& x) const;
};

PolyMap identity_map(int dim);
// P: xi -> (xi, |xi|^2) and its left inverse Q dropping the last entry.
PolyMap augment_with_square(int dim);
PolyMap project_first(int dim);

// Checks Q(P(xi)) = xi on the sample (and P(Q(.)) on its image), then fits
// the minimal integer exponent with (1+|xi|)^{1/m} <= C (1+|P(xi)|) and
// (1+|P(xi)|) <= C (1+|xi|)^m, C <= growth_bound, over the sample.
Report change_of_generators(PairId id, const PolyMap& P, const PolyMap& Q,
                            const std::vector<SpectrumPoint>& sample, double tol = 1e-10,
                            double growth_bound = 8.0);

}  // namespace sphan::schwartz
