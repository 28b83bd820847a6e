#pragma once

#include <vector>

#include "sphan/pairs.hpp"
#include "sphan/report.hpp"

namespace sphan::ktype {

using pairs::cplx;
using pairs::PairId;
using pairs::SampledFunction;

// Torus character index m with its leading embedding coordinates xi' and
// the companion scalar |mu|^2 = sum m_j^2.
struct KTypeIndex {
    std::vector<int> m;
    std::vector<double> xi_prime;
    double mu_norm_sq = 0.0;
};

// xi'(m) = m for the torus (the character e^{i m theta} has eigenvalue m_j
// under -i d/dtheta_j).
KTypeIndex xi_prime_map(PairId id, const std::vector<int>& m);

// f_m(x) = int_K f(x k^-1) e^{i m theta(k)} dk by the trapezoid rule on
// the function's own theta grid (exact for band-limited theta content).
SampledFunction project_ktype(const SampledFunction& f, int m);

// A_m f(x) = int_K f(x k) e^{-i m theta(k)} dk.
SampledFunction a_type(const SampledFunction& f, int m);

// Scalar S_m: d_tau = 1, the trace is the identity.
SampledFunction s_type(const SampledFunction& big_f);

struct Decomposition {
    std::vector<int> types;  // -M..M
    std::vector<SampledFunction> components;
    double tail_norm = 0.0;  // ||f - sum f_m||_2
};

Decomposition decompose(const SampledFunction& f, int max_type);

// ||f_m * g_m'||_inf < tol ||f_m||_inf ||g_m'||_inf for m != m'.
Report verify_type_orthogonality(PairId id, const SampledFunction& fm, const SampledFunction& gm,
                                 double tol);

// S_m(A_m f) returns f for pure type-m input, and A_m f scales by
// e^{i m phi} under K-translation on either side.
Report scalar_a_s_roundtrip(const SampledFunction& fm);

}  // namespace sphan::ktype
