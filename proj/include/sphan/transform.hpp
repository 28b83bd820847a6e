#pragma once

#include <vector>

#include "sphan/pairs.hpp"
#include "sphan/report.hpp"

namespace sphan::transform {

using pairs::cplx;
using pairs::GroupPoint;
using pairs::PairId;
using pairs::SampledFunction;
using pairs::SpectrumPoint;

// G f sampled over a list of spectrum points, together with the aligned
// discretized Plancherel weights when known.
struct SpectrumFunction {
    PairId pair = PairId::flat_r1;
    std::vector<SpectrumPoint> points;
    std::vector<cplx> values;
    std::vector<double> plancherel_weights;
    std::string warning;
};

// Plancherel densities for K of total mass 1 and Lebesgue measure on H,
// frozen by the Gaussian round-trip calibration tests:
//   flat_r1: dl / pi on [0, inf)  (even functions)
//   e2:      l dl / (2 pi)
//   u1_c:    l dl / (2 pi) on each type slice
//   heis1:   |l| dl / (2 pi)^2 on each fan ray; the limit ray carries none
double plancherel_density(PairId id, const SpectrumPoint& sigma);

struct PlancherelOptions {
    double lambda_max = 12.0;
    int lambda_n = 400;
    int k_max = 40;            // heis1 fan truncation
    int m_min = 0, m_max = 0;  // u1_c type range
};

struct SpectrumQuadrature {
    std::vector<SpectrumPoint> points;
    std::vector<double> weights;
};

// Spectrum points with weights discretizing the Plancherel measure
// (Gauss-Legendre in lambda; heis1 uses one rule per half-axis so the
// |lambda| kink sits at an endpoint).
SpectrumQuadrature plancherel_quadrature(PairId id, const PlancherelOptions& opt);

// G f(sigma) = integral of f(x) phi_sigma(x^-1) over G by quadrature on
// f's grid.
SpectrumFunction spherical_transform(const SampledFunction& f,
                                     const std::vector<SpectrumPoint>& points);
SpectrumFunction spherical_transform(const SampledFunction& f, const SpectrumQuadrature& quad);

// f(x) = sum over points of gh(sigma) phi_sigma(x) beta(sigma).
SampledFunction inverse_transform(const SpectrumFunction& gh, const Grid& out_grid);

// ||f||_2 versus the weighted l2 norm of G f.
Report verify_plancherel(const SampledFunction& f, const SpectrumQuadrature& quad, double tol);

// sup |f*g - g*f| / sup |f*g| against tol.
Report verify_commutativity(PairId id, const SampledFunction& f, const SampledFunction& g,
                            double tol);

// G(f*g) = Gf * Gg pointwise on the given spectrum points.
Report verify_multiplicativity(PairId id, const SampledFunction& f, const SampledFunction& g,
                               const std::vector<SpectrumPoint>& points, double tol);

// Gram matrix M_ij = phi(sigma, x_i^-1 x_j); passes when the smallest
// eigenvalue is >= -tol.  At most 200 points.
Report verify_positive_definite(PairId id, const SpectrumPoint& sigma,
                                const std::vector<GroupPoint>& points, double tol);

// Relative interior residual of (D_j - xi_j) phi_sigma on a patch lattice
// with the given finite-difference step (step <= 1e-2).
Report verify_eigen(PairId id, const SpectrumPoint& sigma, double step, double tol);

// Eigenvalues of a Hermitian n x n matrix (row-major) by cyclic Jacobi
// rotations; ascending order.
std::vector<double> hermitian_eigenvalues(std::vector<cplx> a, int n);

}  // namespace sphan::transform
