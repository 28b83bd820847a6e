#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "sphan/grid.hpp"

namespace sphan::pairs {

using cplx = std::complex<double>;

// The four implemented pairs:
//   flat_r1  (R, {0})              D = {-Laplacian},               ell = 1
//   e2       (SO(2) x| R^2, SO(2)) D = {-Laplacian},               ell = 1
//   u1_c     (U(1) x| C, U(1))     D = {-i d/dtheta, -Laplacian},  ell = 2, strong
//   heis1    (U(1) x| H1, U(1))    D = {L, -i d/dt},               ell = 2
enum class PairId { flat_r1, e2, u1_c, heis1 };

PairId pair_from_string(std::string_view s);
std::string_view to_string(PairId id);

struct PairDescriptor {
    PairId id;
    int ell;    // dimension of the spectrum embedding
    int r;      // leading coordinates coming from the center of U(k)
    int dim_h;  // dimension of the H coordinate chart
    bool strong;
    std::vector<std::string> generator_names;
};

const PairDescriptor& descriptor(PairId id);

// A point of G in the pair's chart: r torus angles and the H coordinates
// (x), (x, y) or (x, y, t).
struct GroupPoint {
    std::vector<double> theta;
    std::vector<double> z;
};

GroupPoint identity(PairId id);
GroupPoint multiply(PairId id, const GroupPoint& a, const GroupPoint& b);
GroupPoint inverse(PairId id, const GroupPoint& a);

// Parametrization of a spectrum point.  lambda is the radial frequency
// (eta on the heis1 limit ray), m the torus character for u1_c, k the
// Laguerre level on the heis1 fan.
struct SpectrumParams {
    double lambda = 0.0;
    int m = 0;
    int k = 0;
    bool limit_ray = false;
};

struct SpectrumPoint {
    std::vector<double> xi;
    SpectrumParams params;
};

// Embedding xi of the spherical function with the given parameters:
//   flat_r1 (lambda^2); e2 (lambda^2); u1_c (m, lambda^2);
//   heis1 fan (|lambda|(2k+1), lambda), limit ray (eta^2, 0).
SpectrumPoint eigenvalue_map(PairId id, const SpectrumParams& params);

// Bounded spherical function value at x.
cplx spherical(PairId id, const SpectrumPoint& sigma, const GroupPoint& x);

struct SpectrumBounds {
    double lambda_min = 0.0, lambda_max = 0.0;
    int lambda_n = 0;
    int m_min = 0, m_max = 0;  // u1_c
    int k_max = 0;             // heis1
    double eta_min = 0.0, eta_max = 0.0;
    int eta_n = 0;  // heis1 limit ray sample; 0 omits the ray
};

// Deterministic enumeration of spectrum points; heis1 produces the fan
// rays k = 0..k_max and, when eta_n > 0, the closing half-line.
std::vector<SpectrumPoint> spectrum_grid(PairId id, const SpectrumBounds& bounds);

enum class Symmetry { bi_k_invariant, k_central, k_type };

std::string_view to_string(Symmetry s);
Symmetry symmetry_from_string(std::string_view s);

// A function on G as values over a structured grid in the pair's chart.
struct SampledFunction {
    PairId pair = PairId::flat_r1;
    Grid grid;
    std::vector<cplx> values;  // row-major
    Symmetry symmetry = Symmetry::bi_k_invariant;
    std::vector<int> ktype;  // set when symmetry == k_type
    double truncation = 0.0;
    std::string warning;  // set when a decay/truncation check was not met
};

// Canonical charts.  Lattice charts are symmetric with an odd point count
// so that differences of grid points stay on the grid; radial charts carry
// a Gauss-Legendre radial coordinate for high-accuracy transforms.
Grid flat_lattice(double R, int n);
Grid e2_lattice(double R, int n);
Grid e2_radial(double R, int n);
Grid u1c_lattice(int n_theta, double R, int n);
Grid u1c_radial(int n_theta, double R, int n);
Grid heis1_lattice(double Rz, int nz, double Rt, int nt);
Grid heis1_radial(double Rz, int nr, double Rt, int nt);

// Group point for a multi-index, given the per-axis node table.  Radial
// charts use the representative z = (r, 0).
GroupPoint assemble_point(PairId id, const Grid& g, const std::vector<std::vector<double>>& nodes,
                          const std::vector<int>& idx);

// Integration weights per grid point for the Haar measure with K
// normalized to total mass 1 and Lebesgue measure on H.
std::vector<double> haar_weights(PairId id, const Grid& g);

cplx integral(const SampledFunction& f);
double l2_norm(const SampledFunction& f);
double sup_norm(const SampledFunction& f);

template <typename F>
SampledFunction sample(PairId id, const Grid& g, F&& fn, Symmetry sym = Symmetry::bi_k_invariant,
                       std::vector<int> ktype = {}) {
    SampledFunction out;
    out.pair = id;
    out.grid = g;
    out.symmetry = sym;
    out.ktype = std::move(ktype);
    for (const auto& a : g.axes) {
        const double reach = std::max(std::abs(a.min), std::abs(a.max));
        if (a.role != AxisRole::theta && reach > out.truncation) out.truncation = reach;
    }
    const auto nodes = g.node_table();
    out.values.resize(g.size());
    g.for_each([&](const std::vector<int>& idx, std::size_t flat) {
        out.values[flat] = fn(assemble_point(id, g, nodes, idx));
    });
    return out;
}

// Central finite-difference application of the j-th generator (1-based)
// on the function's own lattice.  step is the largest admissible grid
// spacing; the boundary ring of the result is set to NaN.
SampledFunction apply_generator(PairId id, int j, const SampledFunction& f, double step);

// (f * g)(x) = integral of f(x y^-1) g(y) over G, by direct quadrature on
// the shared grid.  k_nodes controls the angular discretization of the
// K-average needed on e2 when an operand is not radial.
SampledFunction group_convolve(PairId id, const SampledFunction& f, const SampledFunction& g,
                               int k_nodes = 64);

}  // namespace sphan::pairs
