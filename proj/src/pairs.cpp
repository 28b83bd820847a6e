#include "sphan/pairs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sphan/errors.hpp"
#include "sphan/specfun.hpp"

namespace sphan::pairs {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    return a;
}

void require_point(PairId id, const GroupPoint& p) {
    const auto& d = descriptor(id);
    if (static_cast<int>(p.theta.size()) != d.r || static_cast<int>(p.z.size()) != d.dim_h)
        throw InputError("group point: coordinate count does not match pair " +
                         std::string(to_string(id)));
}

std::vector<double> linspace(double a, double b, int n) {
    if (n <= 0) return {};
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = a;
        return v;
    }
    const double h = (b - a) / (n - 1);
    for (int i = 0; i < n; ++i) v[i] = a + h * i;
    return v;
}

}  // namespace

PairId pair_from_string(std::string_view s) {
    if (s == "flat_r1") return PairId::flat_r1;
    if (s == "e2") return PairId::e2;
    if (s == "u1_c") return PairId::u1_c;
    if (s == "heis1") return PairId::heis1;
    throw InputError("unknown pair '" + std::string(s) + "'");
}

std::string_view to_string(PairId id) {
    switch (id) {
        case PairId::flat_r1: return "flat_r1";
        case PairId::e2: return "e2";
        case PairId::u1_c: return "u1_c";
        case PairId::heis1: return "heis1";
    }
    return "?";
}

const PairDescriptor& descriptor(PairId id) {
    static const PairDescriptor flat{PairId::flat_r1, 1, 0, 1, false, {"-Delta"}};
    static const PairDescriptor e2{PairId::e2, 1, 0, 2, false, {"-Delta"}};
    static const PairDescriptor u1c{PairId::u1_c, 2, 1, 2, true, {"-i d/dtheta", "-Delta_z"}};
    static const PairDescriptor heis{PairId::heis1, 2, 0, 3, false, {"L", "-i d/dt"}};
    switch (id) {
        case PairId::flat_r1: return flat;
        case PairId::e2: return e2;
        case PairId::u1_c: return u1c;
        case PairId::heis1: return heis;
    }
    throw InputError("bad pair id");
}

GroupPoint identity(PairId id) {
    const auto& d = descriptor(id);
    GroupPoint p;
    p.theta.assign(d.r, 0.0);
    p.z.assign(d.dim_h, 0.0);
    return p;
}

GroupPoint multiply(PairId id, const GroupPoint& a, const GroupPoint& b) {
    require_point(id, a);
    require_point(id, b);
    GroupPoint out;
    switch (id) {
        case PairId::flat_r1:
            out.z = {a.z[0] + b.z[0]};
            break;
        case PairId::e2:
            out.z = {a.z[0] + b.z[0], a.z[1] + b.z[1]};
            break;
        case PairId::u1_c: {
            const double c = std::cos(a.theta[0]), s = std::sin(a.theta[0]);
            out.theta = {wrap_angle(a.theta[0] + b.theta[0])};
            out.z = {a.z[0] + c * b.z[0] - s * b.z[1], a.z[1] + s * b.z[0] + c * b.z[1]};
            break;
        }
        case PairId::heis1: {
            // (z,t)(z',t') = (z + z', t + t' + Im(z conj(z'))/2)
            const double twist = 0.5 * (a.z[1] * b.z[0] - a.z[0] * b.z[1]);
            out.z = {a.z[0] + b.z[0], a.z[1] + b.z[1], a.z[2] + b.z[2] + twist};
            break;
        }
    }
    return out;
}

GroupPoint inverse(PairId id, const GroupPoint& a) {
    require_point(id, a);
    GroupPoint out;
    switch (id) {
        case PairId::flat_r1:
            out.z = {-a.z[0]};
            break;
        case PairId::e2:
            out.z = {-a.z[0], -a.z[1]};
            break;
        case PairId::u1_c: {
            const double c = std::cos(a.theta[0]), s = std::sin(a.theta[0]);
            out.theta = {wrap_angle(-a.theta[0])};
            // -R(-theta) z
            out.z = {-(c * a.z[0] + s * a.z[1]), -(-s * a.z[0] + c * a.z[1])};
            break;
        }
        case PairId::heis1:
            out.z = {-a.z[0], -a.z[1], -a.z[2]};
            break;
    }
    return out;
}

SpectrumPoint eigenvalue_map(PairId id, const SpectrumParams& params) {
    SpectrumPoint p;
    p.params = params;
    switch (id) {
        case PairId::flat_r1:
        case PairId::e2:
            if (params.lambda < 0.0)
                throw InputError("eigenvalue_map: lambda must be >= 0 for " +
                                 std::string(to_string(id)));
            p.xi = {params.lambda * params.lambda};
            break;
        case PairId::u1_c:
            if (params.lambda < 0.0) throw InputError("eigenvalue_map: lambda must be >= 0 for u1_c");
            p.xi = {static_cast<double>(params.m), params.lambda * params.lambda};
            break;
        case PairId::heis1:
            if (params.limit_ray) {
                if (params.lambda < 0.0)
                    throw InputError("eigenvalue_map: eta must be >= 0 on the limit ray");
                p.xi = {params.lambda * params.lambda, 0.0};
            } else {
                if (params.k < 0) throw InputError("eigenvalue_map: k must be >= 0");
                p.xi = {std::fabs(params.lambda) * (2.0 * params.k + 1.0), params.lambda};
            }
            break;
    }
    return p;
}

cplx spherical(PairId id, const SpectrumPoint& sigma, const GroupPoint& x) {
    require_point(id, x);
    if (static_cast<int>(sigma.xi.size()) != descriptor(id).ell)
        throw InputError("spherical: spectrum point does not match pair");
    const auto& prm = sigma.params;
    switch (id) {
        case PairId::flat_r1:
            return std::polar(1.0, prm.lambda * x.z[0]);
        case PairId::e2:
            return {specfun::bessel_j(0, prm.lambda * std::hypot(x.z[0], x.z[1])), 0.0};
        case PairId::u1_c: {
            const double radial = specfun::bessel_j(0, prm.lambda * std::hypot(x.z[0], x.z[1]));
            return std::polar(radial, prm.m * x.theta[0]);
        }
        case PairId::heis1: {
            const double rho2 = x.z[0] * x.z[0] + x.z[1] * x.z[1];
            if (prm.limit_ray)
                return {specfun::bessel_j(0, prm.lambda * std::sqrt(rho2)), 0.0};
            const double al = std::fabs(prm.lambda);
            const double radial =
                std::exp(-0.25 * al * rho2) * specfun::laguerre(prm.k, 0.0, 0.5 * al * rho2);
            return std::polar(radial, prm.lambda * x.z[2]);
        }
    }
    throw InputError("spherical: bad pair id");
}

std::vector<SpectrumPoint> spectrum_grid(PairId id, const SpectrumBounds& bounds) {
    std::vector<SpectrumPoint> out;
    const auto lambdas = linspace(bounds.lambda_min, bounds.lambda_max, bounds.lambda_n);
    switch (id) {
        case PairId::flat_r1:
        case PairId::e2:
            for (double l : lambdas) out.push_back(eigenvalue_map(id, {.lambda = l}));
            break;
        case PairId::u1_c:
            for (int m = bounds.m_min; m <= bounds.m_max; ++m)
                for (double l : lambdas) out.push_back(eigenvalue_map(id, {.lambda = l, .m = m}));
            break;
        case PairId::heis1: {
            for (int k = 0; k <= bounds.k_max; ++k)
                for (double l : lambdas) out.push_back(eigenvalue_map(id, {.lambda = l, .k = k}));
            const auto etas = linspace(bounds.eta_min, bounds.eta_max, bounds.eta_n);
            for (double eta : etas)
                out.push_back(eigenvalue_map(id, {.lambda = eta, .limit_ray = true}));
            break;
        }
    }
    return out;
}

std::string_view to_string(Symmetry s) {
    switch (s) {
        case Symmetry::bi_k_invariant: return "bi-K-invariant";
        case Symmetry::k_central: return "K-central";
        case Symmetry::k_type: return "K-type";
    }
    return "?";
}

Symmetry symmetry_from_string(std::string_view s) {
    if (s == "bi-K-invariant") return Symmetry::bi_k_invariant;
    if (s == "K-central") return Symmetry::k_central;
    if (s == "K-type") return Symmetry::k_type;
    throw InputError("unknown symmetry tag '" + std::string(s) + "'");
}

namespace {

Axis uniform_axis(AxisRole role, double lo, double hi, int n) {
    return Axis{role, AxisKind::uniform, lo, hi, n};
}

void require_odd(int n, const char* what) {
    if (n < 3 || n % 2 == 0)
        throw InputError(std::string(what) + ": lattice point count must be odd and >= 3");
}

}  // namespace

Grid flat_lattice(double R, int n) {
    require_odd(n, "flat_lattice");
    return Grid{{uniform_axis(AxisRole::x, -R, R, n)}};
}

Grid e2_lattice(double R, int n) {
    require_odd(n, "e2_lattice");
    return Grid{{uniform_axis(AxisRole::x, -R, R, n), uniform_axis(AxisRole::y, -R, R, n)}};
}

Grid e2_radial(double R, int n) {
    return Grid{{Axis{AxisRole::r, AxisKind::gauss, 0.0, R, n}}};
}

Grid u1c_lattice(int n_theta, double R, int n) {
    require_odd(n, "u1c_lattice");
    if (n_theta < 1) throw InputError("u1c_lattice: need n_theta >= 1");
    return Grid{{Axis{AxisRole::theta, AxisKind::periodic, 0.0, kTwoPi, n_theta},
                 uniform_axis(AxisRole::x, -R, R, n), uniform_axis(AxisRole::y, -R, R, n)}};
}

Grid u1c_radial(int n_theta, double R, int n) {
    if (n_theta < 1) throw InputError("u1c_radial: need n_theta >= 1");
    return Grid{{Axis{AxisRole::theta, AxisKind::periodic, 0.0, kTwoPi, n_theta},
                 Axis{AxisRole::r, AxisKind::gauss, 0.0, R, n}}};
}

Grid heis1_lattice(double Rz, int nz, double Rt, int nt) {
    require_odd(nz, "heis1_lattice");
    require_odd(nt, "heis1_lattice");
    return Grid{{uniform_axis(AxisRole::x, -Rz, Rz, nz), uniform_axis(AxisRole::y, -Rz, Rz, nz),
                 uniform_axis(AxisRole::t, -Rt, Rt, nt)}};
}

Grid heis1_radial(double Rz, int nr, double Rt, int nt) {
    return Grid{{Axis{AxisRole::r, AxisKind::gauss, 0.0, Rz, nr},
                 Axis{AxisRole::t, AxisKind::gauss, -Rt, Rt, nt}}};
}

GroupPoint assemble_point(PairId id, const Grid& g, const std::vector<std::vector<double>>& nodes,
                          const std::vector<int>& idx) {
    GroupPoint p = identity(id);
    for (std::size_t a = 0; a < g.axes.size(); ++a) {
        const double v = nodes[a][idx[a]];
        switch (g.axes[a].role) {
            case AxisRole::theta: p.theta.at(0) = v; break;
            case AxisRole::x: p.z.at(0) = v; break;
            case AxisRole::y: p.z.at(1) = v; break;
            case AxisRole::t: p.z.at(descriptor(id).dim_h - 1) = v; break;
            case AxisRole::r: p.z.at(0) = v; break;
        }
    }
    return p;
}

std::vector<double> haar_weights(PairId id, const Grid& g) {
    (void)id;
    std::vector<std::vector<double>> w;
    std::vector<std::vector<double>> nodes;
    for (const auto& a : g.axes) {
        auto wa = a.quad_weights();
        const auto na = a.nodes();
        if (a.role == AxisRole::theta) {
            for (auto& x : wa) x /= kTwoPi;  // K has total mass 1
        } else if (a.role == AxisRole::r) {
            for (int i = 0; i < a.n; ++i) wa[i] *= kTwoPi * na[i];  // polar measure
        }
        w.push_back(std::move(wa));
        nodes.push_back(na);
    }
    std::vector<double> out(g.size());
    g.for_each([&](const std::vector<int>& idx, std::size_t flat) {
        double prod = 1.0;
        for (std::size_t a = 0; a < w.size(); ++a) prod *= w[a][idx[a]];
        out[flat] = prod;
    });
    return out;
}

cplx integral(const SampledFunction& f) {
    const auto w = haar_weights(f.pair, f.grid);
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < f.values.size(); ++i) acc += w[i] * f.values[i];
    return acc;
}

double l2_norm(const SampledFunction& f) {
    const auto w = haar_weights(f.pair, f.grid);
    double acc = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) acc += w[i] * std::norm(f.values[i]);
    return std::sqrt(acc);
}

double sup_norm(const SampledFunction& f) {
    double m = 0.0;
    for (const auto& v : f.values) {
        const double a = std::abs(v);
        if (std::isfinite(a) && a > m) m = a;
    }
    return m;
}

namespace {

void require_spacing(const Axis& a, double step, const char* who) {
    if (a.kind == AxisKind::gauss)
        throw InputError(std::string(who) + ": needs a lattice chart, not a quadrature grid");
    if (a.spacing() > step * (1.0 + 1e-9))
        throw ResolutionError(std::string(who) + ": grid spacing " + std::to_string(a.spacing()) +
                              " exceeds requested step " + std::to_string(step));
}

}  // namespace

SampledFunction apply_generator(PairId id, int j, const SampledFunction& f, double step) {
    const auto& d = descriptor(id);
    if (j < 1 || j > d.ell) throw InputError("apply_generator: generator index out of range");
    if (f.pair != id) throw InputError("apply_generator: pair mismatch");
    const Grid& g = f.grid;

    SampledFunction out = f;
    out.values.assign(f.values.size(), cplx{kNan, kNan});
    const cplx mi{0.0, -1.0};  // -i

    switch (id) {
        case PairId::flat_r1: {
            const Axis& ax = g.axes.at(0);
            require_spacing(ax, step, "apply_generator");
            const double h2 = ax.spacing() * ax.spacing();
            for (int i = 1; i + 1 < ax.n; ++i)
                out.values[i] = -(f.values[i + 1] - 2.0 * f.values[i] + f.values[i - 1]) / h2;
            break;
        }
        case PairId::e2: {
            if (g.dim() != 2) throw InputError("apply_generator: e2 needs an (x, y) lattice");
            const Axis& axx = g.axes[0];
            const Axis& axy = g.axes[1];
            require_spacing(axx, step, "apply_generator");
            require_spacing(axy, step, "apply_generator");
            const double hx2 = axx.spacing() * axx.spacing(), hy2 = axy.spacing() * axy.spacing();
            const int nx = axx.n, ny = axy.n;
            auto at = [&](int i, int jj) { return f.values[static_cast<std::size_t>(i) * ny + jj]; };
            for (int i = 1; i + 1 < nx; ++i)
                for (int jj = 1; jj + 1 < ny; ++jj) {
                    const cplx fxx = (at(i + 1, jj) - 2.0 * at(i, jj) + at(i - 1, jj)) / hx2;
                    const cplx fyy = (at(i, jj + 1) - 2.0 * at(i, jj) + at(i, jj - 1)) / hy2;
                    out.values[static_cast<std::size_t>(i) * ny + jj] = -(fxx + fyy);
                }
            break;
        }
        case PairId::u1_c: {
            if (g.dim() != 3 || g.axes[0].role != AxisRole::theta)
                throw InputError("apply_generator: u1_c needs a (theta, x, y) lattice");
            const Axis& axt = g.axes[0];
            const Axis& axx = g.axes[1];
            const Axis& axy = g.axes[2];
            const int nt = axt.n, nx = axx.n, ny = axy.n;
            auto at = [&](int a, int i, int jj) {
                return f.values[(static_cast<std::size_t>(a) * nx + i) * ny + jj];
            };
            auto put = [&](int a, int i, int jj, cplx v) {
                out.values[(static_cast<std::size_t>(a) * nx + i) * ny + jj] = v;
            };
            if (j == 1) {
                require_spacing(axt, step, "apply_generator");
                const double ht = axt.spacing();
                const bool per = axt.kind == AxisKind::periodic;
                for (int a = 0; a < nt; ++a) {
                    if (!per && (a == 0 || a == nt - 1)) continue;
                    const int ap = per ? (a + 1) % nt : a + 1;
                    const int am = per ? (a + nt - 1) % nt : a - 1;
                    for (int i = 0; i < nx; ++i)
                        for (int jj = 0; jj < ny; ++jj)
                            put(a, i, jj, mi * (at(ap, i, jj) - at(am, i, jj)) / (2.0 * ht));
                }
            } else {
                require_spacing(axx, step, "apply_generator");
                require_spacing(axy, step, "apply_generator");
                const double hx2 = axx.spacing() * axx.spacing(),
                             hy2 = axy.spacing() * axy.spacing();
                for (int a = 0; a < nt; ++a)
                    for (int i = 1; i + 1 < nx; ++i)
                        for (int jj = 1; jj + 1 < ny; ++jj) {
                            const cplx fxx =
                                (at(a, i + 1, jj) - 2.0 * at(a, i, jj) + at(a, i - 1, jj)) / hx2;
                            const cplx fyy =
                                (at(a, i, jj + 1) - 2.0 * at(a, i, jj) + at(a, i, jj - 1)) / hy2;
                            put(a, i, jj, -(fxx + fyy));
                        }
            }
            break;
        }
        case PairId::heis1: {
            if (g.dim() != 3 || g.axes[2].role != AxisRole::t)
                throw InputError("apply_generator: heis1 needs an (x, y, t) lattice");
            const Axis& axx = g.axes[0];
            const Axis& axy = g.axes[1];
            const Axis& axt = g.axes[2];
            const int nx = axx.n, ny = axy.n, nt = axt.n;
            const auto xs = axx.nodes(), ys = axy.nodes();
            auto at = [&](int i, int jj, int l) {
                return f.values[(static_cast<std::size_t>(i) * ny + jj) * nt + l];
            };
            auto put = [&](int i, int jj, int l, cplx v) {
                out.values[(static_cast<std::size_t>(i) * ny + jj) * nt + l] = v;
            };
            if (j == 1) {
                require_spacing(axx, step, "apply_generator");
                require_spacing(axy, step, "apply_generator");
                require_spacing(axt, step, "apply_generator");
                const double hx = axx.spacing(), hy = axy.spacing(), ht = axt.spacing();
                // L = -(X^2 + Y^2), X = dx + (y/2) dt, Y = dy - (x/2) dt:
                // -(fxx + fyy + y fxt - x fyt + (x^2+y^2)/4 ftt)
                for (int i = 1; i + 1 < nx; ++i)
                    for (int jj = 1; jj + 1 < ny; ++jj)
                        for (int l = 1; l + 1 < nt; ++l) {
                            const double xv = xs[i], yv = ys[jj];
                            const cplx fxx =
                                (at(i + 1, jj, l) - 2.0 * at(i, jj, l) + at(i - 1, jj, l)) / (hx * hx);
                            const cplx fyy =
                                (at(i, jj + 1, l) - 2.0 * at(i, jj, l) + at(i, jj - 1, l)) / (hy * hy);
                            const cplx ftt =
                                (at(i, jj, l + 1) - 2.0 * at(i, jj, l) + at(i, jj, l - 1)) / (ht * ht);
                            const cplx fxt = (at(i + 1, jj, l + 1) - at(i + 1, jj, l - 1) -
                                              at(i - 1, jj, l + 1) + at(i - 1, jj, l - 1)) /
                                             (4.0 * hx * ht);
                            const cplx fyt = (at(i, jj + 1, l + 1) - at(i, jj + 1, l - 1) -
                                              at(i, jj - 1, l + 1) + at(i, jj - 1, l - 1)) /
                                             (4.0 * hy * ht);
                            put(i, jj, l,
                                -(fxx + fyy + yv * fxt - xv * fyt +
                                  0.25 * (xv * xv + yv * yv) * ftt));
                        }
            } else {
                require_spacing(axt, step, "apply_generator");
                const double ht = axt.spacing();
                for (int i = 0; i < nx; ++i)
                    for (int jj = 0; jj < ny; ++jj)
                        for (int l = 1; l + 1 < nt; ++l)
                            put(i, jj, l, mi * (at(i, jj, l + 1) - at(i, jj, l - 1)) / (2.0 * ht));
            }
            break;
        }
    }
    return out;
}

namespace {

bool symmetric_odd(const Axis& a) {
    return a.kind == AxisKind::uniform && a.n >= 3 && a.n % 2 == 1 &&
           std::fabs(a.min + a.max) <= 1e-12 * std::max(1.0, std::fabs(a.max));
}

void require_shared_grid(const SampledFunction& f, const SampledFunction& g) {
    if (f.pair != g.pair) throw InputError("group_convolve: pair mismatch");
    if (f.grid.axes.size() != g.grid.axes.size())
        throw InputError("group_convolve: operands sampled on different grids");
    for (std::size_t i = 0; i < f.grid.axes.size(); ++i) {
        const Axis& a = f.grid.axes[i];
        const Axis& b = g.grid.axes[i];
        if (a.role != b.role || a.kind != b.kind || a.n != b.n || a.min != b.min || a.max != b.max)
            throw InputError("group_convolve: operands sampled on different grids");
    }
}

// max |value| over lattice points touching a non-theta boundary
double boundary_level(const SampledFunction& f) {
    double m = 0.0;
    f.grid.for_each([&](const std::vector<int>& idx, std::size_t flat) {
        for (std::size_t a = 0; a < f.grid.axes.size(); ++a) {
            if (f.grid.axes[a].role == AxisRole::theta) continue;
            if (idx[a] == 0 || idx[a] == f.grid.axes[a].n - 1) {
                const double v = std::abs(f.values[flat]);
                if (v > m) m = v;
                return;
            }
        }
    });
    return m;
}

std::string decay_warning(const SampledFunction& f, const SampledFunction& g) {
    const double tol = 1e-12;
    const double bf = boundary_level(f), bg = boundary_level(g);
    const double sf = sup_norm(f), sg = sup_norm(g);
    if (bf > tol * std::max(1.0, sf) || bg > tol * std::max(1.0, sg))
        return "truncation: operand does not decay below 1e-12 at the grid boundary";
    return {};
}

// planar lattice convolution acc += scale * (fs * gs) on a symmetric odd
// (nx x ny) lattice; values outside the box count as zero
void planar_convolve_add(const cplx* fs, const cplx* gs, cplx* acc, int nx, int ny, double scale) {
    const int cx = (nx - 1) / 2, cy = (ny - 1) / 2;
    for (int i = 0; i < nx; ++i) {
        for (int jj = 0; jj < ny; ++jj) {
            cplx sum{0.0, 0.0};
            for (int p = std::max(0, i - (nx - 1) + cx), pe = std::min(nx - 1, i + cx); p <= pe; ++p) {
                const int di = i - p + cx;
                const cplx* frow = fs + static_cast<std::size_t>(di) * ny;
                const cplx* grow = gs + static_cast<std::size_t>(p) * ny;
                const int qlo = std::max(0, jj - (ny - 1) + cy), qe = std::min(ny - 1, jj + cy);
                for (int q = qlo; q <= qe; ++q) sum += frow[jj - q + cy] * grow[q];
            }
            acc[static_cast<std::size_t>(i) * ny + jj] += scale * sum;
        }
    }
}

SampledFunction convolve_flat(const SampledFunction& f, const SampledFunction& g) {
    const Axis& ax = f.grid.axes.at(0);
    if (!symmetric_odd(ax)) throw InputError("group_convolve: grid must be symmetric with odd n");
    const int n = ax.n, c = (n - 1) / 2;
    const double h = ax.spacing();
    SampledFunction out = f;
    out.warning = decay_warning(f, g);
    for (int i = 0; i < n; ++i) {
        cplx sum{0.0, 0.0};
        for (int jj = 0; jj < n; ++jj) {
            const int d = i - jj + c;
            if (d >= 0 && d < n) sum += f.values[d] * g.values[jj];
        }
        out.values[i] = h * sum;
    }
    return out;
}

// bilinear interpolation on a 2-D slice, zero outside the box
cplx bilinear(const cplx* v, int nx, int ny, double xmin, double ymin, double hx, double hy,
              double x, double y) {
    const double u = (x - xmin) / hx, w = (y - ymin) / hy;
    if (u < 0.0 || w < 0.0 || u > nx - 1 || w > ny - 1) return {0.0, 0.0};
    int i0 = static_cast<int>(u), j0 = static_cast<int>(w);
    if (i0 == nx - 1) --i0;
    if (j0 == ny - 1) --j0;
    const double fu = u - i0, fw = w - j0;
    auto at = [&](int i, int jj) { return v[static_cast<std::size_t>(i) * ny + jj]; };
    return (1 - fu) * (1 - fw) * at(i0, j0) + fu * (1 - fw) * at(i0 + 1, j0) +
           (1 - fu) * fw * at(i0, j0 + 1) + fu * fw * at(i0 + 1, j0 + 1);
}

SampledFunction convolve_e2(const SampledFunction& f, const SampledFunction& g, int k_nodes) {
    const Axis& axx = f.grid.axes.at(0);
    const Axis& axy = f.grid.axes.at(1);
    if (!symmetric_odd(axx) || !symmetric_odd(axy))
        throw InputError("group_convolve: grid must be symmetric with odd n");
    const int nx = axx.n, ny = axy.n;
    const double hx = axx.spacing(), hy = axy.spacing();
    const double cell = hx * hy;
    SampledFunction out = f;
    out.warning = decay_warning(f, g);

    const bool radial = f.symmetry == Symmetry::bi_k_invariant && g.symmetry == Symmetry::bi_k_invariant;
    if (radial) {
        // the K-average drops for radial operands; plain planar convolution
        std::fill(out.values.begin(), out.values.end(), cplx{0.0, 0.0});
        planar_convolve_add(f.values.data(), g.values.data(), out.values.data(), nx, ny, cell);
        return out;
    }

    // general bi-K-average: (f*g)(v) = (1/2pi) int_K int f(v - R_a w) g(w) dw da
    const auto xs = axx.nodes(), ys = axy.nodes();
    for (int i = 0; i < nx; ++i) {
        for (int jj = 0; jj < ny; ++jj) {
            cplx acc{0.0, 0.0};
            for (int a = 0; a < k_nodes; ++a) {
                const double ang = kTwoPi * a / k_nodes;
                const double ca = std::cos(ang), sa = std::sin(ang);
                cplx inner{0.0, 0.0};
                for (int p = 0; p < nx; ++p) {
                    for (int q = 0; q < ny; ++q) {
                        const cplx gv = g.values[static_cast<std::size_t>(p) * ny + q];
                        if (gv == cplx{0.0, 0.0}) continue;
                        const double wx = ca * xs[p] - sa * ys[q];
                        const double wy = sa * xs[p] + ca * ys[q];
                        inner += bilinear(f.values.data(), nx, ny, axx.min, axy.min, hx, hy,
                                          xs[i] - wx, ys[jj] - wy) *
                                 gv;
                    }
                }
                acc += inner;
            }
            out.values[static_cast<std::size_t>(i) * ny + jj] = acc * (cell / k_nodes);
        }
    }
    return out;
}

SampledFunction convolve_u1c(const SampledFunction& f, const SampledFunction& g) {
    if (f.grid.dim() != 3 || f.grid.axes[0].role != AxisRole::theta)
        throw InputError("group_convolve: u1_c needs a (theta, x, y) lattice");
    const Axis& axt = f.grid.axes[0];
    const Axis& axx = f.grid.axes[1];
    const Axis& axy = f.grid.axes[2];
    if (!symmetric_odd(axx) || !symmetric_odd(axy))
        throw InputError("group_convolve: grid must be symmetric with odd n");
    const int ntheta = axt.n, nx = axx.n, ny = axy.n;
    const std::size_t slice = static_cast<std::size_t>(nx) * ny;
    const double cell = axx.spacing() * axy.spacing();

    SampledFunction out = f;
    out.warning = decay_warning(f, g);
    std::fill(out.values.begin(), out.values.end(), cplx{0.0, 0.0});
    // K-central operands: rotation in the w-integral cancels, leaving a
    // theta-circle average of planar slice convolutions
    for (int a = 0; a < ntheta; ++a) {
        cplx* acc = out.values.data() + static_cast<std::size_t>(a) * slice;
        for (int b = 0; b < ntheta; ++b) {
            const int fa = (a - b + ntheta) % ntheta;
            planar_convolve_add(f.values.data() + static_cast<std::size_t>(fa) * slice,
                                g.values.data() + static_cast<std::size_t>(b) * slice, acc, nx, ny,
                                cell / ntheta);
        }
    }
    if (f.symmetry == Symmetry::k_type && g.symmetry == Symmetry::k_type && f.ktype == g.ktype) {
        out.symmetry = Symmetry::k_type;
        out.ktype = f.ktype;
    } else {
        out.symmetry = Symmetry::k_central;
        out.ktype.clear();
    }
    return out;
}

SampledFunction convolve_heis1(const SampledFunction& f, const SampledFunction& g) {
    if (f.grid.dim() != 3 || f.grid.axes[2].role != AxisRole::t)
        throw InputError("group_convolve: heis1 needs an (x, y, t) lattice");
    const Axis& axx = f.grid.axes[0];
    const Axis& axy = f.grid.axes[1];
    const Axis& axt = f.grid.axes[2];
    if (!symmetric_odd(axx) || !symmetric_odd(axy) || !symmetric_odd(axt))
        throw InputError("group_convolve: grid must be symmetric with odd n");
    if (axx.spacing() != axy.spacing())
        throw InputError("group_convolve: heis1 needs equal x and y spacings");
    const double hz = axx.spacing(), ht = axt.spacing();
    const double ratio = hz * hz / (2.0 * ht);
    const long rint = std::lround(ratio);
    if (std::fabs(ratio - static_cast<double>(rint)) > 1e-9 || rint < 1)
        throw InputError(
            "group_convolve: heis1 grid needs h_z^2 / 2 to be an integer multiple of h_t "
            "so the group twist stays on the t-lattice");

    const int nz = axx.n, nt = axt.n;
    const int cz = (nz - 1) / 2, ct = (nt - 1) / 2;
    const double vol = hz * hz * ht;
    SampledFunction out = f;
    out.warning = decay_warning(f, g);
    std::fill(out.values.begin(), out.values.end(), cplx{0.0, 0.0});

    auto fidx = [&](int i, int jj, int l) {
        return (static_cast<std::size_t>(i) * nz + jj) * nt + l;
    };
    // f(z - w, t - s - Im(z conj(w))/2) g(w, s)
    for (int zi = 0; zi < nz; ++zi) {
        for (int zj = 0; zj < nz; ++zj) {
            cplx* orow = out.values.data() + fidx(zi, zj, 0);
            for (int wi = 0; wi < nz; ++wi) {
                const int di = zi - wi + cz;
                if (di < 0 || di >= nz) continue;
                for (int wj = 0; wj < nz; ++wj) {
                    const int dj = zj - wj + cz;
                    if (dj < 0 || dj >= nz) continue;
                    // Im(z conj(w)) / 2 in units of ht
                    const long twist =
                        rint * (static_cast<long>(zj - cz) * (wi - cz) -
                                static_cast<long>(zi - cz) * (wj - cz));
                    const cplx* frow = f.values.data() + fidx(di, dj, 0);
                    const cplx* grow = g.values.data() + fidx(wi, wj, 0);
                    for (int l = 0; l < nt; ++l) {
                        cplx sum{0.0, 0.0};
                        // target index l - s - twist + ct in range [0, nt)
                        const long base = l - twist + ct;
                        const int slo = static_cast<int>(std::max<long>(0, base - (nt - 1)));
                        const int shi = static_cast<int>(std::min<long>(nt - 1, base));
                        for (int s = slo; s <= shi; ++s) sum += frow[base - s] * grow[s];
                        orow[l] += vol * sum;
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace

SampledFunction group_convolve(PairId id, const SampledFunction& f, const SampledFunction& g,
                               int k_nodes) {
    require_shared_grid(f, g);
    switch (id) {
        case PairId::flat_r1: return convolve_flat(f, g);
        case PairId::e2: return convolve_e2(f, g, k_nodes);
        case PairId::u1_c: return convolve_u1c(f, g);
        case PairId::heis1: return convolve_heis1(f, g);
    }
    throw InputError("group_convolve: bad pair id");
}

}  // namespace sphan::pairs
