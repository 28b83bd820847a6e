#include "sphan/schwartz.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "sphan/errors.hpp"
#include "sphan/ktype.hpp"
#include "sphan/specfun.hpp"

namespace sphan::schwartz {

namespace {

using pairs::Symmetry;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using CoordFn = std::function<double(const std::vector<double>&)>;

struct FrameTerm {
    int axis;
    CoordFn coef;  // null means constant 1
};
using FrameOp = std::vector<FrameTerm>;

struct Lattice {
    const Grid* grid;
    std::vector<std::vector<double>> nodes;
    std::vector<std::size_t> strides;
    std::vector<double> spacings;
    std::vector<bool> periodic;
};

Lattice make_lattice(const Grid& g) {
    Lattice lat;
    lat.grid = &g;
    lat.nodes = g.node_table();
    lat.strides = g.strides();
    for (const auto& a : g.axes) {
        if (a.kind == AxisKind::gauss)
            throw InputError("seminorm: needs a lattice chart, not a quadrature grid");
        lat.spacings.push_back(a.spacing());
        lat.periodic.push_back(a.kind == AxisKind::periodic);
    }
    return lat;
}

// one first-order frame application by central differences; points whose
// stencil leaves the box get 0 and are excluded by the validity ring
std::vector<cplx> apply_frame_op(const Lattice& lat, const std::vector<cplx>& v,
                                 const FrameOp& op) {
    const Grid& g = *lat.grid;
    std::vector<cplx> out(v.size(), cplx{0.0, 0.0});
    const int dim = g.dim();
    std::vector<double> coords(dim);
    g.for_each([&](const std::vector<int>& idx, std::size_t flat) {
        cplx acc{0.0, 0.0};
        for (int a = 0; a < dim; ++a) coords[a] = lat.nodes[a][idx[a]];
        for (const auto& term : op) {
            const int a = term.axis;
            const int n = g.axes[a].n;
            std::size_t up, down;
            if (lat.periodic[a]) {
                const long s = static_cast<long>(lat.strides[a]);
                const long base = static_cast<long>(flat);
                up = static_cast<std::size_t>(idx[a] + 1 == n ? base - (n - 1) * s : base + s);
                down = static_cast<std::size_t>(idx[a] == 0 ? base + (n - 1) * s : base - s);
            } else {
                if (idx[a] == 0 || idx[a] + 1 == n) return;
                up = flat + lat.strides[a];
                down = flat - lat.strides[a];
            }
            const double c = term.coef ? term.coef(coords) : 1.0;
            acc += c * (v[up] - v[down]) / (2.0 * lat.spacings[a]);
        }
        out[flat] = acc;
    });
    return out;
}

// sup over points at least `ring` interior steps from non-periodic edges
double weighted_sup(const Lattice& lat, const std::vector<cplx>& v,
                    const std::vector<double>& weight_pow, int ring) {
    const Grid& g = *lat.grid;
    double best = 0.0;
    g.for_each([&](const std::vector<int>& idx, std::size_t flat) {
        for (int a = 0; a < g.dim(); ++a) {
            if (lat.periodic[a]) continue;
            if (idx[a] < ring || idx[a] >= g.axes[a].n - ring) return;
        }
        const double s = weight_pow[flat] * std::abs(v[flat]);
        if (s > best) best = s;
    });
    return best;
}

void sup_dfs(const Lattice& lat, const std::vector<cplx>& v, const std::vector<FrameOp>& frame,
             int max_op, int depth, int n_order, const std::vector<double>& weight_pow,
             double& best) {
    best = std::max(best, weighted_sup(lat, v, weight_pow, depth));
    if (depth == n_order) return;
    for (int op = 0; op <= max_op; ++op)
        sup_dfs(lat, apply_frame_op(lat, v, frame[op]), frame, op, depth + 1, n_order, weight_pow,
                best);
}

double seminorm_sup(const Grid& g, const std::vector<cplx>& values,
                    const std::vector<FrameOp>& frame, int n_order, const CoordFn& weight) {
    const Lattice lat = make_lattice(g);
    std::vector<double> wpow(values.size(), 1.0);
    if (n_order > 0) {
        std::vector<double> coords(g.dim());
        g.for_each([&](const std::vector<int>& idx, std::size_t flat) {
            for (int a = 0; a < g.dim(); ++a) coords[a] = lat.nodes[a][idx[a]];
            wpow[flat] = std::pow(weight(coords), n_order);
        });
    }
    double best = 0.0;
    sup_dfs(lat, values, frame, static_cast<int>(frame.size()) - 1, 0, n_order, wpow, best);
    return best;
}

// every-other-point subsample for the resolution estimate
void decimate(const Grid& g, const std::vector<cplx>& v, Grid& g2, std::vector<cplx>& v2) {
    g2.axes.clear();
    std::vector<int> keep_stride(g.dim(), 1);
    for (int a = 0; a < g.dim(); ++a) {
        Axis ax = g.axes[a];
        if (ax.n >= 5) {
            const int n2 = ax.kind == AxisKind::periodic ? (ax.n % 2 == 0 ? ax.n / 2 : ax.n)
                                                         : (ax.n + 1) / 2;
            if (n2 < ax.n) {
                keep_stride[a] = 2;
                const double h = ax.spacing();
                ax.n = n2;
                if (ax.kind == AxisKind::uniform) ax.max = ax.min + 2.0 * h * (n2 - 1);
            }
        }
        g2.axes.push_back(ax);
    }
    v2.assign(g2.size(), cplx{0.0, 0.0});
    const auto s2 = g2.strides();
    const auto s1 = g.strides();
    g2.for_each([&](const std::vector<int>& idx, std::size_t flat) {
        std::size_t src = 0;
        for (int a = 0; a < g.dim(); ++a)
            src += static_cast<std::size_t>(idx[a]) * keep_stride[a] * s1[a];
        v2[flat] = v[src];
    });
    (void)s2;
}

double seminorm_with_resolution_check(const Grid& g, const std::vector<cplx>& values,
                                      const std::vector<FrameOp>& frame, int n_order,
                                      const CoordFn& weight) {
    const double s = seminorm_sup(g, values, frame, n_order, weight);
    if (n_order >= 1 && s > 0.0) {
        Grid g2;
        std::vector<cplx> v2;
        decimate(g, values, g2, v2);
        if (g2.size() < g.size()) {
            const double s2 = seminorm_sup(g2, v2, frame, n_order, weight);
            if (std::fabs(s - s2) > 0.1 * s)
                throw ResolutionError(
                    "seminorm: halving the resolution moves the value by more than 10%; the grid "
                    "is too coarse for order " +
                    std::to_string(n_order));
        }
    }
    return s;
}

std::vector<FrameOp> euclid_frame(int dim) {
    std::vector<FrameOp> frame;
    for (int a = 0; a < dim; ++a) frame.push_back({FrameTerm{a, nullptr}});
    return frame;
}

}  // namespace

double bump(const BumpSpec& spec, double t) {
    if (!(spec.radius > 0.0 && spec.radius < 0.5))
        throw InputError("bump: radius must lie in (0, 1/2)");
    const double u = t / spec.radius;
    const double q = 1.0 - u * u;
    if (q <= 0.0) return 0.0;
    return std::exp(1.0 - 1.0 / q);
}

double LatticeFunction::at(int m) const {
    if (m < m_min || m > m_max()) return 0.0;
    return values[static_cast<std::size_t>(m - m_min)];
}

BumpInterpolant::BumpInterpolant(LatticeFunction a, BumpSpec spec)
    : a_(std::move(a)), spec_(spec) {
    if (!(spec_.radius > 0.0 && spec_.radius < 0.5))
        throw InputError("bump_interpolate: radius must lie in (0, 1/2)");
    if (a_.values.empty()) throw InputError("bump_interpolate: empty lattice data");
}

double BumpInterpolant::operator()(double t) const {
    // translates have disjoint supports: at most the nearest lattice point
    // contributes
    const double nearest = std::round(t);
    const double d = t - nearest;
    if (std::fabs(d) >= spec_.radius) return 0.0;
    const double a = a_.at(static_cast<int>(nearest));
    if (a == 0.0) return 0.0;
    return a * bump(spec_, d);
}

BumpInterpolant bump_interpolate(const LatticeFunction& a, const BumpSpec& spec) {
    return BumpInterpolant(a, spec);
}

EuclidGrid sample_euclid(const std::vector<Axis>& axes,
                         const std::function<cplx(const std::vector<double>&)>& fn) {
    EuclidGrid out;
    out.grid.axes = axes;
    const auto nodes = out.grid.node_table();
    out.values.resize(out.grid.size());
    std::vector<double> coords(axes.size());
    out.grid.for_each([&](const std::vector<int>& idx, std::size_t flat) {
        for (std::size_t a = 0; a < axes.size(); ++a) coords[a] = nodes[a][idx[a]];
        out.values[flat] = fn(coords);
    });
    return out;
}

double euclid_seminorm(const EuclidGrid& u, int N) {
    if (N < 0 || N > 4) throw InputError("euclid_seminorm: N must lie in [0, 4]");
    for (const auto& a : u.grid.axes)
        if (a.n < 2 * N + 1)
            throw ResolutionError("euclid_seminorm: grid does not support order-" +
                                  std::to_string(N) + " differences");
    auto weight = [](const std::vector<double>& x) {
        double s = 0.0;
        for (double c : x) s += c * c;
        return 1.0 + std::sqrt(s);
    };
    return seminorm_with_resolution_check(u.grid, u.values, euclid_frame(u.grid.dim()), N, weight);
}

double group_seminorm(const SampledFunction& f, int N, double step) {
    if (N < 0 || N > 4) throw InputError("group_seminorm: N must lie in [0, 4]");
    const Grid& g = f.grid;
    for (const auto& a : g.axes) {
        if (a.kind == AxisKind::gauss)
            throw InputError("group_seminorm: needs a lattice chart");
        if (N >= 1 && a.spacing() > step * (1.0 + 1e-9))
            throw ResolutionError("group_seminorm: grid spacing exceeds the requested step");
        if (a.n < 2 * N + 1)
            throw ResolutionError("group_seminorm: grid does not support order-" +
                                  std::to_string(N) + " differences");
    }

    const int ix = g.axis_index(AxisRole::x);
    const int iy = g.axis_index(AxisRole::y);
    const int it = g.axis_index(AxisRole::t);
    const int ith = g.axis_index(AxisRole::theta);

    std::vector<FrameOp> frame;
    CoordFn weight;
    switch (f.pair) {
        case PairId::flat_r1: {
            if (ix < 0) throw InputError("group_seminorm: flat chart needs an x axis");
            frame = {{FrameTerm{ix, nullptr}}};
            weight = [ix](const std::vector<double>& c) { return 1.0 + std::fabs(c[ix]); };
            break;
        }
        case PairId::e2: {
            if (ix < 0 || iy < 0) throw InputError("group_seminorm: e2 chart needs x, y axes");
            frame = {{FrameTerm{ix, nullptr}}, {FrameTerm{iy, nullptr}}};
            weight = [ix, iy](const std::vector<double>& c) {
                return 1.0 + std::hypot(c[ix], c[iy]);
            };
            break;
        }
        case PairId::u1_c: {
            if (ix < 0 || iy < 0 || ith < 0)
                throw InputError("group_seminorm: u1_c chart needs theta, x, y axes");
            // rotating frame: X_1 = cos(th) dx + sin(th) dy, X_2 = -sin(th) dx + cos(th) dy
            frame = {
                {FrameTerm{ith, nullptr}},
                {FrameTerm{ix, [ith](const std::vector<double>& c) { return std::cos(c[ith]); }},
                 FrameTerm{iy, [ith](const std::vector<double>& c) { return std::sin(c[ith]); }}},
                {FrameTerm{ix, [ith](const std::vector<double>& c) { return -std::sin(c[ith]); }},
                 FrameTerm{iy, [ith](const std::vector<double>& c) { return std::cos(c[ith]); }}}};
            weight = [ix, iy](const std::vector<double>& c) {
                return 1.0 + std::hypot(c[ix], c[iy]);
            };
            break;
        }
        case PairId::heis1: {
            if (ix < 0 || iy < 0 || it < 0)
                throw InputError("group_seminorm: heis1 chart needs x, y, t axes");
            frame = {
                {FrameTerm{ix, nullptr},
                 FrameTerm{it, [iy](const std::vector<double>& c) { return 0.5 * c[iy]; }}},
                {FrameTerm{iy, nullptr},
                 FrameTerm{it, [ix](const std::vector<double>& c) { return -0.5 * c[ix]; }}},
                {FrameTerm{it, nullptr}}};
            weight = [ix, iy, it](const std::vector<double>& c) {
                const double z4 = std::pow(c[ix] * c[ix] + c[iy] * c[iy], 2);
                return 1.0 + std::pow(z4 + c[it] * c[it], 0.25);
            };
            break;
        }
    }
    return seminorm_with_resolution_check(g, f.values, frame, N, weight);
}

namespace {

// least-squares slope of log(s) against log(1 + |xi'|)
double fit_slope(const std::vector<double>& xi_abs, const std::vector<double>& s) {
    const std::size_t n = xi_abs.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += std::log1p(xi_abs[i]);
        my += std::log(s[i]);
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = std::log1p(xi_abs[i]) - mx;
        sxy += dx * (std::log(s[i]) - my);
        sxx += dx * dx;
    }
    if (sxx == 0.0) throw InputError("decay fit: degenerate abscissae");
    return sxy / sxx;
}

}  // namespace

TypeSlices compute_type_slices(const SampledFunction& f, int max_types, const DecayOptions& opts) {
    if (f.pair != PairId::u1_c)
        throw InputError("type slices: implemented for the strong pair u1_c");

    const auto dec = ktype::decompose(f, max_types);

    // radial profile of each type from its theta = 0 slice
    const Grid& g = f.grid;
    std::vector<double> radius;
    std::vector<double> measure;
    if (g.dim() == 2 && g.axes[1].role == AxisRole::r) {
        const auto rs = g.axes[1].nodes();
        const auto wr = g.axes[1].quad_weights();
        for (int i = 0; i < g.axes[1].n; ++i) {
            radius.push_back(rs[i]);
            measure.push_back(kTwoPi * rs[i] * wr[i]);
        }
    } else if (g.dim() == 3 && g.axes[1].role == AxisRole::x && g.axes[2].role == AxisRole::y) {
        const auto xs = g.axes[1].nodes();
        const auto ys = g.axes[2].nodes();
        const double cell = g.axes[1].spacing() * g.axes[2].spacing();
        for (double x : xs)
            for (double y : ys) {
                radius.push_back(std::hypot(x, y));
                measure.push_back(cell);
            }
    } else {
        throw InputError("type slices: needs a (theta, r) or (theta, x, y) chart");
    }

    const int half = opts.xi2_half_n;
    const double h2 = opts.xi2_max / (half - 1);
    std::vector<double> lambdas(half);
    for (int j = 0; j < half; ++j) lambdas[j] = std::sqrt(h2 * j);

    TypeSlices slices;
    slices.m = dec.types;
    slices.tail_norm = dec.tail_norm;
    slices.source_l2 = pairs::l2_norm(f);
    slices.xi2.resize(half);
    for (int j = 0; j < half; ++j) slices.xi2[j] = h2 * j;

    for (std::size_t c = 0; c < dec.components.size(); ++c) {
        const auto& comp = dec.components[c];
        // theta = 0 slice of e^{i m theta} F_m(|z|) is the radial profile
        std::vector<cplx> row(half, cplx{0.0, 0.0});
        for (int j = 0; j < half; ++j) {
            cplx acc{0.0, 0.0};
            for (std::size_t i = 0; i < radius.size(); ++i)
                acc += comp.values[i] * specfun::bessel_j(0, lambdas[j] * radius[i]) * measure[i];
            row[j] = acc;
        }
        slices.values.push_back(std::move(row));
    }
    return slices;
}

SeminormReport verify_decay(const SampledFunction& f, int N, int M, int max_types,
                            const DecayOptions& opts) {
    if (N < 0 || N > 3 || M < 0 || M > 4)
        throw InputError("verify_decay: need N <= 3 and M <= 4");

    SeminormReport rep;
    rep.n_order = N;
    rep.decay_order = M;

    const auto slices = compute_type_slices(f, max_types, opts);
    rep.tail_norm = slices.tail_norm;
    const double tail_rel = slices.tail_norm / std::max(slices.source_l2, 1e-300);
    if (tail_rel > 2e-2) {
        // the type window misses a substantial part of the function; no
        // verdict can be read off the analyzed slice
        rep.status = "inconclusive";
        rep.pass = false;
        return rep;
    }

    // the even reflection through xi'' = lambda^2 has one-sided derivatives
    // at the fold, so the seminorm is taken over the half-line xi'' >= 0
    const int half = static_cast<int>(slices.xi2.size());
    Axis xi2_axis{AxisRole::x, AxisKind::uniform, 0.0, slices.xi2.back(), half};

    double max_s = 0.0;
    std::vector<double> svals;
    for (std::size_t c = 0; c < slices.values.size(); ++c) {
        EuclidGrid slice;
        slice.grid.axes = {xi2_axis};
        slice.values = slices.values[c];
        const double s = euclid_seminorm(slice, N);
        rep.per_type.emplace_back(slices.m[c], s);
        svals.push_back(s);
        max_s = std::max(max_s, s);
    }
    rep.value = max_s;

    for (int mp = 0; mp <= M; ++mp) {
        double cm = 0.0;
        for (std::size_t c = 0; c < svals.size(); ++c)
            cm = std::max(cm, svals[c] * std::pow(1.0 + std::abs(slices.m[c]), mp));
        rep.constants.emplace_back(cm, mp);
    }

    // asymptotic fit over types clear of the origin and of quadrature noise
    std::vector<double> xs, ys;
    for (std::size_t c = 0; c < svals.size(); ++c) {
        if (std::abs(slices.m[c]) < opts.fit_min_abs_type) continue;
        if (svals[c] <= opts.floor_rel * max_s) continue;
        xs.push_back(std::abs(slices.m[c]));
        ys.push_back(svals[c]);
    }
    if (xs.size() < 2) {
        // fall back to every informative type before declaring vacuity
        xs.clear();
        ys.clear();
        for (std::size_t c = 0; c < svals.size(); ++c) {
            if (std::abs(slices.m[c]) < 1 || svals[c] <= opts.floor_rel * max_s) continue;
            xs.push_back(std::abs(slices.m[c]));
            ys.push_back(svals[c]);
        }
    }
    if (xs.size() < 2) {
        rep.fitted_exponent = 0.0;
        if (tail_rel > 1e-8) {
            rep.status = "inconclusive";
            rep.pass = false;
        } else {
            rep.status = "vacuous";
            rep.pass = true;
        }
        return rep;
    }
    rep.fitted_exponent = fit_slope(xs, ys);
    if (rep.fitted_exponent > -static_cast<double>(M) + 0.2) {
        // a failure on the analyzed window is a failure outright: the
        // unanalyzed tail cannot improve the decay
        rep.status = "fail";
        rep.pass = false;
    } else if (tail_rel > 1e-8) {
        // the window passes but carries an unanalyzed tail above the
        // Schwartz-input threshold
        rep.status = "inconclusive";
        rep.pass = false;
    } else {
        rep.status = "pass";
        rep.pass = true;
    }
    return rep;
}

std::vector<int> diagonal_select(const DecayTable& table) {
    const std::size_t n_types = table.xi_prime.size();
    if (n_types == 0 || table.seminorms.size() != n_types)
        throw InputError("diagonal_select: empty or misaligned tables");
    const int n_max = static_cast<int>(table.seminorms.front().size()) - 1;
    if (n_max < 0) throw InputError("diagonal_select: need seminorms for N = 0..N_max");
    for (const auto& row : table.seminorms)
        if (static_cast<int>(row.size()) != n_max + 1)
            throw InputError("diagonal_select: ragged table");

    // seminorms must be nondecreasing in N on each type
    for (std::size_t t = 0; t < n_types; ++t)
        for (int N = 0; N < n_max; ++N)
            if (table.seminorms[t][N + 1] < table.seminorms[t][N] * (1.0 - 1e-12))
                throw ResolutionError(
                    "diagonal_select: per-type seminorms are not monotone in N; the table is "
                    "inconsistent");

    if (n_types == 1) return {n_max};

    // r_N: least radius past which ||g_tau||_(N) <= |xi'|^{-N}; any larger
    // threshold also works, so the sequence is clamped nondecreasing
    std::vector<double> r(n_max + 1, 0.0);
    for (int N = 0; N <= n_max; ++N) {
        for (std::size_t t = 0; t < n_types; ++t) {
            const double xi = table.xi_prime[t];
            if (table.seminorms[t][N] > std::pow(std::max(xi, 1e-300), -N))
                r[N] = std::max(r[N], xi);
        }
        if (N > 0) r[N] = std::max(r[N], r[N - 1]);
    }

    // N(tau) = largest N with r_N < |xi'|, and 0 when |xi'| <= r_0
    std::vector<int> selection(n_types, 0);
    for (std::size_t t = 0; t < n_types; ++t) {
        const double xi = table.xi_prime[t];
        int pick = 0;
        for (int N = 0; N <= n_max; ++N)
            if (xi > r[N]) pick = N;
        selection[t] = pick;
    }
    return selection;
}

EuclidGrid schwartz_extend(const TypeSlices& gh, const BumpSpec& spec, const SeminormReport& decay,
                           double xi1_step, double xi1_pad) {
    if (gh.m.empty() || gh.values.size() != gh.m.size())
        throw InputError("schwartz_extend: empty or misaligned type slices");
    if (gh.xi2.size() < 2 || gh.xi2.front() != 0.0)
        throw InputError("schwartz_extend: xi'' nodes must start at 0");
    const double h2 = gh.xi2[1] - gh.xi2[0];
    for (std::size_t j = 1; j < gh.xi2.size(); ++j)
        if (std::fabs(gh.xi2[j] - gh.xi2[j - 1] - h2) > 1e-9 * h2)
            throw InputError("schwartz_extend: xi'' nodes must be uniform");
    for (const auto& row : gh.values)
        if (row.size() != gh.xi2.size()) throw InputError("schwartz_extend: ragged slice values");
    if (!(spec.radius > 0.0 && spec.radius < 0.5))
        throw InputError("schwartz_extend: radius must lie in (0, 1/2)");
    if (!(decay.pass && decay.n_order >= 2 && decay.decay_order >= 3))
        throw ResolutionError(
            "schwartz_extend: refused, the decay precondition (N, M) = (2, 3) is not met "
            "(status " +
            decay.status + ", fitted exponent " + std::to_string(decay.fitted_exponent) + ")");

    const int half = static_cast<int>(gh.xi2.size());
    const double xi2_max = gh.xi2.back();

    const double lo = gh.m.front() - xi1_pad, hi = gh.m.back() + xi1_pad;
    int n1 = static_cast<int>(std::lround((hi - lo) / xi1_step)) + 1;
    if (n1 % 2 == 0) ++n1;

    EuclidGrid out;
    out.grid.axes = {Axis{AxisRole::x, AxisKind::uniform, lo, hi, n1},
                     Axis{AxisRole::y, AxisKind::uniform, -xi2_max, xi2_max, 2 * half - 1}};
    out.values.assign(out.grid.size(), cplx{0.0, 0.0});

    const auto xi1_nodes = out.grid.axes[0].nodes();
    const std::size_t row = static_cast<std::size_t>(2 * half - 1);
    for (int i = 0; i < n1; ++i) {
        const double xi1 = xi1_nodes[i];
        const double nearest = std::round(xi1);
        if (std::fabs(xi1 - nearest) >= spec.radius) continue;
        const int m = static_cast<int>(nearest);
        const auto it = std::find(gh.m.begin(), gh.m.end(), m);
        if (it == gh.m.end()) continue;
        const auto& slice = gh.values[static_cast<std::size_t>(it - gh.m.begin())];
        const double eta = bump(spec, xi1 - nearest);
        for (int j = 0; j < half; ++j) {
            const cplx v = eta * slice[j];
            out.values[static_cast<std::size_t>(i) * row + (half - 1 + j)] = v;
            out.values[static_cast<std::size_t>(i) * row + (half - 1 - j)] = v;
        }
    }
    return out;
}

EuclidGrid upper_half_xi2(const EuclidGrid& u) {
    if (u.grid.dim() < 1) throw InputError("upper_half_xi2: empty grid");
    const int last = u.grid.dim() - 1;
    const Axis& ax = u.grid.axes[last];
    if (ax.kind != AxisKind::uniform || ax.n % 2 == 0 ||
        std::fabs(ax.min + ax.max) > 1e-12 * std::max(1.0, std::fabs(ax.max)))
        throw InputError("upper_half_xi2: last axis must be symmetric with odd n");
    const int half = (ax.n + 1) / 2;

    EuclidGrid out;
    out.grid.axes = u.grid.axes;
    out.grid.axes[last].min = 0.0;
    out.grid.axes[last].n = half;
    const std::size_t rows = u.grid.size() / static_cast<std::size_t>(ax.n);
    out.values.resize(rows * half);
    for (std::size_t rw = 0; rw < rows; ++rw)
        for (int j = 0; j < half; ++j)
            out.values[rw * half + j] = u.values[rw * ax.n + (half - 1 + j)];
    return out;
}

double Polynomial::eval(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != dim) throw InputError("polynomial: dimension mismatch");
    double acc = 0.0;
    for (const auto& t : terms) {
        double v = t.coef;
        for (int a = 0; a < dim; ++a)
            for (int p = 0; p < t.powers[a]; ++p) v *= x[a];
        acc += v;
    }
    return acc;
}

std::vector<double> PolyMap::eval(const std::vector<double>& x) const {
    std::vector<double> out(out_dim);
    for (int i = 0; i < out_dim; ++i) out[i] = components[i].eval(x);
    return out;
}

namespace {

Polynomial coordinate(int dim, int axis) {
    Polynomial p;
    p.dim = dim;
    Monomial m;
    m.powers.assign(dim, 0);
    m.powers[axis] = 1;
    p.terms.push_back(m);
    return p;
}

}  // namespace

PolyMap identity_map(int dim) {
    PolyMap m;
    m.in_dim = m.out_dim = dim;
    for (int a = 0; a < dim; ++a) m.components.push_back(coordinate(dim, a));
    return m;
}

PolyMap augment_with_square(int dim) {
    PolyMap m;
    m.in_dim = dim;
    m.out_dim = dim + 1;
    for (int a = 0; a < dim; ++a) m.components.push_back(coordinate(dim, a));
    Polynomial sq;
    sq.dim = dim;
    for (int a = 0; a < dim; ++a) {
        Monomial t;
        t.powers.assign(dim, 0);
        t.powers[a] = 2;
        sq.terms.push_back(t);
    }
    m.components.push_back(sq);
    return m;
}

PolyMap project_first(int dim) {
    PolyMap m;
    m.in_dim = dim + 1;
    m.out_dim = dim;
    for (int a = 0; a < dim; ++a) m.components.push_back(coordinate(dim + 1, a));
    return m;
}

Report change_of_generators(PairId id, const PolyMap& P, const PolyMap& Q,
                            const std::vector<SpectrumPoint>& sample, double tol,
                            double growth_bound) {
    if (sample.empty()) throw InputError("change_of_generators: empty sample");
    const int ell = pairs::descriptor(id).ell;
    if (P.in_dim != ell || Q.out_dim != ell || P.out_dim != Q.in_dim)
        throw InputError("change_of_generators: map dimensions do not match the pair");

    Report rep;
    rep.check = "generators";
    rep.pair = std::string(pairs::to_string(id));
    rep.tolerance = tol;

    auto norm = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double c : v) s += c * c;
        return std::sqrt(s);
    };

    double round_trip = 0.0;
    std::vector<double> n_in, n_out;
    for (const auto& sigma : sample) {
        const auto image = P.eval(sigma.xi);
        const auto back = Q.eval(image);
        for (int a = 0; a < ell; ++a)
            round_trip = std::max(round_trip, std::fabs(back[a] - sigma.xi[a]));
        const auto forward_again = P.eval(back);
        for (int a = 0; a < P.out_dim; ++a)
            round_trip = std::max(round_trip, std::fabs(forward_again[a] - image[a]));
        n_in.push_back(norm(sigma.xi));
        n_out.push_back(norm(image));
    }

    int fitted = -1;
    double c_lo = 0.0, c_up = 0.0;
    for (int m = 1; m <= 8 && fitted < 0; ++m) {
        double up = 0.0, lo = 0.0;
        for (std::size_t i = 0; i < n_in.size(); ++i) {
            up = std::max(up, (1.0 + n_out[i]) / std::pow(1.0 + n_in[i], m));
            lo = std::max(lo, std::pow(1.0 + n_in[i], 1.0 / m) / (1.0 + n_out[i]));
        }
        if (up <= growth_bound && lo <= growth_bound) {
            fitted = m;
            c_up = up;
            c_lo = lo;
        }
    }

    rep.observed = round_trip;
    rep.pass = round_trip <= tol && fitted > 0;
    rep.details = {{"fitted_exponent", static_cast<double>(fitted)},
                   {"c_lower", c_lo},
                   {"c_upper", c_up},
                   {"sample_size", static_cast<double>(sample.size())}};
    if (fitted < 0) rep.note = "no exponent up to 8 satisfies the two-sided bound";
    return rep;
}

}  // namespace sphan::schwartz
