#include "sphan/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "sphan/errors.hpp"
#include "sphan/specfun.hpp"

namespace sphan::transform {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

using pairs::Symmetry;

bool is_heis_radial(const SampledFunction& f) {
    return f.pair == PairId::heis1 && f.grid.dim() == 2 &&
           f.grid.axes[0].role == AxisRole::r && f.grid.axes[1].role == AxisRole::t;
}

void check_type_match(const SampledFunction& f, const std::vector<SpectrumPoint>& pts) {
    if (f.pair == PairId::u1_c && f.symmetry == Symmetry::k_type) {
        if (f.ktype.size() != 1) throw InputError("spherical_transform: K-type tag without an index");
        for (const auto& p : pts)
            if (p.params.m != f.ktype[0])
                throw InputError(
                    "spherical_transform: K-type mismatch between the function and a spectrum "
                    "point");
    }
}

// radial profile of the heis1 spherical function at given |z| nodes
std::vector<double> heis_radial_profile(const SpectrumPoint& sigma, const std::vector<double>& r) {
    std::vector<double> out(r.size());
    if (sigma.params.limit_ray) {
        for (std::size_t i = 0; i < r.size(); ++i)
            out[i] = specfun::bessel_j(0, sigma.params.lambda * r[i]);
    } else {
        const double al = std::fabs(sigma.params.lambda);
        for (std::size_t i = 0; i < r.size(); ++i) {
            const double s = 0.5 * al * r[i] * r[i];
            out[i] = std::exp(-0.5 * s) * specfun::laguerre(sigma.params.k, 0.0, s);
        }
    }
    return out;
}

}  // namespace

double plancherel_density(PairId id, const SpectrumPoint& sigma) {
    switch (id) {
        case PairId::flat_r1: return 1.0 / kPi;
        case PairId::e2: return sigma.params.lambda / kTwoPi;
        case PairId::u1_c: return sigma.params.lambda / kTwoPi;
        case PairId::heis1:
            if (sigma.params.limit_ray) return 0.0;
            return std::fabs(sigma.params.lambda) / (kTwoPi * kTwoPi);
    }
    throw InputError("plancherel_density: bad pair id");
}

SpectrumQuadrature plancherel_quadrature(PairId id, const PlancherelOptions& opt) {
    SpectrumQuadrature q;
    switch (id) {
        case PairId::flat_r1:
        case PairId::e2: {
            auto rule = specfun::gauss_legendre(opt.lambda_n, 0.0, opt.lambda_max);
            for (int i = 0; i < opt.lambda_n; ++i) {
                auto p = pairs::eigenvalue_map(id, {.lambda = rule.nodes[i]});
                q.weights.push_back(rule.weights[i] * plancherel_density(id, p));
                q.points.push_back(std::move(p));
            }
            break;
        }
        case PairId::u1_c: {
            auto rule = specfun::gauss_legendre(opt.lambda_n, 0.0, opt.lambda_max);
            for (int m = opt.m_min; m <= opt.m_max; ++m) {
                for (int i = 0; i < opt.lambda_n; ++i) {
                    auto p = pairs::eigenvalue_map(id, {.lambda = rule.nodes[i], .m = m});
                    q.weights.push_back(rule.weights[i] * plancherel_density(id, p));
                    q.points.push_back(std::move(p));
                }
            }
            break;
        }
        case PairId::heis1: {
            const int half = std::max(2, opt.lambda_n / 2);
            auto neg = specfun::gauss_legendre(half, -opt.lambda_max, 0.0);
            auto pos = specfun::gauss_legendre(half, 0.0, opt.lambda_max);
            for (int k = 0; k <= opt.k_max; ++k) {
                for (int i = 0; i < half; ++i) {
                    auto p = pairs::eigenvalue_map(id, {.lambda = neg.nodes[i], .k = k});
                    q.weights.push_back(neg.weights[i] * plancherel_density(id, p));
                    q.points.push_back(std::move(p));
                }
                for (int i = 0; i < half; ++i) {
                    auto p = pairs::eigenvalue_map(id, {.lambda = pos.nodes[i], .k = k});
                    q.weights.push_back(pos.weights[i] * plancherel_density(id, p));
                    q.points.push_back(std::move(p));
                }
            }
            break;
        }
    }
    return q;
}

SpectrumFunction spherical_transform(const SampledFunction& f,
                                     const std::vector<SpectrumPoint>& points) {
    check_type_match(f, points);
    SpectrumFunction out;
    out.pair = f.pair;
    out.points = points;
    out.values.assign(points.size(), cplx{0.0, 0.0});
    out.warning = f.warning;

    const auto w = pairs::haar_weights(f.pair, f.grid);

    if (is_heis_radial(f)) {
        // separable kernel e^{-i l t} u_{l,k}(r): do the t-reduction once
        // per distinct lambda
        const auto rs = f.grid.axes[0].nodes();
        const auto ts = f.grid.axes[1].nodes();
        const int nr = f.grid.axes[0].n, nt = f.grid.axes[1].n;
        std::map<double, std::vector<cplx>> treduced;  // lambda -> per-r sums
        for (const auto& sigma : points) {
            const double lam = sigma.params.limit_ray ? 0.0 : sigma.params.lambda;
            if (!treduced.count(lam)) {
                std::vector<cplx> acc(nr, cplx{0.0, 0.0});
                for (int i = 0; i < nr; ++i)
                    for (int j = 0; j < nt; ++j)
                        acc[i] += f.values[static_cast<std::size_t>(i) * nt + j] *
                                  std::polar(1.0, -lam * ts[j]) *
                                  w[static_cast<std::size_t>(i) * nt + j];
                treduced.emplace(lam, std::move(acc));
            }
        }
        for (std::size_t s = 0; s < points.size(); ++s) {
            const auto& sigma = points[s];
            const double lam = sigma.params.limit_ray ? 0.0 : sigma.params.lambda;
            const auto profile = heis_radial_profile(sigma, rs);
            const auto& acc = treduced.at(lam);
            cplx v{0.0, 0.0};
            for (int i = 0; i < nr; ++i) v += profile[i] * acc[i];
            out.values[s] = v;
        }
        return out;
    }

    const auto nodes = f.grid.node_table();
    std::vector<GroupPoint> inv_points(f.grid.size());
    f.grid.for_each([&](const std::vector<int>& idx, std::size_t flat) {
        inv_points[flat] = pairs::inverse(f.pair, pairs::assemble_point(f.pair, f.grid, nodes, idx));
    });
    for (std::size_t s = 0; s < points.size(); ++s) {
        cplx acc{0.0, 0.0};
        for (std::size_t i = 0; i < inv_points.size(); ++i)
            acc += f.values[i] * pairs::spherical(f.pair, points[s], inv_points[i]) * w[i];
        out.values[s] = acc;
    }
    return out;
}

SpectrumFunction spherical_transform(const SampledFunction& f, const SpectrumQuadrature& quad) {
    SpectrumFunction out = spherical_transform(f, quad.points);
    out.plancherel_weights = quad.weights;
    return out;
}

SampledFunction inverse_transform(const SpectrumFunction& gh, const Grid& out_grid) {
    if (gh.plancherel_weights.size() != gh.points.size() ||
        gh.values.size() != gh.points.size())
        throw InputError("inverse_transform: missing or misaligned Plancherel weights");

    SampledFunction out;
    out.pair = gh.pair;
    out.grid = out_grid;
    out.symmetry = Symmetry::bi_k_invariant;
    out.values.assign(out_grid.size(), cplx{0.0, 0.0});
    for (const auto& a : out_grid.axes) {
        const double reach = std::max(std::abs(a.min), std::abs(a.max));
        if (a.role != AxisRole::theta && reach > out.truncation) out.truncation = reach;
    }

    if (gh.pair == PairId::heis1) {
        int k_max = -1;
        std::vector<char> seen;
        for (const auto& p : gh.points) {
            if (p.params.limit_ray) continue;
            if (p.params.k >= static_cast<int>(seen.size())) seen.resize(p.params.k + 1, 0);
            seen[p.params.k] = 1;
            k_max = std::max(k_max, p.params.k);
        }
        if (k_max < 0 || std::find(seen.begin(), seen.end(), 0) != seen.end())
            throw InputError("inverse_transform: heis1 points must cover the rays k = 0..k_max");
        out.warning = "heis1 fan truncated at k_max=" + std::to_string(k_max);
    }

    if (gh.pair == PairId::heis1 && out_grid.dim() == 2 && out_grid.axes[0].role == AxisRole::r &&
        out_grid.axes[1].role == AxisRole::t) {
        const auto rs = out_grid.axes[0].nodes();
        const auto ts = out_grid.axes[1].nodes();
        const int nr = out_grid.axes[0].n, nt = out_grid.axes[1].n;
        // radial reduction per distinct lambda, then one complex exponential pass
        std::map<double, std::vector<cplx>> radial_acc;
        for (std::size_t s = 0; s < gh.points.size(); ++s) {
            const auto& sigma = gh.points[s];
            const double beta = gh.plancherel_weights[s];
            if (beta == 0.0) continue;
            const double lam = sigma.params.limit_ray ? 0.0 : sigma.params.lambda;
            auto& acc = radial_acc
                            .try_emplace(lam, std::vector<cplx>(nr, cplx{0.0, 0.0}))
                            .first->second;
            const auto profile = heis_radial_profile(sigma, rs);
            const cplx gv = gh.values[s] * beta;
            for (int i = 0; i < nr; ++i) acc[i] += gv * profile[i];
        }
        for (const auto& [lam, acc] : radial_acc) {
            for (int j = 0; j < nt; ++j) {
                const cplx e = std::polar(1.0, lam * ts[j]);
                for (int i = 0; i < nr; ++i)
                    out.values[static_cast<std::size_t>(i) * nt + j] += acc[i] * e;
            }
        }
        return out;
    }

    const auto nodes = out_grid.node_table();
    std::vector<GroupPoint> pts(out_grid.size());
    out_grid.for_each([&](const std::vector<int>& idx, std::size_t flat) {
        pts[flat] = pairs::assemble_point(gh.pair, out_grid, nodes, idx);
    });

    const bool flat_pair = gh.pair == PairId::flat_r1;
    for (std::size_t s = 0; s < gh.points.size(); ++s) {
        const double beta = gh.plancherel_weights[s];
        if (beta == 0.0) continue;
        const cplx gv = gh.values[s] * beta;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            cplx phi = pairs::spherical(gh.pair, gh.points[s], pts[i]);
            // flat_r1 folds +-lambda into lambda >= 0: even-function kernel
            if (flat_pair) phi = {phi.real(), 0.0};
            out.values[i] += gv * phi;
        }
    }
    return out;
}

Report verify_plancherel(const SampledFunction& f, const SpectrumQuadrature& quad, double tol) {
    Report rep;
    rep.check = "plancherel";
    rep.pair = std::string(pairs::to_string(f.pair));
    rep.tolerance = tol;
    const double lhs = pairs::l2_norm(f);
    const auto gf = spherical_transform(f, quad);
    double rhs2 = 0.0;
    for (std::size_t i = 0; i < gf.values.size(); ++i)
        rhs2 += std::norm(gf.values[i]) * quad.weights[i];
    const double rhs = std::sqrt(rhs2);
    rep.observed = std::fabs(lhs - rhs) / std::max(lhs, 1e-300);
    rep.pass = rep.observed < tol;
    rep.details = {{"l2_group", lhs}, {"l2_spectrum", rhs}};
    return rep;
}

Report verify_commutativity(PairId id, const SampledFunction& f, const SampledFunction& g,
                            double tol) {
    Report rep;
    rep.check = "commutativity";
    rep.pair = std::string(pairs::to_string(id));
    rep.tolerance = tol;
    const auto fg = pairs::group_convolve(id, f, g);
    const auto gf = pairs::group_convolve(id, g, f);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < fg.values.size(); ++i) {
        num = std::max(num, std::abs(fg.values[i] - gf.values[i]));
        den = std::max(den, std::abs(fg.values[i]));
    }
    rep.observed = num / std::max(den, 1e-300);
    rep.pass = rep.observed < tol;
    rep.details = {{"sup_commutator", num}, {"sup_product", den}};
    if (!fg.warning.empty()) rep.note = fg.warning;
    return rep;
}

Report verify_multiplicativity(PairId id, const SampledFunction& f, const SampledFunction& g,
                               const std::vector<SpectrumPoint>& points, double tol) {
    Report rep;
    rep.check = "multiplicativity";
    rep.pair = std::string(pairs::to_string(id));
    rep.tolerance = tol;
    const auto conv = pairs::group_convolve(id, f, g);
    const auto gconv = spherical_transform(conv, points);
    const auto gf = spherical_transform(f, points);
    const auto gg = spherical_transform(g, points);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        num = std::max(num, std::abs(gconv.values[i] - gf.values[i] * gg.values[i]));
        den = std::max(den, std::abs(gconv.values[i]));
    }
    rep.observed = num / std::max(den, 1e-300);
    rep.pass = rep.observed < tol;
    rep.details = {{"sup_defect", num}, {"sup_transform", den}};
    if (!conv.warning.empty()) rep.note = conv.warning;
    return rep;
}

Report verify_positive_definite(PairId id, const SpectrumPoint& sigma,
                                const std::vector<GroupPoint>& points, double tol) {
    if (points.size() > 200) throw InputError("verify_positive_definite: at most 200 points");
    if (points.empty()) throw InputError("verify_positive_definite: need at least one point");
    const int n = static_cast<int>(points.size());
    std::vector<cplx> gram(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        const GroupPoint xi_inv = pairs::inverse(id, points[i]);
        for (int j = 0; j < n; ++j) {
            gram[static_cast<std::size_t>(i) * n + j] =
                pairs::spherical(id, sigma, pairs::multiply(id, xi_inv, points[j]));
        }
    }
    const auto eig = hermitian_eigenvalues(std::move(gram), n);

    Report rep;
    rep.check = "posdef";
    rep.pair = std::string(pairs::to_string(id));
    rep.tolerance = tol;
    rep.observed = eig.front();
    rep.pass = eig.front() >= -tol;
    rep.details = {{"min_eigenvalue", eig.front()},
                   {"max_eigenvalue", eig.back()},
                   {"points", static_cast<double>(n)}};
    return rep;
}

namespace {

Grid eigen_patch(PairId id, double h, int n) {
    const double half = 0.5 * (n - 1) * h;
    auto ax = [&](AxisRole role, double center) {
        return Axis{role, AxisKind::uniform, center - half, center + half, n};
    };
    switch (id) {
        case PairId::flat_r1: return Grid{{ax(AxisRole::x, 0.37)}};
        case PairId::e2: return Grid{{ax(AxisRole::x, 0.31), ax(AxisRole::y, -0.17)}};
        case PairId::u1_c:
            return Grid{{ax(AxisRole::theta, 0.4), ax(AxisRole::x, 0.31), ax(AxisRole::y, -0.17)}};
        case PairId::heis1:
            return Grid{{ax(AxisRole::x, 0.29), ax(AxisRole::y, 0.37), ax(AxisRole::t, 0.11)}};
    }
    throw InputError("eigen_patch: bad pair id");
}

}  // namespace

Report verify_eigen(PairId id, const SpectrumPoint& sigma, double step, double tol) {
    if (!(step <= 1e-2))
        throw ResolutionError("verify_eigen: finite-difference step " + std::to_string(step) +
                              " is too coarse (need step <= 1e-2)");
    const int n = id == PairId::heis1 ? 13 : 17;
    const Grid g = eigen_patch(id, step, n);
    const auto phi =
        pairs::sample(id, g, [&](const GroupPoint& p) { return pairs::spherical(id, sigma, p); });

    Report rep;
    rep.check = "eigen";
    rep.pair = std::string(pairs::to_string(id));
    rep.tolerance = tol;
    rep.observed = 0.0;
    for (int j = 1; j <= pairs::descriptor(id).ell; ++j) {
        const auto dphi = pairs::apply_generator(id, j, phi, step);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < phi.values.size(); ++i) {
            den = std::max(den, std::abs(phi.values[i]));
            if (!std::isfinite(dphi.values[i].real())) continue;
            num = std::max(num, std::abs(dphi.values[i] - sigma.xi[j - 1] * phi.values[i]));
        }
        const double resid = num / std::max(den, 1e-300);
        rep.details.emplace_back("residual_" + std::to_string(j), resid);
        rep.observed = std::max(rep.observed, resid);
    }
    rep.pass = rep.observed < tol;
    return rep;
}

std::vector<double> hermitian_eigenvalues(std::vector<cplx> a, int n) {
    if (n <= 0 || static_cast<std::size_t>(n) * n != a.size())
        throw InputError("hermitian_eigenvalues: bad dimensions");
    auto at = [&](int i, int j) -> cplx& { return a[static_cast<std::size_t>(i) * n + j]; };

    double scale = 0.0;
    for (const auto& v : a) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return std::vector<double>(n, 0.0);

    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += std::norm(at(i, j));
        if (std::sqrt(off) < 1e-13 * scale * n) break;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = at(p, q);
                const double g = std::abs(apq);
                if (g < 1e-300) continue;
                const double app = at(p, p).real(), aqq = at(q, q).real();
                const double tau = (aqq - app) / (2.0 * g);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double sr = t * c;
                const cplx phase = apq / g;
                const cplx s = phase * sr;

                for (int i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    const cplx aip = at(i, p), aiq = at(i, q);
                    at(i, p) = c * aip - std::conj(s) * aiq;
                    at(i, q) = s * aip + c * aiq;
                    at(p, i) = std::conj(at(i, p));
                    at(q, i) = std::conj(at(i, q));
                }
                const double gpp = app * c * c + aqq * sr * sr - 2.0 * c * sr * g;
                const double gqq = app * sr * sr + aqq * c * c + 2.0 * c * sr * g;
                at(p, p) = gpp;
                at(q, q) = gqq;
                at(p, q) = 0.0;
                at(q, p) = 0.0;
            }
        }
    }
    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i) eig[i] = at(i, i).real();
    std::sort(eig.begin(), eig.end());
    return eig;
}

}  // namespace sphan::transform
