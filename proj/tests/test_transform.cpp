#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "sphan/errors.hpp"
#include "sphan/pairs.hpp"
#include "sphan/transform.hpp"

using namespace sphan;
using namespace sphan::pairs;
using namespace sphan::transform;

namespace {

constexpr double kPi = std::numbers::pi;

SampledFunction e2_gauss_radial(double R = 14.0, int n = 700) {
    return sample(PairId::e2, e2_radial(R, n), [](const GroupPoint& p) {
        return cplx{std::exp(-0.5 * p.z[0] * p.z[0]), 0.0};
    });
}

double rel_l2_diff(const SampledFunction& a, const SampledFunction& b) {
    const auto w = haar_weights(a.pair, a.grid);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        num += w[i] * std::norm(a.values[i] - b.values[i]);
        den += w[i] * std::norm(a.values[i]);
    }
    return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("Hankel-Gaussian identity on e2") {
    auto f = e2_gauss_radial(20.0, 2000);
    std::vector<SpectrumPoint> pts;
    for (double l = 0.0; l <= 6.0; l += 0.25) pts.push_back(eigenvalue_map(PairId::e2, {.lambda = l}));
    const auto gf = spherical_transform(f, pts);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double expect = 2.0 * kPi * std::exp(-0.5 * pts[i].params.lambda * pts[i].params.lambda);
        CHECK(std::abs(gf.values[i] - expect) < 1e-6);
    }
}

TEST_CASE("transform of the zero function vanishes") {
    auto f = sample(PairId::e2, e2_radial(10.0, 100), [](const GroupPoint&) { return cplx{0.0, 0.0}; });
    std::vector<SpectrumPoint> pts{eigenvalue_map(PairId::e2, {.lambda = 1.0})};
    CHECK(std::abs(spherical_transform(f, pts).values[0]) == 0.0);
}

TEST_CASE("transform is linear") {
    auto f = e2_gauss_radial(12.0, 300);
    auto g = sample(PairId::e2, e2_radial(12.0, 300), [](const GroupPoint& p) {
        return cplx{std::exp(-0.8 * p.z[0] * p.z[0]) * p.z[0], 0.0};
    });
    SampledFunction lin = f;
    for (std::size_t i = 0; i < lin.values.size(); ++i)
        lin.values[i] = 2.0 * f.values[i] + cplx{0.0, 3.0} * g.values[i];
    std::vector<SpectrumPoint> pts;
    for (double l : {0.0, 0.7, 2.1, 4.4}) pts.push_back(eigenvalue_map(PairId::e2, {.lambda = l}));
    const auto gl = spherical_transform(lin, pts);
    const auto gf = spherical_transform(f, pts);
    const auto gg = spherical_transform(g, pts);
    for (std::size_t i = 0; i < pts.size(); ++i)
        CHECK(std::abs(gl.values[i] - (2.0 * gf.values[i] + cplx{0.0, 3.0} * gg.values[i])) < 1e-12);
}

TEST_CASE("transform of a real symmetric function is real") {
    auto f = sample(PairId::flat_r1, flat_lattice(10.0, 801), [](const GroupPoint& p) {
        return cplx{std::exp(-0.5 * p.z[0] * p.z[0]) * (1.0 + p.z[0] * p.z[0]), 0.0};
    });
    std::vector<SpectrumPoint> pts;
    for (double l : {0.0, 0.9, 2.3, 5.1}) pts.push_back(eigenvalue_map(PairId::flat_r1, {.lambda = l}));
    const auto gf = spherical_transform(f, pts);
    for (const auto& v : gf.values) CHECK(std::fabs(v.imag()) < 1e-10);
}

TEST_CASE("u1_c per-type transform and type mismatch error") {
    Grid g = u1c_radial(16, 14.0, 600);
    auto f = sample(
        PairId::u1_c, g,
        [](const GroupPoint& p) {
            return std::polar(std::exp(-0.5 * p.z[0] * p.z[0]), 2.0 * p.theta[0]);
        },
        Symmetry::k_central);
    // the K-central function above is pure type 2: the (2, l) slice is the
    // Hankel transform of its radial profile, other slices vanish
    std::vector<SpectrumPoint> pts;
    for (int m : {1, 2, 3})
        pts.push_back(eigenvalue_map(PairId::u1_c, {.lambda = 1.5, .m = m}));
    const auto gf = spherical_transform(f, pts);
    CHECK(std::abs(gf.values[0]) < 1e-12);
    CHECK(std::abs(gf.values[2]) < 1e-12);
    CHECK(std::abs(gf.values[1] - 2.0 * kPi * std::exp(-0.5 * 1.5 * 1.5)) < 1e-6);

    auto ftagged = f;
    ftagged.symmetry = Symmetry::k_type;
    ftagged.ktype = {2};
    CHECK_THROWS_AS(spherical_transform(ftagged, pts), InputError);
}

TEST_CASE("round trip on e2 calibrates the Plancherel constant") {
    auto f = e2_gauss_radial();
    PlancherelOptions opt;
    opt.lambda_max = 12.0;
    opt.lambda_n = 500;
    const auto quad = plancherel_quadrature(PairId::e2, opt);
    const auto gf = spherical_transform(f, quad);
    const auto back = inverse_transform(gf, f.grid);
    CHECK(rel_l2_diff(f, back) < 1e-5);
}

TEST_CASE("round trip on flat_r1 for an even Gaussian") {
    auto f = sample(PairId::flat_r1, flat_lattice(12.0, 1201), [](const GroupPoint& p) {
        return cplx{std::exp(-0.5 * p.z[0] * p.z[0]), 0.0};
    });
    PlancherelOptions opt;
    opt.lambda_max = 10.0;
    opt.lambda_n = 400;
    const auto quad = plancherel_quadrature(PairId::flat_r1, opt);
    const auto back = inverse_transform(spherical_transform(f, quad), f.grid);
    CHECK(rel_l2_diff(f, back) < 1e-6);
}

TEST_CASE("round trip on u1_c for a K-central family") {
    Grid g = u1c_radial(16, 14.0, 400);
    auto f = sample(
        PairId::u1_c, g,
        [](const GroupPoint& p) {
            const double prof = std::exp(-0.5 * p.z[0] * p.z[0]);
            cplx acc{0.0, 0.0};
            for (int m = -2; m <= 2; ++m)
                acc += std::polar(prof * std::exp(-0.4 * m * m), m * p.theta[0]);
            return acc;
        },
        Symmetry::k_central);
    PlancherelOptions opt;
    opt.lambda_max = 12.0;
    opt.lambda_n = 400;
    opt.m_min = -2;
    opt.m_max = 2;
    const auto quad = plancherel_quadrature(PairId::u1_c, opt);
    const auto back = inverse_transform(spherical_transform(f, quad), g);
    CHECK(rel_l2_diff(f, back) < 1e-5);
}

TEST_CASE("round trip on heis1 for a modulated Gaussian") {
    Grid g = heis1_radial(8.0, 140, 10.0, 220);
    auto f = sample(PairId::heis1, g, [](const GroupPoint& p) {
        const double rho2 = p.z[0] * p.z[0] + p.z[1] * p.z[1];
        const double t = p.z[2];
        return cplx{std::exp(-0.5 * (rho2 + t * t)) * std::cos(4.0 * t), 0.0};
    });
    PlancherelOptions opt;
    opt.lambda_max = 10.0;
    opt.lambda_n = 360;
    opt.k_max = 40;
    const auto quad = plancherel_quadrature(PairId::heis1, opt);
    const auto gf = spherical_transform(f, quad);
    const auto back = inverse_transform(gf, g);
    CHECK(rel_l2_diff(f, back) < 1e-3);
    CHECK(back.warning.find("k_max=40") != std::string::npos);
}

TEST_CASE("heis1 plain Gaussian needs far more rays: tail scales like 1/k_max") {
    // For f = e^{-(|z|^2+t^2)/2} the transform decays slowly along the fan
    // near lambda = 0; at k_max = 40 the round-trip defect sits near 4e-2
    // and shrinks like 1/k_max.
    Grid g = heis1_radial(8.0, 120, 8.0, 160);
    auto f = sample(PairId::heis1, g, [](const GroupPoint& p) {
        const double q = p.z[0] * p.z[0] + p.z[1] * p.z[1] + p.z[2] * p.z[2];
        return cplx{std::exp(-0.5 * q), 0.0};
    });
    PlancherelOptions opt;
    opt.lambda_max = 8.0;
    opt.lambda_n = 320;

    opt.k_max = 40;
    const auto e40 = rel_l2_diff(f, inverse_transform(spherical_transform(
                                        f, plancherel_quadrature(PairId::heis1, opt)), g));
    opt.k_max = 80;
    const auto e80 = rel_l2_diff(f, inverse_transform(spherical_transform(
                                        f, plancherel_quadrature(PairId::heis1, opt)), g));
    CHECK(e40 > 0.01);
    CHECK(e40 < 0.2);
    CHECK(e80 < 0.75 * e40);
}

TEST_CASE("inverse of the zero spectrum function vanishes") {
    PlancherelOptions opt;
    opt.lambda_n = 50;
    const auto quad = plancherel_quadrature(PairId::e2, opt);
    SpectrumFunction gh;
    gh.pair = PairId::e2;
    gh.points = quad.points;
    gh.values.assign(quad.points.size(), cplx{0.0, 0.0});
    gh.plancherel_weights = quad.weights;
    const auto f = inverse_transform(gh, e2_radial(10.0, 50));
    for (const auto& v : f.values) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("inverse_transform requires aligned weights") {
    SpectrumFunction gh;
    gh.pair = PairId::e2;
    gh.points = {eigenvalue_map(PairId::e2, {.lambda = 1.0})};
    gh.values = {cplx{1.0, 0.0}};
    CHECK_THROWS_AS(inverse_transform(gh, e2_radial(10.0, 50)), InputError);
}

TEST_CASE("verify_plancherel on e2 and corrupted weights") {
    auto f = e2_gauss_radial();
    PlancherelOptions opt;
    opt.lambda_max = 12.0;
    opt.lambda_n = 500;
    auto quad = plancherel_quadrature(PairId::e2, opt);
    auto rep = verify_plancherel(f, quad, 1e-5);
    CHECK(rep.pass);

    for (auto& w : quad.weights) w *= 0.5;
    auto bad = verify_plancherel(f, quad, 1e-4);
    CHECK(!bad.pass);
    double lhs = 0.0, rhs = 0.0;
    for (const auto& [k, v] : bad.details) {
        if (k == "l2_group") lhs = v;
        if (k == "l2_spectrum") rhs = v;
    }
    CHECK(lhs / rhs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("verify_plancherel on the zero function passes") {
    auto f = sample(PairId::e2, e2_radial(10.0, 60), [](const GroupPoint&) { return cplx{0.0, 0.0}; });
    PlancherelOptions opt;
    opt.lambda_n = 60;
    auto rep = verify_plancherel(f, plancherel_quadrature(PairId::e2, opt), 1e-4);
    CHECK(rep.pass);
    CHECK(rep.observed == 0.0);
}

TEST_CASE("verify_commutativity passes on radial data and fails on a non-radial pair") {
    Grid g = e2_lattice(8.0, 65);
    auto f = sample(PairId::e2, g, [](const GroupPoint& p) {
        const double r2 = p.z[0] * p.z[0] + p.z[1] * p.z[1];
        return cplx{std::exp(-0.6 * r2), 0.0};
    });
    auto h = sample(PairId::e2, g, [](const GroupPoint& p) {
        const double r2 = p.z[0] * p.z[0] + p.z[1] * p.z[1];
        return cplx{std::exp(-0.9 * r2) * (1.0 + 0.3 * r2), 0.0};
    });
    CHECK(verify_commutativity(PairId::e2, f, h, 1e-3).pass);

    // identical operands commute exactly
    auto same = verify_commutativity(PairId::e2, f, f, 1e-3);
    CHECK(same.pass);
    CHECK(same.observed == 0.0);

    // shifted Gaussians, K-central tag forced: the bi-K convolution does
    // not commute
    Grid gs = e2_lattice(8.0, 33);
    auto fn = sample(
        PairId::e2, gs,
        [](const GroupPoint& p) {
            const double dx = p.z[0] - 1.0, dy = p.z[1];
            return cplx{std::exp(-0.5 * (dx * dx + dy * dy)), 0.0};
        },
        Symmetry::k_central);
    auto gn = sample(
        PairId::e2, gs,
        [](const GroupPoint& p) {
            const double dx = p.z[0], dy = p.z[1] - 1.0;
            return cplx{std::exp(-0.5 * (dx * dx + dy * dy)), 0.0};
        },
        Symmetry::k_central);
    auto bad = verify_commutativity(PairId::e2, fn, gn, 1e-3);
    CHECK(!bad.pass);
    CHECK(bad.observed > 1e-2);
}

TEST_CASE("verify_multiplicativity on Gaussian pairs") {
    Grid g = e2_lattice(8.0, 65);
    auto f = sample(PairId::e2, g, [](const GroupPoint& p) {
        const double r2 = p.z[0] * p.z[0] + p.z[1] * p.z[1];
        return cplx{std::exp(-0.5 * r2), 0.0};
    });
    auto h = sample(PairId::e2, g, [](const GroupPoint& p) {
        const double r2 = p.z[0] * p.z[0] + p.z[1] * p.z[1];
        return cplx{std::exp(-0.75 * r2), 0.0};
    });
    std::vector<SpectrumPoint> pts;
    for (double l : {0.0, 0.5, 1.0, 1.5, 2.0, 3.0})
        pts.push_back(eigenvalue_map(PairId::e2, {.lambda = l}));
    auto rep = verify_multiplicativity(PairId::e2, f, h, pts, 1e-3);
    CHECK(rep.pass);
}

TEST_CASE("verify_positive_definite") {
    std::mt19937_64 rng(97);
    std::normal_distribution<double> nd(0.0, 1.3);

    auto mkpts = [&](PairId id, int count) {
        std::vector<GroupPoint> pts;
        for (int i = 0; i < count; ++i) {
            GroupPoint p = identity(id);
            for (auto& c : p.z) c = nd(rng);
            for (auto& th : p.theta) th = std::fabs(nd(rng));
            pts.push_back(p);
        }
        return pts;
    };

    auto s_e2 = eigenvalue_map(PairId::e2, {.lambda = 1.0});
    auto rep = verify_positive_definite(PairId::e2, s_e2, mkpts(PairId::e2, 50), 1e-8);
    CHECK(rep.pass);

    auto single = verify_positive_definite(PairId::e2, s_e2, mkpts(PairId::e2, 1), 1e-8);
    CHECK(single.pass);
    CHECK(single.observed == doctest::Approx(1.0).epsilon(1e-12));

    auto s_h = eigenvalue_map(PairId::heis1, {.lambda = 1.0, .k = 3});
    CHECK(verify_positive_definite(PairId::heis1, s_h, mkpts(PairId::heis1, 50), 1e-8).pass);

    CHECK_THROWS_AS(
        verify_positive_definite(PairId::e2, s_e2, std::vector<GroupPoint>(201, identity(PairId::e2)),
                                 1e-8),
        InputError);
}

TEST_CASE("verify_eigen") {
    auto s_f = eigenvalue_map(PairId::flat_r1, {.lambda = 2.0});
    CHECK(verify_eigen(PairId::flat_r1, s_f, 1e-3, 1e-4).pass);

    auto s_e2 = eigenvalue_map(PairId::e2, {.lambda = 3.0});
    CHECK(verify_eigen(PairId::e2, s_e2, 1e-3, 1e-3).pass);

    auto s_h = eigenvalue_map(PairId::heis1, {.lambda = 1.0, .k = 2});
    CHECK(s_h.xi[0] == 5.0);
    CHECK(verify_eigen(PairId::heis1, s_h, 1e-3, 1e-3).pass);

    CHECK_THROWS_AS(verify_eigen(PairId::e2, s_e2, 1.0, 1e-3), ResolutionError);
}

TEST_CASE("hermitian_eigenvalues") {
    using std::complex_literals::operator""i;
    // [[2, i], [-i, 2]] has eigenvalues 1 and 3
    std::vector<cplx> a{cplx{2.0, 0.0}, cplx{0.0, 1.0}, cplx{0.0, -1.0}, cplx{2.0, 0.0}};
    auto e = hermitian_eigenvalues(a, 2);
    CHECK(e[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e[1] == doctest::Approx(3.0).epsilon(1e-12));

    // random B^H B is positive semidefinite with matching trace
    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd(0.0, 1.0);
    const int n = 24;
    std::vector<cplx> b(n * n), psd(n * n, cplx{0.0, 0.0});
    for (auto& v : b) v = cplx{nd(rng), nd(rng)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx s{0.0, 0.0};
            for (int k = 0; k < n; ++k) s += std::conj(b[k * n + i]) * b[k * n + j];
            psd[i * n + j] = s;
        }
    double trace = 0.0;
    for (int i = 0; i < n; ++i) trace += psd[i * n + i].real();
    auto ev = hermitian_eigenvalues(psd, n);
    double esum = 0.0;
    for (double v : ev) {
        CHECK(v > -1e-9);
        esum += v;
    }
    CHECK(esum == doctest::Approx(trace).epsilon(1e-11));
}
