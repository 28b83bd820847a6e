#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "sphan/errors.hpp"
#include "sphan/pairs.hpp"
#include "sphan/specfun.hpp"

using namespace sphan;
using namespace sphan::pairs;

namespace {

constexpr double kPi = std::numbers::pi;

GroupPoint random_point(PairId id, std::mt19937_64& rng, double scale = 1.2) {
    std::normal_distribution<double> nd(0.0, scale);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
    GroupPoint p = identity(id);
    for (auto& th : p.theta) th = ang(rng);
    for (auto& c : p.z) c = nd(rng);
    return p;
}

SpectrumPoint random_sigma(PairId id, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    SpectrumParams prm;
    switch (id) {
        case PairId::flat_r1:
        case PairId::e2:
            prm.lambda = 4.0 * u01(rng);
            break;
        case PairId::u1_c:
            prm.lambda = 4.0 * u01(rng);
            prm.m = static_cast<int>(std::floor(17.0 * u01(rng))) - 8;
            break;
        case PairId::heis1:
            if (u01(rng) < 0.15) {
                prm.limit_ray = true;
                prm.lambda = 4.0 * u01(rng);
            } else {
                prm.lambda = 8.0 * u01(rng) - 4.0;
                prm.k = static_cast<int>(std::floor(11.0 * u01(rng)));
            }
            break;
    }
    return eigenvalue_map(id, prm);
}

// patch lattice with given spacing around a base point, odd node counts
Grid patch_grid(PairId id, double h, int n) {
    const double half = 0.5 * (n - 1) * h;
    switch (id) {
        case PairId::flat_r1:
            return Grid{{Axis{AxisRole::x, AxisKind::uniform, 0.37 - half, 0.37 + half, n}}};
        case PairId::e2:
            return Grid{{Axis{AxisRole::x, AxisKind::uniform, 0.31 - half, 0.31 + half, n},
                         Axis{AxisRole::y, AxisKind::uniform, -0.17 - half, -0.17 + half, n}}};
        case PairId::u1_c:
            return Grid{{Axis{AxisRole::theta, AxisKind::uniform, 0.4 - half, 0.4 + half, n},
                         Axis{AxisRole::x, AxisKind::uniform, 0.31 - half, 0.31 + half, n},
                         Axis{AxisRole::y, AxisKind::uniform, -0.17 - half, -0.17 + half, n}}};
        case PairId::heis1:
            return Grid{{Axis{AxisRole::x, AxisKind::uniform, 0.29 - half, 0.29 + half, n},
                         Axis{AxisRole::y, AxisKind::uniform, 0.37 - half, 0.37 + half, n},
                         Axis{AxisRole::t, AxisKind::uniform, 0.11 - half, 0.11 + half, n}}};
    }
    throw InputError("bad pair");
}

// max relative interior residual of (D_j - xi_j) phi_sigma on a patch
double eigen_residual(PairId id, const SpectrumPoint& sigma, int j, double step) {
    const int n = id == PairId::heis1 ? 13 : 17;
    Grid g = patch_grid(id, step, n);
    auto phi = sample(id, g, [&](const GroupPoint& p) { return spherical(id, sigma, p); });
    auto dphi = apply_generator(id, j, phi, step);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < phi.values.size(); ++i) {
        const double mag = std::abs(phi.values[i]);
        if (mag > den) den = mag;
        if (!std::isfinite(dphi.values[i].real())) continue;
        const double r = std::abs(dphi.values[i] - sigma.xi[j - 1] * phi.values[i]);
        if (r > num) num = r;
    }
    return num / den;
}

}  // namespace

TEST_CASE("descriptors") {
    for (PairId id : {PairId::flat_r1, PairId::e2, PairId::u1_c, PairId::heis1}) {
        const auto& d = descriptor(id);
        CHECK(d.r >= 0);
        CHECK(d.r <= d.ell);
        CHECK(d.strong == (d.r >= 1));
        CHECK(static_cast<int>(d.generator_names.size()) == d.ell);
        CHECK(pair_from_string(to_string(id)) == id);
    }
    CHECK(descriptor(PairId::u1_c).r == 1);
    CHECK(descriptor(PairId::u1_c).ell == 2);
    CHECK(descriptor(PairId::heis1).r == 0);
    CHECK(descriptor(PairId::heis1).ell == 2);
    CHECK_THROWS_AS(pair_from_string("bogus"), InputError);
}

TEST_CASE("group law: identity and inverses") {
    std::mt19937_64 rng(2024);
    for (PairId id : {PairId::flat_r1, PairId::e2, PairId::u1_c, PairId::heis1}) {
        const GroupPoint e = identity(id);
        for (int trial = 0; trial < 20; ++trial) {
            const GroupPoint a = random_point(id, rng);
            const GroupPoint ai = inverse(id, a);
            const GroupPoint prod = multiply(id, a, ai);
            for (double c : prod.z) CHECK(std::fabs(c) < 1e-13);
            for (double th : prod.theta) CHECK(std::min(th, 2.0 * kPi - th) < 1e-13);
            const GroupPoint ea = multiply(id, e, a);
            for (std::size_t i = 0; i < a.z.size(); ++i) CHECK(ea.z[i] == doctest::Approx(a.z[i]));
        }
    }
}

TEST_CASE("group law: associativity on dyadic points") {
    for (PairId id : {PairId::flat_r1, PairId::e2, PairId::u1_c, PairId::heis1}) {
        const auto& d = descriptor(id);
        GroupPoint a = identity(id), b = identity(id), c = identity(id);
        for (int i = 0; i < d.dim_h; ++i) {
            a.z[i] = 0.25 * (i + 1);
            b.z[i] = -0.5 + 0.125 * i;
            c.z[i] = 0.75 - 0.25 * i;
        }
        if (d.r == 1) {
            a.theta[0] = 0.25;
            b.theta[0] = 0.5;
            c.theta[0] = 0.125;
        }
        const GroupPoint lhs = multiply(id, multiply(id, a, b), c);
        const GroupPoint rhs = multiply(id, a, multiply(id, b, c));
        for (std::size_t i = 0; i < lhs.z.size(); ++i)
            CHECK(std::fabs(lhs.z[i] - rhs.z[i]) <= 1e-14);
        for (std::size_t i = 0; i < lhs.theta.size(); ++i)
            CHECK(std::fabs(lhs.theta[i] - rhs.theta[i]) <= 1e-14);
    }
}

TEST_CASE("eigenvalue_map examples") {
    CHECK(eigenvalue_map(PairId::flat_r1, {.lambda = 0.0}).xi == std::vector<double>{0.0});
    const auto u = eigenvalue_map(PairId::u1_c, {.lambda = 2.0, .m = 3});
    CHECK(u.xi == std::vector<double>{3.0, 4.0});
    const auto h = eigenvalue_map(PairId::heis1, {.lambda = -2.0, .k = 1});
    CHECK(h.xi == std::vector<double>{6.0, -2.0});
    const auto ray = eigenvalue_map(PairId::heis1, {.lambda = 1.5, .limit_ray = true});
    CHECK(ray.xi == std::vector<double>{2.25, 0.0});
    CHECK_THROWS_AS(eigenvalue_map(PairId::e2, {.lambda = -1.0}), InputError);
    CHECK_THROWS_AS(eigenvalue_map(PairId::heis1, SpectrumParams{.lambda = 1.0, .k = -2}), InputError);
}

TEST_CASE("xi is recomputable from params") {
    std::mt19937_64 rng(7);
    for (PairId id : {PairId::flat_r1, PairId::e2, PairId::u1_c, PairId::heis1}) {
        for (int i = 0; i < 50; ++i) {
            const auto sigma = random_sigma(id, rng);
            const auto again = eigenvalue_map(id, sigma.params);
            for (std::size_t c = 0; c < sigma.xi.size(); ++c)
                CHECK(std::fabs(sigma.xi[c] - again.xi[c]) <= 1e-12);
        }
    }
}

TEST_CASE("spherical normalization at the identity") {
    std::mt19937_64 rng(11);
    for (PairId id : {PairId::flat_r1, PairId::e2, PairId::u1_c, PairId::heis1}) {
        for (int i = 0; i < 40; ++i) {
            const auto sigma = random_sigma(id, rng);
            CHECK(std::abs(spherical(id, sigma, identity(id)) - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("spherical closed-form spot values") {
    const auto s_e2 = eigenvalue_map(PairId::e2, {.lambda = 1.0});
    GroupPoint v = identity(PairId::e2);
    v.z = {2.404825557695773, 0.0};
    CHECK(std::abs(spherical(PairId::e2, s_e2, v)) < 1e-10);

    const auto s_h = eigenvalue_map(PairId::heis1, {.lambda = 1.0, .k = 0});
    GroupPoint p = identity(PairId::heis1);
    p.z = {0.0, 0.0, kPi};
    CHECK(std::abs(spherical(PairId::heis1, s_h, p) - std::complex<double>{-1.0, 0.0}) < 1e-14);
}

TEST_CASE("spherical boundedness") {
    std::mt19937_64 rng(13);
    for (PairId id : {PairId::flat_r1, PairId::e2, PairId::u1_c, PairId::heis1}) {
        for (int i = 0; i < 25; ++i) {
            const auto sigma = random_sigma(id, rng);
            for (int jj = 0; jj < 25; ++jj) {
                const auto x = random_point(id, rng, 1.8);
                CHECK(std::abs(spherical(id, sigma, x)) <= 1.0 + 1e-12);
            }
        }
    }
}

TEST_CASE("spherical Hermitian symmetry") {
    std::mt19937_64 rng(17);
    for (PairId id : {PairId::flat_r1, PairId::e2, PairId::u1_c, PairId::heis1}) {
        for (int i = 0; i < 25; ++i) {
            const auto sigma = random_sigma(id, rng);
            const auto x = random_point(id, rng);
            const auto a = spherical(id, sigma, inverse(id, x));
            const auto b = std::conj(spherical(id, sigma, x));
            CHECK(std::abs(a - b) < 1e-12);
        }
    }
}

TEST_CASE("spectrum_grid enumerations") {
    SpectrumBounds ub;
    ub.m_min = -2;
    ub.m_max = 2;
    ub.lambda_min = 0.0;
    ub.lambda_max = 1.0;
    ub.lambda_n = 2;
    const auto upts = spectrum_grid(PairId::u1_c, ub);
    REQUIRE(upts.size() == 10);
    CHECK(upts[0].xi == std::vector<double>{-2.0, 0.0});
    CHECK(upts[1].xi == std::vector<double>{-2.0, 1.0});
    CHECK(upts[9].xi == std::vector<double>{2.0, 1.0});

    SpectrumBounds hb;
    hb.k_max = 2;
    hb.lambda_min = 1.0;
    hb.lambda_max = 1.0;
    hb.lambda_n = 1;
    const auto hpts = spectrum_grid(PairId::heis1, hb);
    REQUIRE(hpts.size() == 3);
    CHECK(hpts[0].xi == std::vector<double>{1.0, 1.0});
    CHECK(hpts[1].xi == std::vector<double>{3.0, 1.0});
    CHECK(hpts[2].xi == std::vector<double>{5.0, 1.0});

    SpectrumBounds eb;
    eb.lambda_min = 0.0;
    eb.lambda_max = 2.0;
    eb.lambda_n = 3;
    const auto epts = spectrum_grid(PairId::e2, eb);
    REQUIRE(epts.size() == 3);
    CHECK(epts[0].xi[0] == 0.0);
    CHECK(epts[1].xi[0] == 1.0);
    CHECK(epts[2].xi[0] == 4.0);

    CHECK(spectrum_grid(PairId::e2, SpectrumBounds{}).empty());
}

TEST_CASE("spectrum_grid includes the heis1 limit ray when requested") {
    SpectrumBounds hb;
    hb.k_max = 1;
    hb.lambda_min = -1.0;
    hb.lambda_max = 1.0;
    hb.lambda_n = 3;
    hb.eta_min = 0.0;
    hb.eta_max = 2.0;
    hb.eta_n = 5;
    const auto pts = spectrum_grid(PairId::heis1, hb);
    CHECK(pts.size() == 2 * 3 + 5);
    int rays = 0;
    for (const auto& p : pts)
        if (p.params.limit_ray) {
            ++rays;
            CHECK(p.xi[1] == 0.0);
        }
    CHECK(rays == 5);
}

TEST_CASE("injectivity of the embedding on sampled spectra") {
    std::mt19937_64 rng(23);
    for (PairId id : {PairId::flat_r1, PairId::e2, PairId::u1_c, PairId::heis1}) {
        std::vector<SpectrumPoint> pts;
        for (int i = 0; i < 60; ++i) pts.push_back(random_sigma(id, rng));
        for (std::size_t i = 0; i < pts.size(); ++i) {
            for (std::size_t jj = i + 1; jj < pts.size(); ++jj) {
                const auto& a = pts[i].params;
                const auto& b = pts[jj].params;
                const bool same = a.lambda == b.lambda && a.m == b.m && a.k == b.k &&
                                  a.limit_ray == b.limit_ray;
                if (same) continue;
                double dist = 0.0;
                for (std::size_t c = 0; c < pts[i].xi.size(); ++c)
                    dist += std::pow(pts[i].xi[c] - pts[jj].xi[c], 2);
                // distinct continuous parameters collide only on a null set;
                // identical embeddings must mean identical spherical functions
                if (dist < 1e-18) {
                    const auto x = random_point(id, rng);
                    CHECK(std::abs(spherical(id, pts[i], x) - spherical(id, pts[jj], x)) < 1e-10);
                }
            }
        }
    }
}

TEST_CASE("apply_generator: character derivative is exact to O(step^2)") {
    Grid g = u1c_lattice(16, 4.0, 9);
    auto f = sample(PairId::u1_c, g, [](const GroupPoint& p) {
        const double r2 = p.z[0] * p.z[0] + p.z[1] * p.z[1];
        return std::polar(std::exp(-0.5 * r2), 2.0 * p.theta[0]);
    });
    auto df = apply_generator(PairId::u1_c, 1, f, 1.0);
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        if (!std::isfinite(df.values[i].real())) continue;
        // -i d/dtheta e^{2 i theta} = 2 e^{2 i theta}; trapezoid step 2pi/16
        const double h = 2.0 * kPi / 16.0;
        const double exact_factor = std::sin(2.0 * h) / h;  // central difference of a character
        CHECK(std::abs(df.values[i] - exact_factor * f.values[i]) < 1e-12);
    }
}

TEST_CASE("apply_generator eigenfunction residuals") {
    const double step = 1e-3;
    const auto s_e2 = eigenvalue_map(PairId::e2, {.lambda = 1.0});
    CHECK(eigen_residual(PairId::e2, s_e2, 1, step) < 1e-4);

    const auto s_h = eigenvalue_map(PairId::heis1, {.lambda = 1.0, .k = 0});
    CHECK(eigen_residual(PairId::heis1, s_h, 1, step) < 1e-3);
    CHECK(eigen_residual(PairId::heis1, s_h, 2, step) < 1e-3);

    const auto s_f = eigenvalue_map(PairId::flat_r1, {.lambda = 2.0});
    CHECK(eigen_residual(PairId::flat_r1, s_f, 1, step) < 1e-4);
}

TEST_CASE("joint eigenfunction property over sampled spectra") {
    std::mt19937_64 rng(31);
    const double step = 1e-3;
    for (PairId id : {PairId::flat_r1, PairId::e2, PairId::u1_c, PairId::heis1}) {
        for (int i = 0; i < 12; ++i) {
            const auto sigma = random_sigma(id, rng);
            for (int j = 1; j <= descriptor(id).ell; ++j)
                CHECK(eigen_residual(id, sigma, j, step) < 1e-3);
        }
    }
}

TEST_CASE("apply_generator flags the boundary ring invalid") {
    Grid g = e2_lattice(3.0, 9);
    auto f = sample(PairId::e2, g, [](const GroupPoint& p) {
        return std::complex<double>{std::exp(-0.5 * (p.z[0] * p.z[0] + p.z[1] * p.z[1])), 0.0};
    });
    auto df = apply_generator(PairId::e2, 1, f, 1.0);
    const int n = 9;
    for (int i = 0; i < n; ++i)
        for (int jj = 0; jj < n; ++jj) {
            const bool edge = i == 0 || i == n - 1 || jj == 0 || jj == n - 1;
            CHECK(std::isfinite(df.values[i * n + jj].real()) == !edge);
        }
}

TEST_CASE("apply_generator resolution error on a too-coarse grid") {
    Grid g = e2_lattice(3.0, 9);
    auto f = sample(PairId::e2, g, [](const GroupPoint&) { return std::complex<double>{1.0, 0.0}; });
    CHECK_THROWS_AS(apply_generator(PairId::e2, 1, f, 1e-3), ResolutionError);
}

TEST_CASE("group_convolve on flat_r1: Gaussian closed form") {
    Grid g = flat_lattice(8.0, 257);
    auto gauss = sample(PairId::flat_r1, g, [](const GroupPoint& p) {
        return std::complex<double>{std::exp(-0.5 * p.z[0] * p.z[0]), 0.0};
    });
    auto conv = group_convolve(PairId::flat_r1, gauss, gauss);
    const auto xs = g.axes[0].nodes();
    for (int i = 0; i < 257; i += 16) {
        const double expect = std::sqrt(kPi) * std::exp(-0.25 * xs[i] * xs[i]);
        CHECK(std::abs(conv.values[i] - expect) < 1e-8);
    }
}

TEST_CASE("group_convolve on e2: radial Gaussian identity and Riemann oracle") {
    Grid g = e2_lattice(8.0, 65);
    auto gauss = sample(PairId::e2, g, [](const GroupPoint& p) {
        return std::complex<double>{std::exp(-0.5 * (p.z[0] * p.z[0] + p.z[1] * p.z[1])), 0.0};
    });
    auto conv = group_convolve(PairId::e2, gauss, gauss);
    const auto xs = g.axes[0].nodes();
    double worst = 0.0;
    for (int i = 0; i < 65; i += 8)
        for (int jj = 0; jj < 65; jj += 8) {
            const double r2 = xs[i] * xs[i] + xs[jj] * xs[jj];
            worst = std::max(worst, std::abs(conv.values[i * 65 + jj] - kPi * std::exp(-0.25 * r2)));
        }
    CHECK(worst < 1e-4);

    // independent 2-D Riemann-sum oracle at one off-center point
    const double vx = xs[40], vy = xs[24];
    double direct = 0.0;
    const int m = 161;
    const double hh = 20.0 / (m - 1);
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) {
            const double wx = -10.0 + hh * p, wy = -10.0 + hh * q;
            direct += std::exp(-0.5 * ((vx - wx) * (vx - wx) + (vy - wy) * (vy - wy))) *
                      std::exp(-0.5 * (wx * wx + wy * wy));
        }
    direct *= hh * hh;
    CHECK(std::abs(conv.values[40 * 65 + 24] - direct) < 1e-6);
}

TEST_CASE("group_convolve on e2: delta approximant returns the function") {
    Grid g = e2_lattice(6.0, 65);
    auto f = sample(PairId::e2, g, [](const GroupPoint& p) {
        return std::complex<double>{std::exp(-0.5 * (p.z[0] * p.z[0] + p.z[1] * p.z[1])), 0.0};
    });
    // sixth-order kernel (vanishing 2nd and 4th moments)
    const double s = 0.3;
    auto delta = sample(PairId::e2, g, [&](const GroupPoint& p) {
        const double r2 = p.z[0] * p.z[0] + p.z[1] * p.z[1];
        const double s2 = s * s;
        const double v = (1.5 / s2 - 0.75 * r2 / (s2 * s2) + 0.0625 * r2 * r2 / (s2 * s2 * s2)) *
                         std::exp(-0.5 * r2 / s2) / kPi;
        return std::complex<double>{v, 0.0};
    });
    auto conv = group_convolve(PairId::e2, f, delta);
    double worst = 0.0;
    for (std::size_t i = 0; i < conv.values.size(); ++i)
        worst = std::max(worst, std::abs(conv.values[i] - f.values[i]));
    CHECK(worst < 1e-3);
}

TEST_CASE("group_convolve commutes for random radial samples on e2") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> amp(0.5, 1.5), rate(0.4, 1.2);
    Grid g = e2_lattice(8.0, 65);
    for (int trial = 0; trial < 3; ++trial) {
        const double a1 = amp(rng), b1 = rate(rng), a2 = amp(rng), b2 = rate(rng);
        auto f = sample(PairId::e2, g, [&](const GroupPoint& p) {
            const double r2 = p.z[0] * p.z[0] + p.z[1] * p.z[1];
            return std::complex<double>{a1 * std::exp(-b1 * r2), 0.0};
        });
        auto h = sample(PairId::e2, g, [&](const GroupPoint& p) {
            const double r2 = p.z[0] * p.z[0] + p.z[1] * p.z[1];
            return std::complex<double>{a2 * std::exp(-b2 * r2), 0.0};
        });
        auto fg = group_convolve(PairId::e2, f, h);
        auto gf = group_convolve(PairId::e2, h, f);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < fg.values.size(); ++i) {
            num = std::max(num, std::abs(fg.values[i] - gf.values[i]));
            den = std::max(den, std::abs(fg.values[i]));
        }
        CHECK(num / den < 1e-3);
    }
}

TEST_CASE("group_convolve on u1_c: same-type convolution keeps the type") {
    Grid g = u1c_lattice(8, 8.0, 33);
    auto mk = [&](int m) {
        return sample(
            PairId::u1_c, g,
            [m](const GroupPoint& p) {
                const double r2 = p.z[0] * p.z[0] + p.z[1] * p.z[1];
                return std::polar(std::exp(-0.5 * r2), m * p.theta[0]);
            },
            Symmetry::k_type, {m});
    };
    auto f1 = mk(1);
    auto conv = group_convolve(PairId::u1_c, f1, f1);
    CHECK(conv.symmetry == Symmetry::k_type);
    REQUIRE(conv.ktype.size() == 1);
    CHECK(conv.ktype[0] == 1);

    // cross-type convolution is zero at quadrature accuracy
    auto f2 = mk(2);
    auto cross = group_convolve(PairId::u1_c, f1, f2);
    double sup = 0.0;
    for (const auto& v : cross.values) sup = std::max(sup, std::abs(v));
    CHECK(sup < 1e-12);
}

TEST_CASE("group_convolve on heis1: grid constraint and commutativity") {
    // h_z = 0.5, h_z^2/2 = 0.125 = h_t
    Grid g = heis1_lattice(4.0, 17, 4.0, 65);
    auto f = sample(PairId::heis1, g, [](const GroupPoint& p) {
        const double q = p.z[0] * p.z[0] + p.z[1] * p.z[1] + p.z[2] * p.z[2];
        return std::complex<double>{std::exp(-q), 0.0};
    });
    auto h = sample(PairId::heis1, g, [](const GroupPoint& p) {
        const double q = p.z[0] * p.z[0] + p.z[1] * p.z[1] + p.z[2] * p.z[2];
        return std::complex<double>{std::exp(-1.2 * q), 0.0};
    });
    auto fg = group_convolve(PairId::heis1, f, h);
    auto gf = group_convolve(PairId::heis1, h, f);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < fg.values.size(); ++i) {
        num = std::max(num, std::abs(fg.values[i] - gf.values[i]));
        den = std::max(den, std::abs(fg.values[i]));
    }
    CHECK(num / den < 1e-3);

    // incompatible t-spacing is rejected
    Grid bad = heis1_lattice(4.0, 17, 4.0, 41);
    auto fb = sample(PairId::heis1, bad, [](const GroupPoint&) {
        return std::complex<double>{1.0, 0.0};
    });
    CHECK_THROWS_AS(group_convolve(PairId::heis1, fb, fb), InputError);
}

TEST_CASE("group_convolve rejects mismatched grids") {
    auto f = sample(PairId::e2, e2_lattice(8.0, 33), [](const GroupPoint&) {
        return std::complex<double>{1.0, 0.0};
    });
    auto g = sample(PairId::e2, e2_lattice(8.0, 65), [](const GroupPoint&) {
        return std::complex<double>{1.0, 0.0};
    });
    CHECK_THROWS_AS(group_convolve(PairId::e2, f, g), InputError);
}

TEST_CASE("group_convolve attaches a truncation warning on poor decay") {
    Grid g = e2_lattice(2.0, 33);
    auto f = sample(PairId::e2, g, [](const GroupPoint& p) {
        const double r2 = p.z[0] * p.z[0] + p.z[1] * p.z[1];
        return std::complex<double>{std::exp(-0.5 * r2), 0.0};
    });
    auto conv = group_convolve(PairId::e2, f, f);
    CHECK(!conv.warning.empty());
}

TEST_CASE("haar weights integrate Gaussians correctly") {
    // lattice and radial charts agree with closed forms
    auto f1 = sample(PairId::e2, e2_lattice(10.0, 101), [](const GroupPoint& p) {
        const double r2 = p.z[0] * p.z[0] + p.z[1] * p.z[1];
        return std::complex<double>{std::exp(-0.5 * r2), 0.0};
    });
    CHECK(std::abs(integral(f1) - 2.0 * kPi) < 1e-8);

    auto f2 = sample(PairId::e2, e2_radial(12.0, 200), [](const GroupPoint& p) {
        return std::complex<double>{std::exp(-0.5 * p.z[0] * p.z[0]), 0.0};
    });
    CHECK(std::abs(integral(f2) - 2.0 * kPi) < 1e-12);

    auto f3 = sample(PairId::heis1, heis1_radial(10.0, 120, 10.0, 120), [](const GroupPoint& p) {
        const double q = p.z[0] * p.z[0] + p.z[2] * p.z[2];
        return std::complex<double>{std::exp(-0.5 * q), 0.0};
    });
    CHECK(std::abs(integral(f3) - 2.0 * kPi * std::sqrt(2.0 * kPi)) < 1e-10);

    auto f4 = sample(PairId::u1_c, u1c_radial(16, 12.0, 150), [](const GroupPoint& p) {
        return std::complex<double>{std::exp(-0.5 * p.z[0] * p.z[0]), 0.0};
    });
    CHECK(std::abs(integral(f4) - 2.0 * kPi) < 1e-12);
}
