#include "sphan/ktype.hpp"

#include <cmath>
#include <numbers>

#include "sphan/errors.hpp"

namespace sphan::ktype {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using pairs::Symmetry;

// theta must be the leading axis and cover the full circle
void require_torus_chart(const SampledFunction& f) {
    if (!pairs::descriptor(f.pair).strong)
        throw InputError("ktype: pair " + std::string(pairs::to_string(f.pair)) +
                         " is not a strong pair");
    if (f.grid.dim() < 1 || f.grid.axes[0].role != AxisRole::theta ||
        f.grid.axes[0].kind != AxisKind::periodic ||
        std::fabs((f.grid.axes[0].max - f.grid.axes[0].min) - kTwoPi) > 1e-12)
        throw InputError("ktype: needs a chart with a full-circle theta axis first");
}

enum class Side { right_inverse, right };

// (1/n) sum_a f(theta_{i -+ a}, z) e^{+- i m phi_a}
SampledFunction torus_average(const SampledFunction& f, int m, Side side) {
    require_torus_chart(f);
    const int ntheta = f.grid.axes[0].n;
    std::size_t slice = 1;
    for (int a = 1; a < f.grid.dim(); ++a) slice *= static_cast<std::size_t>(f.grid.axes[a].n);

    SampledFunction out = f;
    std::fill(out.values.begin(), out.values.end(), cplx{0.0, 0.0});
    for (int a = 0; a < ntheta; ++a) {
        const double phi = kTwoPi * a / ntheta;
        const cplx character =
            side == Side::right_inverse ? std::polar(1.0, m * phi) : std::polar(1.0, -m * phi);
        for (int i = 0; i < ntheta; ++i) {
            const int src = side == Side::right_inverse ? (i - a + ntheta) % ntheta : (i + a) % ntheta;
            const cplx* frow = f.values.data() + static_cast<std::size_t>(src) * slice;
            cplx* orow = out.values.data() + static_cast<std::size_t>(i) * slice;
            for (std::size_t s = 0; s < slice; ++s) orow[s] += character * frow[s];
        }
    }
    const double inv = 1.0 / ntheta;
    for (auto& v : out.values) v *= inv;
    out.symmetry = Symmetry::k_type;
    out.ktype = {m};
    return out;
}

}  // namespace

KTypeIndex xi_prime_map(PairId id, const std::vector<int>& m) {
    const auto& d = pairs::descriptor(id);
    if (!d.strong) throw InputError("xi_prime_map: pair is not strong");
    if (static_cast<int>(m.size()) != d.r)
        throw InputError("xi_prime_map: type index length must equal r");
    KTypeIndex out;
    out.m = m;
    out.xi_prime.reserve(m.size());
    for (int mj : m) {
        out.xi_prime.push_back(static_cast<double>(mj));
        out.mu_norm_sq += static_cast<double>(mj) * mj;
    }
    return out;
}

SampledFunction project_ktype(const SampledFunction& f, int m) {
    return torus_average(f, m, Side::right_inverse);
}

SampledFunction a_type(const SampledFunction& f, int m) { return torus_average(f, m, Side::right); }

SampledFunction s_type(const SampledFunction& big_f) { return big_f; }

Decomposition decompose(const SampledFunction& f, int max_type) {
    if (max_type < 0) throw InputError("decompose: max_type must be >= 0");
    require_torus_chart(f);
    Decomposition out;
    SampledFunction residual = f;
    for (int m = -max_type; m <= max_type; ++m) {
        out.types.push_back(m);
        out.components.push_back(project_ktype(f, m));
        const auto& comp = out.components.back();
        for (std::size_t i = 0; i < residual.values.size(); ++i)
            residual.values[i] -= comp.values[i];
    }
    out.tail_norm = pairs::l2_norm(residual);
    return out;
}

Report verify_type_orthogonality(PairId id, const SampledFunction& fm, const SampledFunction& gm,
                                 double tol) {
    Report rep;
    rep.check = "ktype-orthogonality";
    rep.pair = std::string(pairs::to_string(id));
    rep.tolerance = tol;
    if (fm.symmetry != Symmetry::k_type || gm.symmetry != Symmetry::k_type ||
        fm.ktype.size() != 1 || gm.ktype.size() != 1)
        throw InputError("verify_type_orthogonality: operands must carry K-type tags");
    if (fm.ktype == gm.ktype) {
        rep.pass = true;
        rep.note = "not applicable (equal types)";
        return rep;
    }
    const auto conv = pairs::group_convolve(id, fm, gm);
    const double denom = pairs::sup_norm(fm) * pairs::sup_norm(gm);
    rep.observed = pairs::sup_norm(conv) / std::max(denom, 1e-300);
    rep.pass = rep.observed < tol;
    rep.details = {{"sup_convolution", pairs::sup_norm(conv)}, {"sup_f_times_sup_g", denom}};
    return rep;
}

Report scalar_a_s_roundtrip(const SampledFunction& fm) {
    if (fm.symmetry != Symmetry::k_type || fm.ktype.size() != 1)
        throw InputError("scalar_a_s_roundtrip: input must carry a K-type tag");
    require_torus_chart(fm);
    const int m = fm.ktype[0];
    const int ntheta = fm.grid.axes[0].n;
    std::size_t slice = 1;
    for (int a = 1; a < fm.grid.dim(); ++a) slice *= static_cast<std::size_t>(fm.grid.axes[a].n);

    Report rep;
    rep.check = "scalar_a_s_roundtrip";
    rep.pair = std::string(pairs::to_string(fm.pair));
    rep.tolerance = 1e-12;

    const auto af = a_type(fm, m);
    const auto back = s_type(af);
    const double scale = std::max(pairs::sup_norm(fm), 1e-300);

    double roundtrip = 0.0;
    for (std::size_t i = 0; i < fm.values.size(); ++i)
        roundtrip = std::max(roundtrip, std::abs(back.values[i] - fm.values[i]));
    roundtrip /= scale;

    // right translation by grid angles stays on the lattice:
    // A_m f(x k_phi) = e^{i m phi} A_m f(x)
    double equiv = 0.0;
    for (int shift : {1, ntheta / 3}) {
        const double phi = kTwoPi * shift / ntheta;
        const cplx factor = std::polar(1.0, m * phi);
        for (int i = 0; i < ntheta; ++i) {
            const int ishift = (i + shift) % ntheta;
            const cplx* base = af.values.data() + static_cast<std::size_t>(i) * slice;
            const cplx* moved = af.values.data() + static_cast<std::size_t>(ishift) * slice;
            for (std::size_t s = 0; s < slice; ++s)
                equiv = std::max(equiv, std::abs(moved[s] - factor * base[s]));
        }
    }
    equiv /= scale;

    // left translation k_phi x rotates z as well; at phi = pi/2 the
    // quarter turn (x, y) -> (-y, x) maps the square lattice to itself
    double equiv_left = 0.0;
    const auto& axes = fm.grid.axes;
    if (fm.grid.dim() == 3 && axes[1].role == AxisRole::x && axes[2].role == AxisRole::y &&
        axes[1].n == axes[2].n && ntheta % 4 == 0) {
        const int n = axes[1].n;
        const int shift = ntheta / 4;
        const cplx factor = std::polar(1.0, m * kTwoPi / 4.0);
        auto at = [&](int a, int p, int q) {
            return af.values[(static_cast<std::size_t>(a) * n + p) * n + q];
        };
        for (int i = 0; i < ntheta; ++i)
            for (int p = 0; p < n; ++p)
                for (int q = 0; q < n; ++q)
                    equiv_left = std::max(
                        equiv_left,
                        std::abs(at((i + shift) % ntheta, n - 1 - q, p) - factor * at(i, p, q)));
        equiv_left /= scale;
        rep.details.emplace_back("equivariance_left_residual", equiv_left);
    }

    rep.observed = std::max({roundtrip, equiv, equiv_left});
    rep.pass = rep.observed < rep.tolerance;
    rep.details.emplace_back("roundtrip_residual", roundtrip);
    rep.details.emplace_back("equivariance_residual", equiv);
    return rep;
}

}  // namespace sphan::ktype
