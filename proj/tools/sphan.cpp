// Command-line front end: spectrum enumeration, spherical transforms and
// their inverses, verification pipelines, K-type decomposition, bump
// interpolation and Schwartz extension.  Exit codes: 0 pass, 1 fail,
// 2 usage, 3 input, 4 inconclusive.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "sphan/errors.hpp"
#include "sphan/io.hpp"
#include "sphan/ktype.hpp"
#include "sphan/pairs.hpp"
#include "sphan/schwartz.hpp"
#include "sphan/specfun.hpp"
#include "sphan/transform.hpp"

using namespace sphan;
using namespace sphan::pairs;
using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

struct RunConfig {
    std::string pair = "e2";
    std::uint64_t seed = 12345;
    std::string out;
    std::string outdir = ".";
    int nodes = 400;
    double truncation = 12.0;
    int grid_n = 65;
    int ntheta = 16;
    double lambda_max = 8.0;
    int lambda_n = 200;
    int kmax = 40;
    double tol = -1.0;  // negative: per-check default
    double step = 1e-3;
    int n_order = 2;
    int m_order = 3;
    int points = 50;
    int mmax = 8;
    double radius = 1.0 / 3.0;
};

struct Range {
    double lo = 0.0, hi = 0.0;
    int n = 0;
};

Range parse_range(const std::string& text) {
    Range r;
    const auto a = text.find(':');
    const auto b = text.rfind(':');
    if (a == std::string::npos || b == a)
        throw UsageError("range '" + text + "' must look like min:max:count");
    try {
        r.lo = std::stod(text.substr(0, a));
        r.hi = std::stod(text.substr(a + 1, b - a - 1));
        r.n = std::stoi(text.substr(b + 1));
    } catch (const std::exception&) {
        throw UsageError("range '" + text + "' must look like min:max:count");
    }
    if (r.n < 1) throw UsageError("range '" + text + "' needs a positive count");
    return r;
}

void load_config_file(const std::string& path, std::map<std::string, std::string>& kv) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read config file '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = val;
    }
}

void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& kv) {
    auto geti = [&](const char* k, int& slot) {
        if (auto it = kv.find(k); it != kv.end()) slot = std::stoi(it->second);
    };
    auto getd = [&](const char* k, double& slot) {
        if (auto it = kv.find(k); it != kv.end()) slot = std::stod(it->second);
    };
    auto gets = [&](const char* k, std::string& slot) {
        if (auto it = kv.find(k); it != kv.end()) slot = it->second;
    };
    gets("pair", cfg.pair);
    if (auto it = kv.find("seed"); it != kv.end()) cfg.seed = std::stoull(it->second);
    gets("out", cfg.out);
    gets("output_dir", cfg.outdir);
    geti("nodes", cfg.nodes);
    getd("truncation", cfg.truncation);
    geti("grid_n", cfg.grid_n);
    geti("ntheta", cfg.ntheta);
    getd("lambda_max", cfg.lambda_max);
    geti("lambda_n", cfg.lambda_n);
    geti("kmax", cfg.kmax);
    getd("tol", cfg.tol);
    getd("step", cfg.step);
    geti("N", cfg.n_order);
    geti("M", cfg.m_order);
    geti("points", cfg.points);
    geti("mmax", cfg.mmax);
    getd("radius", cfg.radius);
}

void validate_config(const RunConfig& cfg) {
    if (cfg.nodes < 8 || cfg.lambda_n < 8) throw UsageError("node counts must be >= 8");
    if (cfg.tol == 0.0) throw UsageError("tolerances must be positive");
    if (cfg.kmax < 0 || cfg.points < 1 || cfg.mmax < 0) throw UsageError("invalid count setting");
}

PairId pair_of(const RunConfig& cfg) {
    try {
        return pair_from_string(cfg.pair);
    } catch (const InputError& e) {
        throw UsageError(e.what());
    }
}

void emit(const json& meta) { std::cout << meta.dump(2) << '\n'; }

// ----- built-in test families ------------------------------------------

SampledFunction radial_family(PairId id, const RunConfig& cfg) {
    switch (id) {
        case PairId::flat_r1: {
            int n = std::max(cfg.grid_n, 801);
            if (n % 2 == 0) ++n;
            return sample(id, flat_lattice(cfg.truncation, n), [](const GroupPoint& p) {
                return cplx{std::exp(-0.5 * p.z[0] * p.z[0]), 0.0};
            });
        }
        case PairId::e2:
            return sample(id, e2_radial(cfg.truncation, std::max(cfg.nodes, 400)),
                          [](const GroupPoint& p) {
                              return cplx{std::exp(-0.5 * p.z[0] * p.z[0]), 0.0};
                          });
        case PairId::u1_c:
            return sample(
                id, u1c_radial(cfg.ntheta, cfg.truncation, std::max(cfg.nodes, 400)),
                [](const GroupPoint& p) {
                    const double prof = std::exp(-0.5 * p.z[0] * p.z[0]);
                    cplx acc{0.0, 0.0};
                    for (int m = -2; m <= 2; ++m)
                        acc += std::polar(prof * std::exp(-0.4 * m * m), m * p.theta[0]);
                    return acc;
                },
                Symmetry::k_central);
        case PairId::heis1:
            return sample(id, heis1_radial(8.0, std::max(cfg.nodes / 2, 140), 10.0, 220),
                          [](const GroupPoint& p) {
                              const double rho2 = p.z[0] * p.z[0] + p.z[1] * p.z[1];
                              const double t = p.z[2];
                              return cplx{std::exp(-0.5 * (rho2 + t * t)) * std::cos(4.0 * t), 0.0};
                          });
    }
    throw UsageError("unknown pair");
}

SampledFunction lattice_gaussian(PairId id, double rate) {
    switch (id) {
        case PairId::flat_r1:
            return sample(id, flat_lattice(8.0, 257), [rate](const GroupPoint& p) {
                return cplx{std::exp(-rate * p.z[0] * p.z[0]), 0.0};
            });
        case PairId::e2:
            return sample(id, e2_lattice(8.0, 65), [rate](const GroupPoint& p) {
                const double r2 = p.z[0] * p.z[0] + p.z[1] * p.z[1];
                return cplx{std::exp(-rate * r2), 0.0};
            });
        case PairId::u1_c:
            return sample(
                id, u1c_lattice(16, 8.0, 33),
                [rate](const GroupPoint& p) {
                    const double r2 = p.z[0] * p.z[0] + p.z[1] * p.z[1];
                    return std::polar(std::exp(-rate * r2), p.theta[0]);
                },
                Symmetry::k_type, {1});
        case PairId::heis1:
            return sample(id, heis1_lattice(5.0, 21, 5.0, 81), [rate](const GroupPoint& p) {
                const double q = p.z[0] * p.z[0] + p.z[1] * p.z[1] + p.z[2] * p.z[2];
                return cplx{std::exp(-rate * q), 0.0};
            });
    }
    throw UsageError("unknown pair");
}

std::vector<SpectrumPoint> sample_points(PairId id) {
    std::vector<SpectrumPoint> pts;
    switch (id) {
        case PairId::flat_r1:
        case PairId::e2:
            for (double l : {0.0, 0.5, 1.0, 1.5, 2.0, 3.0})
                pts.push_back(eigenvalue_map(id, {.lambda = l}));
            break;
        case PairId::u1_c:
            for (double l : {0.0, 0.5, 1.0, 2.0, 3.0})
                pts.push_back(eigenvalue_map(id, {.lambda = l, .m = 1}));
            break;
        case PairId::heis1:
            for (int k = 0; k <= 3; ++k)
                for (double l : {0.5, 1.0, 2.0})
                    pts.push_back(eigenvalue_map(id, {.lambda = l, .k = k}));
            break;
    }
    return pts;
}

transform::SpectrumQuadrature default_quadrature(PairId id, const RunConfig& cfg, int m_lo,
                                                 int m_hi) {
    transform::PlancherelOptions opt;
    opt.lambda_max = cfg.lambda_max;
    opt.lambda_n = cfg.lambda_n;
    opt.k_max = cfg.kmax;
    opt.m_min = m_lo;
    opt.m_max = m_hi;
    switch (id) {
        case PairId::flat_r1:
            opt.lambda_max = std::max(cfg.lambda_max, 10.0);
            break;
        case PairId::e2:
        case PairId::u1_c:
            opt.lambda_max = std::max(cfg.lambda_max, 12.0);
            opt.lambda_n = std::max(cfg.lambda_n, 400);
            break;
        case PairId::heis1:
            opt.lambda_max = std::max(cfg.lambda_max, 10.0);
            opt.lambda_n = std::max(cfg.lambda_n, 360);
            break;
    }
    return transform::plancherel_quadrature(id, opt);
}

Grid default_out_grid(PairId id, const RunConfig& cfg) {
    switch (id) {
        case PairId::flat_r1: {
            int n = std::max(cfg.grid_n, 801);
            if (n % 2 == 0) ++n;
            return flat_lattice(cfg.truncation, n);
        }
        case PairId::e2: return e2_radial(cfg.truncation, std::max(cfg.nodes, 400));
        case PairId::u1_c:
            return u1c_radial(cfg.ntheta, cfg.truncation, std::max(cfg.nodes, 400));
        case PairId::heis1: return heis1_radial(8.0, std::max(cfg.nodes / 2, 140), 10.0, 220);
    }
    throw UsageError("unknown pair");
}

double rel_l2(const SampledFunction& a, const SampledFunction& b) {
    const auto w = haar_weights(a.pair, a.grid);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        num += w[i] * std::norm(a.values[i] - b.values[i]);
        den += w[i] * std::norm(a.values[i]);
    }
    return std::sqrt(num / std::max(den, 1e-300));
}

// ----- verbs ------------------------------------------------------------

int cmd_spectrum(const RunConfig& cfg, const std::string& lambda_range,
                 const std::string& eta_range, int m_lo, int m_hi) {
    const PairId id = pair_of(cfg);
    SpectrumBounds b;
    const Range lr = parse_range(lambda_range);
    b.lambda_min = lr.lo;
    b.lambda_max = lr.hi;
    b.lambda_n = lr.n;
    b.m_min = m_lo;
    b.m_max = m_hi;
    b.k_max = cfg.kmax;
    if (id == PairId::heis1) {
        Range er;
        if (!eta_range.empty()) {
            er = parse_range(eta_range);
        } else {
            er.lo = 0.0;
            er.hi = std::max(std::fabs(lr.lo), std::fabs(lr.hi));
            er.n = lr.n;
        }
        b.eta_min = er.lo;
        b.eta_max = er.hi;
        b.eta_n = er.n;
    }
    const auto pts = spectrum_grid(id, b);
    const std::string path = cfg.out.empty() ? std::string("spectrum.csv") : cfg.out;
    io::write_atomic(path, io::spectrum_csv(id, pts, cfg.seed));
    emit({{"command", "spectrum"},
          {"pair", cfg.pair},
          {"seed", cfg.seed},
          {"points", pts.size()},
          {"out", path}});
    return 0;
}

SampledFunction load_function(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InputError("input: '" + path + "' is not valid JSON: " + std::string(e.what()));
    }
    return io::sampled_function_from_json(j);
}

int cmd_transform(const RunConfig& cfg, const std::string& in_path) {
    const PairId id = pair_of(cfg);
    const auto f = load_function(in_path);
    if (f.pair != id) throw InputError("input: function pair does not match --pair");
    int m_lo = -cfg.mmax, m_hi = cfg.mmax;
    if (id == PairId::u1_c && f.symmetry == Symmetry::k_type) m_lo = m_hi = f.ktype.at(0);
    const auto quad = default_quadrature(id, cfg, m_lo, m_hi);
    const auto gf = transform::spherical_transform(f, quad);
    const std::string path = cfg.out.empty() ? std::string("transform.csv") : cfg.out;
    io::write_atomic(path, io::spectrum_function_csv(gf, cfg.seed));
    emit({{"command", "transform"},
          {"pair", cfg.pair},
          {"seed", cfg.seed},
          {"points", gf.points.size()},
          {"grid_points", f.grid.size()},
          {"truncation", f.truncation},
          {"out", path}});
    return 0;
}

int cmd_invert(const RunConfig& cfg, const std::string& in_path, const std::string& compare_path) {
    const PairId id = pair_of(cfg);
    std::ifstream in(in_path);
    if (!in) throw InputError("cannot read '" + in_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const auto gf = io::spectrum_function_from_csv(id, buf.str());
    const auto grid = default_out_grid(id, cfg);
    auto f = transform::inverse_transform(gf, grid);
    const std::string path = cfg.out.empty() ? std::string("inverse.json") : cfg.out;
    auto j = io::to_json(f);
    j["seed"] = cfg.seed;
    json meta;
    meta["command"] = "invert";
    meta["pair"] = cfg.pair;
    meta["seed"] = cfg.seed;
    meta["grid_points"] = f.grid.size();
    meta["out"] = path;
    if (!f.warning.empty()) meta["note"] = f.warning;
    if (!compare_path.empty()) {
        const auto ref = load_function(compare_path);
        if (ref.grid.size() != f.grid.size())
            throw InputError("input: --compare function lives on a different grid");
        meta["relative_l2_error"] = rel_l2(ref, f);
    }
    io::write_atomic(path, j.dump(2) + "\n");
    emit(meta);
    return 0;
}

int finish_report(const RunConfig& cfg, Report rep, const std::string& status = {}) {
    auto j = io::report_json(rep);
    j["seed"] = cfg.seed;
    if (!status.empty()) j["status"] = status;
    if (!cfg.out.empty()) io::write_atomic(cfg.out, j.dump(2) + "\n");
    emit(j);
    if (status == "inconclusive") return 4;
    return rep.pass ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg, const std::string& check, const std::string& profile) {
    const PairId id = pair_of(cfg);
    std::mt19937_64 rng(cfg.seed);

    if (check == "plancherel") {
        const double tol =
            cfg.tol > 0 ? cfg.tol
                        : (id == PairId::heis1 ? 1e-3 : (id == PairId::flat_r1 ? 1e-6 : 1e-5));
        const auto f = radial_family(id, cfg);
        int m_lo = 0, m_hi = 0;
        if (id == PairId::u1_c) {
            m_lo = -2;
            m_hi = 2;
        }
        return finish_report(
            cfg, transform::verify_plancherel(f, default_quadrature(id, cfg, m_lo, m_hi), tol));
    }
    if (check == "multiplicativity") {
        const double tol = cfg.tol > 0 ? cfg.tol : 1e-3;
        const auto f = lattice_gaussian(id, 0.5);
        const auto g = lattice_gaussian(id, 0.75);
        return finish_report(cfg,
                             transform::verify_multiplicativity(id, f, g, sample_points(id), tol));
    }
    if (check == "commutativity") {
        const double tol = cfg.tol > 0 ? cfg.tol : 1e-3;
        const auto f = lattice_gaussian(id, 0.5);
        const auto g = lattice_gaussian(id, 0.75);
        return finish_report(cfg, transform::verify_commutativity(id, f, g, tol));
    }
    if (check == "posdef") {
        const double tol = cfg.tol > 0 ? cfg.tol : 1e-8;
        if (cfg.points > 200) throw UsageError("posdef supports at most 200 points");
        SpectrumParams prm;
        switch (id) {
            case PairId::flat_r1:
            case PairId::e2: prm.lambda = 1.0; break;
            case PairId::u1_c: prm = {.lambda = 1.0, .m = 2}; break;
            case PairId::heis1: prm = {.lambda = 1.0, .k = 3}; break;
        }
        std::normal_distribution<double> nd(0.0, 1.3);
        std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
        std::vector<GroupPoint> pts;
        for (int i = 0; i < cfg.points; ++i) {
            GroupPoint p = identity(id);
            for (auto& th : p.theta) th = ang(rng);
            for (auto& c : p.z) c = nd(rng);
            pts.push_back(p);
        }
        return finish_report(
            cfg, transform::verify_positive_definite(id, eigenvalue_map(id, prm), pts, tol));
    }
    if (check == "eigen") {
        const double tol = cfg.tol > 0 ? cfg.tol : 1e-3;
        SpectrumParams prm;
        switch (id) {
            case PairId::flat_r1: prm.lambda = 2.0; break;
            case PairId::e2: prm.lambda = 3.0; break;
            case PairId::u1_c: prm = {.lambda = 2.0, .m = 3}; break;
            case PairId::heis1: prm = {.lambda = 1.0, .k = 2}; break;
        }
        return finish_report(cfg,
                             transform::verify_eigen(id, eigenvalue_map(id, prm), cfg.step, tol));
    }
    if (check == "ktype-orthogonality") {
        if (id != PairId::u1_c) throw UsageError("ktype-orthogonality runs on the strong pair u1_c");
        const double tol = cfg.tol > 0 ? cfg.tol : 1e-10;
        Grid g = u1c_lattice(16, 8.0, 33);
        auto mk = [&](int m, double rate) {
            return sample(
                id, g,
                [m, rate](const GroupPoint& p) {
                    const double r2 = p.z[0] * p.z[0] + p.z[1] * p.z[1];
                    return std::polar(std::exp(-rate * r2), m * p.theta[0]);
                },
                Symmetry::k_type, {m});
        };
        return finish_report(cfg,
                             ktype::verify_type_orthogonality(id, mk(1, 0.5), mk(2, 0.75), tol));
    }
    if (check == "decay") {
        if (id != PairId::u1_c) throw UsageError("decay runs on the strong pair u1_c");
        SampledFunction f;
        int max_types = 16;
        if (profile == "abs-theta") {
            max_types = 31;
            f = sample(
                id, u1c_radial(132, 8.0, 80),
                [](const GroupPoint& p) {
                    const double u = p.theta[0] <= kPi ? p.theta[0] : 2.0 * kPi - p.theta[0];
                    return cplx{u * std::exp(-0.5 * p.z[0] * p.z[0]), 0.0};
                },
                Symmetry::k_central);
        } else if (profile.empty() || profile == "gaussian") {
            const double s = 0.45;
            f = sample(
                id, u1c_radial(72, 8.0, 80),
                [s](const GroupPoint& p) {
                    double prof = 0.0;
                    for (int j = -3; j <= 3; ++j) {
                        const double th = p.theta[0] - 2.0 * kPi * j;
                        prof += std::exp(-0.5 * th * th / (s * s));
                    }
                    return cplx{prof * std::exp(-0.5 * p.z[0] * p.z[0]), 0.0};
                },
                Symmetry::k_central);
        } else {
            throw UsageError("decay profile must be 'gaussian' or 'abs-theta'");
        }
        const auto rep = schwartz::verify_decay(f, cfg.n_order, cfg.m_order, max_types);
        Report out;
        out.check = "decay";
        out.pair = cfg.pair;
        out.tolerance = -static_cast<double>(cfg.m_order) + 0.2;
        out.observed = rep.fitted_exponent;
        out.pass = rep.pass;
        out.details = {{"tail_norm", rep.tail_norm},
                       {"max_seminorm", rep.value},
                       {"types", static_cast<double>(rep.per_type.size())}};
        out.note = "status " + rep.status;
        return finish_report(cfg, out, rep.status == "inconclusive" ? "inconclusive" : "");
    }
    if (check == "generators") {
        const double tol = cfg.tol > 0 ? cfg.tol : 1e-10;
        const int ell = descriptor(id).ell;
        std::vector<SpectrumPoint> sample_pts;
        switch (id) {
            case PairId::flat_r1:
            case PairId::e2:
                for (double l = 0.0; l <= 100.0; l += 0.5)
                    sample_pts.push_back(eigenvalue_map(id, {.lambda = l}));
                break;
            case PairId::u1_c:
                for (int m = -10; m <= 10; ++m)
                    for (double l = 0.0; l <= 10.0; l += 1.0)
                        sample_pts.push_back(eigenvalue_map(id, {.lambda = l, .m = m}));
                break;
            case PairId::heis1:
                for (int k = 0; k <= 10; ++k)
                    for (double l = -10.0; l <= 10.0; l += 0.5)
                        sample_pts.push_back(eigenvalue_map(id, {.lambda = l, .k = k}));
                break;
        }
        return finish_report(
            cfg, schwartz::change_of_generators(id, schwartz::augment_with_square(ell),
                                                schwartz::project_first(ell), sample_pts, tol));
    }
    throw UsageError("unknown check '" + check +
                     "' (plancherel, multiplicativity, commutativity, posdef, eigen, "
                     "ktype-orthogonality, decay, generators)");
}

int cmd_decompose(const RunConfig& cfg, const std::string& in_path) {
    const PairId id = pair_of(cfg);
    if (id != PairId::u1_c) throw UsageError("decompose runs on the strong pair u1_c");
    const auto f = load_function(in_path);
    if (f.pair != id) throw InputError("input: function pair does not match --pair");
    const auto dec = ktype::decompose(f, cfg.mmax);
    const double tail_rel = dec.tail_norm / std::max(pairs::l2_norm(f), 1e-300);
    const int tail_flag = tail_rel > 1e-8 ? 1 : 0;

    std::ostringstream index;
    index << "# seed=" << cfg.seed << "\nm,l2_norm,tail_flag\n";
    for (std::size_t i = 0; i < dec.types.size(); ++i) {
        auto j = io::to_json(dec.components[i]);
        j["seed"] = cfg.seed;
        io::write_atomic(cfg.outdir + "/type_" + std::to_string(dec.types[i]) + ".json",
                         j.dump(2) + "\n");
        index << dec.types[i] << ',' << io::format_double(pairs::l2_norm(dec.components[i])) << ','
              << tail_flag << '\n';
    }
    io::write_atomic(cfg.outdir + "/index.csv", index.str());
    emit({{"command", "decompose"},
          {"pair", cfg.pair},
          {"seed", cfg.seed},
          {"types", dec.types.size()},
          {"tail_norm", dec.tail_norm},
          {"outdir", cfg.outdir}});
    return 0;
}

int cmd_interpolate(const RunConfig& cfg, const std::string& in_path,
                    const std::string& grid_range) {
    std::ifstream in(in_path);
    if (!in) throw InputError("cannot read '" + in_path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InputError("input: '" + in_path + "' is not valid JSON: " + std::string(e.what()));
    }
    if (!j.contains("m_min") || !j.contains("values"))
        throw InputError("input: lattice JSON needs fields 'm_min' and 'values'");
    schwartz::LatticeFunction a;
    a.m_min = j["m_min"].get<int>();
    for (const auto& v : j["values"]) a.values.push_back(v.get<double>());
    const auto h = schwartz::bump_interpolate(a, schwartz::BumpSpec{cfg.radius});

    const Range gr = parse_range(grid_range);
    std::ostringstream csv;
    csv << "# seed=" << cfg.seed << "\nt,h\n";
    for (int i = 0; i < gr.n; ++i) {
        const double t = gr.lo + (gr.hi - gr.lo) * i / std::max(1, gr.n - 1);
        csv << io::format_double(t) << ',' << io::format_double(h(t)) << '\n';
    }
    const std::string path = cfg.out.empty() ? std::string("interpolate.csv") : cfg.out;
    io::write_atomic(path, csv.str());
    emit({{"command", "interpolate"}, {"seed", cfg.seed}, {"out", path}});
    return 0;
}

int cmd_extend(const RunConfig& cfg, const std::string& in_path) {
    const PairId id = pair_of(cfg);
    if (id != PairId::u1_c) throw UsageError("extend runs on the strong pair u1_c");
    const auto f = load_function(in_path);
    if (f.pair != id) throw InputError("input: function pair does not match --pair");

    schwartz::DecayOptions opts;
    const auto decay = schwartz::verify_decay(f, 2, 3, cfg.mmax, opts);
    const auto slices = schwartz::compute_type_slices(f, cfg.mmax, opts);
    const auto u = schwartz::schwartz_extend(slices, schwartz::BumpSpec{cfg.radius}, decay, 0.02);

    std::ostringstream csv;
    csv << "# seed=" << cfg.seed << "\nxi_1,xi_2,value_re,value_im\n";
    const auto x1 = u.grid.axes[0].nodes();
    const auto x2 = u.grid.axes[1].nodes();
    for (int i = 0; i < u.grid.axes[0].n; ++i)
        for (int jn = 0; jn < u.grid.axes[1].n; ++jn) {
            const auto v = u.values[static_cast<std::size_t>(i) * u.grid.axes[1].n + jn];
            csv << io::format_double(x1[i]) << ',' << io::format_double(x2[jn]) << ','
                << io::format_double(v.real()) << ',' << io::format_double(v.imag()) << '\n';
        }
    const std::string path = cfg.out.empty() ? std::string("extend.csv") : cfg.out;
    io::write_atomic(path, csv.str());
    emit({{"command", "extend"},
          {"pair", cfg.pair},
          {"seed", cfg.seed},
          {"fitted_exponent", decay.fitted_exponent},
          {"out", path}});
    return 0;
}

int run(int argc, char** argv) {
    RunConfig cfg;

    // config file: --config PATH or SPHAN_CONFIG, flags override its values
    std::string config_path;
    if (const char* env = std::getenv("SPHAN_CONFIG")) config_path = env;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
    if (!config_path.empty()) {
        std::map<std::string, std::string> kv;
        load_config_file(config_path, kv);
        apply_config(cfg, kv);
    }

    CLI::App app{
        "Numerical spherical analysis on four model pairs: spectra, spherical transforms, "
        "Plancherel checks, K-type decomposition and Schwartz decay diagnostics."};
    app.require_subcommand(1);
    std::string config_dummy;
    app.add_option("--config", config_dummy, "flat key=value config file (env SPHAN_CONFIG)");

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--pair", cfg.pair, "pair id: flat_r1, e2, u1_c, heis1");
        sub->add_option("--seed", cfg.seed, "seed recorded in every output");
        sub->add_option("--out", cfg.out, "output file");
        sub->add_option("--outdir", cfg.outdir, "output directory");
        sub->add_option("--nodes", cfg.nodes, "quadrature node count");
        sub->add_option("--truncation", cfg.truncation, "truncation radius R");
        sub->add_option("--grid-n", cfg.grid_n, "lattice points per axis");
        sub->add_option("--ntheta", cfg.ntheta, "torus nodes");
        sub->add_option("--lambda-max", cfg.lambda_max, "spectrum cutoff");
        sub->add_option("--lambda-n", cfg.lambda_n, "spectrum nodes");
        sub->add_option("--kmax", cfg.kmax, "fan truncation (heis1)");
        sub->add_option("--tol", cfg.tol, "tolerance (per-check default when omitted)");
        sub->add_option("--step", cfg.step, "finite-difference step");
        sub->add_option("--N", cfg.n_order, "seminorm order N");
        sub->add_option("--M", cfg.m_order, "decay order M");
        sub->add_option("--points", cfg.points, "sample point count");
        sub->add_option("--mmax", cfg.mmax, "K-type window");
        sub->add_option("--radius", cfg.radius, "bump radius (in (0, 1/2))");
    };

    std::string lambda_range = "0:8:17", eta_range, in_path, compare_path, check, profile,
                grid_range = "-8:8:321";
    int m_lo = -2, m_hi = 2;

    auto* sp = app.add_subcommand(
        "spectrum", "Enumerate the embedded spectrum on a parameter grid; for heis1 this is the "
                    "fan of rays plus its closing half-line.  Writes CSV.");
    add_common(sp);
    sp->add_option("--lambda", lambda_range, "lambda range min:max:count");
    sp->add_option("--eta", eta_range, "limit-ray range min:max:count (heis1)");
    sp->add_option("--mmin", m_lo, "lowest type (u1_c)");
    sp->add_option("--mmax-type", m_hi, "highest type (u1_c)");

    auto* tr = app.add_subcommand(
        "transform",
        "Spherical transform Gf(s) = integral of f(x) phi_s(x^-1) dx by quadrature; writes CSV "
        "with discretized Plancherel weights.");
    add_common(tr);
    tr->add_option("--in", in_path, "input function JSON")->required();

    auto* iv = app.add_subcommand(
        "invert", "Inverse spherical transform against the discretized Plancherel measure.");
    add_common(iv);
    iv->add_option("--in", in_path, "input spectrum CSV")->required();
    iv->add_option("--compare", compare_path, "reference function JSON for a round-trip error");

    auto* vf = app.add_subcommand(
        "verify",
        "Run one verification suite: plancherel (transform unitarity), multiplicativity "
        "(G(f*g) = Gf Gg), commutativity (f*g = g*f), posdef (Gram matrices of spherical "
        "functions), eigen (joint eigenvalue residuals), ktype-orthogonality (cross-type "
        "convolutions vanish), decay (per-type Schwartz seminorm decay), generators (polynomial "
        "change of generating systems).  Exit 0 pass, 1 fail, 4 inconclusive.");
    add_common(vf);
    vf->add_option("check", check, "check name")->required();
    vf->add_option("--profile", profile, "decay test family: gaussian | abs-theta");

    auto* dc = app.add_subcommand(
        "decompose", "Split a K-central function into K-type components with the tail norm; "
                     "writes one JSON per type plus an index CSV.");
    add_common(dc);
    dc->add_option("--in", in_path, "input function JSON")->required();

    auto* ip = app.add_subcommand(
        "interpolate", "Interpolate a rapidly decaying integer-lattice function by a sum of "
                       "disjointly supported bumps; writes (t, h) CSV.");
    add_common(ip);
    ip->add_option("--in", in_path, "lattice JSON with m_min and values")->required();
    ip->add_option("--grid", grid_range, "output grid min:max:count");

    auto* ex = app.add_subcommand(
        "extend", "Assemble a Schwartz extension of the per-type transform off the embedded "
                  "spectrum (requires the decay precondition); writes a 2-D CSV.");
    add_common(ex);
    ex->add_option("--in", in_path, "input function JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    validate_config(cfg);

    if (sp->parsed()) return cmd_spectrum(cfg, lambda_range, eta_range, m_lo, m_hi);
    if (tr->parsed()) return cmd_transform(cfg, in_path);
    if (iv->parsed()) return cmd_invert(cfg, in_path, compare_path);
    if (vf->parsed()) return cmd_verify(cfg, check, profile);
    if (dc->parsed()) return cmd_decompose(cfg, in_path);
    if (ip->parsed()) return cmd_interpolate(cfg, in_path, grid_range);
    if (ex->parsed()) return cmd_extend(cfg, in_path);
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 3;
    } catch (const ResolutionError& e) {
        std::cerr << "inconclusive: " << e.what() << '\n';
        return 4;
    } catch (const InternalError& e) {
        std::cerr << "inconclusive (internal): " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
