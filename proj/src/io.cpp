#include "sphan/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sphan/errors.hpp"

namespace sphan::io {

namespace {

using pairs::PairId;
using pairs::SampledFunction;
using pairs::SpectrumPoint;
using pairs::Symmetry;

std::string role_name(AxisRole r) {
    switch (r) {
        case AxisRole::theta: return "theta";
        case AxisRole::x: return "x";
        case AxisRole::y: return "y";
        case AxisRole::t: return "t";
        case AxisRole::r: return "r";
    }
    return "?";
}

AxisRole role_from(const std::string& s, const std::string& path) {
    if (s == "theta") return AxisRole::theta;
    if (s == "x") return AxisRole::x;
    if (s == "y") return AxisRole::y;
    if (s == "t") return AxisRole::t;
    if (s == "r") return AxisRole::r;
    throw InputError("input: unknown axis role '" + s + "' at " + path);
}

std::string kind_name(AxisKind k) {
    switch (k) {
        case AxisKind::uniform: return "uniform";
        case AxisKind::periodic: return "periodic";
        case AxisKind::gauss: return "gauss";
    }
    return "?";
}

AxisKind kind_from(const std::string& s, const std::string& path) {
    if (s == "uniform") return AxisKind::uniform;
    if (s == "periodic") return AxisKind::periodic;
    if (s == "gauss") return AxisKind::gauss;
    throw InputError("input: unknown axis kind '" + s + "' at " + path);
}

const json& require_field(const json& j, const char* name, const std::string& path) {
    auto it = j.find(name);
    if (it == j.end()) throw InputError("input: missing field '" + path + name + "'");
    return *it;
}

double number_at(const json& j, const char* name, const std::string& path) {
    const json& v = require_field(j, name, path);
    if (!v.is_number()) throw InputError("input: field '" + path + name + "' must be a number");
    return v.get<double>();
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json to_json(const SampledFunction& f) {
    json j;
    j["pair"] = std::string(pairs::to_string(f.pair));
    j["symmetry"] = std::string(pairs::to_string(f.symmetry));
    if (f.symmetry == Symmetry::k_type) j["ktype"] = f.ktype;
    json grid = json::array();
    for (const auto& a : f.grid.axes) {
        grid.push_back({{"role", role_name(a.role)},
                        {"kind", kind_name(a.kind)},
                        {"min", a.min},
                        {"max", a.max},
                        {"n", a.n}});
    }
    j["grid"] = std::move(grid);
    json re = json::array(), im = json::array();
    for (const auto& v : f.values) {
        re.push_back(v.real());
        im.push_back(v.imag());
    }
    j["values_re"] = std::move(re);
    j["values_im"] = std::move(im);
    j["truncation"] = f.truncation;
    if (!f.warning.empty()) j["warning"] = f.warning;
    return j;
}

SampledFunction sampled_function_from_json(const json& j) {
    SampledFunction f;
    if (!j.is_object()) throw InputError("input: top-level JSON object expected");

    const json& pair = require_field(j, "pair", "");
    if (!pair.is_string()) throw InputError("input: field 'pair' must be a string");
    f.pair = pairs::pair_from_string(pair.get<std::string>());

    const json& sym = require_field(j, "symmetry", "");
    if (!sym.is_string()) throw InputError("input: field 'symmetry' must be a string");
    f.symmetry = pairs::symmetry_from_string(sym.get<std::string>());

    if (f.symmetry == Symmetry::k_type) {
        const json& kt = require_field(j, "ktype", "");
        if (!kt.is_array() || kt.empty())
            throw InputError("input: field 'ktype' must be a nonempty integer array");
        for (const auto& v : kt) {
            if (!v.is_number_integer()) throw InputError("input: field 'ktype' must hold integers");
            f.ktype.push_back(v.get<int>());
        }
    }

    const json& grid = require_field(j, "grid", "");
    if (!grid.is_array() || grid.empty())
        throw InputError("input: field 'grid' must be a nonempty array");
    for (std::size_t a = 0; a < grid.size(); ++a) {
        const std::string path = "grid[" + std::to_string(a) + "].";
        const json& ax = grid[a];
        if (!ax.is_object()) throw InputError("input: 'grid[" + std::to_string(a) + "]' must be an object");
        Axis axis;
        const json& role = require_field(ax, "role", path);
        axis.role = role_from(role.get<std::string>(), path + "role");
        const json& kind = require_field(ax, "kind", path);
        axis.kind = kind_from(kind.get<std::string>(), path + "kind");
        axis.min = number_at(ax, "min", path);
        axis.max = number_at(ax, "max", path);
        const json& n = require_field(ax, "n", path);
        if (!n.is_number_integer() || n.get<int>() < 1)
            throw InputError("input: field '" + path + "n' must be a positive integer");
        axis.n = n.get<int>();
        if (axis.kind != AxisKind::periodic && !(axis.min < axis.max) && axis.n > 1)
            throw InputError("input: field '" + path + "min' must be below 'max'");
        f.grid.axes.push_back(axis);
    }

    const json& re = require_field(j, "values_re", "");
    const json& im = require_field(j, "values_im", "");
    if (!re.is_array() || !im.is_array())
        throw InputError("input: fields 'values_re'/'values_im' must be arrays");
    if (re.size() != im.size())
        throw InputError("input: 'values_re' and 'values_im' lengths differ");
    if (re.size() != f.grid.size())
        throw InputError("input: 'values_re' length " + std::to_string(re.size()) +
                         " does not match the grid size " + std::to_string(f.grid.size()));
    f.values.reserve(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) {
        if (!re[i].is_number() || !im[i].is_number())
            throw InputError("input: 'values_re[" + std::to_string(i) + "]' must be a number");
        f.values.emplace_back(re[i].get<double>(), im[i].get<double>());
    }

    f.truncation = number_at(j, "truncation", "");
    if (auto it = j.find("warning"); it != j.end() && it->is_string())
        f.warning = it->get<std::string>();
    return f;
}

namespace {

void append_point_columns(std::ostringstream& out, PairId id, const SpectrumPoint& p) {
    switch (id) {
        case PairId::flat_r1:
        case PairId::e2:
            out << format_double(p.xi[0]) << ',' << format_double(p.params.lambda);
            break;
        case PairId::u1_c:
            out << format_double(p.xi[0]) << ',' << format_double(p.xi[1]) << ',' << p.params.m
                << ',' << format_double(p.params.lambda);
            break;
        case PairId::heis1:
            out << format_double(p.xi[0]) << ',' << format_double(p.xi[1]) << ',';
            if (p.params.limit_ray)
                out << format_double(0.0) << ",-1," << format_double(p.params.lambda) << ",1";
            else
                out << format_double(p.params.lambda) << ',' << p.params.k << ','
                    << format_double(0.0) << ",0";
            break;
    }
}

std::string point_header(PairId id) {
    switch (id) {
        case PairId::flat_r1:
        case PairId::e2: return "xi_1,lambda";
        case PairId::u1_c: return "xi_1,xi_2,m,lambda";
        case PairId::heis1: return "xi_1,xi_2,lambda,k,eta,limit_ray";
    }
    return "";
}

}  // namespace

std::string spectrum_csv(PairId id, const std::vector<SpectrumPoint>& pts, std::uint64_t seed) {
    std::ostringstream out;
    out << "# seed=" << seed << '\n' << point_header(id) << '\n';
    for (const auto& p : pts) {
        append_point_columns(out, id, p);
        out << '\n';
    }
    return out.str();
}

std::string spectrum_function_csv(const transform::SpectrumFunction& gf, std::uint64_t seed) {
    std::ostringstream out;
    out << "# seed=" << seed << '\n' << point_header(gf.pair) << ",value_re,value_im,weight\n";
    for (std::size_t i = 0; i < gf.points.size(); ++i) {
        append_point_columns(out, gf.pair, gf.points[i]);
        const double w = i < gf.plancherel_weights.size() ? gf.plancherel_weights[i] : 0.0;
        out << ',' << format_double(gf.values[i].real()) << ','
            << format_double(gf.values[i].imag()) << ',' << format_double(w) << '\n';
    }
    return out.str();
}

transform::SpectrumFunction spectrum_function_from_csv(PairId id, const std::string& text) {
    transform::SpectrumFunction gf;
    gf.pair = id;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            const std::string expect = point_header(id) + ",value_re,value_im,weight";
            if (line != expect)
                throw InputError("input: CSV header mismatch, expected '" + expect + "'");
            header_seen = true;
            continue;
        }
        std::vector<double> cols;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                cols.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw InputError("input: bad number '" + cell + "' on line " +
                                 std::to_string(lineno));
            }
        }
        pairs::SpectrumParams prm;
        std::size_t tail = 0;
        switch (id) {
            case PairId::flat_r1:
            case PairId::e2:
                if (cols.size() != 5)
                    throw InputError("input: wrong column count on line " + std::to_string(lineno));
                prm.lambda = cols[1];
                tail = 2;
                break;
            case PairId::u1_c:
                if (cols.size() != 7)
                    throw InputError("input: wrong column count on line " + std::to_string(lineno));
                prm.m = static_cast<int>(std::lround(cols[2]));
                prm.lambda = cols[3];
                tail = 4;
                break;
            case PairId::heis1:
                if (cols.size() != 9)
                    throw InputError("input: wrong column count on line " + std::to_string(lineno));
                prm.limit_ray = cols[5] != 0.0;
                if (prm.limit_ray) {
                    prm.lambda = cols[4];
                } else {
                    prm.lambda = cols[2];
                    prm.k = static_cast<int>(std::lround(cols[3]));
                }
                tail = 6;
                break;
        }
        auto point = pairs::eigenvalue_map(id, prm);
        for (std::size_t c = 0; c < point.xi.size(); ++c)
            if (std::fabs(point.xi[c] - cols[c]) > 1e-9 * std::max(1.0, std::fabs(cols[c])))
                throw InputError("input: xi column disagrees with the parametrization on line " +
                                 std::to_string(lineno));
        gf.points.push_back(std::move(point));
        gf.values.emplace_back(cols[tail], cols[tail + 1]);
        gf.plancherel_weights.push_back(cols[tail + 2]);
    }
    if (!header_seen) throw InputError("input: empty CSV");
    return gf;
}

json report_json(const Report& rep) {
    json j;
    j["check"] = rep.check;
    j["pair"] = rep.pair;
    j["tolerance"] = rep.tolerance;
    j["observed"] = rep.observed;
    j["pass"] = rep.pass;
    if (!rep.details.empty()) {
        json d;
        for (const auto& [k, v] : rep.details) d[k] = v;
        j["details"] = std::move(d);
    }
    if (!rep.note.empty()) j["note"] = rep.note;
    return j;
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot open '" + tmp.string() + "' for writing");
        out << contents;
        if (!out.flush()) throw InputError("failed writing '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace sphan::io
