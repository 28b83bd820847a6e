#include "sphan/grid.hpp"

#include "sphan/errors.hpp"
#include "sphan/specfun.hpp"

namespace sphan {

double Axis::spacing() const {
    if (kind == AxisKind::uniform) {
        if (n < 2) throw InputError("axis: uniform axis needs n >= 2 for a spacing");
        return (max - min) / (n - 1);
    }
    if (kind == AxisKind::periodic) {
        if (n < 1) throw InputError("axis: periodic axis needs n >= 1");
        return (max - min) / n;
    }
    throw InputError("axis: gauss axis has no uniform spacing");
}

std::vector<double> Axis::nodes() const {
    if (n < 1) throw InputError("axis: need n >= 1");
    std::vector<double> out(n);
    switch (kind) {
        case AxisKind::uniform: {
            if (n == 1) {
                out[0] = min;
                break;
            }
            const double h = spacing();
            for (int i = 0; i < n; ++i) out[i] = min + h * i;
            break;
        }
        case AxisKind::periodic: {
            const double h = spacing();
            for (int i = 0; i < n; ++i) out[i] = min + h * i;
            break;
        }
        case AxisKind::gauss: {
            out = specfun::gauss_legendre(n, min, max).nodes;
            break;
        }
    }
    return out;
}

std::vector<double> Axis::quad_weights() const {
    if (n < 1) throw InputError("axis: need n >= 1");
    std::vector<double> w(n);
    switch (kind) {
        case AxisKind::uniform: {
            if (n == 1) {
                w[0] = max - min;
                break;
            }
            const double h = spacing();
            for (int i = 0; i < n; ++i) w[i] = h;
            w.front() = 0.5 * h;
            w.back() = 0.5 * h;
            break;
        }
        case AxisKind::periodic: {
            const double h = spacing();
            for (int i = 0; i < n; ++i) w[i] = h;
            break;
        }
        case AxisKind::gauss: {
            w = specfun::gauss_legendre(n, min, max).weights;
            break;
        }
    }
    return w;
}

std::size_t Grid::size() const {
    std::size_t s = 1;
    for (const auto& a : axes) s *= static_cast<std::size_t>(a.n);
    return s;
}

std::vector<std::size_t> Grid::strides() const {
    std::vector<std::size_t> s(axes.size(), 1);
    for (int i = static_cast<int>(axes.size()) - 2; i >= 0; --i)
        s[i] = s[i + 1] * static_cast<std::size_t>(axes[i + 1].n);
    return s;
}

std::vector<std::vector<double>> Grid::node_table() const {
    std::vector<std::vector<double>> t;
    t.reserve(axes.size());
    for (const auto& a : axes) t.push_back(a.nodes());
    return t;
}

void Grid::for_each(const std::function<void(const std::vector<int>&, std::size_t)>& fn) const {
    const int d = dim();
    std::vector<int> idx(d, 0);
    const std::size_t total = size();
    for (std::size_t flat = 0; flat < total; ++flat) {
        fn(idx, flat);
        for (int a = d - 1; a >= 0; --a) {
            if (++idx[a] < axes[a].n) break;
            idx[a] = 0;
        }
    }
}

int Grid::axis_index(AxisRole role) const {
    for (std::size_t i = 0; i < axes.size(); ++i)
        if (axes[i].role == role) return static_cast<int>(i);
    return -1;
}

}  // namespace sphan
