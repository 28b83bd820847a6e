#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace sphan {

enum class AxisKind { uniform, periodic, gauss };
enum class AxisRole { theta, x, y, t, r };

// One structured grid coordinate.  "uniform" has n nodes including both
// ends, "periodic" has n nodes with max excluded (circle coordinate),
// "gauss" carries the n-point Gauss-Legendre rule on [min, max].
struct Axis {
    AxisRole role = AxisRole::x;
    AxisKind kind = AxisKind::uniform;
    double min = 0.0;
    double max = 0.0;
    int n = 0;

    double spacing() const;                  // uniform / periodic only
    std::vector<double> nodes() const;
    std::vector<double> quad_weights() const;  // 1-D integration weights on [min, max]
};

struct Grid {
    std::vector<Axis> axes;

    std::size_t size() const;
    int dim() const { return static_cast<int>(axes.size()); }
    std::vector<std::size_t> strides() const;  // row-major
    std::vector<std::vector<double>> node_table() const;

    // Visit every multi-index together with its flat offset.
    void for_each(const std::function<void(const std::vector<int>&, std::size_t)>& fn) const;

    int axis_index(AxisRole role) const;  // -1 when absent
};

}  // namespace sphan
