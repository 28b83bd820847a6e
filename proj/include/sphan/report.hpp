#pragma once

#include <string>
#include <utility>
#include <vector>

namespace sphan {

// Outcome of one verification check.
struct Report {
    std::string check;
    std::string pair;
    double tolerance = 0.0;
    double observed = 0.0;
    bool pass = false;
    std::vector<std::pair<std::string, double>> details;
    std::string note;
};

}  // namespace sphan
