#pragma once
#include <map>
#include <string>
#include <vector>

namespace rmlab {

// Sampled density. Histograms also carry bin edges and per-bin standard errors.
struct DensityCurve {
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<double> errors;   // empty for analytic curves
    std::vector<double> edges;    // grid.size()+1 entries for histograms, else empty
    std::string family;
    std::map<std::string, double> params;

    double trapezoid_mass() const;
    double histogram_mass() const;  // sum of value * bin width
};

} // namespace rmlab
