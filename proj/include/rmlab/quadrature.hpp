#pragma once
#include <functional>
#include <vector>

namespace rmlab {

// Integration window of a density. A power-law endpoint means f ~ |x - end|^exponent
// there (exponent > -1), refined geometrically toward the endpoint.
struct Support {
    double lo = 0.0;
    double hi = 1.0;
    bool lo_power = false;
    double lo_exponent = 0.0;
    bool hi_power = false;
    double hi_exponent = 0.0;
    double hi_stop = 0.0;  // distance from hi where refinement stops and a fitted tail takes over
};

struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    double apply(const std::vector<double>& values) const;
};

// Composite Gauss-Legendre rule on the support with `panels` uniform panels plus
// geometric grading at power-law endpoints.
QuadRule make_rule(const Support& s, int panels);

// Evaluates f at every node (OpenMP over nodes) and returns the values.
std::vector<double> evaluate_nodes(const std::function<double(double)>& f, const std::vector<double>& nodes);

// Cumulative distribution on a grid over the support: uniform cells, with power-law
// end cells split geometrically toward the endpoint. Interpolation is linear in x,
// except inside a power-law end cell where it is linear in distance^(exponent+1).
struct CdfTable {
    std::vector<double> x;
    std::vector<double> F;
    bool lo_power = false;
    double lo_exponent = 0.0;
    double lo_cell_end = 0.0;
    bool hi_power = false;
    double hi_exponent = 0.0;
    double hi_cell_start = 0.0;
    double operator()(double v) const;
};

CdfTable make_cdf(const std::function<double(double)>& f, const Support& s, int cells);

} // namespace rmlab
