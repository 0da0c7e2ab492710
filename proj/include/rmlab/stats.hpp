#pragma once
#include "rmlab/quadrature.hpp"

#include <vector>

namespace rmlab {

// sup |F_emp - F| over a sorted sample.
double ks_statistic(const std::vector<double>& sorted, const CdfTable& cdf);
// Two-sample statistic; both inputs sorted.
double ks_two_sample(const std::vector<double>& a, const std::vector<double>& b);

struct Summary {
    long n = 0;
    double mean = 0.0;
    double variance = 0.0;  // unbiased
    double std_error = 0.0;
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
};

Summary summarize(const std::vector<double>& xs);

} // namespace rmlab
