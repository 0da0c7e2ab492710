#include "rmlab/stats.hpp"
#include "rmlab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace rmlab {

double ks_statistic(const std::vector<double>& sorted, const CdfTable& cdf)
{
    if (sorted.empty()) throw UsageError("ks_statistic on an empty sample");
    const double n = static_cast<double>(sorted.size());
    const double total = cdf.F.back();
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        double F = cdf(sorted[i]) / total;
        d = std::max(d, std::max(F - i / n, (i + 1) / n - F));
    }
    return d;
}

double ks_two_sample(const std::vector<double>& a, const std::vector<double>& b)
{
    if (a.empty() || b.empty()) throw UsageError("ks_two_sample on an empty sample");
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::fabs(i / na - j / nb));
    }
    return d;
}

Summary summarize(const std::vector<double>& xs)
{
    Summary s;
    s.n = static_cast<long>(xs.size());
    if (s.n < 2) throw UsageError("summarize needs at least two values");
    double m = 0.0;
    for (double x : xs) m += x;
    m /= s.n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double x : xs) {
        double d = x - m, d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= s.n;
    m3 /= s.n;
    m4 /= s.n;
    s.mean = m;
    s.variance = m2 * s.n / (s.n - 1.0);
    s.std_error = std::sqrt(s.variance / s.n);
    s.skewness = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
    s.excess_kurtosis = m2 > 0.0 ? m4 / (m2 * m2) - 3.0 : 0.0;
    return s;
}

} // namespace rmlab
