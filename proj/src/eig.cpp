#include "rmlab/eig.hpp"
#include "rmlab/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

namespace rmlab {

double DensityCurve::trapezoid_mass() const
{
    double s = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) s += 0.5 * (values[i] + values[i - 1]) * (grid[i] - grid[i - 1]);
    return s;
}

double DensityCurve::histogram_mass() const
{
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) s += values[i] * (edges[i + 1] - edges[i]);
    return s;
}

namespace {

constexpr int kMaxSweeps = 60;

// hypot without the overflow-safe slow path for the usual magnitudes
inline double fast_hypot(double a, double b)
{
    double m = std::max(std::fabs(a), std::fabs(b));
    if (m < 1e150 && m > 1e-150) return std::sqrt(a * a + b * b);
    return std::hypot(a, b);
}

// In place on d (diagonal) and e (e[i] couples i and i+1, e[n-1] unused).
// When z is non-null it receives the first row of the accumulated rotations.

void ql_implicit(std::vector<double>& d, std::vector<double>& e, std::vector<double>* z)
{
    const int n = static_cast<int>(d.size());
    if (n == 0) return;
    e.resize(n);
    e[n - 1] = 0.0;
    const double eps = std::numeric_limits<double>::epsilon();
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= eps * dd) break;
            }
            if (m == l) break;
            if (++iter > kMaxSweeps) throw NumericError("eig: QL iteration did not converge");
            // Wilkinson-type shift from the leading 2x2 block
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = fast_hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            int i;
            for (i = m - 1; i >= l; --i) {
                double f = s * e[i];
                double b = c * e[i];
                r = fast_hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if (z) {
                    auto& zz = *z;
                    f = zz[i + 1];
                    zz[i + 1] = s * zz[i] + c * f;
                    zz[i] = c * zz[i] - s * f;
                }
            }
            if (r == 0.0 && i >= l) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        } while (m != l);
    }
}

// Eigenvalues only: the same shifted QL sweep carried out on squared
// off-diagonals (Pal-Walker-Kahan), no square root per rotation.
void ql_rootfree(std::vector<double>& d, const std::vector<double>& off)
{
    const int n = static_cast<int>(d.size());
    if (n <= 1) return;
    std::vector<double> e2(n, 0.0);
    double anorm = 0.0;
    for (int i = 0; i < n; ++i) anorm = std::max(anorm, std::fabs(d[i]) + (i + 1 < n ? std::fabs(off[i]) : 0.0) + (i ? std::fabs(off[i - 1]) : 0.0));
    for (int i = 0; i + 1 < n; ++i) e2[i] = off[i] * off[i];
    const double eps = std::numeric_limits<double>::epsilon();
    const double eps2 = eps * eps;
    const double abs_tol = (eps * anorm) * (eps * anorm);
    int l = 0;
    int iter = 0;
    while (l < n) {
        int m = l;
        for (; m < n - 1; ++m)
            if (e2[m] <= eps2 * std::fabs(d[m] * d[m + 1]) || e2[m] <= abs_tol) break;
        if (m == l) {
            e2[l] = 0.0;
            ++l;
            iter = 0;
            continue;
        }
        if (m == l + 1) {
            // closed-form 2x2 block
            double a = d[l], c = d[l + 1], b2 = e2[l];
            double mid = 0.5 * (a + c), half = 0.5 * (a - c);
            double rad = std::sqrt(half * half + b2);
            d[l] = mid + rad;
            d[l + 1] = mid - rad;
            e2[l] = 0.0;
            l += 2;
            iter = 0;
            continue;
        }
        if (++iter > kMaxSweeps) throw NumericError("eig: QL iteration did not converge");
        double rte = std::sqrt(e2[l]);
        double sigma = (d[l + 1] - d[l]) / (2.0 * rte);
        double r = fast_hypot(sigma, 1.0);
        sigma = d[l] - rte / (sigma + std::copysign(r, sigma));
        double c = 1.0, s = 0.0;
        double gamma = d[m] - sigma;
        double p = gamma * gamma;
        for (int i = m - 1; i >= l; --i) {
            double bb = e2[i];
            r = p + bb;
            if (i != m - 1) e2[i + 1] = s * r;
            double oldc = c;
            double inv = 1.0 / r;
            c = p * inv;
            s = bb * inv;
            double oldgam = gamma;
            double alpha = d[i];
            gamma = c * (alpha - sigma) - s * oldgam;
            d[i + 1] = oldgam + (alpha - gamma);
            p = c != 0.0 ? gamma * gamma * (r / p) : oldc * bb;
        }
        e2[l] = s * p;
        d[l] = sigma + gamma;
    }
}

// Symmetric band matrix holding the lower band up to distance 3 (room for one bulge).
class Band {
public:
    explicit Band(int n) : n_(n), a_(static_cast<std::size_t>(n) * 4, 0.0) {}
    double get(int i, int j) const
    {
        if (i < j) std::swap(i, j);
        int d = i - j;
        return d > 3 ? 0.0 : a_[static_cast<std::size_t>(i) * 4 + d];
    }
    void set(int i, int j, double v)
    {
        if (i < j) std::swap(i, j);
        int d = i - j;
        if (d > 3) {
            if (v != 0.0) throw NumericError("band reduction: fill outside the bulge window");
            return;
        }
        a_[static_cast<std::size_t>(i) * 4 + d] = v;
    }
    int size() const { return n_; }

    // A <- G^T A G for the rotation acting on indices p, q = p+1 with
    // [x_p; x_q] <- [c s; -s c] [x_p; x_q].
    void rotate(int p, double c, double s)
    {
        const int q = p + 1;
        const int lo = std::max(0, p - 3), hi = std::min(n_ - 1, q + 3);
        for (int k = lo; k <= hi; ++k) {
            if (k == p || k == q) continue;
            double ap = get(p, k), aq = get(q, k);
            set(p, k, c * ap + s * aq);
            set(q, k, -s * ap + c * aq);
        }
        double app = get(p, p), aqq = get(q, q), apq = get(p, q);
        set(p, p, c * c * app + 2.0 * c * s * apq + s * s * aqq);
        set(q, q, s * s * app - 2.0 * c * s * apq + c * c * aqq);
        set(p, q, (c * c - s * s) * apq + c * s * (aqq - app));
    }

private:
    int n_;
    std::vector<double> a_;
};

// Choose (c, s) so that rotating rows p, p+1 zeroes the entry of row p+1 against column col.
void zero_with(Band& A, int p, int col)
{
    double x = A.get(p, col), y = A.get(p + 1, col);
    if (y == 0.0) return;
    double r = std::hypot(x, y);
    A.rotate(p, x / r, y / r);
    A.set(p + 1, col, 0.0);
}

} // namespace

Spectrum eig_tridiag(const SymTridiag& m)
{
    m.validate();
    std::vector<double> d = m.diag;
    ql_rootfree(d, m.off);
    std::sort(d.begin(), d.end());
    return {std::move(d)};
}

Spectrum eig_tridiag_reference(const SymTridiag& m)
{
    m.validate();
    std::vector<double> d = m.diag, e = m.off;
    ql_implicit(d, e, nullptr);
    std::sort(d.begin(), d.end());
    return {std::move(d)};
}

Spectrum eig_periodic(const PeriodicJacobi& m)
{
    m.validate();
    const int n = static_cast<int>(m.size());
    // zigzag order 0, n-1, 1, n-2, ...
    std::vector<int> order(n), pos(n);
    for (int k = 0, lo = 0, hi = n - 1; k < n; ++k) order[k] = (k % 2 == 0) ? lo++ : hi--;
    for (int k = 0; k < n; ++k) pos[order[k]] = k;

    Band A(n);
    for (int i = 0; i < n; ++i) A.set(pos[i], pos[i], m.diag[i]);
    for (int i = 0; i + 1 < n; ++i) A.set(pos[i], pos[i + 1], A.get(pos[i], pos[i + 1]) + m.off[i]);
    A.set(pos[0], pos[n - 1], A.get(pos[0], pos[n - 1]) + m.corner);

    // annihilate the second subdiagonal column by column, chasing each bulge down
    for (int j = 0; j + 2 < n; ++j) {
        if (A.get(j + 2, j) == 0.0) continue;
        zero_with(A, j + 1, j);
        for (int k = j + 1; k + 3 < n; k += 2) {
            if (A.get(k + 3, k) == 0.0) break;
            zero_with(A, k + 2, k);
        }
    }
    SymTridiag t;
    t.diag.resize(n);
    t.off.resize(n - 1);
    for (int i = 0; i < n; ++i) t.diag[i] = A.get(i, i);
    for (int i = 0; i + 1 < n; ++i) t.off[i] = A.get(i + 1, i);
    return eig_tridiag(t);
}

SpectralMeasure spectral_weights(const SymTridiag& m)
{
    m.validate();
    const std::size_t n = m.size();
    std::vector<double> d = m.diag, e = m.off, z(n, 0.0);
    z[0] = 1.0;
    ql_implicit(d, e, &z);
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&d](std::size_t a, std::size_t b) { return d[a] < d[b]; });
    SpectralMeasure out;
    double norm = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        double gap = d[idx[i]] - d[idx[i - 1]];
        double scale = std::max({1.0, std::fabs(d[idx[i]]), std::fabs(d[idx[i - 1]])});
        if (gap <= 1e-12 * scale) throw NumericError("spectral_weights: repeated eigenvalue, weights are ambiguous");
    }
    for (std::size_t i : idx) {
        out.atoms.emplace_back(d[i], z[i] * z[i]);
        norm += z[i] * z[i];
    }
    if (std::fabs(norm - 1.0) > 1e-10) throw NumericError("spectral_weights: weights lost orthonormality");
    return out;
}

std::pair<double, double> data_range(const std::vector<Spectrum>& spectra)
{
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& s : spectra) {
        if (s.values.empty()) continue;
        lo = std::min(lo, s.values.front());
        hi = std::max(hi, s.values.back());
    }
    if (!(lo <= hi)) throw UsageError("data_range: no eigenvalues");
    double eps = 1e-9 * std::max(1.0, hi - lo);
    if (hi - lo < 1e-12) eps = 0.5;
    return {lo - eps, hi + eps};
}

DensityCurve empirical_histogram(const std::vector<Spectrum>& spectra, const BinSpec& spec)
{
    if (spectra.empty()) throw UsageError("empirical_histogram: empty input");
    if (spec.bins < 1) throw UsageError("empirical_histogram: bins must be positive");
    double lo = spec.lo, hi = spec.hi;
    if (std::isnan(lo) || std::isnan(hi)) {
        auto r = data_range(spectra);
        if (std::isnan(lo)) lo = r.first;
        if (std::isnan(hi)) hi = r.second;
    }
    if (!(hi > lo)) throw UsageError("empirical_histogram: empty bin range");
    const int B = spec.bins;
    const double w = (hi - lo) / B;

    DensityCurve h;
    h.edges.resize(B + 1);
    h.grid.resize(B);
    for (int k = 0; k <= B; ++k) h.edges[k] = lo + k * w;
    h.edges[B] = hi;
    for (int k = 0; k < B; ++k) h.grid[k] = 0.5 * (h.edges[k] + h.edges[k + 1]);

    std::vector<double> sum(B, 0.0), sum2(B, 0.0), counts(B);
    std::size_t total = 0;
    for (const auto& s : spectra) total += s.values.size();
    if (total == 0) throw UsageError("empirical_histogram: spectra contain no eigenvalues");
    for (const auto& s : spectra) {
        std::fill(counts.begin(), counts.end(), 0.0);
        for (double v : s.values) {
            int k = static_cast<int>(std::floor((v - lo) / w));
            if (v == hi) k = B - 1;
            if (k < 0 || k >= B) throw UsageError("empirical_histogram: bins do not cover the data range");
            counts[k] += 1.0;
        }
        const double nv = static_cast<double>(s.values.size());
        for (int k = 0; k < B; ++k) {
            double dens = counts[k] / (nv * w);
            sum[k] += counts[k];
            sum2[k] += dens * dens;
        }
    }
    const double T = static_cast<double>(spectra.size());
    h.values.resize(B);
    h.errors.assign(B, 0.0);
    for (int k = 0; k < B; ++k) {
        h.values[k] = sum[k] / (static_cast<double>(total) * w);
        if (T > 1) {
            // per-trial densities; the pooled mean equals their mean for equal-size spectra
            double mean = h.values[k];
            double var = std::max(0.0, (sum2[k] - T * mean * mean) / (T - 1.0));
            h.errors[k] = std::sqrt(var / T);
        }
    }
    return h;
}

double trace_power(const SymTridiag& m, int l)
{
    m.validate();
    if (l < 0) throw UsageError("trace_power: negative exponent");
    const int n = static_cast<int>(m.size());
    if (l == 0) return n;
    // band[d][i] = P(i, i+d), P = m^k symmetric with bandwidth k
    std::vector<std::vector<double>> band(1, std::vector<double>(n, 1.0));
    auto P = [&](int i, int j) -> double {
        if (i > j) std::swap(i, j);
        int d = j - i;
        if (i < 0 || j >= n || d >= static_cast<int>(band.size())) return 0.0;
        return band[d][i];
    };
    auto T = [&](int i, int j) -> double {
        if (i > j) std::swap(i, j);
        if (i < 0 || j >= n) return 0.0;
        if (i == j) return m.diag[i];
        return j - i == 1 ? m.off[i] : 0.0;
    };
    for (int k = 1; k <= l; ++k) {
        int width = std::min(k, n - 1);
        std::vector<std::vector<double>> next(width + 1, std::vector<double>(n, 0.0));
        for (int d = 0; d <= width; ++d)
            for (int i = 0; i + d < n; ++i) {
                int j = i + d;
                next[d][i] = P(i, j - 1) * T(j - 1, j) + P(i, j) * T(j, j) + P(i, j + 1) * T(j + 1, j);
            }
        band = std::move(next);
    }
    double tr = 0.0;
    for (int i = 0; i < n; ++i) tr += band[0][i];
    return tr;
}

} // namespace rmlab
