#include "rmlab/ensembles.hpp"
#include "rmlab/errors.hpp"

#include <cmath>
#include <string>

namespace rmlab {

namespace {

void check_finite(const std::vector<double>& v, const char* what)
{
    for (double x : v)
        if (!std::isfinite(x)) throw DomainError(std::string(what) + " contains a non-finite entry");
}

bool near_natural(double a) { return a >= -1e-8 && std::fabs(a - std::nearbyint(a)) <= 1e-8; }

} // namespace

void SymTridiag::validate() const
{
    if (diag.empty()) throw DomainError("SymTridiag: empty matrix");
    if (off.size() + 1 != diag.size()) throw DomainError("SymTridiag: off-diagonal length must be N-1");
    check_finite(diag, "SymTridiag diag");
    check_finite(off, "SymTridiag off");
}

void PeriodicJacobi::validate() const
{
    if (diag.size() < 3) throw DomainError("PeriodicJacobi: N must be at least 3");
    if (off.size() + 1 != diag.size()) throw DomainError("PeriodicJacobi: off-diagonal length must be N-1");
    check_finite(diag, "PeriodicJacobi diag");
    check_finite(off, "PeriodicJacobi off");
    if (!std::isfinite(corner)) throw DomainError("PeriodicJacobi: non-finite corner");
}

std::string family_name(Family f)
{
    switch (f) {
    case Family::GaussianAlpha: return "gaussian";
    case Family::LaguerreAlpha: return "laguerre";
    case Family::JacobiAlpha: return "jacobi";
    case Family::GaussianBeta: return "gaussian-beta";
    case Family::LaguerreBeta: return "laguerre-beta";
    case Family::JacobiBeta: return "jacobi-beta";
    }
    return "unknown";
}

bool is_beta_family(Family f)
{
    return f == Family::GaussianBeta || f == Family::LaguerreBeta || f == Family::JacobiBeta;
}

void EnsembleParams::validate()
{
    if (N < 1) throw DomainError("N must be at least 1");
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
    const bool laguerre = family == Family::LaguerreAlpha || family == Family::LaguerreBeta;
    const bool jacobi = family == Family::JacobiAlpha || family == Family::JacobiBeta;
    if (laguerre) {
        if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("gamma must lie in (0,1)");
        if (M == 0) M = static_cast<int>(std::lround(N / gamma));
        if (M < N) throw DomainError("Laguerre column count M must be at least N");
    }
    if (jacobi) {
        if (!(a + alpha > 0.0) || !(b + alpha > 0.0)) throw DomainError("Jacobi requires a+alpha > 0 and b+alpha > 0");
        if (a <= -1.0 || b <= -1.0) throw DomainError("Jacobi requires a, b > -1");
        if (near_natural(a)) throw DomainError("Jacobi parameter a must not be a natural number (tolerance 1e-8)");
    }
    if (is_beta_family(family)) {
        if (beta == 0.0) beta = 2.0 * alpha / N;
        if (!(beta > 0.0)) throw DomainError("beta must be positive");
    }
}

SymTridiag bidiagonal_gram(const std::vector<double>& d, const std::vector<double>& s)
{
    const std::size_t n = d.size();
    SymTridiag m;
    m.diag.resize(n);
    m.off.resize(n ? n - 1 : 0);
    for (std::size_t i = 0; i < n; ++i) {
        m.diag[i] = d[i] * d[i] + (i ? s[i - 1] * s[i - 1] : 0.0);
        if (i + 1 < n) m.off[i] = d[i] * s[i];
    }
    return m;
}

SymTridiag build_gaussian_alpha(const EnsembleParams& p, Rng& rng)
{
    if (p.N < 2) throw DomainError("Gaussian ensemble needs N >= 2");
    SymTridiag m;
    m.diag.resize(p.N);
    m.off.resize(p.N - 1);
    // N(0,2)/sqrt2 is standard normal
    for (int i = 0; i < p.N; ++i) m.diag[i] = rng.normal();
    for (int i = 0; i + 1 < p.N; ++i) m.off[i] = rng.chi(2.0 * p.alpha) * M_SQRT1_2;
    return m;
}

SymTridiag build_laguerre_alpha(const EnsembleParams& p, Rng& rng)
{
    std::vector<double> x(p.N), y(p.N > 1 ? p.N - 1 : 0);
    for (auto& v : x) v = rng.chi(2.0 * p.alpha / p.gamma) * M_SQRT1_2;
    for (auto& v : y) v = rng.chi(2.0 * p.alpha) * M_SQRT1_2;
    return bidiagonal_gram(x, y);
}

namespace {

SymTridiag jacobi_from_pq(const std::vector<double>& pv, const std::vector<double>& qv)
{
    // qv[i] is q_{i+1}; q_0 = 0
    const std::size_t n = pv.size();
    std::vector<double> s(n), t(n ? n - 1 : 0);
    for (std::size_t i = 0; i < n; ++i) {
        double q_prev = i ? qv[i - 1] : 0.0;
        s[i] = std::sqrt(pv[i] * (1.0 - q_prev));
        if (i + 1 < n) t[i] = std::sqrt(qv[i] * (1.0 - pv[i]));
    }
    return bidiagonal_gram(s, t);
}

} // namespace

SymTridiag build_jacobi_alpha(const EnsembleParams& p, Rng& rng)
{
    std::vector<double> pv(p.N), qv(p.N > 1 ? p.N - 1 : 0);
    for (auto& v : pv) v = rng.beta(p.alpha + p.a + 1.0, p.alpha + p.b + 1.0);
    for (auto& v : qv) v = rng.beta(p.alpha, p.alpha + p.a + p.b + 2.0);
    return jacobi_from_pq(pv, qv);
}

SymTridiag build_beta_family(const EnsembleParams& p, Rng& rng)
{
    const int N = p.N;
    const double beta = p.beta;
    switch (p.family) {
    case Family::GaussianBeta: {
        SymTridiag m;
        m.diag.resize(N);
        m.off.resize(N - 1);
        for (int i = 0; i < N; ++i) m.diag[i] = rng.normal();
        for (int n = 1; n < N; ++n) m.off[n - 1] = rng.chi(beta * (N - n)) * M_SQRT1_2;
        return m;
    }
    case Family::LaguerreBeta: {
        std::vector<double> x(N), y(N - 1);
        for (int n = 1; n <= N; ++n) x[n - 1] = rng.chi(beta * (p.M - n + 1)) * M_SQRT1_2;
        for (int n = 1; n < N; ++n) y[n - 1] = rng.chi(beta * (N - n)) * M_SQRT1_2;
        return bidiagonal_gram(x, y);
    }
    case Family::JacobiBeta: {
        std::vector<double> pv(N), qv(N - 1);
        for (int n = 1; n <= N; ++n) {
            double h = 0.5 * beta * (N - n);
            pv[n - 1] = rng.beta(h + p.a + 1.0, h + p.b + 1.0);
        }
        for (int n = 1; n < N; ++n) {
            double h = 0.5 * beta * (N - n);
            qv[n - 1] = rng.beta(h, h + p.a + p.b + 2.0);
        }
        return jacobi_from_pq(pv, qv);
    }
    default:
        throw DomainError("build_beta_family: not a beta family");
    }
}

SymTridiag build_ensemble(const EnsembleParams& p, Rng& rng)
{
    switch (p.family) {
    case Family::GaussianAlpha: return build_gaussian_alpha(p, rng);
    case Family::LaguerreAlpha: return build_laguerre_alpha(p, rng);
    case Family::JacobiAlpha: return build_jacobi_alpha(p, rng);
    default: return build_beta_family(p, rng);
    }
}

PeriodicJacobi build_toda_lax(int N, double beta, double theta, Rng& rng)
{
    if (N < 3) throw DomainError("Toda Lax matrix needs N >= 3");
    if (!(beta > 0.0) || !(theta > 0.0)) throw DomainError("Toda Lax matrix needs beta, theta > 0");
    const double scale = 1.0 / std::sqrt(2.0 * beta);
    PeriodicJacobi m;
    m.diag.resize(N);
    m.off.resize(N - 1);
    for (auto& v : m.diag) v = std::sqrt(2.0) * rng.normal() * scale;
    for (auto& v : m.off) v = rng.chi(2.0 * (beta + theta)) * scale;
    m.corner = rng.chi(2.0 * (beta + theta)) * scale;
    return m;
}

} // namespace rmlab
