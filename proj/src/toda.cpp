#include "rmlab/toda.hpp"
#include "rmlab/errors.hpp"
#include "rmlab/specfun.hpp"

#include <boost/math/special_functions/trigamma.hpp>

#include <cmath>
#include <numeric>

namespace rmlab {

TodaParams TodaParams::make(int N, double beta)
{
    TodaParams p;
    p.N = N;
    p.beta = beta;
    p.theta = solve_theta(beta);
    p.validate();
    return p;
}

void TodaParams::validate() const
{
    if (N < 3) throw DomainError("Toda chain needs N >= 3");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("beta must be positive");
    if (!(theta > 0.0)) throw DomainError("theta must be positive");
}

double toda_potential(double x)
{
    double e = std::exp(-x);
    if (!std::isfinite(e)) throw NumericError("Toda potential overflow");
    return e + x - 1.0;
}

double hamiltonian(const TodaState& s)
{
    double h = 0.0;
    for (double v : s.p) h += 0.5 * v * v;
    for (double v : s.r) h += toda_potential(v);
    return h;
}

PeriodicJacobi flaschka(const TodaState& s)
{
    const std::size_t N = s.size();
    if (N < 3 || s.r.size() != N) throw DomainError("flaschka needs matching p, r of length >= 3");
    PeriodicJacobi m;
    m.diag.resize(N);
    m.off.resize(N - 1);
    for (std::size_t j = 0; j < N; ++j) m.diag[j] = -s.p[j];
    for (std::size_t j = 0; j + 1 < N; ++j) m.off[j] = std::exp(-0.5 * s.r[j]);
    m.corner = std::exp(-0.5 * s.r[N - 1]);
    return m;
}

double solve_theta(double beta)
{
    if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("solve_theta needs beta > 0");
    const double target = std::log(beta);
    auto f = [&](double t) { return digamma(beta + t) - target; };
    // digamma(beta) < log(beta) < digamma(beta + 1), and f is increasing
    double lo = 0.0, hi = 1.0, t = 0.5;
    for (int it = 0; it < 200; ++it) {
        double v = f(t);
        if (v == 0.0) return t;
        (v < 0.0 ? lo : hi) = t;
        double step = v / boost::math::trigamma(beta + t);
        double next = t - step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::fabs(next - t) <= 1e-16 * std::max(1.0, t)) {
            t = next;
            break;
        }
        t = next;
    }
    return t;
}

TodaState sample_gibbs_approx(const TodaParams& params, Rng& rng)
{
    params.validate();
    TodaState s;
    s.p.resize(params.N);
    s.r.resize(params.N);
    const double sd = 1.0 / std::sqrt(params.beta);
    for (auto& v : s.p) v = sd * rng.normal();
    // e^{-r} = G / beta with G ~ Gamma(beta + theta)
    for (auto& v : s.r) v = std::log(params.beta) - rng.log_gamma_variate(params.beta + params.theta);
    return s;
}

namespace {

void subtract_mean(std::vector<double>& v)
{
    double m = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    for (auto& x : v) x -= m;
    // second pass removes the rounding residue of the first
    m = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    for (auto& x : v) x -= m;
}

} // namespace

TodaState sample_gibbs_constrained(const TodaParams& params, Rng& rng, const McmcBudget& budget, McmcReport* report)
{
    TodaState s = sample_gibbs_approx(params, rng);
    subtract_mean(s.p);
    subtract_mean(s.r);
    const int N = params.N;
    const double beta = params.beta;
    const long moves = static_cast<long>(budget.burn_in_per_site) * N;
    // proposal scale ~ marginal spread of r, adapted in batches
    double step = 1.0 / std::sqrt(beta + params.theta);
    long accepted = 0, batch_acc = 0, batch = 0;
    const long batch_len = std::max(20, N);
    for (long m = 0; m < moves; ++m) {
        int i = static_cast<int>(rng.uniform() * N);
        int j = static_cast<int>(rng.uniform() * (N - 1));
        if (j >= i) ++j;
        double d = step * (2.0 * rng.uniform() - 1.0);
        double ri = s.r[i] + d, rj = s.r[j] - d;
        double dE = toda_potential(ri) + toda_potential(rj) - toda_potential(s.r[i]) - toda_potential(s.r[j]);
        if (dE <= 0.0 || rng.uniform() < std::exp(-beta * dE)) {
            s.r[i] = ri;
            s.r[j] = rj;
            ++accepted;
            ++batch_acc;
        }
        if (++batch == batch_len) {
            double rate = static_cast<double>(batch_acc) / batch_len;
            step *= std::exp(rate - budget.target_acceptance);
            batch = batch_acc = 0;
        }
    }
    subtract_mean(s.r);
    if (report) {
        report->moves = moves;
        report->acceptance = moves ? static_cast<double>(accepted) / moves : 0.0;
        report->step = step;
        report->tuning_warning = report->acceptance < 0.1 || report->acceptance > 0.9;
    }
    return s;
}

TodaState integrate(TodaState s, double dt, long steps, Splitting scheme)
{
    const std::size_t N = s.size();
    if (N < 3 || s.r.size() != N) throw DomainError("integrate needs matching p, r of length >= 3");
    if (!(dt > 0.0) || steps < 0) throw UsageError("integrate needs dt > 0 and steps >= 0");
    std::vector<double> force(N);
    auto kick = [&](double h) {
        // dp_j/dt = V'(r_j) - V'(r_{j-1}), V'(x) = 1 - e^{-x}
        for (std::size_t j = 0; j < N; ++j) force[j] = -std::expm1(-s.r[j]);
        for (std::size_t j = 0; j < N; ++j) s.p[j] += h * (force[j] - force[(j + N - 1) % N]);
    };
    auto drift = [&](double h) {
        double p0 = s.p[0];
        for (std::size_t j = 0; j + 1 < N; ++j) s.r[j] += h * (s.p[j + 1] - s.p[j]);
        s.r[N - 1] += h * (p0 - s.p[N - 1]);
    };
    auto verlet = [&](double h) {
        kick(0.5 * h);
        drift(h);
        kick(0.5 * h);
    };
    // triple-jump composition weights
    const double cbrt2 = std::cbrt(2.0);
    const double w1 = 1.0 / (2.0 - cbrt2), w0 = -cbrt2 / (2.0 - cbrt2);
    for (long k = 0; k < steps; ++k) {
        if (scheme == Splitting::Verlet) {
            verlet(dt);
        } else {
            verlet(w1 * dt);
            verlet(w0 * dt);
            verlet(w1 * dt);
        }
        if ((k & 1023) == 0) {
            for (std::size_t j = 0; j < N; ++j)
                if (!(std::fabs(s.p[j]) < 1e10 && std::fabs(s.r[j]) < 1e10)) throw NumericError("Toda integration blew up");
        }
    }
    for (std::size_t j = 0; j < N; ++j)
        if (!(std::fabs(s.p[j]) < 1e10 && std::fabs(s.r[j]) < 1e10)) throw NumericError("Toda integration blew up");
    return s;
}

} // namespace rmlab
