#include "rmlab/montecarlo.hpp"
#include "rmlab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace rmlab {

namespace {

void check_trials(int trials)
{
    if (trials < 1) throw UsageError("need at least one trial");
}

Spectrum one_spectrum(const EnsembleParams& p, std::uint64_t seed, int t)
{
    Rng rng(seed, static_cast<std::uint64_t>(t));
    return eig_tridiag(build_ensemble(p, rng));
}

std::vector<double> one_traces(const EnsembleParams& p, std::uint64_t seed, int t, int l_max)
{
    Rng rng(seed, static_cast<std::uint64_t>(t));
    SymTridiag m = build_ensemble(p, rng);
    std::vector<double> v(l_max + 1);
    for (int l = 0; l <= l_max; ++l) v[l] = trace_power(m, l) / static_cast<double>(p.N);
    return v;
}

TraceMoments reduce_traces(const std::vector<std::vector<double>>& per_trial, int l_max)
{
    // fixed trial order keeps the sums bitwise reproducible
    TraceMoments r;
    r.mean.assign(l_max + 1, 0.0);
    r.std_error.assign(l_max + 1, 0.0);
    const double n = static_cast<double>(per_trial.size());
    for (int l = 0; l <= l_max; ++l) {
        double s = 0.0;
        for (const auto& v : per_trial) s += v[l];
        double m = s / n, ss = 0.0;
        for (const auto& v : per_trial) ss += (v[l] - m) * (v[l] - m);
        r.mean[l] = m;
        r.std_error[l] = n > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    }
    return r;
}

} // namespace

std::vector<Spectrum> sample_spectra(const EnsembleParams& p0, int trials, std::uint64_t seed)
{
    check_trials(trials);
    EnsembleParams p = p0;
    p.validate();
    std::vector<Spectrum> out(trials);
#pragma omp parallel for schedule(dynamic, 8)
    for (int t = 0; t < trials; ++t) out[t] = one_spectrum(p, seed, t);
    return out;
}

std::vector<Spectrum> sample_spectra_serial(const EnsembleParams& p0, int trials, std::uint64_t seed)
{
    check_trials(trials);
    EnsembleParams p = p0;
    p.validate();
    std::vector<Spectrum> out(trials);
    for (int t = 0; t < trials; ++t) out[t] = one_spectrum(p, seed, t);
    return out;
}

std::vector<double> pooled_sorted(const std::vector<Spectrum>& spectra)
{
    std::vector<double> all;
    std::size_t n = 0;
    for (const auto& s : spectra) n += s.values.size();
    all.reserve(n);
    for (const auto& s : spectra) all.insert(all.end(), s.values.begin(), s.values.end());
    std::sort(all.begin(), all.end());
    return all;
}

TraceMoments trace_moments(const EnsembleParams& p0, int trials, int l_max, std::uint64_t seed)
{
    check_trials(trials);
    EnsembleParams p = p0;
    p.validate();
    std::vector<std::vector<double>> per(trials);
#pragma omp parallel for schedule(dynamic, 8)
    for (int t = 0; t < trials; ++t) per[t] = one_traces(p, seed, t, l_max);
    return reduce_traces(per, l_max);
}

TraceMoments trace_moments_serial(const EnsembleParams& p0, int trials, int l_max, std::uint64_t seed)
{
    check_trials(trials);
    EnsembleParams p = p0;
    p.validate();
    std::vector<std::vector<double>> per(trials);
    for (int t = 0; t < trials; ++t) per[t] = one_traces(p, seed, t, l_max);
    return reduce_traces(per, l_max);
}

std::vector<std::vector<double>> linear_statistics(const EnsembleParams& p0, int trials,
                                                   const std::vector<std::function<double(double)>>& fs,
                                                   std::uint64_t seed)
{
    check_trials(trials);
    EnsembleParams p = p0;
    p.validate();
    std::vector<std::vector<double>> out(fs.size(), std::vector<double>(trials));
#pragma omp parallel for schedule(dynamic, 8)
    for (int t = 0; t < trials; ++t) {
        Spectrum s = one_spectrum(p, seed, t);
        for (std::size_t k = 0; k < fs.size(); ++k) {
            double acc = 0.0;
            for (double x : s.values) acc += fs[k](x);
            out[k][t] = acc / static_cast<double>(s.values.size());
        }
    }
    return out;
}

std::vector<Spectrum> toda_lax_spectra(const TodaParams& params, TodaSampler sampler, int trials, std::uint64_t seed,
                                       const McmcBudget& budget)
{
    check_trials(trials);
    params.validate();
    std::vector<Spectrum> out(trials);
#pragma omp parallel for schedule(dynamic, 4)
    for (int t = 0; t < trials; ++t) {
        Rng rng(seed, static_cast<std::uint64_t>(t));
        TodaState s = sampler == TodaSampler::Approximate ? sample_gibbs_approx(params, rng)
                                                          : sample_gibbs_constrained(params, rng, budget);
        out[t] = eig_periodic(flaschka(s));
    }
    return out;
}

} // namespace rmlab
