#pragma once
#include "rmlab/eig.hpp"
#include "rmlab/ensembles.hpp"
#include "rmlab/toda.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace rmlab {

// Trial t draws from stream t of the seed, so results do not depend on the
// thread count. The *_serial variants are the single-threaded references.
std::vector<Spectrum> sample_spectra(const EnsembleParams& p, int trials, std::uint64_t seed);
std::vector<Spectrum> sample_spectra_serial(const EnsembleParams& p, int trials, std::uint64_t seed);

// All eigenvalues of all trials, ascending.
std::vector<double> pooled_sorted(const std::vector<Spectrum>& spectra);

struct TraceMoments {
    std::vector<double> mean;       // (1/N) E[Tr M^l], l = 0..l_max
    std::vector<double> std_error;
};

TraceMoments trace_moments(const EnsembleParams& p, int trials, int l_max, std::uint64_t seed);
TraceMoments trace_moments_serial(const EnsembleParams& p, int trials, int l_max, std::uint64_t seed);

// Per-trial values of (1/N) sum_j f(lambda_j) for each f.
std::vector<std::vector<double>> linear_statistics(const EnsembleParams& p, int trials,
                                                   const std::vector<std::function<double(double)>>& fs,
                                                   std::uint64_t seed);

enum class TodaSampler { Approximate, Constrained };

std::vector<Spectrum> toda_lax_spectra(const TodaParams& params, TodaSampler sampler, int trials, std::uint64_t seed,
                                       const McmcBudget& budget = {});

} // namespace rmlab
