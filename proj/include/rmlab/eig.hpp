#pragma once
#include "rmlab/density_curve.hpp"
#include "rmlab/ensembles.hpp"

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace rmlab {

struct Spectrum {
    std::vector<double> values;  // ascending
};

struct SpectralMeasure {
    std::vector<std::pair<double, double>> atoms;  // (eigenvalue, q_j^2)
};

struct BinSpec {
    int bins = 120;
    double lo = std::numeric_limits<double>::quiet_NaN();  // NaN: data range padded by eps
    double hi = std::numeric_limits<double>::quiet_NaN();
};

// Implicit QL with Wilkinson shifts in the square-root-free form; throws
// NumericError after 60 sweeps on one eigenvalue.
Spectrum eig_tridiag(const SymTridiag& m);
// Same shifts with explicit rotations (the kernel shared with spectral_weights).
Spectrum eig_tridiag_reference(const SymTridiag& m);

// Corner-coupled matrix: zigzag reordering to bandwidth 2, Givens band reduction,
// then the tridiagonal kernel.
Spectrum eig_periodic(const PeriodicJacobi& m);

// Eigenvalues with squared first eigenvector components (first row of the QL
// rotations accumulated alongside the eigenvalues).
SpectralMeasure spectral_weights(const SymTridiag& m);

// Pools all spectra into one normalized histogram; errors are trial-to-trial
// standard errors of the per-bin density.
DensityCurve empirical_histogram(const std::vector<Spectrum>& spectra, const BinSpec& bins);

// Histogram range [min - eps, max + eps] for the given spectra.
std::pair<double, double> data_range(const std::vector<Spectrum>& spectra);

// Trace of m^l via the banded powers (O(N l^2)).
double trace_power(const SymTridiag& m, int l);

} // namespace rmlab
