#pragma once
#include "rmlab/distributions.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace rmlab {

struct SymTridiag {
    std::vector<double> diag;  // length N
    std::vector<double> off;   // length N-1

    std::size_t size() const { return diag.size(); }
    void validate() const;
};

// Tridiagonal plus the corner coupling between rows 1 and N.
struct PeriodicJacobi {
    std::vector<double> diag;  // length N
    std::vector<double> off;   // length N-1
    double corner = 0.0;

    std::size_t size() const { return diag.size(); }
    void validate() const;
};

enum class Family { GaussianAlpha, LaguerreAlpha, JacobiAlpha, GaussianBeta, LaguerreBeta, JacobiBeta };

std::string family_name(Family f);
bool is_beta_family(Family f);

struct EnsembleParams {
    Family family = Family::GaussianAlpha;
    int N = 2;
    double alpha = 1.0;
    double gamma = 0.5;   // Laguerre N/M ratio
    int M = 0;            // Laguerre column count; derived as round(N/gamma) when 0
    double a = 0.0;       // Jacobi
    double b = 0.0;
    double beta = 0.0;    // beta families; 2*alpha/N when 0

    // Fills derived fields (M, beta) and checks the domain constraints.
    void validate();
};

// Lower-bidiagonal product B B^T for B with diagonal d and subdiagonal s.
SymTridiag bidiagonal_gram(const std::vector<double>& d, const std::vector<double>& s);

SymTridiag build_gaussian_alpha(const EnsembleParams& p, Rng& rng);
SymTridiag build_laguerre_alpha(const EnsembleParams& p, Rng& rng);
SymTridiag build_jacobi_alpha(const EnsembleParams& p, Rng& rng);
SymTridiag build_beta_family(const EnsembleParams& p, Rng& rng);

// Dispatch on p.family.
SymTridiag build_ensemble(const EnsembleParams& p, Rng& rng);

// Lax matrix under the product (approximate) Gibbs measure:
// diag ~ N(0,2)/sqrt(2 beta), off and corner ~ chi_{2(beta+theta)}/sqrt(2 beta).
PeriodicJacobi build_toda_lax(int N, double beta, double theta, Rng& rng);

} // namespace rmlab
