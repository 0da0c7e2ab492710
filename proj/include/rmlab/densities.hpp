#pragma once
#include "rmlab/density_curve.hpp"
#include "rmlab/quadrature.hpp"

#include <string>
#include <vector>

namespace rmlab {

enum class DensityFamily { Gaussian, Laguerre, Jacobi };

std::string density_family_name(DensityFamily f);

// Parameters of an analytic density. For Laguerre the exponent `shape` is what
// stays fixed under d/dalpha; `gamma` only enters through laguerre_shape and the
// large-alpha limit.
struct DensityParams {
    DensityFamily family = DensityFamily::Gaussian;
    double alpha = 1.0;
    double gamma = 0.5;
    double shape = 0.0;
    double a = 0.0;
    double b = 0.0;

    static DensityParams gaussian(double alpha);
    static DensityParams laguerre(double alpha, double gamma);
    static DensityParams jacobi(double alpha, double a, double b);

    DensityParams with_alpha(double alpha) const;
    void validate() const;
};

// Exponent c of x^c e^{-x} matching the Laguerre ensemble with ratio gamma.
double laguerre_shape(double alpha, double gamma);

double mu_gaussian(double alpha, double x);
double mu_laguerre(double alpha, double gamma, double x);
double mu_laguerre_shape(double alpha, double shape, double x);
double mu_jacobi(double alpha, double a, double b, double x);

// Orthogonality density of the family.
double mu_density(const DensityParams& p, double x);

// d/dalpha (alpha mu)(x), central difference with one Richardson step.
double dos_density(const DensityParams& p, double x);

// Large-alpha limit in rescaled coordinates, and the matching rescaling of the DOS.
double arcsine_limit(const DensityParams& p, double x);
double rescaled_dos(const DensityParams& p, double x);
void arcsine_support(const DensityParams& p, double& lo, double& hi);

// Window outside which mu and the DOS are negligible (< e^-45 relative), with
// the algebraic endpoint exponents.
Support density_support(const DensityParams& p);

enum class DensityKind { Mu, Dos };

double density_value(const DensityParams& p, DensityKind k, double x);

// Moments int x^l f dx, l = 0..l_max.
std::vector<double> density_moments(const DensityParams& p, DensityKind k, int l_max, int panels = 0);

CdfTable density_cdf(const DensityParams& p, DensityKind k, int cells);

DensityCurve density_curve(const DensityParams& p, DensityKind k, const std::vector<double>& grid);

// Sup distance between rescaled DOS and arcsine limit on the central `inner`
// fraction of the limit's support.
double arcsine_sup_distance(const DensityParams& p, int points = 400, double inner = 0.8);

// Mean DOS of the periodic Toda Lax matrix: sqrt(beta) times the Gaussian DOS at
// alpha = beta + theta, evaluated at sqrt(beta) x.
double toda_lax_dos(double beta, double theta, double x);
CdfTable toda_lax_cdf(double beta, double theta, int cells);

// Associated orthogonal polynomials by forward recurrence.
enum class OrthoKind { AssocHermite, AssocLaguerre, AssocJacobi };

struct OrthoPolyFamily {
    OrthoKind kind = OrthoKind::AssocHermite;
    double alpha = 1.0;
    double shape = 0.0;  // Laguerre exponent c
    double a = 0.0;
    double b = 0.0;

    static OrthoPolyFamily for_density(const DensityParams& p);

    // Jacobi-family xi_n, eta_n
    double xi(int n) const;
    double eta(int n) const;
    // squared norm of the degree-n polynomial implied by the recurrence
    double norm_sq(int n) const;
};

double orthopoly_eval(const OrthoPolyFamily& fam, int n, double x);

} // namespace rmlab
