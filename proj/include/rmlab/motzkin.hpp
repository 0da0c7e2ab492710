#pragma once
#include "rmlab/densities.hpp"
#include "rmlab/polynomial.hpp"

#include <gmpxx.h>

#include <map>
#include <optional>
#include <vector>

namespace rmlab {

// One element of the index set for the diagonal entry of T^l: n[e] counts
// traversals of the edge between window positions e and e+1 (e in [-L, L-1]),
// k[v] counts loops at position v (v in [-L, L]), L = floor(l/2).
struct SuperMotzkinTerm {
    int l = 0;
    int L = 0;
    std::vector<int> n;  // n[e + L]
    std::vector<int> k;  // k[v + L]

    int n_at(int e) const { return e >= -L && e < L ? n[e + L] : 0; }
    int k_at(int v) const { return v >= -L && v <= L ? k[v + L] : 0; }
    bool valid() const;
};

constexpr int kMaxMotzkinOrder = 12;

std::vector<SuperMotzkinTerm> enumerate_A(int l);
mpz_class rho(const SuperMotzkinTerm& t);

// Polynomial in the window entries a_v (v in [-W, W]) and b_e (e in [-W, W-1]),
// W = floor(l/2) + 1. Keys hold the a exponents followed by the b exponents.
using WindowPoly = std::map<std::vector<int>, mpz_class>;

WindowPoly motzkin_polynomial(int l);
// (T^l)(0,0) for a symbolic tridiagonal window matrix of size 2W+1.
WindowPoly symbolic_diag_power(int l);

// Entry laws of the alpha-ensembles, normalized as in the ensemble builders.
// Laguerre: x-shape alpha + p, y-shape alpha (p fixed under d/dalpha).
struct MomentFamily {
    DensityFamily family = DensityFamily::Gaussian;
    mpq_class p = 0;
    mpq_class a = 0;
    mpq_class b = 0;

    static MomentFamily gaussian();
    static MomentFamily laguerre(const mpq_class& p);
    static MomentFamily laguerre_at(double alpha, double gamma);  // p = alpha (1 - gamma) / gamma
    static MomentFamily jacobi(const mpq_class& a, const mpq_class& b);
};

// E[h^{(l)}] as an exact function of alpha (w_l, g_l or r_l).
RationalFunc expected_h(int l, const MomentFamily& fam);

struct MomentPair {
    int l = 0;
    RationalFunc v_func;
    std::optional<Poly> u_poly;  // polynomial families only
    double alpha = 0.0;
    double v = 0.0;
    double u = 0.0;
    bool identity_exact = false;     // polynomial families: d/dalpha(alpha u) == v coefficient-wise
    double identity_residual = 0.0;  // relative; finite-difference check for rational r_l
};

MomentPair moments_pair(int l, const MomentFamily& fam, double alpha);

} // namespace rmlab
