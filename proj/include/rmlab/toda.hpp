#pragma once
#include "rmlab/distributions.hpp"
#include "rmlab/ensembles.hpp"

#include <vector>

namespace rmlab {

// Periodic chain in momenta p_j and bond stretches r_j = q_{j+1} - q_j.
struct TodaState {
    std::vector<double> p;
    std::vector<double> r;

    std::size_t size() const { return p.size(); }
};

struct TodaParams {
    int N = 32;
    double beta = 1.0;
    double theta = 0.0;

    // theta from solve_theta(beta)
    static TodaParams make(int N, double beta);
    void validate() const;
};

double toda_potential(double x);  // e^{-x} + x - 1
double hamiltonian(const TodaState& s);
PeriodicJacobi flaschka(const TodaState& s);

// Unique theta > 0 with digamma(beta + theta) = log(beta).
double solve_theta(double beta);

// Product measure: p ~ N(0, 1/beta), e^{-r} ~ Gamma(beta + theta, rate beta).
TodaState sample_gibbs_approx(const TodaParams& params, Rng& rng);

struct McmcBudget {
    int burn_in_per_site = 50;   // pair moves = burn_in_per_site * N
    double target_acceptance = 0.4;
};

struct McmcReport {
    long moves = 0;
    double acceptance = 0.0;
    double step = 0.0;
    bool tuning_warning = false;  // acceptance outside [0.1, 0.9]
};

// Sum p = sum r = 0: p is the mean-subtracted Gaussian draw, r comes from
// Metropolis pair moves (r_i + d, r_j - d) started at the mean-subtracted
// approximate draw.
TodaState sample_gibbs_constrained(const TodaParams& params, Rng& rng, const McmcBudget& budget = {},
                                   McmcReport* report = nullptr);

enum class Splitting { Verlet, Yoshida4 };

// Stormer-Verlet (kick-drift-kick) steps of the periodic Toda equations; Yoshida4
// composes three Verlet substeps into a fourth-order symplectic step.
TodaState integrate(TodaState s, double dt, long steps, Splitting scheme = Splitting::Verlet);

} // namespace rmlab
