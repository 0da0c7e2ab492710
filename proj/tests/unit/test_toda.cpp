#include "rmlab/densities.hpp"
#include "rmlab/eig.hpp"
#include "rmlab/errors.hpp"
#include "rmlab/montecarlo.hpp"
#include "rmlab/stats.hpp"
#include "rmlab/toda.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace rmlab;

namespace {

TodaState zero_state(int N)
{
    return TodaState{std::vector<double>(N, 0.0), std::vector<double>(N, 0.0)};
}

TodaState random_state(int N, double beta, std::uint64_t seed)
{
    Rng rng(seed, 0);
    return sample_gibbs_approx(TodaParams::make(N, beta), rng);
}

double sup_diff(const Spectrum& a, const Spectrum& b)
{
    double d = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) d = std::max(d, std::fabs(a.values[i] - b.values[i]));
    return d;
}

double relative_energy_drift(Splitting scheme)
{
    TodaState s0 = random_state(32, 2.0, 11);
    double h0 = hamiltonian(s0);
    TodaState s1 = integrate(s0, 1e-3, 100000, scheme);
    return std::fabs(hamiltonian(s1) - h0) / std::fabs(h0);
}

} // namespace

TEST_CASE("Toda Hamiltonian")
{
    CHECK(hamiltonian(zero_state(5)) == 0.0);
    TodaState s = zero_state(6);
    for (double& r : s.r) r = 0.7;
    CHECK(hamiltonian(s) == doctest::Approx(6 * (std::exp(-0.7) + 0.7 - 1)));
    for (double& r : s.r) r = -1.3;
    CHECK(hamiltonian(s) > 0.0);
    TodaState one = zero_state(4);
    one.r[0] = 1.0;
    CHECK(hamiltonian(one) == doctest::Approx(std::exp(-1.0)));
    TodaState moving = zero_state(3);
    moving.p = {1.0, -2.0, 0.5};
    CHECK(hamiltonian(moving) == doctest::Approx(0.5 * 5.25));
    CHECK(toda_potential(0.0) == 0.0);
    TodaState bad = zero_state(3);
    bad.r[1] = -1000.0;
    CHECK_THROWS_AS(hamiltonian(bad), NumericError);
}

TEST_CASE("Flaschka map")
{
    PeriodicJacobi L = flaschka(zero_state(3));
    for (double d : L.diag) CHECK(d == 0.0);
    for (double o : L.off) CHECK(o == 1.0);
    CHECK(L.corner == 1.0);
    Spectrum sp = eig_periodic(L);
    REQUIRE(sp.values.size() == 3);
    CHECK(sp.values[0] == doctest::Approx(-1.0));
    CHECK(sp.values[1] == doctest::Approx(-1.0));
    CHECK(sp.values[2] == doctest::Approx(2.0));

    TodaState s = random_state(17, 1.0, 3);
    PeriodicJacobi M = flaschka(s);
    double tr = std::accumulate(M.diag.begin(), M.diag.end(), 0.0);
    CHECK(tr == doctest::Approx(-std::accumulate(s.p.begin(), s.p.end(), 0.0)).epsilon(1e-13));
    for (int j = 0; j < 16; ++j) CHECK(M.off[j] == doctest::Approx(std::exp(-s.r[j] / 2)));
    CHECK(M.corner == doctest::Approx(std::exp(-s.r[16] / 2)));
    CHECK_THROWS_AS(flaschka(zero_state(2)), DomainError);
}

TEST_CASE("theta solves the tilt equation")
{
    CHECK(solve_theta(1.0) == doctest::Approx(0.46163214496836234126).epsilon(1e-14));
    CHECK(solve_theta(10.0) == doctest::Approx(0.49583799487125842884).epsilon(1e-14));
    for (double beta = 0.5; beta <= 200.0; beta *= 1.07) {
        double th = solve_theta(beta);
        CHECK(th > 0.0);
        CHECK(std::fabs(std::log(beta) - boost::math::digamma(beta + th)) < 1e-12);
    }
    CHECK(std::fabs(solve_theta(100.0) - 0.5) < std::fabs(solve_theta(10.0) - 0.5));
    CHECK_THROWS_AS(solve_theta(0.0), DomainError);
    CHECK_THROWS_AS(solve_theta(-1.0), DomainError);
    CHECK_THROWS_AS(TodaParams::make(2, 1.0), DomainError);
}

TEST_CASE("approximate Gibbs sampler moments")
{
    for (double beta : {1.0, 5.0}) {
        TodaParams prm = TodaParams::make(1000, beta);
        Rng rng(99, 1);
        std::vector<double> r, p, off2;
        for (int k = 0; k < 1000; ++k) {
            TodaState s = sample_gibbs_approx(prm, rng);
            r.insert(r.end(), s.r.begin(), s.r.end());
            p.insert(p.end(), s.p.begin(), s.p.end());
            for (double x : s.r) off2.push_back(2 * beta * std::exp(-x));
        }
        Summary sr = summarize(r), sp = summarize(p), so = summarize(off2);
        CHECK(std::fabs(sr.mean) < 4 * sr.std_error);
        CHECK(std::fabs(sp.mean) < 4 * sp.std_error);
        CHECK(sp.variance == doctest::Approx(1.0 / beta).epsilon(0.01));
        CHECK(std::fabs(so.mean - 2 * (beta + prm.theta)) < 5 * so.std_error);
    }
}

TEST_CASE("constrained Gibbs sampler")
{
    TodaParams prm = TodaParams::make(500, 1.0);
    Rng rng(5, 0), rng_approx(5, 1);
    std::vector<double> rc, ra;
    for (int k = 0; k < 60; ++k) {
        McmcReport rep;
        TodaState s = sample_gibbs_constrained(prm, rng, {}, &rep);
        CHECK(std::fabs(std::accumulate(s.p.begin(), s.p.end(), 0.0)) < 1e-12);
        CHECK(std::fabs(std::accumulate(s.r.begin(), s.r.end(), 0.0)) < 1e-12);
        CHECK(rep.acceptance > 0.1);
        CHECK(rep.acceptance < 0.9);
        CHECK(!rep.tuning_warning);
        CHECK(rep.moves >= 50L * 500);
        rc.insert(rc.end(), s.r.begin(), s.r.end());
        TodaState a = sample_gibbs_approx(prm, rng_approx);
        ra.insert(ra.end(), a.r.begin(), a.r.end());
    }
    std::sort(rc.begin(), rc.end());
    std::sort(ra.begin(), ra.end());
    CHECK(ks_two_sample(rc, ra) < 0.02);
}

TEST_CASE("Lax spectra of the two samplers agree")
{
    TodaParams prm = TodaParams::make(500, 1.0);
    auto approx = pooled_sorted(toda_lax_spectra(prm, TodaSampler::Approximate, 40, 21));
    auto constrained = pooled_sorted(toda_lax_spectra(prm, TodaSampler::Constrained, 40, 22));
    CHECK(ks_two_sample(approx, constrained) < 0.02);
}

TEST_CASE("integrator fixed point and conservation laws")
{
    TodaState eq = integrate(zero_state(8), 1e-2, 1000);
    for (int j = 0; j < 8; ++j) {
        CHECK(std::fabs(eq.p[j]) < 1e-14);
        CHECK(std::fabs(eq.r[j]) < 1e-14);
    }

    // leapfrog spectral error grows with temperature: checked at beta = 5
    const std::pair<Splitting, double> runs[] = {
        {Splitting::Verlet, 5.0}, {Splitting::Yoshida4, 2.0}, {Splitting::Yoshida4, 1.0}};
    for (auto [scheme, beta] : runs) {
        TodaState s0 = random_state(32, beta, 11);
        Spectrum l0 = eig_periodic(flaschka(s0));
        double p0 = std::accumulate(s0.p.begin(), s0.p.end(), 0.0);
        double r0 = std::accumulate(s0.r.begin(), s0.r.end(), 0.0);
        TodaState s1 = integrate(s0, 1e-3, 100000, scheme);
        CHECK(std::fabs(std::accumulate(s1.p.begin(), s1.p.end(), 0.0) - p0) < 1e-12);
        CHECK(std::fabs(std::accumulate(s1.r.begin(), s1.r.end(), 0.0) - r0) < 1e-10);
        CHECK(sup_diff(eig_periodic(flaschka(s1)), l0) < 1e-6);
    }
}

TEST_CASE("fourth-order splitting keeps the energy to 1e-8")
{
    CHECK(relative_energy_drift(Splitting::Yoshida4) < 1e-8);
}

TEST_CASE("leapfrog energy drift [known-limit]")
{
    // second-order scheme: drift scales as dt^2
    CHECK(relative_energy_drift(Splitting::Verlet) < 1e-8);
}

TEST_CASE("leapfrog error is second order")
{
    TodaState s0 = random_state(16, 2.0, 4);
    auto err = [&](double dt) {
        TodaState fine = integrate(s0, 1e-4, 10000, Splitting::Yoshida4);
        TodaState c = integrate(s0, dt, std::lround(1.0 / dt));
        double e = 0.0;
        for (int j = 0; j < 16; ++j) e = std::max(e, std::fabs(c.p[j] - fine.p[j]));
        return e;
    };
    double ratio = err(1e-2) / err(5e-3);
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("integrator blow-up and argument errors")
{
    TodaState s = zero_state(4);
    s.r[0] = -60.0;
    s.r[1] = 60.0;
    CHECK_THROWS_AS(integrate(s, 0.5, 100000), NumericError);
    CHECK_THROWS_AS(integrate(zero_state(4), 0.0, 10), UsageError);
    CHECK_THROWS_AS(integrate(zero_state(2), 0.1, 10), DomainError);
}

TEST_CASE("Lax DOS approaches the arcsine law as beta grows")
{
    auto dist = [](double beta) { return arcsine_sup_distance(DensityParams::gaussian(beta + solve_theta(beta))); };
    CHECK(dist(200.0) < dist(20.0));
    CHECK_THROWS_AS(toda_lax_dos(0.0, 0.5, 0.0), DomainError);
}
