#include "rmlab/densities.hpp"
#include "rmlab/errors.hpp"
#include "rmlab/montecarlo.hpp"
#include "rmlab/motzkin.hpp"
#include "rmlab/stats.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace rmlab;

namespace {

CdfTable uniform_cdf()
{
    return make_cdf([](double) { return 1.0; }, Support{0.0, 1.0}, 16);
}

} // namespace

TEST_CASE("one-sample KS statistic")
{
    CdfTable u = uniform_cdf();
    CHECK(ks_statistic({0.5}, u) == doctest::Approx(0.5));
    std::vector<double> grid;
    for (int i = 0; i < 100; ++i) grid.push_back((i + 0.5) / 100);
    CHECK(ks_statistic(grid, u) == doctest::Approx(0.005));
    std::vector<double> shifted(grid);
    for (double& x : shifted) x = x * 0.5;
    CHECK(ks_statistic(shifted, u) == doctest::Approx(0.5).epsilon(0.02));

    Rng rng(8, 0);
    std::vector<double> xs(20000);
    for (double& x : xs) x = rng.uniform();
    std::sort(xs.begin(), xs.end());
    CHECK(ks_statistic(xs, u) < 1.63 / std::sqrt(20000.0));
    CHECK_THROWS_AS(ks_statistic({}, u), UsageError);
}

TEST_CASE("two-sample KS statistic")
{
    CHECK(ks_two_sample({1, 2, 3}, {1, 2, 3}) == 0.0);
    CHECK(ks_two_sample({1, 2}, {3, 4}) == 1.0);
    CHECK(ks_two_sample({1, 3}, {2, 4}) == doctest::Approx(0.5));
    CHECK(ks_two_sample({1, 2, 3, 4}, {2.5}) == doctest::Approx(0.5));
    CHECK_THROWS_AS(ks_two_sample({}, {1.0}), UsageError);
}

TEST_CASE("summary statistics")
{
    Summary s = summarize({1, 2, 3, 4});
    CHECK(s.mean == 2.5);
    CHECK(s.variance == doctest::Approx(5.0 / 3));
    CHECK(s.std_error == doctest::Approx(std::sqrt(5.0 / 12)));
    CHECK(s.skewness == doctest::Approx(0.0));
    CHECK(s.excess_kurtosis == doctest::Approx(1.64 - 3.0));
    Summary t = summarize({0, 0, 0, 1});
    CHECK(t.skewness == doctest::Approx(0.09375 / std::pow(0.1875, 1.5)));
    CHECK(summarize({2, 2, 2}).skewness == 0.0);
    CHECK_THROWS_AS(summarize({1.0}), UsageError);
}

TEST_CASE("parallel Monte Carlo reproduces the serial reference bit for bit")
{
    EnsembleParams p;
    p.family = Family::LaguerreBeta;
    p.N = 60;
    p.alpha = 2.0;
    p.gamma = 0.6;
    p.validate();
    auto par = sample_spectra(p, 37, 123);
    auto ser = sample_spectra_serial(p, 37, 123);
    REQUIRE(par.size() == ser.size());
    for (std::size_t t = 0; t < par.size(); ++t) CHECK(par[t].values == ser[t].values);

    p.family = Family::JacobiAlpha;
    p.a = 0.5;
    p.b = 1.0;
    p.validate();
    TraceMoments a = trace_moments(p, 53, 5, 9), b = trace_moments_serial(p, 53, 5, 9);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    CHECK(a.mean[0] == 1.0);
}

TEST_CASE("pooled spectra and histogram mass")
{
    EnsembleParams p;
    p.family = Family::GaussianAlpha;
    p.N = 100;
    p.alpha = 3.0;
    p.validate();
    auto spectra = sample_spectra(p, 20, 1);
    auto pooled = pooled_sorted(spectra);
    CHECK(pooled.size() == 2000);
    CHECK(std::is_sorted(pooled.begin(), pooled.end()));
    DensityCurve h = empirical_histogram(spectra, BinSpec{50});
    CHECK(h.histogram_mass() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Monte Carlo traces agree with the exact moments")
{
    struct Case {
        Family family;
        MomentFamily moments;
    };
    const double alpha = 1.0, gamma = 0.8;
    const Case cases[] = {{Family::GaussianAlpha, MomentFamily::gaussian()},
                          {Family::LaguerreAlpha, MomentFamily::laguerre_at(alpha, gamma)}};
    for (const auto& c : cases) {
        EnsembleParams p;
        p.family = c.family;
        p.N = 500;
        p.alpha = alpha;
        p.gamma = gamma;
        p.validate();
        TraceMoments mc = trace_moments(p, 1000, 4, 77);
        for (int l = 1; l <= 4; ++l) {
            double v = moments_pair(l, c.moments, alpha).v;
            CAPTURE(family_name(c.family));
            CAPTURE(l);
            CHECK(std::fabs(mc.mean[l] - v) < 5 * mc.std_error[l]);
        }
    }
}

TEST_CASE("linear statistics match the trace moments")
{
    EnsembleParams p;
    p.family = Family::GaussianBeta;
    p.N = 80;
    p.alpha = 2.0;
    p.validate();
    auto stats = linear_statistics(p, 30, {[](double x) { return x * x; }}, 5);
    TraceMoments tm = trace_moments_serial(p, 30, 2, 5);
    double mean = 0.0;
    for (double s : stats[0]) mean += s;
    CHECK(mean / 30 == doctest::Approx(tm.mean[2]).epsilon(1e-10));
}

TEST_CASE("Toda Lax spectra follow the analytic DOS")
{
    TodaParams prm = TodaParams::make(200, 2.0);
    auto pooled = pooled_sorted(toda_lax_spectra(prm, TodaSampler::Approximate, 200, 3));
    CHECK(ks_statistic(pooled, toda_lax_cdf(prm.beta, prm.theta, 400)) < 0.015);
}
