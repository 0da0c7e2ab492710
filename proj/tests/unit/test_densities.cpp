#include "rmlab/densities.hpp"
#include "rmlab/errors.hpp"
#include "rmlab/motzkin.hpp"
#include "rmlab/polynomial.hpp"
#include "rmlab/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace rmlab;

namespace {

bool close_rel(double a, double b, double tol) { return std::fabs(a - b) <= tol * std::fabs(b); }

double integrate(const DensityParams& p, const std::function<double(double)>& f, int panels)
{
    QuadRule r = make_rule(density_support(p), panels);
    return r.apply(evaluate_nodes(f, r.nodes));
}

} // namespace

TEST_CASE("quadrature rules at power-law endpoints")
{
    for (double e : {-0.75, -0.3, 0.4, 2.5}) {
        Support s;
        s.lo = 0.0;
        s.hi = 2.0;
        s.lo_power = true;
        s.lo_exponent = e;
        QuadRule r = make_rule(s, 4);
        double v = r.apply(evaluate_nodes([&](double x) { return std::pow(x, e) * std::exp(-x); }, r.nodes));
        // int_0^2 x^e e^-x dx = sum_k (-1)^k 2^(k+e+1) / (k! (k+e+1))
        double ref = 0.0, fact = 1.0;
        for (int k = 0; k < 40; ++k) {
            if (k) fact *= k;
            ref += (k % 2 ? -1.0 : 1.0) * std::pow(2.0, k + e + 1.0) / (fact * (k + e + 1.0));
        }
        CAPTURE(e);
        CHECK(close_rel(v, ref, 1e-11));
    }
    CHECK_THROWS_AS(make_rule(Support{1.0, 0.0}, 3), UsageError);
}

TEST_CASE("CDF tables interpolate power-law ends in the right variable")
{
    Support s;
    s.lo = 0.0;
    s.hi = 1.0;
    s.lo_power = true;
    s.lo_exponent = -0.75;
    s.hi_power = true;
    s.hi_exponent = 0.5;
    // f = c x^-0.75 (1-x)^0.5 has no closed CDF; compare with a dense rule
    auto f = [](double x) { return std::pow(x, -0.75) * std::sqrt(1.0 - x); };
    CdfTable t = make_cdf(f, s, 40);
    for (double x : {1e-8, 1e-5, 1e-3, 0.011, 0.3, 0.77, 0.99, 0.9999}) {
        Support sub = s;
        sub.hi = x;
        sub.hi_power = false;
        QuadRule r = make_rule(sub, 50);
        double ref = r.apply(evaluate_nodes(f, r.nodes));
        CAPTURE(x);
        CHECK(std::fabs(t(x) - ref) < 2e-4 * t.F.back());
    }
    CHECK(t(-1.0) == 0.0);
    CHECK(t(2.0) == t.F.back());
}

TEST_CASE("Gaussian mu: oracle values, symmetry, mass")
{
    CHECK(close_rel(mu_gaussian(1.0, 0.0), 0.25397454373696387914, 1e-12));
    CHECK(close_rel(mu_gaussian(1.0, 0.0), 1.0 / std::sqrt(2.0 * std::numbers::pi) / (std::numbers::pi / 2.0), 1e-12));
    CHECK(close_rel(mu_gaussian(10.0, 5.0), 0.058765276299379746007, 1e-10));
    CHECK(close_rel(mu_gaussian(100.0, 15.0), 0.020936529104278029493, 1e-10));
    CHECK(close_rel(mu_gaussian(100.0, 25.0), 7.1004589193766871816e-24, 1e-9));
    for (double a : {0.3, 1.0, 7.5})
        for (double x : {0.2, 1.3, 4.1}) CHECK(std::fabs(mu_gaussian(a, x) - mu_gaussian(a, -x)) <= 1e-10 * mu_gaussian(a, x));
    Support s{-12.0, 12.0};
    QuadRule r = make_rule(s, 48);
    CHECK(std::fabs(r.apply(evaluate_nodes([](double x) { return mu_gaussian(1.0, x); }, r.nodes)) - 1.0) < 1e-6);
    CHECK_THROWS_AS(mu_gaussian(0.0, 1.0), DomainError);
}

TEST_CASE("Laguerre mu: oracle values, mass, first moment, edge exponent")
{
    CHECK(close_rel(mu_laguerre_shape(1.0, -0.75, 1.0), 0.22454209766241839511, 1e-9));
    CHECK(close_rel(mu_laguerre_shape(10.0, 1.5, 20.0), 0.016981212216994779756, 1e-9));
    CHECK(close_rel(mu_laguerre_shape(100.0, 24.0, 200.0), 0.0017610997006429757366, 1e-9));
    CHECK(laguerre_shape(1.0, 0.8) == doctest::Approx(-0.75));
    CHECK(mu_laguerre(1.0, 0.8, 1.0) == mu_laguerre_shape(1.0, -0.75, 1.0));

    for (auto [alpha, gamma] : {std::pair{1.0, 0.8}, {3.0, 0.5}, {10.0, 0.3}}) {
        auto p = DensityParams::laguerre(alpha, gamma);
        auto m = density_moments(p, DensityKind::Mu, 1);
        CAPTURE(alpha);
        CHECK(std::fabs(m[0] - 1.0) < 1e-6);
        // the ensemble's spectral-measure mean
        CHECK(std::fabs(m[1] - alpha / gamma) < 1e-4 * alpha / gamma);
        // log-log slope near 0 equals the shape exponent; the first correction is
        // O(x^(1+c)), so the window sits well inside it
        const double c = p.shape;
        double slope = std::log(mu_density(p, 1e-6) / mu_density(p, 1e-8)) / std::log(100.0);
        CHECK(std::fabs(slope - c) < 0.02 * std::max(1.0, std::fabs(c)));
    }
}

TEST_CASE("Jacobi mu: oracle values, mass, first moment, V(0) = 0 edge")
{
    CHECK(close_rel(mu_jacobi(1.0, 25.8, 10.0, 0.7), 3.4198588372054478918, 1e-9));
    CHECK(close_rel(mu_jacobi(100.0, 25.8, 10.0, 0.3), 0.80338254583996285654, 1e-9));
    CHECK(close_rel(mu_jacobi(2.0, -0.4, 1.7, 0.95), 0.30027292372341576719, 1e-9));
    CHECK(mu_jacobi(1.0, 0.5, 0.3, -0.1) == 0.0);
    CHECK(mu_jacobi(1.0, 0.5, 0.3, 0.0) == 0.0);
    CHECK_THROWS_AS(mu_jacobi(1.0, 2.0, 0.3, 0.5), DomainError);

    struct J {
        double alpha, a, b;
    };
    for (J j : {J{1.0, 25.8, 10.0}, J{2.0, 0.5, 0.3}, J{0.6, -0.3, -0.5}}) {
        auto p = DensityParams::jacobi(j.alpha, j.a, j.b);
        auto m = density_moments(p, DensityKind::Mu, 1);
        auto fam = MomentFamily::jacobi(rational_from_double(j.a), rational_from_double(j.b));
        CAPTURE(j.alpha);
        CHECK(std::fabs(m[0] - 1.0) < 1e-5);
        CHECK(std::fabs(m[1] - moments_pair(1, fam, j.alpha).u) < 1e-4);
    }
    // x^a behaviour at 0 (V vanishes like x^(a+1))
    auto p = DensityParams::jacobi(2.0, 0.5, 0.3);
    double slope = std::log(mu_density(p, 1e-6) / mu_density(p, 1e-8)) / std::log(100.0);
    CHECK(std::fabs(slope - 0.5) < 1e-3);
}

TEST_CASE("DOS: mass, second moment, Jacobi support")
{
    auto g = DensityParams::gaussian(1.0);
    auto mg = density_moments(g, DensityKind::Dos, 2);
    CHECK(std::fabs(mg[0] - 1.0) < 1e-5);
    CHECK(std::fabs(mg[2] - 3.0) < 1e-3);
    auto j = DensityParams::jacobi(1.0, 25.8, 10.0);
    CHECK(dos_density(j, -1e-3) == 0.0);
    CHECK(dos_density(j, 1.0 + 1e-3) == 0.0);
    CHECK(std::fabs(density_moments(j, DensityKind::Dos, 0)[0] - 1.0) < 1e-5);
    for (double x = -5.0; x <= 5.0; x += 0.25) CHECK(dos_density(g, x) >= 0.0);
    CHECK_THROWS_AS(dos_density(DensityParams::gaussian(1e-4), 0.0), DomainError);
}

TEST_CASE("moment consistency with the combinatorial engine")
{
    struct Case {
        DensityParams p;
        MomentFamily f;
    };
    Case cases[] = {
        {DensityParams::gaussian(2.0), MomentFamily::gaussian()},
        {DensityParams::laguerre(2.0, 0.5), MomentFamily::laguerre_at(2.0, 0.5)},
        {DensityParams::jacobi(1.5, 0.5, 0.3), MomentFamily::jacobi(mpq_class(1, 2), mpq_class(3, 10))},
    };
    for (const auto& c : cases) {
        auto mu = density_moments(c.p, DensityKind::Mu, 6);
        auto dos = density_moments(c.p, DensityKind::Dos, 6);
        for (int l = 1; l <= 6; ++l) {
            MomentPair m = moments_pair(l, c.f, c.p.alpha);
            CAPTURE(density_family_name(c.p.family));
            CAPTURE(l);
            const double su = std::max(1.0, std::fabs(m.u)), sv = std::max(1.0, std::fabs(m.v));
            CHECK(std::fabs(mu[l] - m.u) < 1e-3 * su);
            CHECK(std::fabs(dos[l] - m.v) < 1e-3 * sv);
        }
    }
}

TEST_CASE("arcsine limits")
{
    CHECK(arcsine_limit(DensityParams::gaussian(10.0), 0.0) == doctest::Approx(1.0 / (2.0 * std::numbers::pi)));
    CHECK(arcsine_limit(DensityParams::jacobi(10.0, 0.5, 0.3), 0.5) == doctest::Approx(2.0 / std::numbers::pi));
    double lo = 0.0, hi = 0.0;
    auto lag = DensityParams::laguerre(10.0, 0.8);
    arcsine_support(lag, lo, hi);
    CHECK(lo == doctest::Approx(std::pow(1.0 - std::sqrt(0.8), 2)));
    CHECK(hi == doctest::Approx(std::pow(1.0 + std::sqrt(0.8), 2)));
    CHECK(arcsine_limit(lag, hi + 0.1) == 0.0);
    // each limit is a probability density
    for (auto p : {DensityParams::gaussian(1.0), lag, DensityParams::jacobi(1.0, 0.5, 0.3)}) {
        arcsine_support(p, lo, hi);
        // substitute x = mid + half sin(t) to remove the endpoint singularities
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        Support s{-std::numbers::pi / 2.0, std::numbers::pi / 2.0};
        QuadRule r = make_rule(s, 8);
        double m = r.apply(evaluate_nodes(
            [&](double t) { return arcsine_limit(p, mid + half * std::sin(t)) * half * std::cos(t); }, r.nodes));
        CHECK(std::fabs(m - 1.0) < 1e-10);
    }
    // Gaussian convergence along alpha
    double d10 = arcsine_sup_distance(DensityParams::gaussian(10.0));
    double d50 = arcsine_sup_distance(DensityParams::gaussian(50.0));
    CHECK(d50 < d10);
}

TEST_CASE("associated polynomials: explicit low degrees")
{
    OrthoPolyFamily h{OrthoKind::AssocHermite, 1.7};
    for (double x : {-1.3, 0.0, 2.2}) {
        CHECK(orthopoly_eval(h, 0, x) == 1.0);
        CHECK(orthopoly_eval(h, 1, x) == doctest::Approx(x));
        CHECK(orthopoly_eval(h, 2, x) == doctest::Approx(x * x - (1.0 + 1.7)));
    }
    const double alpha = 2.0, gamma = 0.8;
    auto lag = OrthoPolyFamily::for_density(DensityParams::laguerre(alpha, gamma));
    const double c = laguerre_shape(alpha, gamma);
    for (double x : {0.5, 3.0})
        CHECK(orthopoly_eval(lag, 1, x) == doctest::Approx((alpha + c + 1.0 - x) / (alpha + 1.0)));
}

TEST_CASE("associated polynomials are orthogonal under mu")
{
    for (auto p : {DensityParams::gaussian(1.5), DensityParams::laguerre(1.0, 0.8), DensityParams::jacobi(1.0, 0.5, 0.3)}) {
        auto fam = OrthoPolyFamily::for_density(p);
        for (int n = 0; n <= 4; ++n)
            for (int m = 0; m <= n; ++m) {
                double v = integrate(
                    p, [&](double x) { return orthopoly_eval(fam, n, x) * orthopoly_eval(fam, m, x) * mu_density(p, x); },
                    40);
                CAPTURE(density_family_name(p.family));
                CAPTURE(n);
                CAPTURE(m);
                if (n == m)
                    CHECK(std::fabs(v - fam.norm_sq(n)) < 1e-3 * fam.norm_sq(n));
                else
                    CHECK(std::fabs(v) < 5e-4);
            }
    }
}

TEST_CASE("Toda Lax DOS is a rescaled Gaussian DOS")
{
    const double beta = 2.0, theta = 0.4;
    const double sb = std::sqrt(beta);
    for (double x : {-1.0, 0.0, 0.7})
        CHECK(toda_lax_dos(beta, theta, x) ==
              doctest::Approx(sb * dos_density(DensityParams::gaussian(beta + theta), sb * x)));
    CdfTable t = toda_lax_cdf(beta, theta, 200);
    CHECK(std::fabs(t.F.back() - 1.0) < 1e-6);
    CHECK(t(0.0) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK_THROWS_AS(toda_lax_dos(0.0, theta, 0.0), DomainError);
}
