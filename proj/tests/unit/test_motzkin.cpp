#include "rmlab/errors.hpp"
#include "rmlab/motzkin.hpp"
#include "rmlab/polynomial.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace rmlab;

namespace {

Poly P(std::initializer_list<long> c)
{
    std::vector<mpq_class> v;
    for (long x : c) v.emplace_back(x);
    return Poly(v);
}

} // namespace

TEST_CASE("polynomial arithmetic")
{
    Poly a = P({1, 2, 1}), b = P({1, 1});
    CHECK(a == b * b);
    Poly q, r;
    a.divmod(b, q, r);
    CHECK(q == b);
    CHECK(r.is_zero());
    CHECK(gcd(P({-1, 0, 1}), P({1, 2, 1})) == P({1, 1}));
    CHECK(P({3, 0, 2}).derivative() == P({0, 4}));
    CHECK(P({2, 6}).integral() == P({0, 2, 3}));
    CHECK(P({5, 0, 3}).eval(mpq_class(2)) == 17);
    CHECK(P({1, 1}).str() == "1 + alpha");
    // (1 + alpha)(2 + alpha)
    CHECK(Poly::rising(1, 1, 2) == P({2, 3, 1}));
    CHECK((P({1, 1}) - P({1, 1})).is_zero());
}

TEST_CASE("rational functions stay reduced")
{
    RationalFunc f(P({-1, 0, 1}), P({2, 2}));
    CHECK(f.num() == Poly(std::vector<mpq_class>{mpq_class(-1, 2), mpq_class(1, 2)}));
    CHECK(f.den() == Poly(mpq_class(1)));
    CHECK(f.is_polynomial());
    RationalFunc g(P({1}), P({0, 1}));
    RationalFunc h = g + g;
    CHECK(h.eval(mpq_class(4)) == mpq_class(1, 2));
    CHECK((g * RationalFunc(P({0, 1}))).is_polynomial());
    CHECK((g - g).is_zero());
}

TEST_CASE("exact rationals from text")
{
    CHECK(rational_from_string("25.8") == mpq_class(129, 5));
    CHECK(rational_from_string("-0.08") == mpq_class(-2, 25));
    CHECK(rational_from_string("1.5e-3") == mpq_class(3, 2000));
    CHECK(rational_from_string("7") == 7);
    CHECK(rational_from_double(0.8) == mpq_class(4, 5));
    CHECK(rational_str(mpq_class(-3, 4)) == "-3/4");
    CHECK_THROWS(rational_from_string("abc"));
}

TEST_CASE("enumeration of the index set")
{
    auto a1 = enumerate_A(1);
    REQUIRE(a1.size() == 1);
    CHECK(a1[0].k_at(0) == 1);
    for (int e = -a1[0].L; e < a1[0].L; ++e) CHECK(a1[0].n_at(e) == 0);

    const std::size_t sizes[] = {1, 3, 5, 12, 22, 47, 89, 180, 344, 676};
    for (int l = 1; l <= 10; ++l) {
        auto A = enumerate_A(l);
        CHECK(A.size() == sizes[l - 1]);
        std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
        for (const auto& t : A) {
            CHECK(t.valid());
            int s = 0;
            for (int e = -t.L; e < t.L; ++e) s += 2 * t.n_at(e);
            for (int v = -t.L; v <= t.L; ++v) s += t.k_at(v);
            CHECK(s == l);
            CHECK(seen.insert({t.n, t.k}).second);
        }
    }
    CHECK_THROWS_AS(enumerate_A(13), ResourceError);
    CHECK_THROWS_AS(enumerate_A(0), UsageError);
}

TEST_CASE("rho of the l = 2 terms and the all-ones trace count")
{
    for (const auto& t : enumerate_A(2)) CHECK(rho(t) == 1);
    // (T^l)(j,j) for the all-ones tridiagonal: central trinomial coefficients
    const long counts[] = {1, 3, 7, 19, 51, 141};
    for (int l = 1; l <= 6; ++l) {
        mpz_class s = 0;
        for (const auto& t : enumerate_A(l)) s += rho(t);
        CHECK(s == counts[l - 1]);
    }
}

TEST_CASE("super-Motzkin expansion equals the symbolic matrix power")
{
    for (int l = 1; l <= 8; ++l) CHECK(motzkin_polynomial(l) == symbolic_diag_power(l));
    // l = 2: a_j^2 + b_j^2 + b_{j-1}^2
    auto h2 = motzkin_polynomial(2);
    CHECK(h2.size() == 3);
    for (const auto& [key, c] : h2) CHECK(c == 1);
}

TEST_CASE("expected moments: Gaussian")
{
    CHECK(expected_h(2, MomentFamily::gaussian()) == RationalFunc(P({1, 2})));
    CHECK(expected_h(4, MomentFamily::gaussian()) == RationalFunc(P({3, 10, 6})));
    CHECK(expected_h(6, MomentFamily::gaussian()) == RationalFunc(P({15, 64, 66, 20})));
    for (int l = 1; l <= 11; l += 2) CHECK(expected_h(l, MomentFamily::gaussian()).is_zero());

    auto m2 = moments_pair(2, MomentFamily::gaussian(), 3.0);
    CHECK(m2.v == 7.0);
    CHECK(m2.u == 4.0);
    CHECK(*m2.u_poly == P({1, 1}));
    CHECK(m2.identity_exact);
    auto m1 = moments_pair(1, MomentFamily::gaussian(), 3.0);
    CHECK(m1.v == 0.0);
    CHECK(m1.u == 0.0);
}

TEST_CASE("expected moments: Laguerre at fixed shape")
{
    // x-shape alpha + p, y-shape alpha: E[diag] = alpha + p + alpha
    const mpq_class p(1, 4);
    auto fam = MomentFamily::laguerre(p);
    CHECK(expected_h(1, fam) == RationalFunc(Poly(std::vector<mpq_class>{p, 2})));
    auto m = moments_pair(1, fam, 1.0);
    CHECK(m.v == doctest::Approx(2.25));
    CHECK(m.u == doctest::Approx(1.25));
    // with p = alpha (1 - gamma) / gamma: v = alpha / gamma + alpha, u = alpha / gamma
    auto at = MomentFamily::laguerre_at(2.0, 0.8);
    auto m1 = moments_pair(1, at, 2.0);
    CHECK(m1.v == doctest::Approx(2.0 / 0.8 + 2.0));
    CHECK(m1.u == doctest::Approx(2.0 / 0.8));
    // gamma shapes 2.5 and 2: E[diag^2] = 4.5 + 4.5^2, 2 E[off^2] = 2 * 2.5 * 2
    CHECK(moments_pair(2, at, 2.0).v == doctest::Approx(34.75));
}

TEST_CASE("moment identity is exact for polynomial families up to l = 10")
{
    for (const auto& fam : {MomentFamily::gaussian(), MomentFamily::laguerre(mpq_class(1, 4)),
                            MomentFamily::laguerre(mpq_class(7, 3))})
        for (int l = 1; l <= 10; ++l) {
            auto m = moments_pair(l, fam, 1.7);
            CHECK(m.identity_exact);
            CHECK(m.identity_residual == 0.0);
        }
}

TEST_CASE("expected moments: Jacobi")
{
    const mpq_class a(1, 2), b(3, 10);
    auto fam = MomentFamily::jacobi(a, b);
    // E[diag_i] = E[p](1 - E[q]) + E[q](1 - E[p]) in the bulk
    auto r1 = expected_h(1, fam);
    for (double al : {0.5, 1.0, 4.0}) {
        double Ep = (al + 1.5) / (2 * al + 2.8), Eq = al / (2 * al + 2.8);
        CHECK(r1.eval(al) == doctest::Approx(Ep * (1 - Eq) + Eq * (1 - Ep)).epsilon(1e-14));
    }
    for (int l = 1; l <= 6; ++l) {
        auto m = moments_pair(l, fam, 1.3);
        CHECK(m.identity_residual < 1e-8);
        CHECK(!m.u_poly.has_value());
        CHECK(m.v > 0.0);
        CHECK(m.v < 1.0);
    }
}
