#include "rmlab/specfun.hpp"
#include "rmlab/errors.hpp"
#include "series.hpp"
#include "specfun_detail.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/sin_pi.hpp>
#include <boost/math/special_functions/cos_pi.hpp>

#include <cfloat>
#include <cmath>
#include <string>

namespace rmlab {

using detail::Mpf;
using detail::Scaled;
using detail::ScaledComplex;

namespace {

constexpr double kIntegerGuard = 1e-8;

bool near_integer(double v, double tol) { return std::fabs(v - std::nearbyint(v)) <= tol; }
bool nonpositive_integer(double v) { return v <= 0.0 && v == std::floor(v); }

double to_finite(Scaled s, const char* what)
{
    double d = s.to_double();
    if (!std::isfinite(d) || (s.e > 1024))
        throw NumericError(std::string(what) + ": value outside double range");
    return d;
}

// Terms of the complex 1F1 series in double, with its own cancellation check.
ComplexVal hyp1f1_complex_series(double a, double b, ComplexVal z)
{
    ComplexVal t = 1.0, s = 1.0;
    double abs_sum = 1.0;
    int small = 0;
    for (long n = 0;; ++n) {
        if (n >= 100000) throw AccuracyError("hyp1f1: term cap reached", std::abs(t / s));
        double r = (a + n) / ((b + n) * (n + 1.0));
        t *= r * z;
        if (t == 0.0) break;
        s += t;
        abs_sum += std::abs(t);
        if (std::abs(t) <= 1e-16 * std::abs(s) && std::abs(r * z) < 1.0) {
            if (++small >= 3) break;
        } else {
            small = 0;
        }
    }
    double bound = 16.0 * DBL_EPSILON * abs_sum / std::abs(s);
    if (!(bound <= 1e-11)) throw AccuracyError("hyp1f1: cancellation exceeds the accuracy budget", bound);
    return s;
}

} // namespace

namespace detail {

Scaled hyp1f1_real(double a, double b, double x)
{
    constexpr double tol = 1e-12;
    if (x >= 0.0) return hyp_series({a}, {b}, x, tol);
    DoublePass direct = hyp_series_double({a}, {b}, x);
    if (acceptable(direct, tol)) return direct.value();
    // Kummer: M(a,b,x) = e^x M(b-a, b, -x)
    if (!nonpositive_integer(b - a) || nonpositive_integer(a)) {
        DoublePass kummer = hyp_series_double({b - a}, {b}, -x);
        Scaled ex = Scaled::from_log(x);
        if (acceptable(kummer, tol)) return ex * kummer.value();
        if (kummer.log2_cond() < direct.log2_cond())
            return ex * hyp_series({b - a}, {b}, -x, tol);
    }
    return hyp_series({a}, {b}, x, tol);
}

Scaled hyp2f1_real(double a, double b, double c, double x)
{
    if (x == 0.0) return Scaled::from_double(1.0);
    const bool terminating = nonpositive_integer(a) || nonpositive_integer(b);
    if (x > 0.5 && !terminating) {
        Scaled pref = Scaled::from_log((c - a - b) * std::log1p(-x));
        return pref * hyp_series({c - a, c - b}, {c}, x);
    }
    return hyp_series({a, b}, {c}, x);
}

namespace {

// Two-term formula carried out in MPFR, for b close to (or at) an integer.
ScaledComplex psi_negaxis_mp(double a, double b, double x)
{
    const long prec = 448;
    Mpf ma(a, prec), mb(b, prec), mx(x, prec), tmp(prec), tmp2(prec);
    if (b == std::nearbyint(b)) {
        // removable singularity: evaluate a hair away from the integer
        mpfr_set_d(tmp.get(), 0x1p-110, MPFR_RNDN);
        mpfr_add(mb.get(), mb.get(), tmp.get(), MPFR_RNDN);
    }
    auto gamma_of = [&](Mpf& out, const Mpf& arg) { mpfr_gamma(out.get(), arg.get(), MPFR_RNDN); };
    auto rgamma_of = [&](Mpf& out, const Mpf& arg) {
        double d = arg.to_double();
        if (nonpositive_integer(d) && mpfr_integer_p(arg.get())) {
            mpfr_set_zero(out.get(), 1);
            return;
        }
        mpfr_gamma(out.get(), arg.get(), MPFR_RNDN);
        mpfr_ui_div(out.get(), 1, out.get(), MPFR_RNDN);
    };

    Mpf one_minus_b(prec), a_minus_b_plus_1(prec), two_minus_b(prec), b_minus_1(prec), negx(prec);
    mpfr_ui_sub(one_minus_b.get(), 1, mb.get(), MPFR_RNDN);
    mpfr_add(a_minus_b_plus_1.get(), ma.get(), one_minus_b.get(), MPFR_RNDN);
    mpfr_ui_sub(two_minus_b.get(), 2, mb.get(), MPFR_RNDN);
    mpfr_sub_ui(b_minus_1.get(), mb.get(), 1, MPFR_RNDN);
    mpfr_neg(negx.get(), mx.get(), MPFR_RNDN);

    const long target = 64 + 160;
    Mpf m1 = detail::hyp_series_mp({ma}, {mb}, negx, target, target + 64);
    Mpf m2 = detail::hyp_series_mp({a_minus_b_plus_1}, {two_minus_b}, negx, target, target + 64);

    Mpf t1(prec), t2(prec);
    gamma_of(tmp, one_minus_b);
    rgamma_of(tmp2, a_minus_b_plus_1);
    mpfr_mul(t1.get(), tmp.get(), tmp2.get(), MPFR_RNDN);
    mpfr_mul(t1.get(), t1.get(), m1.get(), MPFR_RNDN);

    gamma_of(tmp, b_minus_1);
    rgamma_of(tmp2, ma);
    mpfr_mul(t2.get(), tmp.get(), tmp2.get(), MPFR_RNDN);
    mpfr_pow(tmp.get(), mx.get(), one_minus_b.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), t2.get(), tmp.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), t2.get(), m2.get(), MPFR_RNDN);

    // phase e^{-i pi (1-b)}
    Mpf phi(prec), c(prec), s(prec);
    mpfr_const_pi(phi.get(), MPFR_RNDN);
    mpfr_mul(phi.get(), phi.get(), one_minus_b.get(), MPFR_RNDN);
    mpfr_sin_cos(s.get(), c.get(), phi.get(), MPFR_RNDN);

    Mpf re(prec), im(prec);
    mpfr_mul(re.get(), t2.get(), c.get(), MPFR_RNDN);
    mpfr_add(re.get(), re.get(), t1.get(), MPFR_RNDN);
    mpfr_mul(im.get(), t2.get(), s.get(), MPFR_RNDN);
    mpfr_neg(im.get(), im.get(), MPFR_RNDN);
    return ScaledComplex::from_parts(re.to_scaled(), im.to_scaled());
}

} // namespace

ScaledComplex psi_lower_negative_axis(double a, double b, double x)
{
    if (!(x > 0.0)) throw DomainError("psi on the negative axis needs x > 0");
    if (near_integer(b, 1e-3)) return psi_negaxis_mp(a, b, x);

    int s1 = 1, s2 = 1;
    double lg1 = detail::lgamma_signed(1.0 - b, &s1);
    double lg2 = detail::lgamma_signed(b - 1.0, &s2);
    Scaled t1 = Scaled::from_log(lg1, s1) * rgamma_scaled(a - b + 1.0) * hyp1f1_real(a, b, -x);
    Scaled t2 = Scaled::from_log(lg2 + (1.0 - b) * std::log(x), s2) * rgamma_scaled(a) *
                hyp1f1_real(a - b + 1.0, 2.0 - b, -x);
    double c = boost::math::cos_pi(1.0 - b);
    double s = boost::math::sin_pi(1.0 - b);
    Scaled re = t1 + t2 * Scaled::from_double(c);
    Scaled im = -(t2 * Scaled::from_double(s));
    return ScaledComplex::from_parts(re, im);
}

double log_fhat_sq(double alpha, double x)
{
    const double z = -0.5 * x * x;
    Scaled even = Scaled::from_log((0.5 * alpha - 1.0) * M_LN2 + log_gamma(0.5 * alpha)) *
                  hyp1f1_real(0.5 * alpha, 0.5, z);
    Scaled odd = Scaled::from_double(x) *
                 Scaled::from_log(0.5 * (alpha - 1.0) * M_LN2 + log_gamma(0.5 * (alpha + 1.0))) *
                 hyp1f1_real(0.5 * (alpha + 1.0), 1.5, z);
    Scaled sq = even * even + odd * odd;
    return std::log(alpha) - log_gamma(alpha) + sq.log_abs();
}

} // namespace detail

double log_gamma(double x)
{
    if (!(x > 0.0)) throw DomainError("log_gamma requires x > 0");
    return boost::math::lgamma(x);
}

double digamma(double x)
{
    if (!(x > 0.0)) throw DomainError("digamma requires x > 0");
    return boost::math::digamma(x);
}

ComplexVal hyp1f1(double a, double b, ComplexVal z)
{
    if (nonpositive_integer(b)) throw PoleError("hyp1f1: b is a non-positive integer");
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("hyp1f1: non-finite argument");
    if (z.imag() == 0.0) return to_finite(detail::hyp1f1_real(a, b, z.real()), "hyp1f1");
    return hyp1f1_complex_series(a, b, z);
}

ComplexVal tricomi_psi(double a, double b, ComplexVal z)
{
    if (near_integer(b, kIntegerGuard)) throw BranchError("tricomi_psi: b is within 1e-8 of an integer");
    if (z == 0.0) throw DomainError("tricomi_psi: z = 0 is outside the supported range");
    const bool neg_axis = z.real() < 0.0 && std::fabs(z.imag()) <= 1e-15 * std::fabs(z.real());
    if (neg_axis) {
        ScaledComplex v = detail::psi_lower_negative_axis(a, b, -z.real());
        ComplexVal out = v.to_complex();
        if (!std::isfinite(out.real()) || !std::isfinite(out.imag())) throw NumericError("tricomi_psi: overflow");
        // the upper edge (arg +pi) is the conjugate
        return std::signbit(z.imag()) ? out : std::conj(out);
    }
    int s1 = 1, s2 = 1;
    double lg1 = detail::lgamma_signed(1.0 - b, &s1);
    double lg2 = detail::lgamma_signed(b - 1.0, &s2);
    double c1 = s1 * std::exp(lg1) * detail::rgamma_scaled(a - b + 1.0).to_double();
    double c2 = s2 * std::exp(lg2) * detail::rgamma_scaled(a).to_double();
    ComplexVal out = c1 * hyp1f1(a, b, z);
    if (c2 != 0.0) out += c2 * std::pow(z, 1.0 - b) * hyp1f1(a - b + 1.0, 2.0 - b, z);
    if (!std::isfinite(out.real()) || !std::isfinite(out.imag())) throw NumericError("tricomi_psi: overflow");
    return out;
}

double hyp2f1(double a, double b, double c, double x)
{
    if (nonpositive_integer(c)) throw PoleError("hyp2f1: c is a non-positive integer");
    if (!(x >= 0.0 && x < 1.0)) throw DomainError("hyp2f1: x must lie in [0, 1)");
    const bool terminating = nonpositive_integer(a) || nonpositive_integer(b);
    if (x > 0.5 && !terminating) {
        double e = c - a - b;
        if (e <= kIntegerGuard && near_integer(e, kIntegerGuard))
            throw BranchError("hyp2f1: c-a-b is a non-positive integer (logarithmic case)");
    }
    return to_finite(detail::hyp2f1_real(a, b, c, x), "hyp2f1");
}

ComplexVal fhat_alpha(double alpha, double x)
{
    if (!(alpha > 0.0)) throw DomainError("fhat_alpha requires alpha > 0");
    using boost::math::quadrature::gauss;
    constexpr double tail_rel = 1e-18;
    const double t_star = std::max(6.0, std::sqrt(2.0 * boost::math::gamma_q_inv(0.5 * alpha, tail_rel)));
    const double panel = std::min(0.5, M_PI / (4.0 * std::max(1.0, std::fabs(x))));
    const double log_pref = 0.5 * (std::log(alpha) - log_gamma(alpha));

    double abs_sum = 0.0;
    auto weight = [&](double t) { return std::exp(log_pref + (alpha - 1.0) * std::log(t) - 0.5 * t * t); };
    auto integrate = [&](double lo, double hi) {
        double re = gauss<double, 20>::integrate([&](double t) { return weight(t) * std::cos(x * t); }, lo, hi);
        double im = gauss<double, 20>::integrate([&](double t) { return weight(t) * std::sin(x * t); }, lo, hi);
        abs_sum += gauss<double, 20>::integrate(weight, lo, hi);
        return ComplexVal(re, im);
    };

    ComplexVal sum = 0.0;
    // geometric panels into t = 0 resolve the t^{alpha-1} endpoint
    double hi = panel;
    for (int k = 0; k < 60; ++k) {
        double lo = 0.5 * hi;
        sum += integrate(lo, hi);
        hi = lo;
    }
    // remaining [0, hi]: t^{alpha-1} times a constant to first order
    sum += std::exp(log_pref + alpha * std::log(hi)) / alpha;
    int panels = static_cast<int>(std::ceil((t_star - panel) / panel));
    for (int k = 0; k < panels; ++k) sum += integrate(panel * (1 + k), panel * (2 + k));

    double tail = tail_rel * std::exp(log_pref + (0.5 * alpha - 1.0) * M_LN2 + log_gamma(0.5 * alpha));
    double bound = (64.0 * DBL_EPSILON * abs_sum + tail) / std::abs(sum);
    if (!(2.0 * bound <= 1e-8)) throw AccuracyError("fhat_alpha: quadrature cancellation exceeds 1e-8 on |fhat|^2", 2.0 * bound);
    return sum;
}

ComplexVal fhat_alpha_series(double alpha, double x)
{
    if (!(alpha > 0.0)) throw DomainError("fhat_alpha_series requires alpha > 0");
    const double z = -0.5 * x * x;
    const double log_pref = 0.5 * (std::log(alpha) - log_gamma(alpha));
    Scaled even = Scaled::from_log(log_pref + (0.5 * alpha - 1.0) * M_LN2 + log_gamma(0.5 * alpha)) *
                  detail::hyp1f1_real(0.5 * alpha, 0.5, z);
    Scaled odd = Scaled::from_double(x) *
                 Scaled::from_log(log_pref + 0.5 * (alpha - 1.0) * M_LN2 + log_gamma(0.5 * (alpha + 1.0))) *
                 detail::hyp1f1_real(0.5 * (alpha + 1.0), 1.5, z);
    return {even.to_double(), odd.to_double()};
}

} // namespace rmlab
