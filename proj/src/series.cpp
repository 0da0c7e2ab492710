#include "series.hpp"
#include "rmlab/errors.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cfloat>
#include <cmath>
#include <string>

namespace rmlab::detail {

namespace {

constexpr long kMaxTerms = 100000;
constexpr int kSmallRun = 3;

bool nonpositive_integer(double v) { return v <= 0.0 && v == std::floor(v); }

double ratio_estimate(const std::vector<double>& num, const std::vector<double>& den, double x, long n)
{
    double r = x / (n + 1.0);
    for (double a : num) r *= a + n;
    for (double b : den) r /= b + n;
    return r;
}

void check_poles(const std::vector<double>& num, const std::vector<double>& den)
{
    for (double b : den) {
        if (!nonpositive_integer(b)) continue;
        // a terminating numerator that stops the series first keeps it finite
        bool stops = false;
        for (double a : num)
            if (nonpositive_integer(a) && a > b) stops = true;
        if (!stops) throw PoleError("hypergeometric series: denominator parameter " + std::to_string(b) + " is a non-positive integer");
    }
}

} // namespace

Scaled Mpf::to_scaled() const
{
    if (mpfr_zero_p(v_)) return {};
    long ex = 0;
    double m = mpfr_get_d_2exp(&ex, v_, MPFR_RNDN);
    Scaled s = Scaled::from_double(m);
    s.e += ex;
    return s;
}

double lgamma_signed(double x, int* sign)
{
    if (nonpositive_integer(x)) throw PoleError("Gamma pole at " + std::to_string(x));
    int sg = 1;
    double v = boost::math::lgamma(x, &sg);
    if (sign) *sign = sg;
    return v;
}

Scaled rgamma_scaled(double x)
{
    if (nonpositive_integer(x)) return {};
    int sg = 1;
    double l = lgamma_signed(x, &sg);
    return Scaled::from_log(-l, sg);
}

double DoublePass::log2_cond() const
{
    if (overflow || sum == 0.0) return 1100.0;
    return std::log2(abs_sum / std::fabs(sum));
}

Scaled DoublePass::value() const
{
    Scaled out = Scaled::from_double(sum);
    if (!out.is_zero()) out.e += scale;
    return out;
}

DoublePass hyp_series_double(const std::vector<double>& num, const std::vector<double>& den, double x)
{
    check_poles(num, den);
    double t = 1.0, s = 1.0, abs_sum = 1.0;
    long scale = 0;
    long n = 0;
    int small = 0;
    DoublePass out;
    for (;; ++n) {
        if (n >= kMaxTerms) throw AccuracyError("hypergeometric series did not converge within the term cap", std::fabs(t / s));
        double r = ratio_estimate(num, den, x, n);
        t *= r;
        if (t == 0.0) break;
        s += t;
        abs_sum += std::fabs(t);
        if (!std::isfinite(abs_sum)) {
            out.overflow = true;
            break;
        }
        if (std::fabs(t) > 0x1p600) {
            t = std::ldexp(t, -600);
            s = std::ldexp(s, -600);
            abs_sum = std::ldexp(abs_sum, -600);
            scale += 600;
        }
        if (std::fabs(t) <= 1e-16 * std::fabs(s) && std::fabs(r) < 1.0) {
            if (++small >= kSmallRun) break;
        } else {
            small = 0;
        }
    }
    out.sum = s;
    out.abs_sum = abs_sum;
    out.scale = scale;
    out.terms = n + 1;
    return out;
}

bool acceptable(const DoublePass& p, double tol)
{
    return !p.overflow && p.sum != 0.0 && 16.0 * DBL_EPSILON * std::exp2(p.log2_cond()) <= tol;
}

Scaled hyp_series(const std::vector<double>& num, const std::vector<double>& den, double x,
                  double tol, SeriesInfo* info)
{
    DoublePass p = hyp_series_double(num, den, x);
    double log2_cond = p.log2_cond();
    if (info) {
        info->terms = p.terms;
        info->log2_cond = log2_cond;
        info->multiprecision = false;
        info->precision_bits = 53;
    }
    if (acceptable(p, tol)) return p.value();

    long start = 64 + 32 + static_cast<long>(std::min(log2_cond, 4000.0));
    std::vector<Mpf> mnum, mden;
    for (double a : num) mnum.emplace_back(a, 64);
    for (double b : den) mden.emplace_back(b, 64);
    Mpf mx(x, 64);
    return hyp_series_mp(mnum, mden, mx, 64, start, info).to_scaled();
}

Mpf hyp_series_mp(const std::vector<Mpf>& num, const std::vector<Mpf>& den, const Mpf& x,
                  long target_bits, long start_prec, SeriesInfo* info)
{
    std::vector<double> dnum, dden;
    for (const auto& a : num) dnum.push_back(a.to_double());
    for (const auto& b : den) dden.push_back(b.to_double());
    const double dx = x.to_double();

    long prec = std::max<long>(start_prec, target_bits + 32);
    for (int attempt = 0; attempt < 16; ++attempt) {
        Mpf t(1.0, prec), s(1.0, prec), tmp(prec);
        long max_exp = mpfr_get_exp(t.get());
        long n = 0;
        int small = 0;
        for (;; ++n) {
            if (n >= kMaxTerms)
                throw AccuracyError("multiprecision hypergeometric series did not converge within the term cap", 1.0);
            mpfr_mul(t.get(), t.get(), x.get(), MPFR_RNDN);
            for (const auto& a : num) {
                mpfr_add_si(tmp.get(), a.get(), n, MPFR_RNDN);
                mpfr_mul(t.get(), t.get(), tmp.get(), MPFR_RNDN);
            }
            for (const auto& b : den) {
                mpfr_add_si(tmp.get(), b.get(), n, MPFR_RNDN);
                mpfr_div(t.get(), t.get(), tmp.get(), MPFR_RNDN);
            }
            mpfr_div_si(t.get(), t.get(), n + 1, MPFR_RNDN);
            if (mpfr_zero_p(t.get())) break;
            mpfr_add(s.get(), s.get(), t.get(), MPFR_RNDN);
            max_exp = std::max<long>(max_exp, mpfr_get_exp(t.get()));
            bool below = mpfr_zero_p(s.get()) ? false
                                              : mpfr_get_exp(t.get()) < mpfr_get_exp(s.get()) - (target_bits + 8);
            if (below && std::fabs(ratio_estimate(dnum, dden, dx, n)) < 1.0) {
                if (++small >= kSmallRun) break;
            } else {
                small = 0;
            }
        }
        long need = mpfr_zero_p(s.get()) ? prec + 256 : max_exp - mpfr_get_exp(s.get()) + target_bits + 16;
        if (info) {
            info->terms = n + 1;
            info->multiprecision = true;
            info->precision_bits = prec;
        }
        if (prec >= need) return s;
        prec = std::max(need + 32, 2 * prec);
        if (prec > 1 << 18) break;
    }
    throw AccuracyError("multiprecision hypergeometric series: cancellation exceeds the precision budget", 1.0);
}

} // namespace rmlab::detail
