#pragma once
// Real and complex values with a separate binary exponent, for quantities that
// overflow or underflow double (hypergeometric values at large arguments).
#include <algorithm>
#include <climits>
#include <cmath>
#include <complex>

namespace rmlab::detail {

struct Scaled {
    double m = 0.0;  // 0 or |m| in [0.5, 1)
    long e = 0;

    static Scaled from_double(double x)
    {
        Scaled s;
        int ex = 0;
        s.m = std::frexp(x, &ex);
        s.e = s.m == 0.0 ? 0 : ex;
        return s;
    }
    // sign * exp(log_abs)
    static Scaled from_log(double log_abs, int sign = 1)
    {
        double l2 = log_abs / M_LN2;
        double fl = std::floor(l2);
        Scaled s = from_double(sign * std::exp2(l2 - fl));
        s.e += static_cast<long>(fl);
        return s;
    }
    double to_double() const { return m == 0.0 ? 0.0 : std::ldexp(m, static_cast<int>(std::max(-2000L, std::min(2000L, e)))); }
    double log_abs() const { return m == 0.0 ? -INFINITY : std::log(std::fabs(m)) + e * M_LN2; }
    int sign() const { return m > 0 ? 1 : (m < 0 ? -1 : 0); }
    bool is_zero() const { return m == 0.0; }
};

inline Scaled operator*(Scaled a, Scaled b)
{
    Scaled r = Scaled::from_double(a.m * b.m);
    if (!r.is_zero()) r.e += a.e + b.e;
    return r;
}

inline Scaled operator/(Scaled a, Scaled b)
{
    Scaled r = Scaled::from_double(a.m / b.m);
    if (!r.is_zero()) r.e += a.e - b.e;
    return r;
}

inline Scaled operator-(Scaled a)
{
    a.m = -a.m;
    return a;
}

inline Scaled operator+(Scaled a, Scaled b)
{
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.e < b.e) std::swap(a, b);
    long d = a.e - b.e;
    if (d > 1100) return a;
    Scaled r = Scaled::from_double(a.m + std::ldexp(b.m, static_cast<int>(-d)));
    if (!r.is_zero()) r.e += a.e;
    return r;
}

inline Scaled operator-(Scaled a, Scaled b) { return a + (-b); }

// Complex value m * 2^e.
struct ScaledComplex {
    std::complex<double> m;
    long e = 0;

    static ScaledComplex from_parts(Scaled re, Scaled im)
    {
        long e = std::max(re.is_zero() ? LONG_MIN / 2 : re.e, im.is_zero() ? LONG_MIN / 2 : im.e);
        if (re.is_zero() && im.is_zero()) return {};
        auto shift = [e](Scaled s) { return s.is_zero() ? 0.0 : std::ldexp(s.m, static_cast<int>(std::max(-1100L, s.e - e))); };
        return {{shift(re), shift(im)}, e};
    }
    double log_abs() const { return m == 0.0 ? -INFINITY : std::log(std::abs(m)) + e * M_LN2; }
    std::complex<double> to_complex() const
    {
        int ee = static_cast<int>(std::max(-2000L, std::min(2000L, e)));
        return {std::ldexp(m.real(), ee), std::ldexp(m.imag(), ee)};
    }
};

} // namespace rmlab::detail
