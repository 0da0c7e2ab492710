#pragma once
// Hypergeometric power series with a cancellation-aware multiprecision fallback.
#include "scaled.hpp"

#include <mpfr.h>

#include <vector>

namespace rmlab::detail {

class Mpf {
public:
    explicit Mpf(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Mpf(double d, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, d, MPFR_RNDN); }
    Mpf(const Mpf& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Mpf(Mpf&& o) noexcept : Mpf(o) {}
    Mpf& operator=(const Mpf& o)
    {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    ~Mpf() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    Scaled to_scaled() const;

private:
    mpfr_t v_;
};

struct SeriesInfo {
    long terms = 0;
    double log2_cond = 0.0;      // log2(sum|t| / |sum|) from the double pass
    bool multiprecision = false;
    long precision_bits = 53;
};

struct DoublePass {
    double sum = 0.0;
    double abs_sum = 0.0;
    long scale = 0;   // shared binary exponent of sum and abs_sum
    long terms = 0;
    bool overflow = false;
    double log2_cond() const;
    Scaled value() const;
};

bool acceptable(const DoublePass& p, double tol);

// Plain double summation with the stopping rule, no fallback.
DoublePass hyp_series_double(const std::vector<double>& num, const std::vector<double>& den, double x);

// sum_n prod_i (num_i)_n / prod_j (den_j)_n * x^n / n!   (real arguments)
// Double pass first; if the estimated relative error exceeds tol, the series is
// re-summed in MPFR with enough bits to absorb the observed cancellation.
Scaled hyp_series(const std::vector<double>& num, const std::vector<double>& den, double x,
                  double tol = 1e-12, SeriesInfo* info = nullptr);

// Same series with multiprecision parameters; returns the sum with relative
// accuracy 2^-target_bits at whatever working precision that required.
Mpf hyp_series_mp(const std::vector<Mpf>& num, const std::vector<Mpf>& den, const Mpf& x,
                  long target_bits, long start_prec, SeriesInfo* info = nullptr);

// log Gamma, sign of Gamma; throws PoleError at non-positive integers.
double lgamma_signed(double x, int* sign);
// 1/Gamma(x) as a scaled value (exactly 0 at the poles).
Scaled rgamma_scaled(double x);

} // namespace rmlab::detail
