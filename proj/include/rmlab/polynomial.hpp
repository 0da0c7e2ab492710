#pragma once
#include <gmpxx.h>

#include <string>
#include <vector>

namespace rmlab {

// Univariate polynomial in alpha with exact rational coefficients, ascending order,
// no trailing zeros (the zero polynomial has no coefficients).
class Poly {
public:
    Poly() = default;
    Poly(const mpq_class& c);
    explicit Poly(std::vector<mpq_class> coeffs);

    static Poly x();
    // (shift + alpha)(shift + 1 + alpha)...(shift + n - 1 + alpha), scaled: (s + m alpha)_n rising in steps of 1
    static Poly rising(const mpq_class& shift, const mpq_class& slope, int n);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<mpq_class>& coeffs() const { return c_; }
    mpq_class coeff(int i) const;
    const mpq_class& lead() const { return c_.back(); }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const mpq_class& s) const;
    Poly& operator+=(const Poly& o);
    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // quotient and remainder
    void divmod(const Poly& d, Poly& q, Poly& r) const;
    Poly derivative() const;
    // antiderivative vanishing at 0
    Poly integral() const;
    Poly monic() const;

    mpq_class eval(const mpq_class& x) const;
    double eval(double x) const;
    std::string str(const char* var = "alpha") const;

private:
    void trim();
    std::vector<mpq_class> c_;
};

Poly gcd(Poly a, Poly b);

// Ratio of polynomials kept reduced with a monic denominator.
class RationalFunc {
public:
    RationalFunc() : num_(), den_(mpq_class(1)) {}
    RationalFunc(const Poly& p) : num_(p), den_(mpq_class(1)) {}
    RationalFunc(const Poly& n, const Poly& d);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_polynomial() const { return den_.degree() == 0; }
    bool is_zero() const { return num_.is_zero(); }

    RationalFunc operator+(const RationalFunc& o) const;
    RationalFunc operator-(const RationalFunc& o) const;
    RationalFunc operator*(const RationalFunc& o) const;
    bool operator==(const RationalFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

    mpq_class eval(const mpq_class& x) const;
    double eval(double x) const;
    std::string str(const char* var = "alpha") const;

private:
    void reduce();
    Poly num_, den_;
};

// Exact rational from a decimal literal or from a double's shortest round-trip text.
mpq_class rational_from_string(const std::string& s);
mpq_class rational_from_double(double v);
std::string rational_str(const mpq_class& q);

} // namespace rmlab
