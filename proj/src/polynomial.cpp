#include "rmlab/polynomial.hpp"
#include "rmlab/errors.hpp"

#include <charconv>
#include <sstream>

namespace rmlab {

Poly::Poly(const mpq_class& c)
{
    if (c != 0) c_.push_back(c);
}

Poly::Poly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) { trim(); }

void Poly::trim()
{
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::x() { return Poly(std::vector<mpq_class>{0, 1}); }

Poly Poly::rising(const mpq_class& shift, const mpq_class& slope, int n)
{
    Poly r(mpq_class(1));
    for (int i = 0; i < n; ++i) r = r * Poly(std::vector<mpq_class>{shift + i, slope});
    return r;
}

mpq_class Poly::coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : mpq_class(0); }

Poly Poly::operator+(const Poly& o) const
{
    Poly r = *this;
    r += o;
    return r;
}

Poly& Poly::operator+=(const Poly& o)
{
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Poly Poly::operator-(const Poly& o) const { return *this + o * mpq_class(-1); }

Poly Poly::operator*(const Poly& o) const
{
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<mpq_class> r(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(r));
}

Poly Poly::operator*(const mpq_class& s) const
{
    if (s == 0) return Poly();
    Poly r = *this;
    for (auto& c : r.c_) c *= s;
    return r;
}

void Poly::divmod(const Poly& d, Poly& q, Poly& r) const
{
    if (d.is_zero()) throw DomainError("polynomial division by zero");
    std::vector<mpq_class> rem = c_;
    std::vector<mpq_class> quo(std::max(0, degree() - d.degree() + 1));
    for (int k = degree() - d.degree(); k >= 0; --k) {
        mpq_class f = rem[k + d.degree()] / d.lead();
        quo[k] = f;
        if (f == 0) continue;
        for (int i = 0; i <= d.degree(); ++i) rem[k + i] -= f * d.c_[i];
    }
    q = Poly(std::move(quo));
    r = Poly(std::move(rem));
}

Poly Poly::derivative() const
{
    std::vector<mpq_class> r;
    for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * static_cast<long>(i));
    return Poly(std::move(r));
}

Poly Poly::integral() const
{
    std::vector<mpq_class> r(c_.size() + 1);
    for (std::size_t i = 0; i < c_.size(); ++i) r[i + 1] = c_[i] / static_cast<long>(i + 1);
    return Poly(std::move(r));
}

Poly Poly::monic() const { return is_zero() ? *this : *this * (mpq_class(1) / lead()); }

mpq_class Poly::eval(const mpq_class& x) const
{
    mpq_class s = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * x + *it;
    return s;
}

double Poly::eval(double x) const
{
    // exact Horner at the rational value of x keeps large cancelling coefficients harmless
    return eval(mpq_class(x)).get_d();
}

std::string Poly::str(const char* var) const
{
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << (c_[i] > 0 ? " + " : " - ");
        else if (c_[i] < 0) os << "-";
        mpq_class a = abs(c_[i]);
        if (i == 0 || a != 1) os << a.get_str();
        if (i > 0) os << (a != 1 ? "*" : "") << var << (i > 1 ? "^" + std::to_string(i) : "");
        first = false;
    }
    return os.str();
}

Poly gcd(Poly a, Poly b)
{
    while (!b.is_zero()) {
        Poly q, r;
        a.divmod(b, q, r);
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

RationalFunc::RationalFunc(const Poly& n, const Poly& d) : num_(n), den_(d)
{
    if (d.is_zero()) throw DomainError("rational function with zero denominator");
    reduce();
}

void RationalFunc::reduce()
{
    if (num_.is_zero()) {
        den_ = Poly(mpq_class(1));
        return;
    }
    if (den_.degree() > 0) {
        Poly g = gcd(num_, den_);
        if (g.degree() > 0) {
            Poly q, r;
            num_.divmod(g, q, r);
            num_ = q;
            den_.divmod(g, q, r);
            den_ = q;
        }
    }
    mpq_class l = den_.lead();
    num_ = num_ * (mpq_class(1) / l);
    den_ = den_ * (mpq_class(1) / l);
}

RationalFunc RationalFunc::operator+(const RationalFunc& o) const
{
    if (den_ == o.den_) return RationalFunc(num_ + o.num_, den_);
    return RationalFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunc RationalFunc::operator-(const RationalFunc& o) const
{
    return *this + RationalFunc(o.num_ * mpq_class(-1), o.den_);
}

RationalFunc RationalFunc::operator*(const RationalFunc& o) const
{
    return RationalFunc(num_ * o.num_, den_ * o.den_);
}

mpq_class RationalFunc::eval(const mpq_class& x) const
{
    mpq_class d = den_.eval(x);
    if (d == 0) throw PoleError("rational function evaluated at a pole");
    return num_.eval(x) / d;
}

double RationalFunc::eval(double x) const { return eval(mpq_class(x)).get_d(); }

std::string RationalFunc::str(const char* var) const
{
    if (is_polynomial()) return num_.str(var);
    return "(" + num_.str(var) + ") / (" + den_.str(var) + ")";
}

mpq_class rational_from_string(const std::string& s)
{
    // accepts [-]digits[.digits][e[+-]digits]
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
    std::string digits;
    long exp10 = 0;
    bool seen_dot = false, any = false;
    for (; i < s.size(); ++i) {
        char ch = s[i];
        if (ch >= '0' && ch <= '9') {
            digits += ch;
            any = true;
            if (seen_dot) --exp10;
        } else if (ch == '.' && !seen_dot) {
            seen_dot = true;
        } else {
            break;
        }
    }
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        long e = 0;
        auto res = std::from_chars(s.data() + i + 1 + (s[i + 1] == '+'), s.data() + s.size(), e);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw UsageError("bad number: " + s);
        exp10 += e;
        i = s.size();
    }
    if (!any || i != s.size()) throw UsageError("bad number: " + s);
    mpz_class m(digits, 10);
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
    mpq_class q = exp10 >= 0 ? mpq_class(m * p) : mpq_class(m, p);
    q.canonicalize();
    return neg ? mpq_class(-q) : q;
}

mpq_class rational_from_double(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return rational_from_string(std::string(buf, res.ptr));
}

std::string rational_str(const mpq_class& q) { return q.get_str(); }

} // namespace rmlab
