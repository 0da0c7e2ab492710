#include "rmlab/distributions.hpp"
#include "rmlab/errors.hpp"

#include <cfloat>
#include <cmath>
#include <string>

namespace rmlab {

namespace {

std::seed_seq make_seq(RngState s)
{
    auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
    auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    return std::seed_seq{lo(s.seed), hi(s.seed), lo(s.stream), hi(s.stream), 0x9e3779b9u};
}

double clamp_open01(double x)
{
    if (x <= 0.0) return DBL_TRUE_MIN;
    if (x >= 1.0) return 1.0 - DBL_EPSILON / 2;
    return x;
}

} // namespace

Rng::Rng(RngState s) : origin_(s)
{
    auto seq = make_seq(s);
    eng_.seed(seq);
}

double Rng::uniform()
{
    return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::normal()
{
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
}

// Marsaglia-Tsang; shapes below 1 use G(k) = G(k+1) U^{1/k}, kept in log form
// so tiny shapes do not underflow.
double Rng::log_gamma_variate(double shape)
{
    if (!(shape > 0.0) || !std::isfinite(shape))
        throw DomainError("gamma shape must be positive, got " + std::to_string(shape));
    double boost = 0.0;
    if (shape < 1.0) {
        boost = std::log(uniform()) / shape;
        shape += 1.0;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = normal();
        double v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        double u = uniform();
        double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2 || std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v)))
            return std::log(d * v) + boost;
    }
}

double Rng::gamma(double shape)
{
    double g = std::exp(log_gamma_variate(shape));
    return g > 0.0 ? g : DBL_TRUE_MIN;
}

double Rng::chi(double dof)
{
    if (!(dof > 0.0)) throw DomainError("chi dof must be positive, got " + std::to_string(dof));
    double r = std::exp(0.5 * (std::log(2.0) + log_gamma_variate(0.5 * dof)));
    return r > 0.0 ? r : DBL_TRUE_MIN;
}

double Rng::beta(double a, double b)
{
    if (!(a > 0.0) || !(b > 0.0))
        throw DomainError("beta parameters must be positive");
    double la = log_gamma_variate(a);
    double lb = log_gamma_variate(b);
    // G1/(G1+G2) = 1/(1+exp(lb-la))
    double t = lb - la;
    double x = t > 0 ? std::exp(-t) / (1.0 + std::exp(-t)) : 1.0 / (1.0 + std::exp(t));
    return clamp_open01(x);
}

void validate(const DistSpec& spec)
{
    std::visit([](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
            if (!(d.variance > 0.0)) throw DomainError("Gaussian variance must be positive");
        } else if constexpr (std::is_same_v<T, Chi>) {
            if (!(d.dof > 0.0)) throw DomainError("chi dof must be positive");
        } else {
            if (!(d.a > 0.0 && d.b > 0.0)) throw DomainError("Beta parameters must be positive");
        }
    }, spec);
}

double sample(const DistSpec& spec, Rng& rng)
{
    validate(spec);
    return std::visit([&rng](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Gaussian>)
            return std::sqrt(d.variance) * rng.normal();
        else if constexpr (std::is_same_v<T, Chi>)
            return rng.chi(d.dof);
        else
            return rng.beta(d.a, d.b);
    }, spec);
}

double closed_even_moment(const DistSpec& spec, unsigned order)
{
    validate(spec);
    return std::visit([order](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        double m = 1.0;
        if constexpr (std::is_same_v<T, Gaussian>) {
            if (order % 2) return 0.0;
            for (unsigned j = 1; j < order; j += 2) m *= d.variance * j;
        } else if constexpr (std::is_same_v<T, Chi>) {
            if (order % 2) throw DomainError("odd chi moments are not supported");
            for (unsigned i = 0; i < order / 2; ++i) m *= 2.0 * (0.5 * d.dof + i);
        } else {
            for (unsigned i = 0; i < order; ++i) m *= (d.a + i) / (d.a + d.b + i);
        }
        return m;
    }, spec);
}

} // namespace rmlab
