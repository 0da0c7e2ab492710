#include "run_config.hpp"
#include "rmlab/errors.hpp"
#include "rmlab/polynomial.hpp"

#include <cmath>
#include <sstream>

namespace rmlab::cli {

namespace {

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) throw UsageError("empty entry in list '" + s + "'");
        out.push_back(item.substr(b, e - b + 1));
    }
    if (out.empty()) throw UsageError("empty list");
    return out;
}

} // namespace

Family parse_family(const std::string& s)
{
    for (Family f : {Family::GaussianAlpha, Family::LaguerreAlpha, Family::JacobiAlpha, Family::GaussianBeta,
                     Family::LaguerreBeta, Family::JacobiBeta})
        if (family_name(f) == s) return f;
    throw UsageError("--family: unknown family '" + s +
                     "' (expected gaussian, laguerre, jacobi, gaussian-beta, laguerre-beta, jacobi-beta)");
}

Family RunConfig::ensemble_family() const { return parse_family(family); }

EnsembleParams RunConfig::ensemble() const
{
    EnsembleParams p;
    p.family = ensemble_family();
    p.N = n;
    p.alpha = alpha;
    p.gamma = gamma;
    p.a = a;
    p.b = b;
    if (is_beta_family(p.family)) {
        if (beta) {
            p.beta = *beta;
            p.alpha = *beta * n / 2.0;
        } else {
            p.beta = 2.0 * alpha / n;
        }
    }
    p.validate();
    return p;
}

DensityParams RunConfig::density() const
{
    EnsembleParams e = ensemble();
    switch (e.family) {
    case Family::GaussianAlpha:
    case Family::GaussianBeta:
        return DensityParams::gaussian(e.alpha);
    case Family::LaguerreAlpha:
    case Family::LaguerreBeta:
        return DensityParams::laguerre(e.alpha, e.gamma);
    case Family::JacobiAlpha:
    case Family::JacobiBeta:
        return DensityParams::jacobi(e.alpha, e.a, e.b);
    }
    throw UsageError("unreachable family");
}

MomentFamily RunConfig::moment_family() const
{
    switch (ensemble_family()) {
    case Family::GaussianAlpha:
    case Family::GaussianBeta:
        return MomentFamily::gaussian();
    case Family::LaguerreAlpha:
    case Family::LaguerreBeta:
        return MomentFamily::laguerre_at(alpha, gamma);
    case Family::JacobiAlpha:
    case Family::JacobiBeta:
        return MomentFamily::jacobi(rational_from_double(a), rational_from_double(b));
    }
    throw UsageError("unreachable family");
}

std::vector<mpq_class> RunConfig::poly_coeffs() const
{
    std::vector<mpq_class> c;
    for (const auto& s : split_list(poly)) {
        try {
            c.push_back(rational_from_string(s));
        } catch (const std::exception&) {
            throw UsageError("--poly: cannot read coefficient '" + s + "'");
        }
    }
    while (!c.empty() && c.back() == 0) c.pop_back();
    if (c.size() < 2) throw UsageError("--poly: the polynomial must be non-constant");
    if (static_cast<int>(c.size()) - 1 > kMaxMotzkinOrder)
        throw UsageError("--poly: degree above " + std::to_string(kMaxMotzkinOrder));
    return c;
}

std::vector<double> RunConfig::alpha_list() const
{
    std::vector<double> v;
    for (const auto& s : split_list(alphas)) {
        std::size_t pos = 0;
        double x = 0.0;
        try {
            x = std::stod(s, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != s.size()) throw UsageError("--alphas: cannot read '" + s + "'");
        v.push_back(x);
    }
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1])) throw DomainError("--alphas: values must be strictly ascending");
    for (double x : v)
        if (!(x > 0.0)) throw DomainError("--alphas: values must be positive");
    return v;
}

void RunConfig::validate() const
{
    if (trials < 1) throw DomainError("--trials must be at least 1");
    if (bins < 1) throw DomainError("--bins must be at least 1");
    if (!(alpha > 0.0)) throw DomainError("--alpha must be positive");
    if (beta && !(*beta > 0.0)) throw DomainError("--beta must be positive");
    if (threshold && !(*threshold > 0.0)) throw DomainError("--threshold must be positive");
    if (l_max < 1 || l_max > 10) throw DomainError("--l-max must lie in [1, 10]");
    if (sampler != "approx" && sampler != "constrained")
        throw UsageError("--sampler: expected approx or constrained, got '" + sampler + "'");
    if (out.empty()) throw UsageError("--out must not be empty");
    parse_family(family);
}

} // namespace rmlab::cli
