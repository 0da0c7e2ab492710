#include "rmlab/densities.hpp"
#include "rmlab/errors.hpp"
#include "rmlab/specfun.hpp"

#include "series.hpp"
#include "specfun_detail.hpp"

#include <boost/math/special_functions/sin_pi.hpp>
#include <boost/math/special_functions/cos_pi.hpp>

#include <algorithm>
#include <cmath>

namespace rmlab {

using detail::Scaled;

namespace {

constexpr double kTailLog = -45.0;

double lg(double x) { return log_gamma(x); }

double log_mu_gaussian(double alpha, double x)
{
    return -0.5 * x * x - 0.5 * std::log(2.0 * M_PI) - detail::log_fhat_sq(alpha, std::fabs(x));
}

double log_mu_laguerre(double alpha, double c, double x)
{
    auto psi = detail::psi_lower_negative_axis(alpha, -c, x);
    return c * std::log(x) - x - lg(alpha + 1.0) - lg(1.0 + c + alpha) - 2.0 * psi.log_abs();
}

double log_mu_jacobi(double alpha, double a, double b, double x)
{
    const double lpref = lg(alpha + 1.0) + lg(alpha + a + b + 2.0) - lg(alpha + a + 1.0) - lg(alpha + b + 1.0);
    const double lx = std::log(x), l1x = std::log1p(-x);

    int s_a1 = 1, s_a2 = 1;
    double lg_a1 = detail::lgamma_signed(a + 1.0, &s_a1);
    double lg_a2 = detail::lgamma_signed(a + 2.0, &s_a2);
    Scaled U = Scaled::from_log(lg(alpha + 1.0) + lg_a1 - lg(1.0 + alpha + a), s_a1) *
               detail::hyp2f1_real(alpha, -alpha - a - b - 1.0, -a, x);

    const double sa = boost::math::sin_pi(a), ca = boost::math::cos_pi(a);
    Scaled V;
    if (alpha > 0.0) {
        int sign = -(sa > 0 ? 1 : -1) * s_a2;
        double lv = std::log(M_PI * alpha) + lg(alpha + a + b + 2.0) - std::log(std::fabs(sa)) -
                    lg(1.0 + alpha + b) - lg_a2 + (b + 1.0) * l1x + (a + 1.0) * lx;
        V = Scaled::from_log(lv, sign) * detail::hyp2f1_real(1.0 - alpha, alpha + a + b + 2.0, 2.0 + a, x);
    }
    Scaled re = U + V * Scaled::from_double(ca);
    Scaled im = V * Scaled::from_double(sa);
    Scaled sq = re * re + im * im;
    return lpref + a * lx + b * l1x - sq.log_abs();
}

// Value at an algebraic endpoint: 0 for a positive exponent, otherwise undefined
// or requires a limit.
double endpoint_value(double exponent, const char* what)
{
    if (exponent > 0.0) return 0.0;
    throw DomainError(std::string(what) + ": density unbounded or limit-only at the endpoint");
}

double log_mu(const DensityParams& p, double x)
{
    switch (p.family) {
    case DensityFamily::Gaussian: return log_mu_gaussian(p.alpha, x);
    case DensityFamily::Laguerre: return log_mu_laguerre(p.alpha, p.shape, x);
    case DensityFamily::Jacobi: return log_mu_jacobi(p.alpha, p.a, p.b, x);
    }
    return 0.0;
}

double dos_step(double alpha) { return 1e-3 * std::max(1.0, alpha); }

} // namespace

std::string density_family_name(DensityFamily f)
{
    switch (f) {
    case DensityFamily::Gaussian: return "gaussian";
    case DensityFamily::Laguerre: return "laguerre";
    case DensityFamily::Jacobi: return "jacobi";
    }
    return "?";
}

double laguerre_shape(double alpha, double gamma)
{
    if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("gamma must lie in (0,1)");
    return alpha * (1.0 - gamma) / gamma - 1.0;
}

DensityParams DensityParams::gaussian(double alpha)
{
    DensityParams p;
    p.family = DensityFamily::Gaussian;
    p.alpha = alpha;
    p.validate();
    return p;
}

DensityParams DensityParams::laguerre(double alpha, double gamma)
{
    DensityParams p;
    p.family = DensityFamily::Laguerre;
    p.alpha = alpha;
    p.gamma = gamma;
    p.shape = laguerre_shape(alpha, gamma);
    p.validate();
    return p;
}

DensityParams DensityParams::jacobi(double alpha, double a, double b)
{
    DensityParams p;
    p.family = DensityFamily::Jacobi;
    p.alpha = alpha;
    p.a = a;
    p.b = b;
    p.validate();
    return p;
}

DensityParams DensityParams::with_alpha(double al) const
{
    DensityParams q = *this;
    q.alpha = al;
    return q;
}

void DensityParams::validate() const
{
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be positive");
    switch (family) {
    case DensityFamily::Gaussian: break;
    case DensityFamily::Laguerre:
        if (!(shape > -1.0)) throw DomainError("Laguerre exponent must exceed -1");
        if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("gamma must lie in (0,1)");
        break;
    case DensityFamily::Jacobi:
        if (!(a + alpha > 0.0 && b + alpha > 0.0)) throw DomainError("need a + alpha > 0 and b + alpha > 0");
        if (!(a > -1.0 && b > -1.0)) throw DomainError("endpoint exponents must exceed -1");
        if (std::fabs(a - std::nearbyint(a)) <= 1e-8) throw DomainError("a must not be an integer");
        break;
    }
}

double mu_gaussian(double alpha, double x)
{
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
    return std::exp(log_mu_gaussian(alpha, x));
}

double mu_laguerre_shape(double alpha, double shape, double x)
{
    if (!(alpha > 0.0) || !(shape > -1.0)) throw DomainError("need alpha > 0 and shape > -1");
    if (x < 0.0) return 0.0;
    if (x == 0.0) return endpoint_value(shape, "mu_laguerre");
    return std::exp(log_mu_laguerre(alpha, shape, x));
}

double mu_laguerre(double alpha, double gamma, double x)
{
    return mu_laguerre_shape(alpha, laguerre_shape(alpha, gamma), x);
}

double mu_jacobi(double alpha, double a, double b, double x)
{
    DensityParams::jacobi(alpha, a, b);
    if (x < 0.0 || x > 1.0) return 0.0;
    if (x == 0.0) return endpoint_value(a, "mu_jacobi");
    if (x == 1.0) return endpoint_value(b, "mu_jacobi");
    return std::exp(log_mu_jacobi(alpha, a, b, x));
}

double mu_density(const DensityParams& p, double x)
{
    switch (p.family) {
    case DensityFamily::Gaussian: return mu_gaussian(p.alpha, x);
    case DensityFamily::Laguerre: return mu_laguerre_shape(p.alpha, p.shape, x);
    case DensityFamily::Jacobi: return mu_jacobi(p.alpha, p.a, p.b, x);
    }
    return 0.0;
}

double dos_density(const DensityParams& p, double x)
{
    const double h = dos_step(p.alpha);
    if (!(p.alpha > h)) throw DomainError("dos_density needs alpha > finite-difference step");
    if (p.family == DensityFamily::Laguerre && x <= 0.0) return x < 0.0 ? 0.0 : endpoint_value(p.shape, "dos");
    if (p.family == DensityFamily::Jacobi) {
        if (x < 0.0 || x > 1.0) return 0.0;
        if (x == 0.0) return endpoint_value(p.a, "dos");
        if (x == 1.0) return endpoint_value(p.b, "dos");
    }
    auto F = [&](double al) { return al * std::exp(log_mu(p.with_alpha(al), x)); };
    const double fp = F(p.alpha + h), fm = F(p.alpha - h);
    const double hp = F(p.alpha + 0.5 * h), hm = F(p.alpha - 0.5 * h);
    const double d1 = (fp - fm) / (2.0 * h);
    const double d2 = (hp - hm) / h;
    const double r = (4.0 * d2 - d1) / 3.0;
    if (r >= 0.0) return r;
    if (r >= -1e-6) return 0.0;
    throw ConsistencyError("negative density of states " + std::to_string(r) + " at x = " + std::to_string(x));
}

void arcsine_support(const DensityParams& p, double& lo, double& hi)
{
    switch (p.family) {
    case DensityFamily::Gaussian: lo = -2.0; hi = 2.0; return;
    case DensityFamily::Laguerre: {
        double r = std::sqrt(p.gamma);
        lo = (1.0 - r) * (1.0 - r);
        hi = (1.0 + r) * (1.0 + r);
        return;
    }
    case DensityFamily::Jacobi: lo = 0.0; hi = 1.0; return;
    }
}

double arcsine_limit(const DensityParams& p, double x)
{
    double lo = 0.0, hi = 0.0;
    arcsine_support(p, lo, hi);
    if (!(x > lo && x < hi)) return 0.0;
    switch (p.family) {
    case DensityFamily::Gaussian: return 1.0 / (M_PI * std::sqrt(4.0 - x * x));
    case DensityFamily::Laguerre: {
        double d = x - 1.0 - p.gamma;
        return 1.0 / (M_PI * std::sqrt(4.0 * p.gamma - d * d));
    }
    case DensityFamily::Jacobi: {
        double d = 2.0 * x - 1.0;
        return 2.0 / (M_PI * std::sqrt(1.0 - d * d));
    }
    }
    return 0.0;
}

double rescaled_dos(const DensityParams& p, double x)
{
    switch (p.family) {
    case DensityFamily::Gaussian: {
        double s = std::sqrt(p.alpha);
        return s * dos_density(p, s * x);
    }
    case DensityFamily::Laguerre: {
        double s = p.alpha / p.gamma;
        return s * dos_density(p, s * x);
    }
    case DensityFamily::Jacobi: return dos_density(p, x);
    }
    return 0.0;
}

Support density_support(const DensityParams& p)
{
    p.validate();
    Support s;
    switch (p.family) {
    case DensityFamily::Gaussian: {
        // walk out from the edge of the bulk until the density is e^-45 below it
        double x = 2.0 * std::sqrt(p.alpha) + 1.0;
        double ref = std::max(log_mu_gaussian(p.alpha, 0.0), log_mu_gaussian(p.alpha, x));
        while (log_mu_gaussian(p.alpha * 1.01, x) > ref + kTailLog) x += 0.5 + 0.05 * x;
        s.lo = -x;
        s.hi = x;
        return s;
    }
    case DensityFamily::Laguerre: {
        double x = std::max(1.0, 2.0 * (p.shape + 2.0 * p.alpha) + 2.0);
        double ref = log_mu_laguerre(p.alpha, p.shape, 0.5 * x);
        for (double t : {0.1 * x, 0.25 * x, 0.75 * x}) ref = std::max(ref, log_mu_laguerre(p.alpha, p.shape, t));
        while (log_mu_laguerre(p.alpha * 1.01, p.shape, x) > ref + kTailLog) x *= 1.15;
        s.lo = 0.0;
        s.hi = x;
        s.lo_power = true;
        s.lo_exponent = p.shape;
        return s;
    }
    case DensityFamily::Jacobi:
        s.lo = 0.0;
        s.hi = 1.0;
        s.lo_power = s.hi_power = true;
        s.lo_exponent = p.a;
        s.hi_exponent = p.b;
        s.hi_stop = 1e-3;
        return s;
    }
    return s;
}

double density_value(const DensityParams& p, DensityKind k, double x)
{
    return k == DensityKind::Mu ? mu_density(p, x) : dos_density(p, x);
}

namespace {

int default_panels(const DensityParams& p, const Support& s)
{
    switch (p.family) {
    case DensityFamily::Gaussian: {
        double w = std::max(0.5, s.hi / 25.0);
        return static_cast<int>(std::ceil((s.hi - s.lo) / w));
    }
    case DensityFamily::Laguerre: return 48;
    case DensityFamily::Jacobi: return 40;
    }
    return 40;
}

} // namespace

std::vector<double> density_moments(const DensityParams& p, DensityKind k, int l_max, int panels)
{
    if (l_max < 0) throw UsageError("l_max must be nonnegative");
    Support s = density_support(p);
    QuadRule rule = make_rule(s, panels > 0 ? panels : default_panels(p, s));
    auto vals = evaluate_nodes([&](double x) { return density_value(p, k, x); }, rule.nodes);
    std::vector<double> m(l_max + 1, 0.0);
    for (std::size_t i = 0; i < vals.size(); ++i) {
        double t = rule.weights[i] * vals[i];
        for (int l = 0; l <= l_max; ++l) {
            m[l] += t;
            t *= rule.nodes[i];
        }
    }
    return m;
}

CdfTable density_cdf(const DensityParams& p, DensityKind k, int cells)
{
    Support s = density_support(p);
    return make_cdf([&](double x) { return density_value(p, k, x); }, s, cells);
}

double toda_lax_dos(double beta, double theta, double x)
{
    if (!(beta > 0.0) || !(theta > 0.0)) throw DomainError("toda_lax_dos: beta and theta must be positive");
    const double sb = std::sqrt(beta);
    return sb * dos_density(DensityParams::gaussian(beta + theta), sb * x);
}

CdfTable toda_lax_cdf(double beta, double theta, int cells)
{
    if (!(beta > 0.0) || !(theta > 0.0)) throw DomainError("toda_lax_cdf: beta and theta must be positive");
    CdfTable t = density_cdf(DensityParams::gaussian(beta + theta), DensityKind::Dos, cells);
    const double sb = std::sqrt(beta);
    for (double& v : t.x) v /= sb;
    t.lo_cell_end /= sb;
    t.hi_cell_start /= sb;
    return t;
}

DensityCurve density_curve(const DensityParams& p, DensityKind k, const std::vector<double>& grid)
{
    DensityCurve c;
    c.grid = grid;
    c.values = evaluate_nodes([&](double x) { return density_value(p, k, x); }, grid);
    c.family = density_family_name(p.family);
    c.params["alpha"] = p.alpha;
    if (p.family == DensityFamily::Laguerre) {
        c.params["gamma"] = p.gamma;
        c.params["shape"] = p.shape;
    }
    if (p.family == DensityFamily::Jacobi) {
        c.params["a"] = p.a;
        c.params["b"] = p.b;
    }
    return c;
}

double arcsine_sup_distance(const DensityParams& p, int points, double inner)
{
    double lo = 0.0, hi = 0.0;
    arcsine_support(p, lo, hi);
    const double margin = 0.5 * (1.0 - inner) * (hi - lo);
    std::vector<double> xs(points);
    for (int i = 0; i < points; ++i) xs[i] = lo + margin + (hi - lo - 2.0 * margin) * i / (points - 1.0);
    auto d = evaluate_nodes([&](double x) { return std::fabs(rescaled_dos(p, x) - arcsine_limit(p, x)); }, xs);
    return *std::max_element(d.begin(), d.end());
}

OrthoPolyFamily OrthoPolyFamily::for_density(const DensityParams& p)
{
    OrthoPolyFamily f;
    f.alpha = p.alpha;
    switch (p.family) {
    case DensityFamily::Gaussian: f.kind = OrthoKind::AssocHermite; break;
    case DensityFamily::Laguerre:
        f.kind = OrthoKind::AssocLaguerre;
        f.shape = p.shape;
        break;
    case DensityFamily::Jacobi:
        f.kind = OrthoKind::AssocJacobi;
        f.a = p.a;
        f.b = p.b;
        break;
    }
    return f;
}

double OrthoPolyFamily::xi(int n) const
{
    const double s = 2.0 * n + 2.0 * alpha + a + b;
    if (n == 0) return (alpha + a + 1.0) / (2.0 * alpha + a + b + 2.0);
    return (n + alpha + a + 1.0) * (n + alpha + a + b + 1.0) / ((s + 2.0) * (s + 1.0));
}

double OrthoPolyFamily::eta(int n) const
{
    if (n == 0) return 0.0;
    const double s = 2.0 * n + 2.0 * alpha + a + b;
    return (n + alpha) * (n + alpha + b) / ((s + 1.0) * s);
}

double OrthoPolyFamily::norm_sq(int n) const
{
    double r = 1.0;
    for (int k = 1; k <= n; ++k) {
        switch (kind) {
        case OrthoKind::AssocHermite: r *= k + alpha; break;
        case OrthoKind::AssocLaguerre: r *= (k + alpha + shape) / (k + alpha); break;
        case OrthoKind::AssocJacobi: break;
        }
    }
    return r;
}

double orthopoly_eval(const OrthoPolyFamily& f, int n, double x)
{
    if (n < 0) throw UsageError("degree must be nonnegative");
    double prev = 0.0, cur = 1.0;
    for (int k = 0; k < n; ++k) {
        double next = 0.0;
        switch (f.kind) {
        case OrthoKind::AssocHermite: next = x * cur - (k + f.alpha) * prev; break;
        case OrthoKind::AssocLaguerre: {
            // -x L_k = (k+1+alpha) L_{k+1} - B_k L_k + (k+alpha+c) L_{k-1}
            double B = k == 0 ? f.shape + f.alpha + 1.0 : 2.0 * k + 2.0 * f.alpha + f.shape + 1.0;
            next = ((B - x) * cur - (k + f.alpha + f.shape) * prev) / (k + 1.0 + f.alpha);
            break;
        }
        case OrthoKind::AssocJacobi: {
            double up = std::sqrt(f.xi(k) * f.eta(k + 1));
            double down = k == 0 ? 0.0 : std::sqrt(f.xi(k - 1) * f.eta(k));
            next = ((x - f.xi(k) - f.eta(k)) * cur - down * prev) / up;
            break;
        }
        }
        prev = cur;
        cur = next;
        if (!std::isfinite(cur)) throw NumericError("orthopoly_eval overflow");
    }
    return cur;
}

} // namespace rmlab
