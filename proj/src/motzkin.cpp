#include "rmlab/motzkin.hpp"
#include "rmlab/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <functional>

namespace rmlab {

namespace {

mpz_class binom(long n, long k)
{
    if (k < 0 || n < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

int half(int l) { return l / 2; }

} // namespace

bool SuperMotzkinTerm::valid() const
{
    int s = 0;
    for (int e = -L; e < L; ++e) s += 2 * n_at(e);
    for (int v = -L; v <= L; ++v) s += k_at(v);
    if (s != l) return false;
    for (int v = 1; v <= L; ++v)
        if (n_at(v - 1) == 0 && (n_at(v) != 0 || k_at(v) != 0)) return false;
    for (int v = -1; v >= -L; --v)
        if (n_at(v) == 0 && (n_at(v - 1) != 0 || k_at(v) != 0)) return false;
    return true;
}

std::vector<SuperMotzkinTerm> enumerate_A(int l)
{
    if (l < 1) throw UsageError("enumerate_A needs l >= 1");
    if (l > kMaxMotzkinOrder) throw ResourceError("enumerate_A: l exceeds the budget of 12");
    const int L = half(l);
    std::vector<SuperMotzkinTerm> out;
    SuperMotzkinTerm t;
    t.l = l;
    t.L = L;
    t.n.assign(2 * L, 0);
    t.k.assign(2 * L + 1, 0);

    // edge order: 0, 1, ..., L-1, -1, -2, ..., -L
    std::vector<int> edges;
    for (int e = 0; e < L; ++e) edges.push_back(e);
    for (int e = -1; e >= -L; --e) edges.push_back(e);

    std::vector<int> loop_sites;
    std::function<void(std::size_t, int)> fill_loops = [&](std::size_t idx, int left) {
        if (idx == loop_sites.size()) {
            if (left == 0) out.push_back(t);
            return;
        }
        int v = loop_sites[idx];
        for (int c = 0; c <= left; ++c) {
            t.k[v + L] = c;
            fill_loops(idx + 1, left - c);
        }
        t.k[v + L] = 0;
    };

    std::function<void(std::size_t, int)> fill_edges = [&](std::size_t idx, int left) {
        if (idx == edges.size()) {
            loop_sites.clear();
            for (int v = -L; v <= L; ++v) {
                bool visited = v == 0 || (v > 0 ? t.n_at(v - 1) > 0 : t.n_at(v) > 0);
                if (visited) loop_sites.push_back(v);
            }
            fill_loops(0, left);
            return;
        }
        int e = edges[idx];
        bool reachable = e == 0 || e == -1 || (e > 0 ? t.n_at(e - 1) > 0 : t.n_at(e + 1) > 0);
        for (int c = 0; reachable ? 2 * c <= left : c == 0; ++c) {
            t.n[e + L] = c;
            fill_edges(idx + 1, left - 2 * c);
        }
        t.n[e + L] = 0;
    };
    fill_edges(0, l);
    return out;
}

mpz_class rho(const SuperMotzkinTerm& t)
{
    const int L = t.L;
    mpz_class r = binom(t.n_at(-1) + t.n_at(0) + t.k_at(0), t.k_at(0)) * binom(t.n_at(-1) + t.n_at(0), t.n_at(0));
    for (int v = 1; v <= L; ++v) {
        int in = t.n_at(v - 1), out = t.n_at(v), kv = t.k_at(v);
        if (in == 0) continue;
        r *= binom(in + out + kv - 1, kv) * binom(in + out - 1, out);
    }
    for (int v = -1; v >= -L; --v) {
        int in = t.n_at(v), out = t.n_at(v - 1), kv = t.k_at(v);
        if (in == 0) continue;
        r *= binom(in + out + kv - 1, kv) * binom(in + out - 1, out);
    }
    return r;
}

namespace {

struct WindowLayout {
    int W;
    int a_index(int v) const { return v + W; }
    int b_index(int e) const { return (2 * W + 1) + e + W; }
    int size() const { return 4 * W + 1; }
};

} // namespace

WindowPoly motzkin_polynomial(int l)
{
    WindowLayout lay{half(l) + 1};
    WindowPoly out;
    for (const auto& t : enumerate_A(l)) {
        std::vector<int> key(lay.size(), 0);
        for (int e = -t.L; e < t.L; ++e) key[lay.b_index(e)] = 2 * t.n_at(e);
        for (int v = -t.L; v <= t.L; ++v) key[lay.a_index(v)] = t.k_at(v);
        out[key] += rho(t);
    }
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

WindowPoly symbolic_diag_power(int l)
{
    if (l < 1 || l > kMaxMotzkinOrder) throw UsageError("symbolic_diag_power: l out of range");
    WindowLayout lay{half(l) + 1};
    const int W = lay.W;
    // vec[v + W] is the polynomial entry (T^s e_0)(v)
    std::vector<WindowPoly> vec(2 * W + 1);
    vec[W][std::vector<int>(lay.size(), 0)] = 1;
    auto mul_var = [&](const WindowPoly& p, int var, WindowPoly& acc) {
        for (const auto& [key, c] : p) {
            auto k2 = key;
            ++k2[var];
            acc[k2] += c;
        }
    };
    for (int s = 0; s < l; ++s) {
        std::vector<WindowPoly> next(2 * W + 1);
        for (int v = -W; v <= W; ++v) {
            WindowPoly& acc = next[v + W];
            mul_var(vec[v + W], lay.a_index(v), acc);
            if (v > -W) mul_var(vec[v - 1 + W], lay.b_index(v - 1), acc);
            if (v < W) mul_var(vec[v + 1 + W], lay.b_index(v), acc);
        }
        vec = std::move(next);
    }
    WindowPoly out = vec[W];
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

MomentFamily MomentFamily::gaussian() { return {}; }

MomentFamily MomentFamily::laguerre(const mpq_class& p)
{
    MomentFamily f;
    f.family = DensityFamily::Laguerre;
    f.p = p;
    return f;
}

MomentFamily MomentFamily::laguerre_at(double alpha, double gamma)
{
    if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("gamma must lie in (0,1)");
    mpq_class al = rational_from_double(alpha), g = rational_from_double(gamma);
    mpq_class p = al * (1 - g) / g;
    p.canonicalize();
    return laguerre(p);
}

MomentFamily MomentFamily::jacobi(const mpq_class& a, const mpq_class& b)
{
    MomentFamily f;
    f.family = DensityFamily::Jacobi;
    f.a = a;
    f.b = b;
    return f;
}

namespace {

// Base-variable monomial: exponent pairs (of V and of 1 - V) per base variable.
// Variable ids: 2 * (position + W) + type.
using BaseMono = std::map<int, std::pair<int, int>>;

struct WeightedMono {
    mpz_class coef;
    BaseMono mono;
};

void multiply_into(std::vector<WeightedMono>& terms, const std::vector<WeightedMono>& factor)
{
    std::vector<WeightedMono> out;
    out.reserve(terms.size() * factor.size());
    for (const auto& t : terms)
        for (const auto& f : factor) {
            WeightedMono m{t.coef * f.coef, t.mono};
            for (const auto& [var, ex] : f.mono) {
                auto& slot = m.mono[var];
                slot.first += ex.first;
                slot.second += ex.second;
            }
            out.push_back(std::move(m));
        }
    terms = std::move(out);
}

class Expectation {
public:
    Expectation(const MomentFamily& f, int W) : fam_(f), W_(W) {}

    int id(int pos, int type) const { return 2 * (pos + W_) + type; }

    // Expansion of a_v^k and (b_e^2)^n in base variables.
    std::vector<WeightedMono> diag_power(int v, int k) const
    {
        std::vector<WeightedMono> out;
        switch (fam_.family) {
        case DensityFamily::Gaussian: out.push_back({1, {{id(v, 0), {k, 0}}}}); break;
        case DensityFamily::Laguerre:
            // a_v = X_v + Y_{v-1}
            for (int j = 0; j <= k; ++j) {
                BaseMono m;
                if (j) m[id(v, 0)] = {j, 0};
                if (k - j) m[id(v - 1, 1)] = {k - j, 0};
                out.push_back({binom(k, j), m});
            }
            break;
        case DensityFamily::Jacobi:
            // a_v = P_v (1 - Q_{v-1}) + Q_{v-1} (1 - P_{v-1})
            for (int j = 0; j <= k; ++j) {
                BaseMono m;
                if (j) {
                    m[id(v, 0)].first += j;
                    m[id(v - 1, 1)].second += j;
                }
                if (k - j) {
                    m[id(v - 1, 1)].first += k - j;
                    m[id(v - 1, 0)].second += k - j;
                }
                out.push_back({binom(k, j), m});
            }
            break;
        }
        return out;
    }

    std::vector<WeightedMono> offdiag_power(int e, int n) const
    {
        BaseMono m;
        switch (fam_.family) {
        case DensityFamily::Gaussian: m[id(e, 1)] = {n, 0}; break;
        case DensityFamily::Laguerre:
            m[id(e, 0)] = {n, 0};
            m[id(e, 1)] = {n, 0};
            break;
        case DensityFamily::Jacobi:
            // b_e^2 = P_e (1 - P_e) Q_e (1 - Q_{e-1})
            m[id(e, 0)] = {n, n};
            m[id(e, 1)].first += n;
            m[id(e - 1, 1)].second += n;
            break;
        }
        return {{1, m}};
    }

    // Numerator polynomial and Pochhammer length of the denominator.
    const std::pair<Poly, int>& moment(int type, int e, int f)
    {
        auto key = std::make_tuple(type, e, f);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        std::pair<Poly, int> r{Poly(mpq_class(1)), 0};
        switch (fam_.family) {
        case DensityFamily::Gaussian:
            if (type == 0) {
                // standard normal: (e-1)!! for even e
                mpz_class df = 1;
                for (int i = e - 1; i > 0; i -= 2) df *= i;
                r.first = e % 2 ? Poly() : Poly(mpq_class(df));
            } else {
                r.first = Poly::rising(0, 1, e);
            }
            break;
        case DensityFamily::Laguerre:
            r.first = type == 0 ? Poly::rising(fam_.p, 1, e) : Poly::rising(0, 1, e);
            break;
        case DensityFamily::Jacobi:
            if (type == 0)
                r.first = Poly::rising(fam_.a + 1, 1, e) * Poly::rising(fam_.b + 1, 1, f);
            else
                r.first = Poly::rising(0, 1, e) * Poly::rising(fam_.a + fam_.b + 2, 1, f);
            r.second = e + f;
            break;
        }
        return cache_.emplace(key, std::move(r)).first->second;
    }

    Poly denominator(int s) const { return Poly::rising(fam_.a + fam_.b + 2, 2, s); }

private:
    MomentFamily fam_;
    int W_;
    std::map<std::tuple<int, int, int>, std::pair<Poly, int>> cache_;
};

} // namespace

RationalFunc expected_h(int l, const MomentFamily& fam)
{
    const int W = half(l) + 1;
    Expectation ex(fam, W);
    // numerators grouped by the multiset of denominator lengths
    std::map<std::vector<int>, Poly> groups;
    for (const auto& t : enumerate_A(l)) {
        std::vector<WeightedMono> terms{{rho(t), {}}};
        for (int v = -t.L; v <= t.L; ++v)
            if (t.k_at(v)) multiply_into(terms, ex.diag_power(v, t.k_at(v)));
        for (int e = -t.L; e < t.L; ++e)
            if (t.n_at(e)) multiply_into(terms, ex.offdiag_power(e, t.n_at(e)));
        for (const auto& wm : terms) {
            Poly num(mpq_class(wm.coef));
            std::vector<int> dens;
            for (const auto& [var, exps] : wm.mono) {
                const auto& [p, s] = ex.moment(var % 2, exps.first, exps.second);
                num = num * p;
                if (s > 0) dens.push_back(s);
                if (num.is_zero()) break;
            }
            if (num.is_zero()) continue;
            std::sort(dens.begin(), dens.end());
            groups[dens] += num;
        }
    }
    RationalFunc total;
    for (const auto& [dens, num] : groups) {
        Poly d(mpq_class(1));
        for (int s : dens) d = d * ex.denominator(s);
        total = total + RationalFunc(num, d);
    }
    return total;
}

MomentPair moments_pair(int l, const MomentFamily& fam, double alpha)
{
    if (!(alpha > 0.0)) throw DomainError("moments_pair needs alpha > 0");
    MomentPair r;
    r.l = l;
    r.alpha = alpha;
    r.v_func = expected_h(l, fam);
    r.v = r.v_func.eval(alpha);
    if (r.v_func.is_polynomial()) {
        // u = (1/alpha) int_0^alpha w
        Poly w = r.v_func.num() * (mpq_class(1) / r.v_func.den().lead());
        Poly prim = w.integral();
        std::vector<mpq_class> uc;
        for (int i = 1; i <= prim.degree(); ++i) uc.push_back(prim.coeff(i));
        r.u_poly = Poly(uc);
        r.u = r.u_poly->eval(alpha);
        Poly back = (Poly::x() * *r.u_poly).derivative();
        r.identity_exact = back == w;
        r.identity_residual = r.identity_exact ? 0.0 : 1.0;
        return r;
    }
    // rational r_l: u = int_0^1 r(alpha s) ds by adaptive Gauss-Kronrod
    auto rf = [&](double t) { return r.v_func.eval(t); };
    double err = 0.0;
    r.u = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        [&](double s) { return rf(alpha * s); }, 0.0, 1.0, 15, 1e-12, &err);
    if (err > 1e-10 * std::max(1.0, std::fabs(r.u))) throw AccuracyError("u quadrature did not converge", err);
    // d/dalpha (alpha u): difference quotient of int_0^alpha r, i.e. the mean of r
    // over [alpha - h, alpha + h], with one Richardson step
    using GL = boost::math::quadrature::gauss<double, 20>;
    auto dq = [&](double h) { return GL::integrate(rf, alpha - h, alpha + h) / (2.0 * h); };
    const double h = 1e-3 * std::max(1.0, alpha);
    double d = (4.0 * dq(0.5 * h) - dq(h)) / 3.0;
    r.identity_residual = std::fabs(d - r.v) / std::max(1.0, std::fabs(r.v));
    r.identity_exact = false;
    return r;
}

} // namespace rmlab
