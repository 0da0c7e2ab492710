#include "rmlab/quadrature.hpp"
#include "rmlab/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>

namespace rmlab {

namespace {

using GL = boost::math::quadrature::gauss<double, 20>;

void add_panel(QuadRule& r, double a, double b)
{
    const auto& xs = GL::abscissa();
    const auto& ws = GL::weights();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] == 0.0) {
            r.nodes.push_back(mid);
            r.weights.push_back(half * ws[i]);
            continue;
        }
        r.nodes.push_back(mid - half * xs[i]);
        r.weights.push_back(half * ws[i]);
        r.nodes.push_back(mid + half * xs[i]);
        r.weights.push_back(half * ws[i]);
    }
}

// Three leading exponents of f ~ t^e h(t, t^{1+e}) with h analytic, and the
// next one (which sets the truncation error of a fit on the leading three).
std::vector<double> tail_exponents(double e)
{
    std::vector<double> c;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) c.push_back(e + i + j * (1.0 + e));
    std::sort(c.begin(), c.end());
    std::vector<double> out;
    for (double v : c)
        if (out.empty() || v - out.back() > 1e-6) out.push_back(v);
    out.resize(4);
    return out;
}

// Integral over the distance range [0, stop] from `end`, from a fit
// f(t) = sum_k c_k t^{ex_k} through t = stop, 2 stop, 4 stop; appended as three
// weighted nodes.
void add_fitted_tail(QuadRule& r, double end, double dir, double stop, double e)
{
    std::vector<double> ex = tail_exponents(e);
    const double ts[3] = {1.0, 2.0, 4.0};
    // weights w solve A^T w = I, A_ik = ts_i^{ex_k}, I_k = 1/(ex_k + 1) (in units of stop)
    double M[3][4];
    for (int k = 0; k < 3; ++k) {
        for (int i = 0; i < 3; ++i) M[k][i] = std::pow(ts[i], ex[k]);
        M[k][3] = 1.0 / (ex[k] + 1.0);
    }
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int i = c + 1; i < 3; ++i)
            if (std::fabs(M[i][c]) > std::fabs(M[piv][c])) piv = i;
        for (int k = 0; k < 4; ++k) std::swap(M[c][k], M[piv][k]);
        for (int i = 0; i < 3; ++i) {
            if (i == c) continue;
            double f = M[i][c] / M[c][c];
            for (int k = c; k < 4; ++k) M[i][k] -= f * M[c][k];
        }
    }
    for (int i = 0; i < 3; ++i) {
        r.nodes.push_back(end + dir * ts[i] * stop);
        r.weights.push_back(stop * M[i][3] / M[i][i]);
    }
}

// Geometric panels over distances [stop, len] from `end`, then the fitted tail.
void add_graded(QuadRule& r, double end, double dir, double len, double e, double stop)
{
    double outer = len;
    while (outer > 2.0 * stop) {
        double a = end + dir * 0.5 * outer, b = end + dir * outer;
        add_panel(r, std::min(a, b), std::max(a, b));
        outer *= 0.5;
    }
    double a = end + dir * stop, b = end + dir * outer;
    if (outer > stop) add_panel(r, std::min(a, b), std::max(a, b));
    add_fitted_tail(r, end, dir, stop, e);
}

// Tail length where the first neglected term of the fit is below 1e-13 of the
// panel scale, but no longer than 1e-3 of it.
double default_stop(double len, double e)
{
    double next = tail_exponents(e)[3];
    double rel = std::pow(1e-13, 1.0 / (next + 1.0));
    rel = std::clamp(rel, 1e-14, 1e-3);
    return len * rel;
}

} // namespace

double QuadRule::apply(const std::vector<double>& values) const
{
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) s += weights[i] * values[i];
    return s;
}

QuadRule make_rule(const Support& s, int panels)
{
    if (!(s.hi > s.lo) || panels < 1) throw UsageError("make_rule: empty support");
    QuadRule r;
    const double width = (s.hi - s.lo) / panels;
    double lo = s.lo, top = s.hi;
    int mid = panels;
    if (s.lo_power) {
        add_graded(r, s.lo, 1.0, width, s.lo_exponent, default_stop(width, s.lo_exponent));
        lo += width;
        --mid;
    }
    if (s.hi_power && mid > 0) {
        double stop = s.hi_stop > 0.0 ? std::min(s.hi_stop, width) : default_stop(width, s.hi_exponent);
        add_graded(r, s.hi, -1.0, width, s.hi_exponent, stop);
        top -= width;
        --mid;
    }
    for (int k = 0; k < mid; ++k) add_panel(r, lo + k * width, k == mid - 1 ? top : lo + (k + 1) * width);
    return r;
}

std::vector<double> evaluate_nodes(const std::function<double(double)>& f, const std::vector<double>& nodes)
{
    std::vector<double> v(nodes.size());
    const long n = static_cast<long>(nodes.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (long i = 0; i < n; ++i) v[i] = f(nodes[i]);
    return v;
}

double CdfTable::operator()(double v) const
{
    if (v <= x.front()) return 0.0;
    if (v >= x.back()) return F.back();
    auto it = std::upper_bound(x.begin(), x.end(), v);
    std::size_t k = static_cast<std::size_t>(it - x.begin());
    const double x0 = x[k - 1], x1 = x[k];
    if (lo_power && x1 <= lo_cell_end) {
        const double q = lo_exponent + 1.0, lo = x.front();
        const double u0 = std::pow(x0 - lo, q), u1 = std::pow(x1 - lo, q), u = std::pow(v - lo, q);
        return F[k - 1] + (u - u0) / (u1 - u0) * (F[k] - F[k - 1]);
    }
    if (hi_power && x0 >= hi_cell_start) {
        const double q = hi_exponent + 1.0, hi = x.back();
        const double u0 = std::pow(hi - x0, q), u1 = std::pow(hi - x1, q), u = std::pow(hi - v, q);
        return F[k - 1] + (u0 - u) / (u0 - u1) * (F[k] - F[k - 1]);
    }
    double t = (v - x0) / (x1 - x0);
    return F[k - 1] + t * (F[k] - F[k - 1]);
}

namespace {

// Pieces of a cell between consecutive knots, each with its own rule.
struct Piece {
    double a, b;
    QuadRule rule;
};

QuadRule gauss4(double a, double b)
{
    QuadRule r;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    static const double gx[2] = {0.3399810435848563, 0.8611363115940526};
    static const double gw[2] = {0.6521451548625461, 0.3478548451374538};
    for (int i = 0; i < 2; ++i) {
        r.nodes.push_back(mid - half * gx[i]);
        r.weights.push_back(half * gw[i]);
        r.nodes.push_back(mid + half * gx[i]);
        r.weights.push_back(half * gw[i]);
    }
    return r;
}

// Halving knots from the far edge of an end cell toward `end`; the innermost
// piece keeps the graded rule with its fitted tail.
std::vector<Piece> end_cell_pieces(double end, double dir, double len, double e, double stop)
{
    std::vector<Piece> out;
    const double floor_len = std::max(2.0 * stop, 1e-9 * len);
    double outer = len;
    while (0.5 * outer >= floor_len) {
        Piece pc;
        pc.a = end + dir * outer;
        pc.b = end + dir * 0.5 * outer;
        add_panel(pc.rule, std::min(pc.a, pc.b), std::max(pc.a, pc.b));
        out.push_back(std::move(pc));
        outer *= 0.5;
    }
    Piece last;
    last.a = end + dir * outer;
    last.b = end;
    add_graded(last.rule, end, dir, outer, e, std::min(stop, outer));
    out.push_back(std::move(last));
    return out;
}

} // namespace

CdfTable make_cdf(const std::function<double(double)>& f, const Support& s, int cells)
{
    if (cells < 2) throw UsageError("make_cdf: need at least two cells");
    const double w = (s.hi - s.lo) / cells;
    auto edge = [&](int k) { return k == cells ? s.hi : s.lo + k * w; };
    std::vector<Piece> pieces;
    for (int k = 0; k < cells; ++k) {
        if (k == 0 && s.lo_power) {
            auto lp = end_cell_pieces(s.lo, 1.0, w, s.lo_exponent, default_stop(w, s.lo_exponent));
            // stored innermost first so pieces run left to right
            for (auto it = lp.rbegin(); it != lp.rend(); ++it) {
                Piece pc = std::move(*it);
                std::swap(pc.a, pc.b);
                pieces.push_back(std::move(pc));
            }
        } else if (k == cells - 1 && s.hi_power) {
            double stop = s.hi_stop > 0.0 ? std::min(s.hi_stop, w) : default_stop(w, s.hi_exponent);
            auto hp = end_cell_pieces(s.hi, -1.0, w, s.hi_exponent, stop);
            for (auto& pc : hp) pieces.push_back(std::move(pc));
        } else {
            pieces.push_back({edge(k), edge(k + 1), gauss4(edge(k), edge(k + 1))});
        }
    }
    std::vector<double> all_nodes;
    std::vector<std::size_t> offset(pieces.size() + 1, 0);
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        offset[k + 1] = offset[k] + pieces[k].rule.nodes.size();
        all_nodes.insert(all_nodes.end(), pieces[k].rule.nodes.begin(), pieces[k].rule.nodes.end());
    }
    std::vector<double> vals = evaluate_nodes(f, all_nodes);
    CdfTable t;
    t.x.push_back(s.lo);
    t.F.push_back(0.0);
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        double mass = 0.0;
        for (std::size_t i = offset[k]; i < offset[k + 1]; ++i) mass += pieces[k].rule.weights[i - offset[k]] * vals[i];
        t.x.push_back(pieces[k].b);
        t.F.push_back(t.F.back() + mass);
    }
    t.x.back() = s.hi;
    t.lo_power = s.lo_power;
    t.lo_exponent = s.lo_exponent;
    t.lo_cell_end = s.lo + w;
    t.hi_power = s.hi_power;
    t.hi_exponent = s.hi_exponent;
    t.hi_cell_start = s.hi - w;
    return t;
}

} // namespace rmlab
