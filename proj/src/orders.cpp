#include "copord/orders.hpp"

#include <algorithm>
#include <cmath>

namespace copord {

std::string to_string(OrderKind k) {
    switch (k) {
        case OrderKind::ST: return "st";
        case OrderKind::ICX: return "icx";
        case OrderKind::ICV: return "icv";
        case OrderKind::CX: return "cx";
    }
    return "st";
}

Grid default_order_grid(const Marginal& a, const Marginal& b, int n) {
    double lo = std::min(a.lo_eff(), b.lo_eff());
    double hi = std::max(a.hi_eff(), b.hi_eff());
    if (hi - lo < 1e-9) {
        lo -= 0.5;
        hi += 0.5;
    }
    return Grid::uniform(lo, hi, n);
}

namespace {

std::vector<double> survival_curve(const Marginal& m, const Grid& g) {
    std::vector<double> out;
    out.reserve(g.points.size());
    for (double t : g.points) out.push_back(m.survival(t));
    return out;
}

// Right-to-left cumulative tail integration: one open-ended quadrature for
// the last node, one cell quadrature per grid step.
std::vector<double> stop_loss_curve(const Marginal& m, const Grid& g,
                                    const Tolerance& quad) {
    const auto& t = g.points;
    const std::size_t n = t.size();
    std::vector<double> pi(n, 0.0);
    Tolerance cell = quad;
    cell.abs_tol = quad.abs_tol / static_cast<double>(n);
    const std::vector<double> brk = m.density_breakpoints();
    pi[n - 1] = stop_loss(m, t[n - 1], quad);
    for (std::size_t i = n - 1; i-- > 0;) {
        pi[i] = pi[i + 1] +
                integrate([&](double x) { return m.survival(x); }, t[i], t[i + 1], cell, brk);
    }
    return pi;
}

std::vector<double> integrated_cdf_curve(const Marginal& m, const Grid& g,
                                         const Tolerance& quad) {
    const auto& t = g.points;
    const std::size_t n = t.size();
    std::vector<double> ic(n, 0.0);
    Tolerance cell = quad;
    cell.abs_tol = quad.abs_tol / static_cast<double>(n);
    const std::vector<double> brk = m.density_breakpoints();
    ic[0] = integrated_cdf(m, t[0], quad);
    for (std::size_t i = 1; i < n; ++i) {
        ic[i] = ic[i - 1] +
                integrate([&](double x) { return m.cdf(x); }, t[i - 1], t[i], cell, brk);
    }
    return ic;
}

OrderVerdict scan(OrderKind kind, const Grid& g, const std::vector<double>& slack,
                  double tol) {
    OrderVerdict v;
    v.order = kind;
    v.tolerance = tol;
    v.grid_resolution = g.resolution;
    v.min_slack = slack.front();
    v.witness_t = g.points.front();
    for (std::size_t i = 1; i < slack.size(); ++i) {
        if (slack[i] < v.min_slack) {
            v.min_slack = slack[i];
            v.witness_t = g.points[i];
        }
    }
    v.holds = v.min_slack >= -tol;
    return v;
}

void fill_curves(OrderCurves* curves, std::string name, const Grid& g,
                 std::vector<double> a, std::vector<double> b) {
    if (!curves) return;
    curves->curve_name = std::move(name);
    curves->t = g.points;
    curves->a = std::move(a);
    curves->b = std::move(b);
}

} // namespace

OrderVerdict st_leq(const Marginal& a, const Marginal& b, const Grid& t_grid, double tol,
                    OrderCurves* curves) {
    t_grid.validate();
    std::vector<double> sa = survival_curve(a, t_grid);
    std::vector<double> sb = survival_curve(b, t_grid);
    std::vector<double> slack(sa.size());
    for (std::size_t i = 0; i < sa.size(); ++i) slack[i] = sb[i] - sa[i];
    OrderVerdict v = scan(OrderKind::ST, t_grid, slack, tol);
    fill_curves(curves, "survival", t_grid, std::move(sa), std::move(sb));
    return v;
}

OrderVerdict icx_leq(const Marginal& a, const Marginal& b, const Grid& t_grid, double tol,
                     OrderCurves* curves, const Tolerance& quad) {
    t_grid.validate();
    std::vector<double> pa = stop_loss_curve(a, t_grid, quad);
    std::vector<double> pb = stop_loss_curve(b, t_grid, quad);
    std::vector<double> slack(pa.size());
    for (std::size_t i = 0; i < pa.size(); ++i) slack[i] = pb[i] - pa[i];
    OrderVerdict v = scan(OrderKind::ICX, t_grid, slack, tol);
    fill_curves(curves, "stop_loss", t_grid, std::move(pa), std::move(pb));
    return v;
}

OrderVerdict icv_leq(const Marginal& a, const Marginal& b, const Grid& t_grid, double tol,
                     OrderCurves* curves, const Tolerance& quad) {
    t_grid.validate();
    std::vector<double> ia = integrated_cdf_curve(a, t_grid, quad);
    std::vector<double> ib = integrated_cdf_curve(b, t_grid, quad);
    std::vector<double> slack(ia.size());
    for (std::size_t i = 0; i < ia.size(); ++i) slack[i] = ia[i] - ib[i];
    OrderVerdict v = scan(OrderKind::ICV, t_grid, slack, tol);
    fill_curves(curves, "integrated_cdf", t_grid, std::move(ia), std::move(ib));
    return v;
}

OrderVerdict cx_leq(const Marginal& a, const Marginal& b, const Grid& t_grid, double tol,
                    double mean_tol, OrderCurves* curves, const Tolerance& quad) {
    OrderVerdict v = icx_leq(a, b, t_grid, tol, curves, quad);
    v.order = OrderKind::CX;
    v.mean_gap = mean(b, quad) - mean(a, quad);
    v.mean_tolerance = mean_tol;
    v.holds = v.holds && std::abs(v.mean_gap) <= mean_tol;
    return v;
}

} // namespace copord
