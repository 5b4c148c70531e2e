#include "copord/dependence.hpp"

#include "copord/joint.hpp"
#include "copord/marginal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace copord {

namespace {

constexpr double kNoSlack = std::numeric_limits<double>::infinity();

double pick_tol(const Copula& c, double tol) {
    return tol > 0.0 ? tol : c.recommended_slack_tol();
}

// Shared reduction: min/max slack with the lexicographically smallest witness
// attaining the minimum (grid points are scanned in order).
struct SlackScan {
    double min_slack = kNoSlack;
    double max_slack = -kNoSlack;
    std::vector<double> witness;

    void feed(double slack, std::initializer_list<double> point) {
        if (slack < min_slack) {
            min_slack = slack;
            witness.assign(point);
        }
        max_slack = std::max(max_slack, slack);
    }
};

PropertyReport finish(std::string name, const SlackScan& scan, int resolution, double tol) {
    PropertyReport r;
    r.property = std::move(name);
    r.min_slack = scan.min_slack == kNoSlack ? 0.0 : scan.min_slack;
    r.max_slack = scan.max_slack == -kNoSlack ? 0.0 : scan.max_slack;
    r.witness = scan.witness;
    r.grid_resolution = resolution;
    r.tolerance = tol;
    if (r.min_slack < -tol)
        r.verdict = PropertyVerdict::fails;
    else if (std::abs(r.min_slack) <= tol && r.max_slack <= tol)
        r.verdict = PropertyVerdict::holds_with_equality;
    else
        r.verdict = PropertyVerdict::holds;
    return r;
}

PropertyReport pointwise_check(std::string name, const Copula& c, const Grid& grid,
                               double tol, double (*slack_fn)(const Copula&, double, double)) {
    grid.validate();
    SlackScan scan;
    for (double u : grid.points)
        for (double v : grid.points)
            scan.feed(slack_fn(c, u, v), {u, v});
    return finish(std::move(name), scan, grid.resolution, tol);
}

std::vector<double> merged_v_breaks(const Copula& c) {
    std::vector<double> b = c.breakpoints_v();
    const std::vector<double> orig = b;
    for (double x : orig) b.push_back(1.0 - x);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

} // namespace

std::string to_string(PropertyVerdict v) {
    switch (v) {
        case PropertyVerdict::holds: return "holds";
        case PropertyVerdict::fails: return "fails";
        case PropertyVerdict::holds_with_equality: return "holds-with-equality";
    }
    return "holds";
}

Grid default_certification_grid(int n) { return Grid::interior(0.0, 1.0, n); }

PropertyReport check_pqd(const Copula& c, const Grid& grid, double tol) {
    return pointwise_check("pqd", c, grid, pick_tol(c, tol),
                           [](const Copula& cc, double u, double v) {
                               return cc.cdf(u, v) - u * v;
                           });
}

PropertyReport check_wpqd(const Copula& c, const Grid& grid, double tol) {
    return pointwise_check("wpqd", c, grid, pick_tol(c, tol),
                           [](const Copula& cc, double u, double v) {
                               return cc.cdf(u, v) + cc.cdf(u, 1.0 - v) - u;
                           });
}

PropertyReport check_wnqd(const Copula& c, const Grid& grid, double tol) {
    return pointwise_check("wnqd", c, grid, pick_tol(c, tol),
                           [](const Copula& cc, double u, double v) {
                               return u - cc.cdf(u, v) - cc.cdf(u, 1.0 - v);
                           });
}

PropertyReport check_wpqd_given_v(const Copula& c, const Grid& grid, double tol) {
    return pointwise_check("wpqd_given_v", c, grid, pick_tol(c, tol),
                           [](const Copula& cc, double u, double v) {
                               return cc.cdf(u, v) + cc.cdf(1.0 - u, v) - v;
                           });
}

PropertyReport check_wnqd_given_v(const Copula& c, const Grid& grid, double tol) {
    return pointwise_check("wnqd_given_v", c, grid, pick_tol(c, tol),
                           [](const Copula& cc, double u, double v) {
                               return v - cc.cdf(u, v) - cc.cdf(1.0 - u, v);
                           });
}

namespace {

PropertyReport derivative_gap_check(std::string name, const Copula& c, const Grid& grid,
                                    double tol, double h, double sign) {
    grid.validate();
    const std::vector<double> vb = merged_v_breaks(c);
    auto near_break = [&](double v) {
        for (double b : vb)
            if (std::abs(v - b) <= 2.0 * h) return true;
        return false;
    };
    SlackScan scan;
    for (double u : grid.points) {
        for (double v : grid.points) {
            if (v >= 0.5) continue;
            if (near_break(v) || near_break(1.0 - v)) continue;
            const double gap = c.partial2(u, v) - c.partial2(u, 1.0 - v);
            scan.feed(sign * gap, {u, v});
        }
    }
    return finish(std::move(name), scan, grid.resolution, tol);
}

} // namespace

PropertyReport check_spqd(const Copula& c, const Grid& grid, double tol, double h) {
    return derivative_gap_check("spqd", c, grid, pick_tol(c, tol), h, 1.0);
}

PropertyReport check_snqd(const Copula& c, const Grid& grid, double tol, double h) {
    return derivative_gap_check("snqd", c, grid, pick_tol(c, tol), h, -1.0);
}

PropertyReport check_pqde(const JointModel& j, const Grid& x_grid, double tol,
                          const Tolerance& quad) {
    x_grid.validate();
    const double ez = mean(j.marginal_z(), quad);
    SlackScan scan;
    for (double x : x_grid.points) {
        if (j.marginal_x().survival(x) <= tol) continue;
        scan.feed(cond_mean_z_given_x_gt(j, x, quad) - ez, {x});
    }
    return finish("pqde", scan, x_grid.resolution, tol);
}

PropertyReport check_pqde(const JointModel& j, int x_resolution, double tol,
                          const Tolerance& quad) {
    // x values at interior quantiles of X so the grid covers the mass evenly
    Grid probs = Grid::interior(0.0, 1.0, x_resolution);
    Grid xg;
    xg.resolution = x_resolution;
    for (double p : probs.points) xg.points.push_back(j.marginal_x().quantile(p));
    std::sort(xg.points.begin(), xg.points.end());
    xg.points.erase(std::unique(xg.points.begin(), xg.points.end()), xg.points.end());
    xg.interval_lo = xg.points.front();
    xg.interval_hi = xg.points.back();
    return check_pqde(j, xg, tol, quad);
}

PropertyReport check_si_st(const Copula& c, const Grid& grid, double tol) {
    grid.validate();
    const double t = pick_tol(c, tol);
    SlackScan scan;
    const auto& p = grid.points;
    for (double u : p) {
        for (std::size_t k = 1; k + 1 < p.size(); ++k) {
            // concave in v <=> second difference <= 0; slack is its negation
            const double d2 = c.cdf(u, p[k + 1]) - 2.0 * c.cdf(u, p[k]) + c.cdf(u, p[k - 1]);
            scan.feed(-d2, {u, p[k]});
        }
    }
    return finish("si_st", scan, grid.resolution, t);
}

PropertyReport check_psld(const JointModel& j, const Grid& x_grid, const Grid& t_grid,
                          double tol, const Tolerance& quad) {
    x_grid.validate();
    t_grid.validate();
    SlackScan scan;
    for (double x : x_grid.points) {
        if (j.marginal_x().survival(x) <= tol) continue;
        const Marginal cond = conditional_z_given_x_gt(j, x);
        for (double t : t_grid.points)
            scan.feed(stop_loss(cond, t, quad) - stop_loss(j.marginal_z(), t, quad), {x, t});
    }
    return finish("psld", scan, x_grid.resolution, tol);
}

PropertyReport check_psld(const JointModel& j, int x_resolution, int t_resolution,
                          double tol, const Tolerance& quad) {
    Grid probs = Grid::interior(0.0, 1.0, x_resolution);
    Grid xg;
    xg.resolution = x_resolution;
    for (double p : probs.points) xg.points.push_back(j.marginal_x().quantile(p));
    std::sort(xg.points.begin(), xg.points.end());
    xg.points.erase(std::unique(xg.points.begin(), xg.points.end()), xg.points.end());
    xg.interval_lo = xg.points.front();
    xg.interval_hi = xg.points.back();
    const double lo = j.marginal_z().lo_eff();
    const double hi = j.marginal_z().hi_eff();
    Grid tg = Grid::uniform(lo, hi, t_resolution);
    return check_psld(j, xg, tg, tol, quad);
}

PropertyReport archimedean_pqd(const ArchimedeanGenerator& gen, const Grid& grid,
                               double tol) {
    grid.validate();
    SlackScan scan;
    for (double u : grid.points)
        for (double v : grid.points)
            scan.feed(gen.psi(u * v) - gen.psi(u) - gen.psi(v), {u, v});
    return finish("archimedean_pqd", scan, grid.resolution, tol);
}

double spearman_rho(const Copula& c, const Tolerance& tol) {
    const double integral = integrate2d([&](double u, double v) { return c.cdf(u, v); },
                                        tol, c.breakpoints_u(), c.breakpoints_v());
    return 12.0 * integral - 3.0;
}

double gini_gamma(const Copula& c, const Tolerance& tol) {
    std::vector<double> brk = c.breakpoints_u();
    for (double b : merged_v_breaks(c)) brk.push_back(b);
    const double integral = integrate(
        [&](double u) { return c.cdf(u, u) + c.cdf(u, 1.0 - u) - u; }, 0.0, 1.0, tol, brk);
    return 4.0 * integral;
}

double gini_delta(const Copula& c, const Tolerance& tol) {
    const double integral = integrate2d(
        [&](double u, double v) { return c.cdf(u, v) + c.cdf(u, 1.0 - v) - u; }, tol,
        c.breakpoints_u(), merged_v_breaks(c));
    return 6.0 * integral;
}

double hoeffding_cov(const JointModel& j, const Tolerance& tol) {
    const Marginal& mx = j.marginal_x();
    const Marginal& mz = j.marginal_z();
    const Copula& c = j.copula();
    // degenerate coordinates carry no covariance
    if (mx.support().lo == mx.support().hi || mz.support().lo == mz.support().hi)
        return 0.0;
    if (mx.has_pdf() && mz.has_pdf()) {
        // copula coordinates: dx = du / f(q(u)), dz = dv / g(q(v))
        auto qprime = [](const Marginal& m, double p) {
            const double d = m.pdf(m.quantile(p));
            return d > 0.0 ? 1.0 / d : 0.0;
        };
        const double eps = 1e-9;
        auto integrand = [&](double u, double v) {
            const double uu = std::clamp(u, eps, 1.0 - eps);
            const double vv = std::clamp(v, eps, 1.0 - eps);
            const double core = c.cdf(uu, vv) - uu * vv;
            if (core == 0.0) return 0.0;
            return core * qprime(mx, uu) * qprime(mz, vv);
        };
        return integrate2d(integrand, tol, c.breakpoints_u(), c.breakpoints_v());
    }
    // direct x-z integration over effective supports
    const double xlo = mx.lo_eff(), xhi = mx.hi_eff();
    const double zlo = mz.lo_eff(), zhi = mz.hi_eff();
    auto inner = [&](double x) {
        const double fx = mx.cdf(x);
        return integrate(
            [&](double z) { return c.cdf(fx, mz.cdf(z)) - fx * mz.cdf(z); }, zlo, zhi, tol,
            mz.density_breakpoints());
    };
    return integrate(inner, xlo, xhi, tol, mx.density_breakpoints());
}

} // namespace copord
