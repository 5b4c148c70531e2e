#include "copord/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace copord {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Accumulates accepted error estimates and flags intervals that ran out of
// subdivision depth before meeting their local tolerance.
struct AdaptAccum {
    double accepted_err = 0.0;
    double exhausted_err = 0.0;
    bool exhausted = false;
};

double safe_eval(const RealFn& f, double x, double lo, double hi) {
    double y = f(x);
    if (std::isfinite(y)) return y;
    // integrable endpoint singularities: nudge into the interval interior
    double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
    double x2 = (x - lo < hi - x) ? x + 1e-13 * scale : x - 1e-13 * scale;
    y = f(x2);
    return std::isfinite(y) ? y : 0.0;
}

double adaptive_simpson(const RealFn& f, double a, double m, double b,
                        double fa, double fm, double fb, double whole,
                        double eps, int depth, int start_depth, AdaptAccum& acc) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = safe_eval(f, lm, a, b);
    const double frm = safe_eval(f, rm, a, b);
    const double h12 = (b - a) / 12.0;
    const double left = h12 * (fa + 4.0 * flm + fm);
    const double right = h12 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    // require a couple of forced levels so symmetric integrands cannot pass
    // the acceptance test on the first split
    const bool may_accept = depth <= start_depth - 2;
    if (depth <= 0) {
        acc.exhausted = true;
        acc.exhausted_err += std::abs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    if (may_accept && std::abs(delta) <= 15.0 * eps) {
        acc.accepted_err += std::abs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    return adaptive_simpson(f, a, lm, m, fa, flm, fm, left, eps / 2.0, depth - 1,
                            start_depth, acc) +
           adaptive_simpson(f, m, rm, b, fm, frm, fb, right, eps / 2.0, depth - 1,
                            start_depth, acc);
}

double integrate_plain(const RealFn& f, double a, double b, double eps,
                       int max_depth, AdaptAccum& acc) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = safe_eval(f, a, a, b);
    const double fm = safe_eval(f, m, a, b);
    const double fb = safe_eval(f, b, a, b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, m, b, fa, fm, fb, whole, eps, max_depth,
                            max_depth, acc);
}

std::vector<double> interior_sorted(const std::vector<double>& pts, double a, double b) {
    std::vector<double> out;
    for (double p : pts)
        if (p > a && p < b && std::isfinite(p)) out.push_back(p);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(),
                          [](double x, double y) { return std::abs(x - y) < 1e-15; }),
              out.end());
    return out;
}

double integrate_finite(const RealFn& f, double a, double b, const Tolerance& tol,
                        const std::vector<double>& breakpoints) {
    const std::vector<double> cuts = interior_sorted(breakpoints, a, b);
    const double pieces = static_cast<double>(cuts.size()) + 1.0;
    const double eps = tol.abs_tol / pieces;
    AdaptAccum acc;
    double total = 0.0;
    double left = a;
    for (double c : cuts) {
        total += integrate_plain(f, left, c, eps, tol.max_subdivisions, acc);
        left = c;
    }
    total += integrate_plain(f, left, b, eps, tol.max_subdivisions, acc);
    const double budget = std::max(tol.abs_tol, tol.rel_tol * std::abs(total));
    if (acc.exhausted && acc.exhausted_err > budget) {
        throw QuadratureError("integrate: subdivision budget exhausted before convergence",
                              total, acc.accepted_err + acc.exhausted_err);
    }
    return total;
}

} // namespace

void Tolerance::validate() const {
    if (!(abs_tol > 0.0)) throw std::invalid_argument("Tolerance: abs_tol must be > 0");
    if (!(rel_tol >= 0.0)) throw std::invalid_argument("Tolerance: rel_tol must be >= 0");
    if (max_subdivisions < 1)
        throw std::invalid_argument("Tolerance: max_subdivisions must be >= 1");
}

Grid Grid::uniform(double lo, double hi, int n) {
    if (n < 2 || !(lo < hi)) throw std::invalid_argument("Grid::uniform: need n >= 2 and lo < hi");
    Grid g;
    g.resolution = n;
    g.interval_lo = lo;
    g.interval_hi = hi;
    g.points.reserve(n);
    for (int i = 0; i < n; ++i)
        g.points.push_back(lo + (hi - lo) * static_cast<double>(i) / (n - 1));
    g.points.back() = hi;
    return g;
}

Grid Grid::interior(double lo, double hi, int n) {
    if (n < 1 || !(lo < hi)) throw std::invalid_argument("Grid::interior: need n >= 1 and lo < hi");
    Grid g;
    g.resolution = n;
    g.interval_lo = lo;
    g.interval_hi = hi;
    g.points.reserve(n);
    for (int i = 1; i <= n; ++i)
        g.points.push_back(lo + (hi - lo) * static_cast<double>(i) / (n + 1));
    return g;
}

void Grid::validate() const {
    if (points.empty()) throw std::invalid_argument("Grid: no points");
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
        if (!(points[i] < points[i + 1]))
            throw std::invalid_argument("Grid: points must be strictly increasing");
    if (points.front() < interval_lo || points.back() > interval_hi)
        throw std::invalid_argument("Grid: points outside declared interval");
}

double integrate(const RealFn& f, double a, double b, const Tolerance& tol,
                 const std::vector<double>& breakpoints) {
    tol.validate();
    if (!(a < b)) {
        if (a == b) return 0.0;
        throw std::invalid_argument("integrate: need a < b");
    }
    const bool lo_inf = std::isinf(a);
    const bool hi_inf = std::isinf(b);
    if (lo_inf && hi_inf) {
        Tolerance half = tol;
        half.abs_tol = tol.abs_tol / 2.0;
        return integrate(f, a, 0.0, half, breakpoints) +
               integrate(f, 0.0, b, half, breakpoints);
    }
    if (hi_inf) {
        // x = a + t/(1-t), dx = dt/(1-t)^2
        auto g = [&](double t) {
            const double om = 1.0 - t;
            return f(a + t / om) / (om * om);
        };
        std::vector<double> mapped;
        for (double p : breakpoints)
            if (p > a && std::isfinite(p)) mapped.push_back((p - a) / (1.0 + p - a));
        return integrate_finite(g, 0.0, 1.0 - 1e-14, tol, mapped);
    }
    if (lo_inf) {
        // x = b - t/(1-t)
        auto g = [&](double t) {
            const double om = 1.0 - t;
            return f(b - t / om) / (om * om);
        };
        std::vector<double> mapped;
        for (double p : breakpoints)
            if (p < b && std::isfinite(p)) mapped.push_back((b - p) / (1.0 + b - p));
        return integrate_finite(g, 0.0, 1.0 - 1e-14, tol, mapped);
    }
    return integrate_finite(f, a, b, tol, breakpoints);
}

double integrate2d(const RealFn2& f, const Tolerance& tol,
                   const std::vector<double>& breaks_u,
                   const std::vector<double>& breaks_v) {
    tol.validate();
    Tolerance inner = tol;
    inner.abs_tol = tol.abs_tol / 4.0;
    Tolerance outer = tol;
    outer.abs_tol = tol.abs_tol / 2.0;
    auto inner_fn = [&](double u) {
        return integrate([&](double v) { return f(u, v); }, 0.0, 1.0, inner, breaks_v);
    };
    return integrate(inner_fn, 0.0, 1.0, outer, breaks_u);
}

double invert_monotone(const RealFn& g, double target, double lo, double hi,
                       const Tolerance& tol) {
    tol.validate();
    if (!(lo <= hi)) throw std::invalid_argument("invert_monotone: need lo <= hi");
    const double glo = g(lo);
    const double ghi = g(hi);
    if (target < glo - tol.abs_tol || target > ghi + tol.abs_tol) {
        throw std::domain_error("invert_monotone: target " + std::to_string(target) +
                                " outside [g(" + std::to_string(lo) + ")=" +
                                std::to_string(glo) + ", g(" + std::to_string(hi) +
                                ")=" + std::to_string(ghi) + "]");
    }
    if (glo >= target) return lo;
    if (ghi < target) return hi;
    double l = lo, h = hi;
    const double xtol = 1e-14 * std::max({1.0, std::abs(lo), std::abs(hi)});
    for (int it = 0; it < 200 && h - l > xtol; ++it) {
        const double m = 0.5 * (l + h);
        if (g(m) >= target)
            h = m;
        else
            l = m;
    }
    return h;
}

double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double beta_cont_frac(double a, double b, double x) {
    constexpr int max_iter = 300;
    constexpr double eps = 1e-16;
    constexpr double fpmin = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps) return h;
    }
    throw QuadratureError("reg_incomplete_beta: continued fraction did not converge", h, 1.0);
}

} // namespace

double reg_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("reg_incomplete_beta: need a, b > 0");
    if (x <= 0.0) {
        if (x < -1e-12) throw std::invalid_argument("reg_incomplete_beta: x < 0");
        return 0.0;
    }
    if (x >= 1.0) {
        if (x > 1.0 + 1e-12) throw std::invalid_argument("reg_incomplete_beta: x > 1");
        return 1.0;
    }
    // symmetry switch keeps the continued fraction in its fast region
    if (x > a / (a + b)) return 1.0 - reg_incomplete_beta(b, a, 1.0 - x);
    const double front =
        std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
    return front * beta_cont_frac(a, b, x) / a;
}

} // namespace copord
