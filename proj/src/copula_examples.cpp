#include "copord/copula.hpp"

#include "copula_impl.hpp"

#include <cmath>

namespace copord {

using detail::clamp01;
using detail::CopulaImpl;

namespace {

// Conditional family behind make_example1: (V | U = u) is Beta(1+s, 1+s) with
// s = (1/2 - u)^2 on the lower half, and has density 2 - f_u on the upper
// half. The symmetric exponent makes F_u = F_{1-u}.
double beta_exponent(double x) {
    const double d = 0.5 - x;
    return d * d;
}

double conditional_cdf(double x, double v) {
    if (v <= 0.0) return 0.0;
    if (v >= 1.0) return 1.0;
    const double s = beta_exponent(x);
    return reg_incomplete_beta(1.0 + s, 1.0 + s, v);
}

double conditional_pdf(double x, double v) {
    if (v <= 0.0 || v >= 1.0) return 0.0;
    const double s = beta_exponent(x);
    const double log_k = -log_beta(1.0 + s, 1.0 + s);
    return std::exp(log_k + s * (std::log(v) + std::log1p(-v)));
}

// C(u,v) = int_0^u F_x(v) dx for u <= 1/2 and
// C(u,v) = 2uv - v + int_0^{1-u} F_x(v) dx otherwise.
double example1_cdf_by_quadrature(double u, double v, const Tolerance& tol) {
    u = clamp01(u);
    v = clamp01(v);
    if (u <= 0.0 || v <= 0.0) return 0.0;
    if (v >= 1.0) return u;
    auto fx = [v](double x) { return conditional_cdf(x, v); };
    if (u <= 0.5) return integrate(fx, 0.0, u, tol);
    if (u >= 1.0) return v;
    return 2.0 * u * v - v + integrate(fx, 0.0, 1.0 - u, tol);
}

double example1_partial2_by_quadrature(double u, double v, const Tolerance& tol) {
    u = clamp01(u);
    if (v <= 0.0 || v >= 1.0 || u <= 0.0) return v >= 1.0 ? 1.0 : 0.0;
    auto fx = [v](double x) { return conditional_pdf(x, v); };
    if (u <= 0.5) return integrate(fx, 0.0, u, tol);
    if (u >= 1.0) return 1.0;
    return 2.0 * u - 1.0 + integrate(fx, 0.0, 1.0 - u, tol);
}

double example1_density(double u, double v) {
    if (u < 0.0 || u > 1.0 || v < 0.0 || v > 1.0) return 0.0;
    const double f = conditional_pdf(u, v);
    return u <= 0.5 ? f : 2.0 - f;
}

class Example1ExactCopula final : public CopulaImpl {
public:
    Example1ExactCopula() : CopulaImpl("example1_exact", {}) {}
    double cdf(double u, double v) const override {
        return example1_cdf_by_quadrature(u, v, Tolerance::quadrature(1e-9));
    }
    bool has_analytic_partial2() const override { return true; }
    double partial2(double u, double v) const override {
        return example1_partial2_by_quadrature(u, v, Tolerance::quadrature(1e-9));
    }
    bool has_analytic_partial1() const override { return true; }
    double partial1(double u, double v) const override {
        // d/du of the two branches collapses to the conditional CDF
        if (u <= 0.5) return conditional_cdf(u, v);
        return 2.0 * clamp01(v) - conditional_cdf(1.0 - u, v);
    }
    bool has_density() const override { return true; }
    double density(double u, double v) const override { return example1_density(u, v); }
    std::vector<double> breakpoints_u() const override { return {0.5}; }
    bool closed_form() const override { return false; }
};

class Example1CachedCopula final : public CopulaImpl {
public:
    explicit Example1CachedCopula(int n = 201) : CopulaImpl("example1", {}), n_(n) {
        build_cache();
    }
    double cdf(double u, double v) const override {
        u = clamp01(u);
        v = clamp01(v);
        const double h = 1.0 / (n_ - 1);
        const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(u / h),
                                                    n_ - 2);
        const std::size_t j = std::min<std::size_t>(static_cast<std::size_t>(v / h),
                                                    n_ - 2);
        const double tu = u / h - static_cast<double>(i);
        const double tv = v / h - static_cast<double>(j);
        return (1.0 - tu) * (1.0 - tv) * cache_[i][j] + tu * (1.0 - tv) * cache_[i + 1][j] +
               (1.0 - tu) * tv * cache_[i][j + 1] + tu * tv * cache_[i + 1][j + 1];
    }
    bool has_analytic_partial2() const override { return true; }
    double partial2(double u, double v) const override {
        return example1_partial2_by_quadrature(u, v, Tolerance::quadrature(1e-9));
    }
    bool has_analytic_partial1() const override { return true; }
    double partial1(double u, double v) const override {
        if (u <= 0.5) return conditional_cdf(u, v);
        return 2.0 * clamp01(v) - conditional_cdf(1.0 - u, v);
    }
    bool has_density() const override { return true; }
    double density(double u, double v) const override { return example1_density(u, v); }
    std::vector<double> breakpoints_u() const override { return {0.5}; }
    bool closed_form() const override { return false; }

private:
    void build_cache() {
        // Every node is computed independently by quadrature; in particular
        // no symmetry of the construction is assumed when filling the grid.
        cache_.assign(n_, std::vector<double>(n_, 0.0));
        const double h = 1.0 / (n_ - 1);
        const Tolerance cell_tol = Tolerance::quadrature(1e-12);
        const int half = (n_ - 1) / 2; // n_ odd: u = 1/2 is a node
        std::vector<double> prefix(half + 1, 0.0);
        for (int j = 0; j < n_; ++j) {
            const double v = j * h;
            if (j == 0) continue; // C(u, 0) = 0
            auto fx = [v](double x) { return conditional_cdf(x, v); };
            for (int i = 1; i <= half; ++i)
                prefix[i] = prefix[i - 1] +
                            (j == n_ - 1 ? h
                                         : integrate(fx, (i - 1) * h, i * h, cell_tol));
            for (int i = 0; i < n_; ++i) {
                const double u = i * h;
                if (i <= half) {
                    cache_[i][j] = prefix[i];
                } else {
                    cache_[i][j] = 2.0 * u * v - v + prefix[n_ - 1 - i];
                }
            }
        }
    }

    int n_;
    std::vector<std::vector<double>> cache_;
};

// Uniform density 2 on the union of axis-aligned rectangles
// (0,1/2) x (0,1/4+d), (0,1/2) x (3/4+d,1), (1/2,1) x (1/4+d,3/4+d).
class BandCopula final : public CopulaImpl {
public:
    BandCopula(std::string family, double delta)
        : CopulaImpl(std::move(family), {delta}), d_(delta) {
        if (!(delta >= 0.0 && delta <= 0.25))
            throw std::invalid_argument(family_ + ": delta must lie in [0, 1/4]");
    }
    double cdf(double u, double v) const override {
        u = clamp01(u);
        v = clamp01(v);
        const double lo = 0.25 + d_;
        const double hi = 0.75 + d_;
        const double left = std::min(u, 0.5);
        const double right = std::max(u - 0.5, 0.0);
        const double a1 = left * std::min(v, lo);
        const double a2 = left * std::max(v - hi, 0.0);
        const double a3 = right * std::clamp(v - lo, 0.0, 0.5);
        return 2.0 * (a1 + a2 + a3);
    }
    bool has_analytic_partial2() const override { return true; }
    double partial2(double u, double v) const override {
        u = clamp01(u);
        const double lo = 0.25 + d_;
        const double hi = 0.75 + d_;
        const double left = std::min(u, 0.5);
        const double right = std::max(u - 0.5, 0.0);
        if (v < lo || v > hi) return 2.0 * left;
        return 2.0 * right;
    }
    bool has_analytic_partial1() const override { return true; }
    double partial1(double u, double v) const override {
        v = clamp01(v);
        const double lo = 0.25 + d_;
        const double hi = 0.75 + d_;
        if (u < 0.5) return 2.0 * (std::min(v, lo) + std::max(v - hi, 0.0));
        return 2.0 * std::clamp(v - lo, 0.0, 0.5);
    }
    bool has_density() const override { return true; }
    double density(double u, double v) const override {
        const double lo = 0.25 + d_;
        const double hi = 0.75 + d_;
        const bool in_left = u > 0.0 && u < 0.5 && ((v > 0.0 && v < lo) || (v > hi && v < 1.0));
        const bool in_right = u > 0.5 && u < 1.0 && v > lo && v < hi;
        return (in_left || in_right) ? 2.0 : 0.0;
    }
    std::vector<double> breakpoints_u() const override { return {0.5}; }
    std::vector<double> breakpoints_v() const override { return {0.25 + d_, 0.75 + d_}; }

private:
    double d_;
};

} // namespace

Copula make_example1() { return Copula(std::make_shared<Example1CachedCopula>()); }
Copula make_example1_exact() { return Copula(std::make_shared<Example1ExactCopula>()); }
Copula make_example2() { return Copula(std::make_shared<BandCopula>("example2", 0.0)); }
Copula make_example3(double delta) {
    return Copula(std::make_shared<BandCopula>("example3", delta));
}

} // namespace copord
