#pragma once

#include "copord/numerics.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace copord {

/// Closed or half-infinite support interval.
struct SupportInterval {
    double lo;
    double hi;
};

namespace detail {
class MarginalImpl;
}

/// One-dimensional distribution exposed through CDF/survival/quantile (and a
/// PDF where one exists). Immutable after construction.
class Marginal {
public:
    explicit Marginal(std::shared_ptr<const detail::MarginalImpl> impl);

    double cdf(double x) const;
    double survival(double x) const;
    bool has_pdf() const;
    double pdf(double x) const;
    double quantile(double p) const; // p in (0, 1), generalized inverse
    SupportInterval support() const;
    const std::string& family() const;
    const std::vector<double>& params() const;

    /// Closed-form mean when the family knows one.
    std::optional<double> mean_hint() const;
    /// Kink/atom locations worth aligning quadrature with.
    std::vector<double> density_breakpoints() const;

    /// Support endpoint truncated to the eps / 1-eps quantile when infinite.
    double lo_eff(double eps = 1e-10) const;
    double hi_eff(double eps = 1e-10) const;

private:
    std::shared_ptr<const detail::MarginalImpl> impl_;
};

Marginal make_uniform(double a, double b);
Marginal make_exponential(double rate);
Marginal make_normal(double mu, double sigma);
Marginal make_beta(double alpha, double beta);
// mode may coincide with an endpoint
Marginal make_triangular(double a, double b, double mode);
Marginal make_point_mass(double c);
// scale * X + shift of a base marginal (scale != 0)
Marginal make_affine(const Marginal& base, double scale, double shift);
// piecewise-linear CDF through (x_i, cdf_i); x strictly increasing,
// cdf nondecreasing in [0, 1]
Marginal make_grid_marginal(std::vector<double> x, std::vector<double> cdf,
                            std::optional<double> mean_hint = std::nullopt);

struct FunctionMarginalSpec {
    RealFn cdf;
    RealFn survival;                 // optional; 1 - cdf if empty
    RealFn pdf;                      // optional
    SupportInterval support{0.0, 1.0};
    std::string name = "custom";
    std::optional<double> mean_hint;
    std::vector<double> breakpoints;
};
Marginal make_from_functions(FunctionMarginalSpec spec);

enum class SkewDirection { symmetric, right, left, none };

/// Outcome of the tail-weight comparison of a centered distribution.
struct SkewVerdict {
    SkewDirection direction = SkewDirection::none;
    double center = 0.0;
    double max_violation = 0.0;
    double witness = 0.0;
};

std::string to_string(SkewDirection d);

/// E[X] through the tail decomposition: integral of the survival over the
/// positive axis minus integral of the CDF over the negative axis. Uses the
/// family's closed form when one is declared.
double mean(const Marginal& m, const Tolerance& tol = Tolerance::quadrature());

/// Always evaluates the two tail integrals, ignoring any closed form.
double mean_via_tails(const Marginal& m, const Tolerance& tol = Tolerance::quadrature());

/// Expected excess over t: integral of the survival from t upward.
double stop_loss(const Marginal& m, double t, const Tolerance& tol = Tolerance::quadrature());

/// Integral of the CDF up to t.
double integrated_cdf(const Marginal& m, double t, const Tolerance& tol = Tolerance::quadrature());

/// Compares the left and right tail weights of m - center on the grid of
/// nonnegative offsets, skipping discontinuity points of the CDF.
SkewVerdict classify_skew(const Marginal& m, double center, const Grid& grid,
                          double tol = 1e-6);

Grid default_skew_grid(const Marginal& m, double center, int n = 201);

} // namespace copord
