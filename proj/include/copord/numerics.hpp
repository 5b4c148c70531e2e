#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace copord {

/// Accuracy/effort budget shared by the quadrature and inversion kernels.
/// abs_tol is an absolute error target, rel_tol relaxes it for large results,
/// max_subdivisions bounds the bisection depth of one adaptive interval.
struct Tolerance {
    double abs_tol = 1e-8;
    double rel_tol = 0.0;
    int max_subdivisions = 48;

    static Tolerance quadrature(double abs = 1e-8) { return Tolerance{abs, 0.0, 48}; }
    static Tolerance property(double abs = 1e-6) { return Tolerance{abs, 0.0, 48}; }

    void validate() const;
};

/// Strictly increasing evaluation points inside a declared interval.
struct Grid {
    std::vector<double> points;
    int resolution = 0;
    double interval_lo = 0.0;
    double interval_hi = 1.0;

    // n points including both endpoints
    static Grid uniform(double lo, double hi, int n);
    // n points strictly inside (lo, hi): lo + i*(hi-lo)/(n+1), i = 1..n
    static Grid interior(double lo, double hi, int n);

    void validate() const;
};

/// Raised when an adaptive estimate cannot meet its tolerance; carries the
/// last estimate and the accumulated error bound.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double estimate, double error_bound)
        : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}
    double estimate() const { return estimate_; }
    double error_bound() const { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

using RealFn = std::function<double(double)>;
using RealFn2 = std::function<double(double, double)>;

/// Adaptive Simpson estimate of the integral of f over [a, b].
/// Either endpoint may be infinite; infinite tails are folded onto [0, 1)
/// through x = t/(1-t). Breakpoints inside (a, b) force subdivision there so
/// kinked integrands converge at full order.
double integrate(const RealFn& f, double a, double b,
                 const Tolerance& tol = Tolerance::quadrature(),
                 const std::vector<double>& breakpoints = {});

/// Nested adaptive estimate over the unit square.
double integrate2d(const RealFn2& f,
                   const Tolerance& tol = Tolerance::quadrature(),
                   const std::vector<double>& breaks_u = {},
                   const std::vector<double>& breaks_v = {});

/// Leftmost x in [lo, hi] with g(x) = target for nondecreasing g
/// (generalized inverse convention on flat segments).
double invert_monotone(const RealFn& g, double target, double lo, double hi,
                       const Tolerance& tol = Tolerance::quadrature());

/// Regularized incomplete beta function I_x(a, b).
double reg_incomplete_beta(double a, double b, double x);

/// log Beta(a, b)
double log_beta(double a, double b);

} // namespace copord
