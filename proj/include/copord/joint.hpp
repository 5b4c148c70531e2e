#pragma once

#include "copord/copula.hpp"
#include "copord/marginal.hpp"
#include "copord/numerics.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace copord {

/// A copula paired with the two marginals it couples. The survival copula is
/// built eagerly; the object is immutable afterwards.
class JointModel {
public:
    JointModel(Copula copula, Marginal marginal_x, Marginal marginal_z);

    const Copula& copula() const { return copula_; }
    const Copula& survival_cop() const { return survival_; }
    const Marginal& marginal_x() const { return x_; }
    const Marginal& marginal_z() const { return z_; }

    /// z locations where the C-convolution / conditional-expectation
    /// integrands kink (copula breakpoints pulled back through G).
    std::vector<double> z_breakpoints() const;

private:
    Copula copula_;
    Copula survival_;
    Marginal x_;
    Marginal z_;
};

/// E(Z | X > x) through the survival-copula tail integrals.
double cond_mean_z_given_x_gt(const JointModel& j, double x,
                              const Tolerance& tol = Tolerance::quadrature());
/// E(Z | X <= x) through the copula tail integrals.
double cond_mean_z_given_x_le(const JointModel& j, double x,
                              const Tolerance& tol = Tolerance::quadrature());
/// F(x) E(Z|X<=x) + survival(x) E(Z|X>x) - E(Z); zero up to quadrature noise.
double total_expectation_gap(const JointModel& j, double x,
                             const Tolerance& tol = Tolerance::quadrature());

/// Pr(X + Z > y) as the survival C-convolution integral
/// int g(z) dC^/dv(survival_x(y-z), survival_z(z)) dz; requires a density
/// for Z (a point mass bypasses the integral and shifts X directly).
double sum_survival(const JointModel& j, double y,
                    const Tolerance& tol = Tolerance::quadrature());

/// Default 401-point grid spanning the sum's support at 1e-10 quantile
/// truncation on infinite sides.
Grid default_sum_grid(const JointModel& j, int n = 401);

/// Tabulates sum_survival into a grid-defined marginal. Values are clipped to
/// [0,1] and repaired monotone by a pool-adjacent-violators pass; a repair
/// exceeding 10x the quadrature tolerance raises an inconsistency error. The
/// returned marginal carries the true mean of the sum, computed from the live
/// survival integral rather than the tabulated curve.
Marginal sum_distribution(const JointModel& j, const Grid& y_grid,
                          const Tolerance& tol = Tolerance::quadrature());
Marginal sum_distribution(const JointModel& j, int n = 401,
                          const Tolerance& tol = Tolerance::quadrature());

/// Conditional law of Z given X > x as a marginal (closure-backed).
Marginal conditional_z_given_x_gt(const JointModel& j, double x);

/// Copula sample pushed through the marginal quantiles.
std::vector<std::pair<double, double>> sample_joint(const JointModel& j, std::size_t n,
                                                    std::uint64_t seed);

} // namespace copord
