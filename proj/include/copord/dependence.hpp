#pragma once

#include "copord/copula.hpp"
#include "copord/joint_fwd.hpp"
#include "copord/numerics.hpp"

#include <string>
#include <vector>

namespace copord {

enum class PropertyVerdict { holds, fails, holds_with_equality };

std::string to_string(PropertyVerdict v);

/// Grid certification of one dependence inequality: the minimum (and maximum)
/// over the grid of left-minus-right of the defining inequality, with the
/// witness point attaining the minimum. A grid result, not a proof over the
/// continuum; the resolution is carried so callers can refine.
struct PropertyReport {
    std::string property;
    PropertyVerdict verdict = PropertyVerdict::holds;
    double min_slack = 0.0;
    double max_slack = 0.0;
    std::vector<double> witness; // (u, v) for copula checks, (x) for model checks
    int grid_resolution = 0;
    double tolerance = 0.0;
};

Grid default_certification_grid(int n = 201); // uniform on (0,1), endpoints excluded

/// C(u,v) >= uv on the grid.
PropertyReport check_pqd(const Copula& c, const Grid& grid = default_certification_grid(),
                         double tol = -1.0);
/// C(u,v) + C(u,1-v) >= u (the conditioning-on-the-first-coordinate form).
PropertyReport check_wpqd(const Copula& c, const Grid& grid = default_certification_grid(),
                          double tol = -1.0);
PropertyReport check_wnqd(const Copula& c, const Grid& grid = default_certification_grid(),
                          double tol = -1.0);
/// Swapped conditioning: C(u,v) + C(1-u,v) >= v.
PropertyReport check_wpqd_given_v(const Copula& c,
                                  const Grid& grid = default_certification_grid(),
                                  double tol = -1.0);
PropertyReport check_wnqd_given_v(const Copula& c,
                                  const Grid& grid = default_certification_grid(),
                                  double tol = -1.0);
/// dC/dv(u,v) >= dC/dv(u,1-v) for v < 1/2; skips v within 2h of a declared
/// breakpoint (the derivative does not exist at kinks).
PropertyReport check_spqd(const Copula& c, const Grid& grid = default_certification_grid(),
                          double tol = -1.0, double h = 1e-5);
PropertyReport check_snqd(const Copula& c, const Grid& grid = default_certification_grid(),
                          double tol = -1.0, double h = 1e-5);
/// E(Z | X > x) >= E(Z) over the x grid (restricted to survival(x) > tol).
PropertyReport check_pqde(const JointModel& j, const Grid& x_grid, double tol = 1e-6,
                          const Tolerance& quad = Tolerance::quadrature());
PropertyReport check_pqde(const JointModel& j, int x_resolution = 101, double tol = 1e-6,
                          const Tolerance& quad = Tolerance::quadrature());
/// Concavity of C(u, .) certified through second differences on the grid.
PropertyReport check_si_st(const Copula& c, const Grid& grid = default_certification_grid(),
                           double tol = -1.0);
/// Stop-loss of (Z | X > x) dominates the stop-loss of Z on both grids.
PropertyReport check_psld(const JointModel& j, const Grid& x_grid, const Grid& t_grid,
                          double tol = 1e-6,
                          const Tolerance& quad = Tolerance::quadrature());
PropertyReport check_psld(const JointModel& j, int x_resolution = 21, int t_resolution = 41,
                          double tol = 1e-6,
                          const Tolerance& quad = Tolerance::quadrature());
/// Subadditivity criterion psi(u) + psi(v) <= psi(uv) on the grid.
PropertyReport archimedean_pqd(const ArchimedeanGenerator& gen,
                               const Grid& grid = default_certification_grid(),
                               double tol = 1e-9);

/// rho = 12 * double integral of C - 3.
double spearman_rho(const Copula& c, const Tolerance& tol = Tolerance::quadrature());
/// gamma = 4 * integral of [C(u,u) + C(u,1-u) - u] du.
double gini_gamma(const Copula& c, const Tolerance& tol = Tolerance::quadrature());
/// delta = 6 * double integral of [C(u,v) + C(u,1-v) - u]; equals rho.
double gini_delta(const Copula& c, const Tolerance& tol = Tolerance::quadrature());
/// Cov(X,Z) through the copula representation of the covariance.
double hoeffding_cov(const JointModel& j, const Tolerance& tol = Tolerance::quadrature());

} // namespace copord
