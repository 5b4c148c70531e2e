#pragma once

#include "copord/marginal.hpp"
#include "copord/numerics.hpp"

#include <string>
#include <vector>

namespace copord {

enum class OrderKind { ST, ICX, ICV, CX };

std::string to_string(OrderKind k);

/// Grid-certified verdict of a stochastic-order comparison a <= b.
/// min_slack is the worst margin of the defining inequality over the grid;
/// mean_gap = E(b) - E(a) is populated (and binding) for the CX order.
struct OrderVerdict {
    OrderKind order = OrderKind::ST;
    bool holds = false;
    double min_slack = 0.0;
    double witness_t = 0.0;
    double mean_gap = 0.0;
    int grid_resolution = 0;
    double tolerance = 0.0;
    double mean_tolerance = 0.0;
};

/// Tabulated comparison curves (survival, stop-loss or integrated-CDF values
/// of both sides on the shared t grid), exportable as CSV.
struct OrderCurves {
    std::string curve_name;
    std::vector<double> t;
    std::vector<double> a;
    std::vector<double> b;
};

/// 401 points spanning the union of effective supports (infinite sides
/// truncated at the 1e-10 quantiles).
Grid default_order_grid(const Marginal& a, const Marginal& b, int n = 401);

/// First-order dominance: survival_a <= survival_b on the grid.
OrderVerdict st_leq(const Marginal& a, const Marginal& b, const Grid& t_grid,
                    double tol = 1e-6, OrderCurves* curves = nullptr);
/// Increasing convex (stop-loss) order: pi_a <= pi_b on the grid.
OrderVerdict icx_leq(const Marginal& a, const Marginal& b, const Grid& t_grid,
                     double tol = 1e-6, OrderCurves* curves = nullptr,
                     const Tolerance& quad = Tolerance::quadrature());
/// Increasing concave order: integrated CDF of a dominates that of b.
OrderVerdict icv_leq(const Marginal& a, const Marginal& b, const Grid& t_grid,
                     double tol = 1e-6, OrderCurves* curves = nullptr,
                     const Tolerance& quad = Tolerance::quadrature());
/// Convex order: ICX plus equal means (within mean_tol).
OrderVerdict cx_leq(const Marginal& a, const Marginal& b, const Grid& t_grid,
                    double tol = 1e-6, double mean_tol = 1e-7,
                    OrderCurves* curves = nullptr,
                    const Tolerance& quad = Tolerance::quadrature());

} // namespace copord
