#pragma once

#include "copord/dependence.hpp"
#include "copord/joint.hpp"
#include "copord/marginal.hpp"
#include "copord/orders.hpp"

#include <optional>
#include <string>
#include <vector>

namespace copord {

/// One evaluated premise of a sufficient-condition result.
struct PremiseReport {
    std::string name;
    std::string kind; // "property" | "skew" | "scalar"
    std::optional<PropertyReport> property;
    std::optional<SkewVerdict> skew;
    std::optional<double> value;
    std::string requirement;
    bool holds = false;
};

struct ScalarConclusion {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool holds = false;
};

/// Premises checked numerically, then the concluded comparison verified on
/// (X, X+Z). consistent == premises did not hold, or the conclusion held.
struct TheoremReport {
    std::string prop_id;
    std::vector<PremiseReport> premises;
    bool premises_hold = false;
    std::optional<OrderVerdict> conclusion_order;
    std::optional<ScalarConclusion> conclusion_scalar;
    bool conclusion_evaluated = false;
    bool conclusion_holds = false;
    /// Where the sufficient condition is stated on the survival copula but an
    /// equivalent copula form exists (or vice versa): do the two grid verdicts
    /// agree? Disagreement is flagged, never resolved silently.
    std::optional<bool> dual_form_agrees;
    bool consistent = true;
};

struct VerifyConfig {
    int grid_n = 201;
    double slack_tol = -1.0; // < 0: pick per copula
    double order_tol = 1e-6;
    double mean_tol = 1e-7;
    double measure_tol = 1e-4;
    int sum_grid_n = 401;
    int order_grid_n = 401;
    int x_grid_n = 101;
    double deriv_h = 1e-5;
    Tolerance quad = Tolerance::quadrature();
    /// Evaluate the conclusion even when premises fail (diagnostic mode).
    bool diagnostics = false;
};

std::vector<std::string> known_prop_ids();

/// prop_id is one of: icx_pqde, icv_pqde, cx_sym_wpqd, icx_rightskew_wpqd,
/// icv_leftskew_wpqd, cx_sym_spqd, cov_sign, gamma_rho_cov_zero.
TheoremReport verify(const std::string& prop_id, const JointModel& j,
                     const VerifyConfig& config = {});

/// The two equivalent characterizations of C(u,v) + C(u,1-v) = u for an
/// absolutely continuous copula: the value identity and the derivative
/// identity. Both are certified on the grid and compared.
struct EqualityPairReport {
    PropertyReport value_form;
    PropertyReport derivative_form;
    bool agree = false;
};
EqualityPairReport check_propnew1(const Copula& c,
                                  const Grid& grid = default_certification_grid(),
                                  double tol = -1.0, double h = 1e-5);

/// Three equivalent forms of the derivative-gap condition: the derivative
/// inequality itself, left skew of the conditional density of V - 1/2 given
/// U <= u, and right skew of the conditional density given U > u.
struct SkewTripleReport {
    PropertyReport derivative_form;
    PropertyReport cond_le_left_skew;
    PropertyReport cond_gt_right_skew;
    bool agree = false;
};
SkewTripleReport check_prop_jm(const Copula& c,
                               const Grid& u_grid = default_certification_grid(41),
                               const Grid& v_grid = default_certification_grid(),
                               double tol = -1.0);

/// The documented counterexample chain: a model can satisfy the weak quadrant
/// inequality while failing the conditional-expectation property and carrying
/// negative covariance.
struct DependenceChainDiagnostic {
    PropertyReport wpqd;
    PropertyReport pqde;
    double covariance = 0.0;
};
DependenceChainDiagnostic diagnose_dependence_chain(const JointModel& j,
                                                    const VerifyConfig& config = {});

} // namespace copord
