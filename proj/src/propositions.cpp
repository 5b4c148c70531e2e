#include "copord/propositions.hpp"

#include <algorithm>
#include <cmath>

namespace copord {

namespace {

PremiseReport property_premise(std::string name, PropertyReport r,
                               bool require_equality = false) {
    PremiseReport p;
    p.name = std::move(name);
    p.kind = "property";
    p.requirement = require_equality ? "holds-with-equality" : "holds";
    p.holds = require_equality ? r.verdict == PropertyVerdict::holds_with_equality
                               : r.verdict != PropertyVerdict::fails;
    p.property = std::move(r);
    return p;
}

PremiseReport skew_premise(std::string name, SkewVerdict v,
                           std::vector<SkewDirection> accepted) {
    PremiseReport p;
    p.name = std::move(name);
    p.kind = "skew";
    p.requirement.clear();
    for (auto d : accepted) {
        if (!p.requirement.empty()) p.requirement += "|";
        p.requirement += to_string(d);
    }
    p.holds = std::find(accepted.begin(), accepted.end(), v.direction) != accepted.end();
    p.skew = v;
    return p;
}

PremiseReport scalar_premise(std::string name, double value, std::string requirement,
                             bool holds) {
    PremiseReport p;
    p.name = std::move(name);
    p.kind = "scalar";
    p.value = value;
    p.requirement = std::move(requirement);
    p.holds = holds;
    return p;
}

bool all_hold(const std::vector<PremiseReport>& premises) {
    return std::all_of(premises.begin(), premises.end(),
                       [](const PremiseReport& p) { return p.holds; });
}

double slack_tol_for(const Copula& c, const VerifyConfig& cfg) {
    return cfg.slack_tol > 0.0 ? cfg.slack_tol : c.recommended_slack_tol();
}

OrderVerdict conclude_order(OrderKind kind, bool sum_on_left, const JointModel& j,
                            const VerifyConfig& cfg) {
    const Marginal sum = sum_distribution(j, cfg.sum_grid_n, cfg.quad);
    const Marginal& x = j.marginal_x();
    const Grid t_grid = default_order_grid(x, sum, cfg.order_grid_n);
    const Marginal& a = sum_on_left ? sum : x;
    const Marginal& b = sum_on_left ? x : sum;
    switch (kind) {
        case OrderKind::ST: return st_leq(a, b, t_grid, cfg.order_tol);
        case OrderKind::ICX: return icx_leq(a, b, t_grid, cfg.order_tol, nullptr, cfg.quad);
        case OrderKind::ICV: return icv_leq(a, b, t_grid, cfg.order_tol, nullptr, cfg.quad);
        case OrderKind::CX:
            return cx_leq(a, b, t_grid, cfg.order_tol, cfg.mean_tol, nullptr, cfg.quad);
    }
    throw std::logic_error("conclude_order: unreachable");
}

// wPQD premise evaluated on the form the statement names, with the
// equivalent dual form cross-checked and the agreement recorded.
void add_wpqd_premises(TheoremReport& rep, const JointModel& j, const VerifyConfig& cfg,
                       bool survival_form, bool require_equality = false) {
    const Grid grid = default_certification_grid(cfg.grid_n);
    const double tol = slack_tol_for(j.copula(), cfg);
    PropertyReport on_survival = check_wpqd(j.survival_cop(), grid, tol);
    on_survival.property = "wpqd_survival_form";
    PropertyReport on_copula = check_wpqd(j.copula(), grid, tol);
    on_copula.property = "wpqd_copula_form";
    rep.dual_form_agrees = on_survival.verdict == on_copula.verdict;
    if (survival_form) {
        rep.premises.push_back(
            property_premise("wpqd_survival_form", std::move(on_survival), require_equality));
        rep.premises.push_back(property_premise("wpqd_copula_form(cross-check)",
                                                std::move(on_copula), require_equality));
        rep.premises.back().requirement += " (informational)";
        rep.premises.back().holds = true; // cross-check never gates the premises
    } else {
        rep.premises.push_back(
            property_premise("wpqd_copula_form", std::move(on_copula), require_equality));
        rep.premises.push_back(property_premise("wpqd_survival_form(cross-check)",
                                                std::move(on_survival), require_equality));
        rep.premises.back().requirement += " (informational)";
        rep.premises.back().holds = true;
    }
}

void add_mean_sign_premise(TheoremReport& rep, const JointModel& j, const VerifyConfig& cfg,
                           bool nonnegative) {
    const double ez = mean(j.marginal_z(), cfg.quad);
    const double tol = 1e-9;
    if (nonnegative)
        rep.premises.push_back(scalar_premise("mean_z", ez, ">= 0", ez >= -tol));
    else
        rep.premises.push_back(scalar_premise("mean_z", ez, "<= 0", ez <= tol));
}

void add_pqde_premise(TheoremReport& rep, const JointModel& j, const VerifyConfig& cfg) {
    rep.premises.push_back(
        property_premise("pqde", check_pqde(j, cfg.x_grid_n, 1e-6, cfg.quad)));
}

void add_symmetry_premise(TheoremReport& rep, const JointModel& j, double center,
                          const std::string& name) {
    const SkewVerdict v = classify_skew(j.marginal_z(), center,
                                        default_skew_grid(j.marginal_z(), center), 1e-6);
    rep.premises.push_back(skew_premise(name, v, {SkewDirection::symmetric}));
}

void finish(TheoremReport& rep, const JointModel& j, const VerifyConfig& cfg,
            std::optional<OrderKind> order_kind, bool sum_on_left) {
    rep.premises_hold = all_hold(rep.premises);
    if (order_kind && (rep.premises_hold || cfg.diagnostics)) {
        rep.conclusion_order = conclude_order(*order_kind, sum_on_left, j, cfg);
        rep.conclusion_evaluated = true;
        rep.conclusion_holds = rep.conclusion_order->holds;
    }
    rep.consistent = !rep.premises_hold || !rep.conclusion_evaluated || rep.conclusion_holds;
}

} // namespace

std::vector<std::string> known_prop_ids() {
    return {"icx_pqde",          "icv_pqde",    "cx_sym_wpqd",
            "icx_rightskew_wpqd", "icv_leftskew_wpqd", "cx_sym_spqd",
            "cov_sign",          "gamma_rho_cov_zero"};
}

TheoremReport verify(const std::string& prop_id, const JointModel& j,
                     const VerifyConfig& cfg) {
    TheoremReport rep;
    rep.prop_id = prop_id;
    const Grid grid = default_certification_grid(cfg.grid_n);
    const double tol = slack_tol_for(j.copula(), cfg);

    if (prop_id == "icx_pqde") {
        add_mean_sign_premise(rep, j, cfg, true);
        add_pqde_premise(rep, j, cfg);
        finish(rep, j, cfg, OrderKind::ICX, false);
        return rep;
    }
    if (prop_id == "icv_pqde") {
        add_mean_sign_premise(rep, j, cfg, false);
        add_pqde_premise(rep, j, cfg);
        finish(rep, j, cfg, OrderKind::ICV, true); // X >=_ICV X+Z
        return rep;
    }
    if (prop_id == "cx_sym_wpqd") {
        add_symmetry_premise(rep, j, 0.0, "z_symmetric_around_zero");
        add_wpqd_premises(rep, j, cfg, /*survival_form=*/true);
        finish(rep, j, cfg, OrderKind::CX, false);
        return rep;
    }
    if (prop_id == "icx_rightskew_wpqd") {
        const SkewVerdict v = classify_skew(j.marginal_z(), 0.0,
                                            default_skew_grid(j.marginal_z(), 0.0), 1e-6);
        rep.premises.push_back(skew_premise("z_right_skewed", v,
                                            {SkewDirection::right, SkewDirection::symmetric}));
        add_wpqd_premises(rep, j, cfg, /*survival_form=*/true);
        finish(rep, j, cfg, OrderKind::ICX, false);
        return rep;
    }
    if (prop_id == "icv_leftskew_wpqd") {
        const SkewVerdict v = classify_skew(j.marginal_z(), 0.0,
                                            default_skew_grid(j.marginal_z(), 0.0), 1e-6);
        rep.premises.push_back(skew_premise("z_left_skewed", v,
                                            {SkewDirection::left, SkewDirection::symmetric}));
        add_wpqd_premises(rep, j, cfg, /*survival_form=*/false);
        finish(rep, j, cfg, OrderKind::ICV, true);
        return rep;
    }
    if (prop_id == "cx_sym_spqd") {
        add_symmetry_premise(rep, j, 0.0, "z_symmetric_around_zero");
        rep.premises.push_back(scalar_premise(
            "model_absolutely_continuous",
            (j.copula().has_density() && j.marginal_z().has_pdf()) ? 1.0 : 0.0, "== 1",
            j.copula().has_density() && j.marginal_z().has_pdf()));
        rep.premises.push_back(property_premise(
            "spqd_survival_form",
            check_spqd(j.survival_cop(), grid, tol, cfg.deriv_h)));
        finish(rep, j, cfg, OrderKind::CX, false);
        return rep;
    }
    if (prop_id == "cov_sign") {
        const double ez = mean(j.marginal_z(), cfg.quad);
        add_symmetry_premise(rep, j, ez, "z_symmetric_around_mean");
        add_wpqd_premises(rep, j, cfg, /*survival_form=*/false);
        rep.premises_hold = all_hold(rep.premises);
        if (rep.premises_hold || cfg.diagnostics) {
            const double cov = hoeffding_cov(j, cfg.quad);
            ScalarConclusion sc;
            sc.name = "covariance_nonnegative";
            sc.value = cov;
            sc.tolerance = cfg.measure_tol;
            sc.holds = cov >= -cfg.measure_tol;
            rep.conclusion_scalar = sc;
            rep.conclusion_evaluated = true;
            rep.conclusion_holds = sc.holds;
        }
        rep.consistent =
            !rep.premises_hold || !rep.conclusion_evaluated || rep.conclusion_holds;
        return rep;
    }
    if (prop_id == "gamma_rho_cov_zero") {
        const double ez = mean(j.marginal_z(), cfg.quad);
        add_symmetry_premise(rep, j, ez, "z_symmetric_around_mean");
        add_wpqd_premises(rep, j, cfg, /*survival_form=*/false, /*require_equality=*/true);
        rep.premises_hold = all_hold(rep.premises);
        if (rep.premises_hold || cfg.diagnostics) {
            const double rho = spearman_rho(j.copula(), cfg.quad);
            const double gamma = gini_gamma(j.copula(), cfg.quad);
            const double cov = hoeffding_cov(j, cfg.quad);
            ScalarConclusion sc;
            sc.name = "max_abs(gamma,rho,cov)";
            sc.value = std::max({std::abs(gamma), std::abs(rho), std::abs(cov)});
            sc.tolerance = cfg.measure_tol;
            sc.holds = sc.value <= cfg.measure_tol;
            rep.conclusion_scalar = sc;
            rep.conclusion_evaluated = true;
            rep.conclusion_holds = sc.holds;
        }
        rep.consistent =
            !rep.premises_hold || !rep.conclusion_evaluated || rep.conclusion_holds;
        return rep;
    }
    throw std::invalid_argument("verify: unknown prop_id '" + prop_id + "'");
}

EqualityPairReport check_propnew1(const Copula& c, const Grid& grid, double tol, double h) {
    EqualityPairReport rep;
    const double t = tol > 0.0 ? tol : c.recommended_slack_tol();
    PropertyReport value = check_wpqd(c, grid, t);
    value.property = "value_identity";
    // equality of the value form means wPQD holds with equality
    rep.value_form = std::move(value);

    // derivative identity: |dC/dv(u,v) - dC/dv(u,1-v)| == 0 for v < 1/2
    const PropertyReport pos = check_spqd(c, grid, t, h);
    const PropertyReport neg = check_snqd(c, grid, t, h);
    PropertyReport deriv;
    deriv.property = "derivative_identity";
    deriv.grid_resolution = grid.resolution;
    deriv.tolerance = t;
    // the gap is zero everywhere iff both one-sided checks hold
    const double worst = std::min(pos.min_slack, neg.min_slack);
    deriv.min_slack = worst;
    deriv.max_slack = -worst;
    deriv.witness = pos.min_slack <= neg.min_slack ? pos.witness : neg.witness;
    deriv.verdict = worst >= -t ? PropertyVerdict::holds_with_equality
                                : PropertyVerdict::fails;
    rep.derivative_form = std::move(deriv);

    const bool value_eq = rep.value_form.verdict == PropertyVerdict::holds_with_equality;
    const bool deriv_eq =
        rep.derivative_form.verdict == PropertyVerdict::holds_with_equality;
    rep.agree = value_eq == deriv_eq;
    return rep;
}

SkewTripleReport check_prop_jm(const Copula& c, const Grid& u_grid, const Grid& v_grid,
                               double tol) {
    u_grid.validate();
    v_grid.validate();
    const double t = tol > 0.0 ? tol : c.recommended_slack_tol();
    SkewTripleReport rep;
    rep.derivative_form = check_spqd(c, v_grid, t);
    rep.derivative_form.property = "derivative_gap";

    const Copula sc = survival_copula(c);
    const std::vector<double> vb = [&] {
        std::vector<double> b = c.breakpoints_v();
        for (double x : c.breakpoints_v()) b.push_back(1.0 - x);
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
        return b;
    }();
    auto near_break = [&](double w) {
        for (double b : vb)
            if (std::abs(w - b) <= 2e-5) return true;
        return false;
    };

    // (ii) density of (V - 1/2 | U <= u) at v is dC/dv(u, v + 1/2) / u;
    // left skew: g_u(-v) >= g_u(v) for v in (0, 1/2)
    {
        PropertyReport r;
        r.property = "cond_given_le_left_skew";
        r.grid_resolution = v_grid.resolution;
        r.tolerance = t;
        double mn = 1e300, mx = -1e300;
        std::vector<double> wit;
        for (double u : u_grid.points) {
            for (double v : v_grid.points) {
                if (v >= 0.5) continue;
                if (near_break(0.5 - v) || near_break(0.5 + v)) continue;
                const double slack =
                    (c.partial2(u, 0.5 - v) - c.partial2(u, 0.5 + v)) / u;
                if (slack < mn) {
                    mn = slack;
                    wit = {u, v};
                }
                mx = std::max(mx, slack);
            }
        }
        r.min_slack = mn;
        r.max_slack = mx;
        r.witness = wit;
        r.verdict = mn < -t ? PropertyVerdict::fails
                            : (std::abs(mn) <= t && mx <= t
                                   ? PropertyVerdict::holds_with_equality
                                   : PropertyVerdict::holds);
        rep.cond_le_left_skew = std::move(r);
    }

    // (iii) density of (V - 1/2 | U > u) at v is dC^/dv(1-u, 1/2-v) / (1-u);
    // right skew: h_u(v) >= h_u(-v) for v in (0, 1/2)
    {
        PropertyReport r;
        r.property = "cond_given_gt_right_skew";
        r.grid_resolution = v_grid.resolution;
        r.tolerance = t;
        double mn = 1e300, mx = -1e300;
        std::vector<double> wit;
        for (double u : u_grid.points) {
            for (double v : v_grid.points) {
                if (v >= 0.5) continue;
                if (near_break(0.5 - v) || near_break(0.5 + v)) continue;
                const double slack =
                    (sc.partial2(1.0 - u, 0.5 - v) - sc.partial2(1.0 - u, 0.5 + v)) /
                    (1.0 - u);
                if (slack < mn) {
                    mn = slack;
                    wit = {u, v};
                }
                mx = std::max(mx, slack);
            }
        }
        r.min_slack = mn;
        r.max_slack = mx;
        r.witness = wit;
        r.verdict = mn < -t ? PropertyVerdict::fails
                            : (std::abs(mn) <= t && mx <= t
                                   ? PropertyVerdict::holds_with_equality
                                   : PropertyVerdict::holds);
        rep.cond_gt_right_skew = std::move(r);
    }

    auto ok = [](const PropertyReport& r) { return r.verdict != PropertyVerdict::fails; };
    rep.agree = ok(rep.derivative_form) == ok(rep.cond_le_left_skew) &&
                ok(rep.cond_le_left_skew) == ok(rep.cond_gt_right_skew);
    return rep;
}

DependenceChainDiagnostic diagnose_dependence_chain(const JointModel& j,
                                                    const VerifyConfig& cfg) {
    DependenceChainDiagnostic d;
    d.wpqd = check_wpqd(j.copula(), default_certification_grid(cfg.grid_n),
                        slack_tol_for(j.copula(), cfg));
    d.pqde = check_pqde(j, cfg.x_grid_n, 1e-6, cfg.quad);
    d.covariance = hoeffding_cov(j, cfg.quad);
    return d;
}

} // namespace copord
