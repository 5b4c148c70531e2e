#include "copord/joint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace copord {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_degenerate(const Marginal& m) {
    const SupportInterval s = m.support();
    return s.lo == s.hi;
}
} // namespace

JointModel::JointModel(Copula copula, Marginal marginal_x, Marginal marginal_z)
    : copula_(std::move(copula)),
      survival_(survival_copula(copula_)),
      x_(std::move(marginal_x)),
      z_(std::move(marginal_z)) {}

std::vector<double> JointModel::z_breakpoints() const {
    std::vector<double> out = z_.density_breakpoints();
    for (double b : copula_.breakpoints_v()) {
        if (b > 1e-12 && b < 1.0 - 1e-12) out.push_back(z_.quantile(b));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double cond_mean_z_given_x_gt(const JointModel& j, double x, const Tolerance& tol) {
    const double a = j.marginal_x().survival(x);
    if (a <= 1e-12)
        throw std::domain_error("cond_mean_z_given_x_gt: conditioning on a null set");
    const Marginal& z = j.marginal_z();
    const Copula& sc = j.survival_cop();
    const SupportInterval s = z.support();
    const std::vector<double> brk = j.z_breakpoints();
    // survival of (Z | X > x) at z is C^(a, survival_z(z)) / a; both tails of
    // the mean decomposition become exactly 0 outside the support of Z
    auto cond_surv = [&](double zz) { return sc.cdf(a, z.survival(zz)) / a; };
    double upper = 0.0;
    const double up_hi = std::isfinite(s.hi) ? std::max(0.0, s.hi) : kInf;
    if (up_hi > 0.0) upper = integrate(cond_surv, 0.0, up_hi, tol, brk);
    double lower = 0.0;
    const double low_lo = std::isfinite(s.lo) ? std::min(0.0, s.lo) : -kInf;
    if (low_lo < 0.0)
        lower = integrate([&](double zz) { return 1.0 - cond_surv(zz); }, low_lo, 0.0,
                          tol, brk);
    return upper - lower;
}

double cond_mean_z_given_x_le(const JointModel& j, double x, const Tolerance& tol) {
    const double f = j.marginal_x().cdf(x);
    if (f <= 1e-12)
        throw std::domain_error("cond_mean_z_given_x_le: conditioning on a null set");
    const Marginal& z = j.marginal_z();
    const Copula& c = j.copula();
    const SupportInterval s = z.support();
    const std::vector<double> brk = j.z_breakpoints();
    auto cond_cdf = [&](double zz) { return c.cdf(f, z.cdf(zz)) / f; };
    double upper = 0.0;
    const double up_hi = std::isfinite(s.hi) ? std::max(0.0, s.hi) : kInf;
    if (up_hi > 0.0)
        upper = integrate([&](double zz) { return 1.0 - cond_cdf(zz); }, 0.0, up_hi, tol,
                          brk);
    double lower = 0.0;
    const double low_lo = std::isfinite(s.lo) ? std::min(0.0, s.lo) : -kInf;
    if (low_lo < 0.0) lower = integrate(cond_cdf, low_lo, 0.0, tol, brk);
    return upper - lower;
}

double total_expectation_gap(const JointModel& j, double x, const Tolerance& tol) {
    const double f = j.marginal_x().cdf(x);
    const double a = j.marginal_x().survival(x);
    if (f <= 1e-12 || a <= 1e-12) return 0.0;
    const double ez = mean(j.marginal_z(), tol);
    return f * cond_mean_z_given_x_le(j, x, tol) + a * cond_mean_z_given_x_gt(j, x, tol) -
           ez;
}

double sum_survival(const JointModel& j, double y, const Tolerance& tol) {
    const Marginal& mx = j.marginal_x();
    const Marginal& mz = j.marginal_z();
    if (is_degenerate(mz)) return mx.survival(y - mz.support().lo);
    if (is_degenerate(mx)) return mz.survival(y - mx.support().lo);
    if (!mz.has_pdf())
        throw std::invalid_argument(
            "sum_survival: marginal_z has no density; the C-convolution integral "
            "requires one (point masses are handled by the degenerate bypass)");
    const Copula& sc = j.survival_cop();
    const SupportInterval sz = mz.support();
    const SupportInterval sx = mx.support();
    std::vector<double> brk = j.z_breakpoints();
    // kinks of survival_x(y - z) in z: support edges and declared u-breakpoints
    if (std::isfinite(sx.lo)) brk.push_back(y - sx.lo);
    if (std::isfinite(sx.hi)) brk.push_back(y - sx.hi);
    for (double b : mx.density_breakpoints()) brk.push_back(y - b);
    for (double b : j.copula().breakpoints_u())
        if (b > 1e-12 && b < 1.0 - 1e-12) brk.push_back(y - mx.quantile(b));
    auto integrand = [&](double z) {
        const double g = mz.pdf(z);
        if (g == 0.0) return 0.0;
        return g * sc.partial2(mx.survival(y - z), mz.survival(z));
    };
    const double lo = std::isfinite(sz.lo) ? sz.lo : -kInf;
    const double hi = std::isfinite(sz.hi) ? sz.hi : kInf;
    const double value = integrate(integrand, lo, hi, tol, brk);
    return std::clamp(value, 0.0, 1.0);
}

Grid default_sum_grid(const JointModel& j, int n) {
    double lo = j.marginal_x().lo_eff() + j.marginal_z().lo_eff();
    double hi = j.marginal_x().hi_eff() + j.marginal_z().hi_eff();
    if (hi - lo < 1e-9) {
        lo -= 0.5;
        hi += 0.5;
    }
    return Grid::uniform(lo, hi, n);
}

namespace {

// Pool-adjacent-violators pass enforcing a nonincreasing sequence.
double repair_nonincreasing(std::vector<double>& s) {
    struct Block {
        double sum;
        int count;
    };
    std::vector<Block> blocks;
    blocks.reserve(s.size());
    for (double v : s) {
        blocks.push_back({v, 1});
        while (blocks.size() > 1) {
            const auto& last = blocks.back();
            const auto& prev = blocks[blocks.size() - 2];
            if (prev.sum / prev.count >= last.sum / last.count) break;
            Block merged{prev.sum + last.sum, prev.count + last.count};
            blocks.pop_back();
            blocks.pop_back();
            blocks.push_back(merged);
        }
    }
    double max_repair = 0.0;
    std::size_t i = 0;
    for (const auto& b : blocks) {
        const double level = b.sum / b.count;
        for (int k = 0; k < b.count; ++k, ++i) {
            max_repair = std::max(max_repair, std::abs(s[i] - level));
            s[i] = level;
        }
    }
    return max_repair;
}

} // namespace

Marginal sum_distribution(const JointModel& j, const Grid& y_grid, const Tolerance& tol) {
    y_grid.validate();
    std::vector<double> surv;
    surv.reserve(y_grid.points.size());
    for (double y : y_grid.points)
        surv.push_back(std::clamp(sum_survival(j, y, tol), 0.0, 1.0));
    const double max_repair = repair_nonincreasing(surv);
    if (max_repair > 10.0 * tol.abs_tol)
        throw std::runtime_error(
            "sum_distribution: monotonicity repair of " + std::to_string(max_repair) +
            " exceeds 10x the quadrature tolerance; tabulated survival is inconsistent");
    std::vector<double> cdf;
    cdf.reserve(surv.size());
    for (double s : surv) cdf.push_back(std::clamp(1.0 - s, 0.0, 1.0));
    for (std::size_t i = 1; i < cdf.size(); ++i) cdf[i] = std::max(cdf[i], cdf[i - 1]);

    // the mean of the sum from the live survival integral, so downstream mean
    // comparisons do not inherit the tabulation's interpolation error
    Tolerance inner = tol;
    inner.abs_tol = tol.abs_tol / 100.0;
    auto live_surv = [&](double y) { return sum_survival(j, y, inner); };
    const double ylo = y_grid.points.front();
    const double yhi = y_grid.points.back();
    double mean_sum = 0.0;
    if (yhi > 0.0)
        mean_sum += integrate(live_surv, 0.0, yhi, tol);
    if (ylo < 0.0)
        mean_sum -= integrate([&](double y) { return 1.0 - live_surv(y); }, ylo, 0.0, tol);

    return make_grid_marginal(y_grid.points, std::move(cdf), mean_sum);
}

Marginal sum_distribution(const JointModel& j, int n, const Tolerance& tol) {
    return sum_distribution(j, default_sum_grid(j, n), tol);
}

Marginal conditional_z_given_x_gt(const JointModel& j, double x) {
    const double a = j.marginal_x().survival(x);
    if (a <= 1e-12)
        throw std::domain_error("conditional_z_given_x_gt: conditioning on a null set");
    const Marginal z = j.marginal_z();
    const Copula sc = j.survival_cop();
    FunctionMarginalSpec spec;
    spec.name = "conditional_z_given_x_gt";
    spec.support = z.support();
    spec.breakpoints = j.z_breakpoints();
    spec.survival = [sc, z, a](double zz) { return sc.cdf(a, z.survival(zz)) / a; };
    spec.cdf = [sc, z, a](double zz) { return 1.0 - sc.cdf(a, z.survival(zz)) / a; };
    if (z.has_pdf() && sc.has_analytic_partial2()) {
        spec.pdf = [sc, z, a](double zz) {
            return sc.partial2(a, z.survival(zz)) * z.pdf(zz) / a;
        };
    }
    return make_from_functions(std::move(spec));
}

std::vector<std::pair<double, double>> sample_joint(const JointModel& j, std::size_t n,
                                                    std::uint64_t seed) {
    std::vector<std::pair<double, double>> uv = sample(j.copula(), n, seed);
    for (auto& p : uv) {
        p.first = j.marginal_x().quantile(p.first);
        p.second = j.marginal_z().quantile(p.second);
    }
    return uv;
}

} // namespace copord
