#include "copord/marginal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace copord {

namespace detail {

constexpr double kInf = std::numeric_limits<double>::infinity();

class MarginalImpl {
public:
    virtual ~MarginalImpl() = default;
    virtual double cdf(double x) const = 0;
    virtual double survival(double x) const { return 1.0 - cdf(x); }
    virtual bool has_pdf() const { return false; }
    virtual double pdf(double) const {
        throw std::logic_error("marginal '" + family_ + "' has no density");
    }
    virtual double quantile(double p) const;
    virtual SupportInterval support() const = 0;
    virtual std::optional<double> mean_hint() const { return std::nullopt; }
    virtual std::vector<double> density_breakpoints() const { return {}; }

    const std::string& family() const { return family_; }
    const std::vector<double>& params() const { return params_; }

protected:
    MarginalImpl(std::string family, std::vector<double> params)
        : family_(std::move(family)), params_(std::move(params)) {}

    std::string family_;
    std::vector<double> params_;
};

double MarginalImpl::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("quantile: p must lie in (0,1)");
    const SupportInterval s = support();
    double lo = std::isfinite(s.lo) ? s.lo : -1.0;
    double hi = std::isfinite(s.hi) ? s.hi : std::max(1.0, lo + 1.0);
    if (!std::isfinite(s.lo))
        while (cdf(lo) > p && lo > -1e300) lo = lo * 2.0 - 1.0;
    if (!std::isfinite(s.hi))
        while (cdf(hi) < p && hi < 1e300) hi = hi * 2.0 + 1.0;
    return invert_monotone([this](double x) { return cdf(x); }, p, lo, hi,
                           Tolerance{1e-12, 0.0, 48});
}

namespace {

class UniformMarginal final : public MarginalImpl {
public:
    UniformMarginal(double a, double b)
        : MarginalImpl("uniform", {a, b}), a_(a), b_(b) {
        if (!(a < b)) throw std::invalid_argument("uniform: need a < b");
    }
    double cdf(double x) const override {
        if (x <= a_) return 0.0;
        if (x >= b_) return 1.0;
        return (x - a_) / (b_ - a_);
    }
    bool has_pdf() const override { return true; }
    double pdf(double x) const override {
        return (x >= a_ && x <= b_) ? 1.0 / (b_ - a_) : 0.0;
    }
    double quantile(double p) const override { return a_ + p * (b_ - a_); }
    SupportInterval support() const override { return {a_, b_}; }
    std::optional<double> mean_hint() const override { return 0.5 * (a_ + b_); }
    std::vector<double> density_breakpoints() const override { return {a_, b_}; }

private:
    double a_, b_;
};

class ExponentialMarginal final : public MarginalImpl {
public:
    explicit ExponentialMarginal(double rate)
        : MarginalImpl("exponential", {rate}), rate_(rate) {
        if (!(rate > 0.0)) throw std::invalid_argument("exponential: need rate > 0");
    }
    double cdf(double x) const override { return x <= 0.0 ? 0.0 : -std::expm1(-rate_ * x); }
    double survival(double x) const override { return x <= 0.0 ? 1.0 : std::exp(-rate_ * x); }
    bool has_pdf() const override { return true; }
    double pdf(double x) const override { return x < 0.0 ? 0.0 : rate_ * std::exp(-rate_ * x); }
    double quantile(double p) const override { return -std::log1p(-p) / rate_; }
    SupportInterval support() const override { return {0.0, kInf}; }
    std::optional<double> mean_hint() const override { return 1.0 / rate_; }
    std::vector<double> density_breakpoints() const override { return {0.0}; }

private:
    double rate_;
};

// Acklam's rational approximation for the standard normal quantile,
// polished with one Halley step.
double std_normal_quantile(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double x;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // one Halley refinement against erfc
    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    x = x - u / (1.0 + x * u / 2.0);
    return x;
}

class NormalMarginal final : public MarginalImpl {
public:
    NormalMarginal(double mu, double sigma)
        : MarginalImpl("normal", {mu, sigma}), mu_(mu), sigma_(sigma) {
        if (!(sigma > 0.0)) throw std::invalid_argument("normal: need sigma > 0");
    }
    double cdf(double x) const override {
        return 0.5 * std::erfc(-(x - mu_) / (sigma_ * std::sqrt(2.0)));
    }
    double survival(double x) const override {
        return 0.5 * std::erfc((x - mu_) / (sigma_ * std::sqrt(2.0)));
    }
    bool has_pdf() const override { return true; }
    double pdf(double x) const override {
        const double z = (x - mu_) / sigma_;
        return std::exp(-0.5 * z * z) / (sigma_ * std::sqrt(2.0 * M_PI));
    }
    double quantile(double p) const override { return mu_ + sigma_ * std_normal_quantile(p); }
    SupportInterval support() const override { return {-kInf, kInf}; }
    std::optional<double> mean_hint() const override { return mu_; }

private:
    double mu_, sigma_;
};

class BetaMarginal final : public MarginalImpl {
public:
    BetaMarginal(double alpha, double beta)
        : MarginalImpl("beta", {alpha, beta}), alpha_(alpha), beta_(beta) {
        if (!(alpha > 0.0) || !(beta > 0.0))
            throw std::invalid_argument("beta: need alpha, beta > 0");
        log_norm_ = log_beta(alpha, beta);
    }
    double cdf(double x) const override {
        if (x <= 0.0) return 0.0;
        if (x >= 1.0) return 1.0;
        return reg_incomplete_beta(alpha_, beta_, x);
    }
    bool has_pdf() const override { return true; }
    double pdf(double x) const override {
        if (x <= 0.0 || x >= 1.0) return 0.0;
        return std::exp((alpha_ - 1.0) * std::log(x) + (beta_ - 1.0) * std::log1p(-x) -
                        log_norm_);
    }
    SupportInterval support() const override { return {0.0, 1.0}; }
    std::optional<double> mean_hint() const override { return alpha_ / (alpha_ + beta_); }
    std::vector<double> density_breakpoints() const override { return {0.0, 1.0}; }

private:
    double alpha_, beta_, log_norm_;
};

class TriangularMarginal final : public MarginalImpl {
public:
    TriangularMarginal(double a, double b, double mode)
        : MarginalImpl("triangular", {a, b, mode}), a_(a), b_(b), c_(mode) {
        if (!(a < b) || mode < a || mode > b)
            throw std::invalid_argument("triangular: need a < b and mode in [a, b]");
    }
    double cdf(double x) const override {
        if (x <= a_) return 0.0;
        if (x >= b_) return 1.0;
        if (x <= c_) return (x - a_) * (x - a_) / ((b_ - a_) * (c_ - a_));
        return 1.0 - (b_ - x) * (b_ - x) / ((b_ - a_) * (b_ - c_));
    }
    bool has_pdf() const override { return true; }
    double pdf(double x) const override {
        if (x < a_ || x > b_) return 0.0;
        if (x <= c_) {
            if (c_ == a_) return 2.0 / (b_ - a_); // degenerate: only hit at x == a
            return 2.0 * (x - a_) / ((b_ - a_) * (c_ - a_));
        }
        if (c_ == b_) return 2.0 / (b_ - a_);
        return 2.0 * (b_ - x) / ((b_ - a_) * (b_ - c_));
    }
    double quantile(double p) const override {
        const double fc = (c_ - a_) / (b_ - a_);
        if (p <= fc) return a_ + std::sqrt(p * (b_ - a_) * (c_ - a_));
        return b_ - std::sqrt((1.0 - p) * (b_ - a_) * (b_ - c_));
    }
    SupportInterval support() const override { return {a_, b_}; }
    std::optional<double> mean_hint() const override { return (a_ + b_ + c_) / 3.0; }
    std::vector<double> density_breakpoints() const override { return {a_, c_, b_}; }

private:
    double a_, b_, c_;
};

class PointMassMarginal final : public MarginalImpl {
public:
    explicit PointMassMarginal(double c) : MarginalImpl("point_mass", {c}), c_(c) {}
    double cdf(double x) const override { return x >= c_ ? 1.0 : 0.0; }
    double quantile(double) const override { return c_; }
    SupportInterval support() const override { return {c_, c_}; }
    std::optional<double> mean_hint() const override { return c_; }
    std::vector<double> density_breakpoints() const override { return {c_}; }

private:
    double c_;
};

class AffineMarginal final : public MarginalImpl {
public:
    AffineMarginal(Marginal base, double scale, double shift)
        : MarginalImpl("affine", {scale, shift}),
          base_(std::move(base)), s_(scale), t_(shift) {
        if (scale == 0.0) throw std::invalid_argument("affine: scale must be nonzero");
    }
    double cdf(double x) const override {
        const double y = (x - t_) / s_;
        return s_ > 0.0 ? base_.cdf(y) : base_.survival(y);
    }
    double survival(double x) const override {
        const double y = (x - t_) / s_;
        return s_ > 0.0 ? base_.survival(y) : base_.cdf(y);
    }
    bool has_pdf() const override { return base_.has_pdf(); }
    double pdf(double x) const override { return base_.pdf((x - t_) / s_) / std::abs(s_); }
    double quantile(double p) const override {
        return s_ > 0.0 ? s_ * base_.quantile(p) + t_ : s_ * base_.quantile(1.0 - p) + t_;
    }
    SupportInterval support() const override {
        const SupportInterval b = base_.support();
        const double lo = s_ > 0.0 ? s_ * b.lo + t_ : s_ * b.hi + t_;
        const double hi = s_ > 0.0 ? s_ * b.hi + t_ : s_ * b.lo + t_;
        return {lo, hi};
    }
    std::optional<double> mean_hint() const override {
        if (auto m = base_.mean_hint()) return s_ * *m + t_;
        return std::nullopt;
    }
    std::vector<double> density_breakpoints() const override {
        std::vector<double> out;
        for (double p : base_.density_breakpoints()) out.push_back(s_ * p + t_);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    Marginal base_;
    double s_, t_;
};

class GridMarginal final : public MarginalImpl {
public:
    GridMarginal(std::vector<double> x, std::vector<double> c, std::optional<double> hint)
        : MarginalImpl("grid", {}), x_(std::move(x)), c_(std::move(c)), hint_(hint) {
        if (x_.size() != c_.size() || x_.size() < 2)
            throw std::invalid_argument("grid marginal: need matching vectors, size >= 2");
        for (std::size_t i = 0; i + 1 < x_.size(); ++i)
            if (!(x_[i] < x_[i + 1]))
                throw std::invalid_argument("grid marginal: x must be strictly increasing");
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] < -1e-12 || c_[i] > 1.0 + 1e-12)
                throw std::invalid_argument("grid marginal: cdf values outside [0,1]");
            c_[i] = std::clamp(c_[i], 0.0, 1.0);
            if (i > 0 && c_[i] < c_[i - 1])
                throw std::invalid_argument("grid marginal: cdf must be nondecreasing");
        }
    }
    double cdf(double x) const override {
        if (x <= x_.front()) return x < x_.front() ? 0.0 : c_.front();
        if (x >= x_.back()) return x > x_.back() ? 1.0 : c_.back();
        const auto it = std::upper_bound(x_.begin(), x_.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - x_.begin());
        const double w = (x - x_[i - 1]) / (x_[i] - x_[i - 1]);
        return c_[i - 1] + w * (c_[i] - c_[i - 1]);
    }
    double quantile(double p) const override {
        if (p <= c_.front()) return x_.front();
        if (p > c_.back()) return x_.back();
        // first node with cdf >= p, so flats resolve to their left edge
        const auto it = std::lower_bound(c_.begin(), c_.end(), p);
        const std::size_t i = static_cast<std::size_t>(it - c_.begin());
        const double w = (p - c_[i - 1]) / (c_[i] - c_[i - 1]);
        return x_[i - 1] + w * (x_[i] - x_[i - 1]);
    }
    SupportInterval support() const override { return {x_.front(), x_.back()}; }
    std::optional<double> mean_hint() const override { return hint_; }
    std::vector<double> density_breakpoints() const override { return x_; }

private:
    std::vector<double> x_;
    std::vector<double> c_;
    std::optional<double> hint_;
};

class FunctionMarginal final : public MarginalImpl {
public:
    explicit FunctionMarginal(FunctionMarginalSpec spec)
        : MarginalImpl(spec.name, {}), spec_(std::move(spec)) {
        if (!spec_.cdf) throw std::invalid_argument("function marginal: cdf required");
    }
    double cdf(double x) const override { return spec_.cdf(x); }
    double survival(double x) const override {
        return spec_.survival ? spec_.survival(x) : 1.0 - spec_.cdf(x);
    }
    bool has_pdf() const override { return static_cast<bool>(spec_.pdf); }
    double pdf(double x) const override {
        if (!spec_.pdf) return MarginalImpl::pdf(x);
        return spec_.pdf(x);
    }
    SupportInterval support() const override { return spec_.support; }
    std::optional<double> mean_hint() const override { return spec_.mean_hint; }
    std::vector<double> density_breakpoints() const override { return spec_.breakpoints; }

private:
    FunctionMarginalSpec spec_;
};

} // namespace

} // namespace detail

Marginal::Marginal(std::shared_ptr<const detail::MarginalImpl> impl)
    : impl_(std::move(impl)) {}

double Marginal::cdf(double x) const { return impl_->cdf(x); }
double Marginal::survival(double x) const { return impl_->survival(x); }
bool Marginal::has_pdf() const { return impl_->has_pdf(); }
double Marginal::pdf(double x) const { return impl_->pdf(x); }
double Marginal::quantile(double p) const { return impl_->quantile(p); }
SupportInterval Marginal::support() const { return impl_->support(); }
const std::string& Marginal::family() const { return impl_->family(); }
const std::vector<double>& Marginal::params() const { return impl_->params(); }
std::optional<double> Marginal::mean_hint() const { return impl_->mean_hint(); }
std::vector<double> Marginal::density_breakpoints() const {
    return impl_->density_breakpoints();
}

double Marginal::lo_eff(double eps) const {
    const SupportInterval s = support();
    return std::isfinite(s.lo) ? s.lo : quantile(eps);
}

double Marginal::hi_eff(double eps) const {
    const SupportInterval s = support();
    return std::isfinite(s.hi) ? s.hi : quantile(1.0 - eps);
}

Marginal make_uniform(double a, double b) {
    return Marginal(std::make_shared<detail::UniformMarginal>(a, b));
}
Marginal make_exponential(double rate) {
    return Marginal(std::make_shared<detail::ExponentialMarginal>(rate));
}
Marginal make_normal(double mu, double sigma) {
    return Marginal(std::make_shared<detail::NormalMarginal>(mu, sigma));
}
Marginal make_beta(double alpha, double beta) {
    return Marginal(std::make_shared<detail::BetaMarginal>(alpha, beta));
}
Marginal make_triangular(double a, double b, double mode) {
    return Marginal(std::make_shared<detail::TriangularMarginal>(a, b, mode));
}
Marginal make_point_mass(double c) {
    return Marginal(std::make_shared<detail::PointMassMarginal>(c));
}
Marginal make_affine(const Marginal& base, double scale, double shift) {
    return Marginal(std::make_shared<detail::AffineMarginal>(base, scale, shift));
}
Marginal make_grid_marginal(std::vector<double> x, std::vector<double> cdf,
                            std::optional<double> mean_hint) {
    return Marginal(std::make_shared<detail::GridMarginal>(std::move(x), std::move(cdf),
                                                           mean_hint));
}
Marginal make_from_functions(FunctionMarginalSpec spec) {
    return Marginal(std::make_shared<detail::FunctionMarginal>(std::move(spec)));
}

std::string to_string(SkewDirection d) {
    switch (d) {
        case SkewDirection::symmetric: return "symmetric";
        case SkewDirection::right: return "right";
        case SkewDirection::left: return "left";
        case SkewDirection::none: return "none";
    }
    return "none";
}

namespace {

double upper_tail_integral(const Marginal& m, double from, const Tolerance& tol) {
    const SupportInterval s = m.support();
    if (from >= s.hi) return 0.0;
    const double hi = std::isfinite(s.hi) ? s.hi
                                          : std::numeric_limits<double>::infinity();
    std::vector<double> brk = m.density_breakpoints();
    if (std::isfinite(s.lo)) brk.push_back(s.lo);
    try {
        return integrate([&](double x) { return m.survival(x); }, from, hi, tol, brk);
    } catch (const QuadratureError& e) {
        throw QuadratureError("upper tail integral did not converge (divergent upper tail?)",
                              e.estimate(), e.error_bound());
    }
}

double lower_tail_integral(const Marginal& m, double to, const Tolerance& tol) {
    const SupportInterval s = m.support();
    if (to <= s.lo) return 0.0;
    const double lo = std::isfinite(s.lo) ? s.lo
                                          : -std::numeric_limits<double>::infinity();
    std::vector<double> brk = m.density_breakpoints();
    if (std::isfinite(s.hi)) brk.push_back(s.hi);
    try {
        return integrate([&](double x) { return m.cdf(x); }, lo, to, tol, brk);
    } catch (const QuadratureError& e) {
        throw QuadratureError("lower tail integral did not converge (divergent lower tail?)",
                              e.estimate(), e.error_bound());
    }
}

} // namespace

double mean_via_tails(const Marginal& m, const Tolerance& tol) {
    const double mu_plus = upper_tail_integral(m, 0.0, tol);
    const double mu_minus = lower_tail_integral(m, 0.0, tol);
    return mu_plus - mu_minus;
}

double mean(const Marginal& m, const Tolerance& tol) {
    if (auto h = m.mean_hint()) return *h;
    return mean_via_tails(m, tol);
}

double stop_loss(const Marginal& m, double t, const Tolerance& tol) {
    return upper_tail_integral(m, t, tol);
}

double integrated_cdf(const Marginal& m, double t, const Tolerance& tol) {
    const SupportInterval s = m.support();
    if (t <= s.lo) return 0.0;
    if (std::isfinite(s.hi) && t > s.hi)
        return lower_tail_integral(m, s.hi, tol) + (t - s.hi);
    return lower_tail_integral(m, t, tol);
}

Grid default_skew_grid(const Marginal& m, double center, int n) {
    const double lo = m.lo_eff();
    const double hi = m.hi_eff();
    const double zmax = std::max({hi - center, center - lo, 1e-6});
    return Grid::interior(0.0, zmax, n);
}

SkewVerdict classify_skew(const Marginal& m, double center, const Grid& grid, double tol) {
    // G is the CDF of the centered variable
    auto G = [&](double z) { return m.cdf(center + z); };
    const double scale = std::max(1.0, std::abs(center) + std::abs(grid.points.back()));
    const double h = 1e-9 * scale;
    double viol_right = 0.0, viol_left = 0.0;
    double wit_right = 0.0, wit_left = 0.0;
    for (double z : grid.points) {
        if (z < 0.0) continue;
        // the comparison is only defined at continuity points of G
        if (G(z + h) - G(z - h) > 1e-5) continue;
        const double left_tail = G(-z);
        const double right_tail = 1.0 - G(z);
        const double d = left_tail - right_tail;
        if (d > viol_right) { viol_right = d; wit_right = z; }   // breaks right-skew
        if (-d > viol_left) { viol_left = -d; wit_left = z; }    // breaks left-skew
    }
    SkewVerdict v;
    v.center = center;
    const bool right_ok = viol_right <= tol;
    const bool left_ok = viol_left <= tol;
    if (right_ok && left_ok) {
        v.direction = SkewDirection::symmetric;
        v.max_violation = std::max(viol_right, viol_left);
        v.witness = viol_right >= viol_left ? wit_right : wit_left;
    } else if (right_ok) {
        v.direction = SkewDirection::right;
        v.max_violation = viol_right;
        v.witness = wit_right;
    } else if (left_ok) {
        v.direction = SkewDirection::left;
        v.max_violation = viol_left;
        v.witness = wit_left;
    } else {
        v.direction = SkewDirection::none;
        v.max_violation = std::min(viol_right, viol_left);
        v.witness = viol_right <= viol_left ? wit_right : wit_left;
    }
    return v;
}

} // namespace copord
