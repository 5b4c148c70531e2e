#include "copord/copula.hpp"

#include "copula_impl.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace copord {

using detail::clamp01;
using detail::CopulaImpl;

namespace {

class ProductCopula final : public CopulaImpl {
public:
    ProductCopula() : CopulaImpl("product", {}) {}
    double cdf(double u, double v) const override { return u * v; }
    bool has_analytic_partial2() const override { return true; }
    double partial2(double u, double) const override { return u; }
    bool has_analytic_partial1() const override { return true; }
    double partial1(double, double v) const override { return v; }
    bool has_density() const override { return true; }
    double density(double, double) const override { return 1.0; }
};

class FrechetUpperCopula final : public CopulaImpl {
public:
    FrechetUpperCopula() : CopulaImpl("frechet_upper", {}) {}
    double cdf(double u, double v) const override { return std::min(u, v); }
    bool has_analytic_partial2() const override { return true; }
    double partial2(double u, double v) const override {
        if (v < u) return 1.0;
        if (v > u) return 0.0;
        return 0.5; // a.e. convention on the diagonal
    }
    bool has_analytic_partial1() const override { return true; }
    double partial1(double u, double v) const override {
        if (u < v) return 1.0;
        if (u > v) return 0.0;
        return 0.5;
    }
};

class FrechetLowerCopula final : public CopulaImpl {
public:
    FrechetLowerCopula() : CopulaImpl("frechet_lower", {}) {}
    double cdf(double u, double v) const override { return std::max(u + v - 1.0, 0.0); }
    bool has_analytic_partial2() const override { return true; }
    double partial2(double u, double v) const override {
        if (u + v > 1.0) return 1.0;
        if (u + v < 1.0) return 0.0;
        return 0.5;
    }
    bool has_analytic_partial1() const override { return true; }
    double partial1(double u, double v) const override { return partial2(v, u); }
};

class FgmCopula final : public CopulaImpl {
public:
    explicit FgmCopula(double theta) : CopulaImpl("fgm", {theta}), th_(theta) {
        if (!(theta >= -1.0 && theta <= 1.0))
            throw std::invalid_argument("fgm: theta must lie in [-1, 1]");
    }
    double cdf(double u, double v) const override {
        return u * v + th_ * u * v * (1.0 - u) * (1.0 - v);
    }
    bool has_analytic_partial2() const override { return true; }
    double partial2(double u, double v) const override {
        return u + th_ * u * (1.0 - u) * (1.0 - 2.0 * v);
    }
    bool has_analytic_partial1() const override { return true; }
    double partial1(double u, double v) const override {
        return v + th_ * v * (1.0 - v) * (1.0 - 2.0 * u);
    }
    bool has_density() const override { return true; }
    double density(double u, double v) const override {
        return 1.0 + th_ * (1.0 - 2.0 * u) * (1.0 - 2.0 * v);
    }

private:
    double th_;
};

class ArchimedeanCopula final : public CopulaImpl {
public:
    explicit ArchimedeanCopula(ArchimedeanGenerator gen)
        : CopulaImpl(gen.name, gen.params), g_(std::move(gen)) {
        if (!g_.psi || !g_.psi_inv || !g_.psi_prime)
            throw std::invalid_argument("archimedean: psi, psi_inv, psi_prime required");
        if (std::abs(g_.psi(1.0)) > 1e-12)
            throw std::invalid_argument("archimedean: generator must satisfy psi(1) = 0");
    }
    double cdf(double u, double v) const override {
        if (u <= 0.0 || v <= 0.0) return 0.0;
        if (u >= 1.0) return v;
        if (v >= 1.0) return u;
        return clamp01(g_.psi_inv(g_.psi(u) + g_.psi(v)));
    }
    bool has_analytic_partial2() const override { return true; }
    double partial2(double u, double v) const override {
        if (u <= 0.0) return 0.0;
        if (u >= 1.0) return 1.0;
        const double c = cdf(u, v);
        if (c <= 0.0) return 0.0;
        return clamp01(g_.psi_prime(v) / g_.psi_prime(c));
    }
    bool has_analytic_partial1() const override { return true; }
    double partial1(double u, double v) const override { return partial2(v, u); }
    bool has_density() const override { return static_cast<bool>(g_.psi_second); }
    double density(double u, double v) const override {
        if (!g_.psi_second) return CopulaImpl::density(u, v);
        const double c = cdf(u, v);
        if (c <= 0.0) return 0.0;
        const double pc = g_.psi_prime(c);
        return -g_.psi_second(c) * g_.psi_prime(u) * g_.psi_prime(v) / (pc * pc * pc);
    }

private:
    ArchimedeanGenerator g_;
};

class GridCopula final : public CopulaImpl {
public:
    GridCopula(std::vector<double> us, std::vector<double> vs,
               std::vector<std::vector<double>> vals)
        : CopulaImpl("grid", {}), us_(std::move(us)), vs_(std::move(vs)),
          vals_(std::move(vals)) {
        if (us_.size() < 2 || vs_.size() < 2 || vals_.size() != us_.size())
            throw std::invalid_argument("grid copula: inconsistent dimensions");
        for (const auto& row : vals_)
            if (row.size() != vs_.size())
                throw std::invalid_argument("grid copula: ragged value matrix");
        for (std::size_t i = 0; i + 1 < us_.size(); ++i)
            if (!(us_[i] < us_[i + 1]))
                throw std::invalid_argument("grid copula: u nodes must increase");
        for (std::size_t j = 0; j + 1 < vs_.size(); ++j)
            if (!(vs_[j] < vs_[j + 1]))
                throw std::invalid_argument("grid copula: v nodes must increase");
        if (us_.front() != 0.0 || us_.back() != 1.0 || vs_.front() != 0.0 ||
            vs_.back() != 1.0)
            throw std::invalid_argument("grid copula: nodes must span [0,1] in each axis");
    }
    double cdf(double u, double v) const override {
        u = clamp01(u);
        v = clamp01(v);
        const std::size_t i = cell(us_, u);
        const std::size_t j = cell(vs_, v);
        const double tu = (u - us_[i]) / (us_[i + 1] - us_[i]);
        const double tv = (v - vs_[j]) / (vs_[j + 1] - vs_[j]);
        return (1.0 - tu) * (1.0 - tv) * vals_[i][j] + tu * (1.0 - tv) * vals_[i + 1][j] +
               (1.0 - tu) * tv * vals_[i][j + 1] + tu * tv * vals_[i + 1][j + 1];
    }
    bool closed_form() const override { return false; }

private:
    static std::size_t cell(const std::vector<double>& xs, double x) {
        const auto it = std::upper_bound(xs.begin(), xs.end(), x);
        std::size_t i = static_cast<std::size_t>(it - xs.begin());
        if (i == 0) return 0;
        if (i >= xs.size()) return xs.size() - 2;
        return i - 1;
    }

    std::vector<double> us_, vs_;
    std::vector<std::vector<double>> vals_;
};

class SurvivalCopula final : public CopulaImpl {
public:
    explicit SurvivalCopula(Copula inner)
        : CopulaImpl("survival(" + inner.family() + ")", inner.params()),
          inner_(std::move(inner)) {}
    double cdf(double u, double v) const override {
        return u + v - 1.0 + inner_.cdf(1.0 - u, 1.0 - v);
    }
    bool has_analytic_partial2() const override { return inner_.has_analytic_partial2(); }
    double partial2(double u, double v) const override {
        return 1.0 - inner_.partial2(1.0 - u, 1.0 - v);
    }
    bool has_analytic_partial1() const override { return true; }
    double partial1(double u, double v) const override {
        return 1.0 - inner_.partial1(1.0 - u, 1.0 - v);
    }
    bool has_density() const override { return inner_.has_density(); }
    double density(double u, double v) const override {
        return inner_.density(1.0 - u, 1.0 - v);
    }
    std::vector<double> breakpoints_u() const override { return mirror(inner_.breakpoints_u()); }
    std::vector<double> breakpoints_v() const override { return mirror(inner_.breakpoints_v()); }
    bool closed_form() const override { return inner_.recommended_slack_tol() < 1e-8; }

private:
    static std::vector<double> mirror(const std::vector<double>& b) {
        std::vector<double> out;
        out.reserve(b.size());
        for (double x : b) out.push_back(1.0 - x);
        std::sort(out.begin(), out.end());
        return out;
    }
    Copula inner_;
};

class ReflectSecondCopula final : public CopulaImpl {
public:
    explicit ReflectSecondCopula(Copula inner)
        : CopulaImpl("reflect_second(" + inner.family() + ")", inner.params()),
          inner_(std::move(inner)) {}
    double cdf(double u, double v) const override {
        return u - inner_.cdf(u, 1.0 - v);
    }
    bool has_analytic_partial2() const override { return inner_.has_analytic_partial2(); }
    double partial2(double u, double v) const override {
        return inner_.partial2(u, 1.0 - v);
    }
    bool has_analytic_partial1() const override { return true; }
    double partial1(double u, double v) const override {
        return 1.0 - inner_.partial1(u, 1.0 - v);
    }
    bool has_density() const override { return inner_.has_density(); }
    double density(double u, double v) const override {
        return inner_.density(u, 1.0 - v);
    }
    std::vector<double> breakpoints_u() const override { return inner_.breakpoints_u(); }
    std::vector<double> breakpoints_v() const override {
        std::vector<double> out;
        for (double x : inner_.breakpoints_v()) out.push_back(1.0 - x);
        std::sort(out.begin(), out.end());
        return out;
    }
    bool closed_form() const override { return inner_.recommended_slack_tol() < 1e-8; }

private:
    Copula inner_;
};

} // namespace

Copula::Copula(std::shared_ptr<const CopulaImpl> impl) : impl_(std::move(impl)) {}

double Copula::cdf(double u, double v) const { return impl_->cdf(clamp01(u), clamp01(v)); }
double Copula::partial2(double u, double v) const { return impl_->partial2(u, v); }
double Copula::partial1(double u, double v) const { return impl_->partial1(u, v); }
bool Copula::has_density() const { return impl_->has_density(); }
double Copula::density(double u, double v) const { return impl_->density(u, v); }
bool Copula::has_analytic_partial2() const { return impl_->has_analytic_partial2(); }
const std::string& Copula::family() const { return impl_->family(); }
const std::vector<double>& Copula::params() const { return impl_->params(); }

std::vector<double> Copula::breakpoints_u() const { return impl_->breakpoints_u(); }
std::vector<double> Copula::breakpoints_v() const { return impl_->breakpoints_v(); }

double Copula::recommended_slack_tol() const {
    return impl_->closed_form() ? 1e-9 : 1e-6;
}

Copula make_product() { return Copula(std::make_shared<ProductCopula>()); }
Copula make_frechet_upper() { return Copula(std::make_shared<FrechetUpperCopula>()); }
Copula make_frechet_lower() { return Copula(std::make_shared<FrechetLowerCopula>()); }
Copula make_fgm(double theta) { return Copula(std::make_shared<FgmCopula>(theta)); }

ArchimedeanGenerator clayton_generator(double theta) {
    if (!(theta > 0.0))
        throw std::invalid_argument("clayton: theta must be > 0 (strict generator)");
    ArchimedeanGenerator g;
    g.name = "clayton";
    g.params = {theta};
    g.psi = [theta](double t) { return (std::pow(t, -theta) - 1.0) / theta; };
    g.psi_inv = [theta](double s) { return std::pow(1.0 + theta * s, -1.0 / theta); };
    g.psi_prime = [theta](double t) { return -std::pow(t, -theta - 1.0); };
    g.psi_second = [theta](double t) { return (theta + 1.0) * std::pow(t, -theta - 2.0); };
    return g;
}

ArchimedeanGenerator gumbel_generator(double theta) {
    if (!(theta >= 1.0)) throw std::invalid_argument("gumbel: theta must be >= 1");
    ArchimedeanGenerator g;
    g.name = "gumbel";
    g.params = {theta};
    g.psi = [theta](double t) { return std::pow(-std::log(t), theta); };
    g.psi_inv = [theta](double s) { return std::exp(-std::pow(s, 1.0 / theta)); };
    g.psi_prime = [theta](double t) {
        return -theta * std::pow(-std::log(t), theta - 1.0) / t;
    };
    g.psi_second = [theta](double t) {
        const double L = -std::log(t);
        return theta * std::pow(L, theta - 2.0) * (theta - 1.0 + L) / (t * t);
    };
    return g;
}

Copula make_archimedean(ArchimedeanGenerator gen) {
    return Copula(std::make_shared<ArchimedeanCopula>(std::move(gen)));
}
Copula make_clayton(double theta) { return make_archimedean(clayton_generator(theta)); }
Copula make_gumbel(double theta) { return make_archimedean(gumbel_generator(theta)); }

Copula make_grid_copula(std::vector<double> us, std::vector<double> vs,
                        std::vector<std::vector<double>> values) {
    return Copula(std::make_shared<GridCopula>(std::move(us), std::move(vs),
                                               std::move(values)));
}

Copula load_grid_copula_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open copula CSV: " + path);
    std::vector<double> us, vs;
    std::vector<std::tuple<double, double, double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string tok;
        double vals[3];
        int k = 0;
        while (std::getline(ss, tok, ',') && k < 3) {
            try {
                vals[k] = std::stod(tok);
            } catch (...) {
                k = -1; // header or malformed row: skip
                break;
            }
            ++k;
        }
        if (k != 3) continue;
        rows.emplace_back(vals[0], vals[1], vals[2]);
        us.push_back(vals[0]);
        vs.push_back(vals[1]);
    }
    auto uniq = [](std::vector<double>& x) {
        std::sort(x.begin(), x.end());
        x.erase(std::unique(x.begin(), x.end()), x.end());
    };
    uniq(us);
    uniq(vs);
    if (us.size() < 2 || vs.size() < 2)
        throw std::runtime_error("copula CSV: need at least a 2x2 lattice");
    std::vector<std::vector<double>> vals(us.size(),
                                          std::vector<double>(vs.size(),
                                                              std::numeric_limits<double>::quiet_NaN()));
    auto index_of = [](const std::vector<double>& x, double q) {
        return static_cast<std::size_t>(std::lower_bound(x.begin(), x.end(), q) - x.begin());
    };
    for (const auto& [u, v, c] : rows) vals[index_of(us, u)][index_of(vs, v)] = c;
    for (const auto& row : vals)
        for (double c : row)
            if (std::isnan(c))
                throw std::runtime_error("copula CSV: incomplete lattice of (u,v) samples");
    return make_grid_copula(std::move(us), std::move(vs), std::move(vals));
}

Copula survival_copula(const Copula& c) {
    return Copula(std::make_shared<SurvivalCopula>(c));
}

Copula reflect_second(const Copula& c) {
    return Copula(std::make_shared<ReflectSecondCopula>(c));
}

double partial2(const Copula& c, double u, double v, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("partial2: need h > 0");
    if (c.has_analytic_partial2()) return c.partial2(u, v);
    for (double b : c.breakpoints_v()) {
        if (b > v - h && b < v + h)
            throw std::domain_error(
                "partial2: breakpoint inside (v-h, v+h); split the interval");
    }
    // centered difference, one-sided second order near the edges
    if (v >= h && v <= 1.0 - h)
        return (c.cdf(u, v + h) - c.cdf(u, v - h)) / (2.0 * h);
    if (v < h)
        return (-3.0 * c.cdf(u, v) + 4.0 * c.cdf(u, v + h) - c.cdf(u, v + 2.0 * h)) /
               (2.0 * h);
    return (3.0 * c.cdf(u, v) - 4.0 * c.cdf(u, v - h) + c.cdf(u, v - 2.0 * h)) / (2.0 * h);
}

std::vector<std::pair<double, double>> sample(const Copula& c, std::size_t n,
                                              std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto next_uniform = [&rng]() {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53; // in [0, 1)
    };
    std::vector<std::pair<double, double>> out;
    out.reserve(n);
    const Tolerance inv_tol{1e-10, 0.0, 48};
    for (std::size_t i = 0; i < n; ++i) {
        const double u = std::min(1.0 - 1e-12, std::max(1e-12, next_uniform()));
        const double t = std::min(1.0 - 1e-12, std::max(1e-12, next_uniform()));
        const double v = invert_monotone(
            [&](double w) { return c.partial1(u, w); }, t, 0.0, 1.0, inv_tol);
        out.emplace_back(u, v);
    }
    return out;
}

} // namespace copord
