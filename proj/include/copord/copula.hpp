#pragma once

#include "copord/numerics.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace copord {

namespace detail {
class CopulaImpl;
}

/// Bivariate copula exposed through its CDF, the partial derivative in each
/// argument and, where one exists, a density. Immutable after construction;
/// evaluation is pure and re-entrant.
class Copula {
public:
    explicit Copula(std::shared_ptr<const detail::CopulaImpl> impl);

    double cdf(double u, double v) const;
    /// dC/dv; analytic where the family knows one, centered difference otherwise.
    double partial2(double u, double v) const;
    /// dC/du (the conditional CDF of V given U = u as a function of v).
    double partial1(double u, double v) const;
    bool has_density() const;
    double density(double u, double v) const;
    bool has_analytic_partial2() const;

    const std::string& family() const;
    const std::vector<double>& params() const;
    /// Kink locations for quadrature/derivative alignment.
    std::vector<double> breakpoints_u() const;
    std::vector<double> breakpoints_v() const;
    /// Property-slack tolerance matched to the evaluator's own accuracy.
    double recommended_slack_tol() const;

private:
    std::shared_ptr<const detail::CopulaImpl> impl_;
};

Copula make_product();
Copula make_frechet_upper(); // M(u,v) = min(u,v)
Copula make_frechet_lower(); // W(u,v) = max(u+v-1,0)
Copula make_fgm(double theta); // |theta| <= 1

/// Strict Archimedean generator: psi decreasing convex with psi(1) = 0.
struct ArchimedeanGenerator {
    std::string name;
    std::vector<double> params;
    RealFn psi;
    RealFn psi_inv;
    RealFn psi_prime;
    RealFn psi_second; // optional; enables the density
};

ArchimedeanGenerator clayton_generator(double theta); // theta > 0
ArchimedeanGenerator gumbel_generator(double theta);  // theta >= 1

Copula make_archimedean(ArchimedeanGenerator gen);
Copula make_clayton(double theta);
Copula make_gumbel(double theta);

/// Mixture-of-symmetric-beta-conditionals copula; CDF evaluated by quadrature
/// over the conditioning coordinate and cached on a 201x201 grid with
/// bilinear interpolation between nodes.
Copula make_example1();
/// Same construction without the cache: every CDF call runs the quadrature.
Copula make_example1_exact();
/// Uniform density 2 on three rectangles; closed form per cell.
Copula make_example2();
/// The shifted-band variant; delta in [0, 1/4], delta = 0 recovers make_example2.
Copula make_example3(double delta);

/// Bilinearly interpolated copula on a rectangular grid of (u, v, C) samples.
Copula make_grid_copula(std::vector<double> us, std::vector<double> vs,
                        std::vector<std::vector<double>> values);
/// CSV rows "u,v,C(u,v)" forming a complete lattice.
Copula load_grid_copula_csv(const std::string& path);

/// Survival copula: u + v - 1 + C(1-u, 1-v).
Copula survival_copula(const Copula& c);
/// Copula of (U, 1-V): u - C(u, 1-v).
Copula reflect_second(const Copula& c);

/// Finite-difference dC/dv with explicit step; throws std::domain_error when
/// (v-h, v+h) straddles a declared breakpoint and no analytic form exists.
double partial2(const Copula& c, double u, double v, double h);

/// n pairs; u i.i.d. uniform, v by conditional inversion of w -> dC/du(u, w).
/// Deterministic given the seed.
std::vector<std::pair<double, double>> sample(const Copula& c, std::size_t n,
                                              std::uint64_t seed);

} // namespace copord
