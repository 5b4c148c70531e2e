#pragma once

#include "copord/copula.hpp"
#include "copord/joint.hpp"
#include "copord/marginal.hpp"

#include <cstdint>
#include <string>

#include <json.hpp>

namespace copord {

/// Run options carried by a model file.
struct ModelOptions {
    int grid = 201;
    double tol = -1.0; // < 0: per-copula default
    std::uint64_t seed = 42;
    int sum_grid = 401;
};

/// Parsed model file: a copula, the two marginals, and options.
struct ModelSpec {
    Copula copula;
    Marginal marginal_x;
    Marginal marginal_z;
    ModelOptions options;

    JointModel joint() const { return JointModel(copula, marginal_x, marginal_z); }
};

/// Builds a catalog member from its family name and parameter list.
/// Recognized copulas: product, frechet_upper, frechet_lower, fgm, clayton,
/// gumbel, example1, example1_exact, example2, example3, grid (CSV file).
Copula copula_from_config(const nlohmann::json& j,
                          const std::string& base_dir = std::string());
/// Recognized marginals: uniform, exponential, normal, beta, triangular,
/// point_mass, affine (with nested "base"), grid (CSV file of x,cdf rows).
Marginal marginal_from_config(const nlohmann::json& j,
                              const std::string& base_dir = std::string());

ModelSpec parse_model_spec(const nlohmann::json& j,
                           const std::string& base_dir = std::string());
ModelSpec load_model_spec(const std::string& path);

} // namespace copord
