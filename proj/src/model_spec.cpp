#include "copord/model_spec.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace copord {

namespace {

std::vector<double> params_of(const nlohmann::json& j) {
    std::vector<double> out;
    if (j.contains("params")) {
        for (const auto& p : j.at("params")) out.push_back(p.get<double>());
    }
    return out;
}

double param_at(const std::vector<double>& p, std::size_t i, const std::string& family) {
    if (i >= p.size())
        throw std::invalid_argument("family '" + family + "' needs at least " +
                                    std::to_string(i + 1) + " parameter(s)");
    return p[i];
}

std::string resolve(const std::string& base_dir, const std::string& file) {
    std::filesystem::path p(file);
    if (p.is_absolute() || base_dir.empty()) return file;
    return (std::filesystem::path(base_dir) / p).string();
}

} // namespace

Copula copula_from_config(const nlohmann::json& j, const std::string& base_dir) {
    const std::string family = j.at("family").get<std::string>();
    const std::vector<double> p = params_of(j);
    if (family == "product") return make_product();
    if (family == "frechet_upper" || family == "m") return make_frechet_upper();
    if (family == "frechet_lower" || family == "w") return make_frechet_lower();
    if (family == "fgm") return make_fgm(param_at(p, 0, family));
    if (family == "clayton") return make_clayton(param_at(p, 0, family));
    if (family == "gumbel") return make_gumbel(param_at(p, 0, family));
    if (family == "example1") return make_example1();
    if (family == "example1_exact") return make_example1_exact();
    if (family == "example2") return make_example2();
    if (family == "example3") return make_example3(param_at(p, 0, family));
    if (family == "grid")
        return load_grid_copula_csv(resolve(base_dir, j.at("file").get<std::string>()));
    throw std::invalid_argument("unknown copula family '" + family + "'");
}

namespace {

Marginal grid_marginal_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open marginal CSV: " + path);
    std::vector<double> xs, cs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string a, b;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',')) continue;
        try {
            xs.push_back(std::stod(a));
            cs.push_back(std::stod(b));
        } catch (...) {
            if (!xs.empty() && xs.size() != cs.size()) xs.pop_back();
        }
    }
    return make_grid_marginal(std::move(xs), std::move(cs));
}

} // namespace

Marginal marginal_from_config(const nlohmann::json& j, const std::string& base_dir) {
    const std::string family = j.at("family").get<std::string>();
    const std::vector<double> p = params_of(j);
    if (family == "uniform")
        return make_uniform(param_at(p, 0, family), param_at(p, 1, family));
    if (family == "exponential") return make_exponential(param_at(p, 0, family));
    if (family == "normal")
        return make_normal(param_at(p, 0, family), param_at(p, 1, family));
    if (family == "beta") return make_beta(param_at(p, 0, family), param_at(p, 1, family));
    if (family == "triangular")
        return make_triangular(param_at(p, 0, family), param_at(p, 1, family),
                               param_at(p, 2, family));
    if (family == "point_mass") return make_point_mass(param_at(p, 0, family));
    if (family == "affine") {
        if (!j.contains("base"))
            throw std::invalid_argument("affine marginal needs a nested \"base\"");
        return make_affine(marginal_from_config(j.at("base"), base_dir),
                           param_at(p, 0, family), param_at(p, 1, family));
    }
    if (family == "grid")
        return grid_marginal_from_csv(resolve(base_dir, j.at("file").get<std::string>()));
    throw std::invalid_argument("unknown marginal family '" + family + "'");
}

ModelSpec parse_model_spec(const nlohmann::json& j, const std::string& base_dir) {
    ModelOptions opts;
    if (j.contains("options")) {
        const auto& o = j.at("options");
        if (o.contains("grid")) opts.grid = o.at("grid").get<int>();
        if (o.contains("tol")) opts.tol = o.at("tol").get<double>();
        if (o.contains("seed")) opts.seed = o.at("seed").get<std::uint64_t>();
        if (o.contains("sum_grid")) opts.sum_grid = o.at("sum_grid").get<int>();
    }
    return ModelSpec{copula_from_config(j.at("copula"), base_dir),
                     marginal_from_config(j.at("marginal_x"), base_dir),
                     marginal_from_config(j.at("marginal_z"), base_dir), opts};
}

ModelSpec load_model_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error("model file '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_model_spec(j, std::filesystem::path(path).parent_path().string());
}

} // namespace copord
