#include "copord/report_json.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace copord {

namespace {

PropertyVerdict verdict_from_string(const std::string& s) {
    if (s == "holds") return PropertyVerdict::holds;
    if (s == "fails") return PropertyVerdict::fails;
    if (s == "holds-with-equality") return PropertyVerdict::holds_with_equality;
    throw std::invalid_argument("unknown property verdict '" + s + "'");
}

SkewDirection direction_from_string(const std::string& s) {
    if (s == "symmetric") return SkewDirection::symmetric;
    if (s == "right") return SkewDirection::right;
    if (s == "left") return SkewDirection::left;
    if (s == "none") return SkewDirection::none;
    throw std::invalid_argument("unknown skew direction '" + s + "'");
}

OrderKind order_from_string(const std::string& s) {
    if (s == "st") return OrderKind::ST;
    if (s == "icx") return OrderKind::ICX;
    if (s == "icv") return OrderKind::ICV;
    if (s == "cx") return OrderKind::CX;
    throw std::invalid_argument("unknown order '" + s + "'");
}

} // namespace

nlohmann::json to_json(const PropertyReport& r) {
    return nlohmann::json{{"property", r.property},
                          {"verdict", to_string(r.verdict)},
                          {"min_slack", r.min_slack},
                          {"max_slack", r.max_slack},
                          {"witness", r.witness},
                          {"grid_resolution", r.grid_resolution},
                          {"tolerance", r.tolerance}};
}

PropertyReport property_report_from_json(const nlohmann::json& j) {
    PropertyReport r;
    r.property = j.at("property").get<std::string>();
    r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    r.min_slack = j.at("min_slack").get<double>();
    r.max_slack = j.at("max_slack").get<double>();
    r.witness = j.at("witness").get<std::vector<double>>();
    r.grid_resolution = j.at("grid_resolution").get<int>();
    r.tolerance = j.at("tolerance").get<double>();
    return r;
}

nlohmann::json to_json(const SkewVerdict& v) {
    return nlohmann::json{{"direction", to_string(v.direction)},
                          {"center", v.center},
                          {"max_violation", v.max_violation},
                          {"witness", v.witness}};
}

SkewVerdict skew_verdict_from_json(const nlohmann::json& j) {
    SkewVerdict v;
    v.direction = direction_from_string(j.at("direction").get<std::string>());
    v.center = j.at("center").get<double>();
    v.max_violation = j.at("max_violation").get<double>();
    v.witness = j.at("witness").get<double>();
    return v;
}

nlohmann::json to_json(const OrderVerdict& v) {
    return nlohmann::json{{"order", to_string(v.order)},
                          {"holds", v.holds},
                          {"min_slack", v.min_slack},
                          {"witness_t", v.witness_t},
                          {"mean_gap", v.mean_gap},
                          {"grid_resolution", v.grid_resolution},
                          {"tolerance", v.tolerance},
                          {"mean_tolerance", v.mean_tolerance}};
}

OrderVerdict order_verdict_from_json(const nlohmann::json& j) {
    OrderVerdict v;
    v.order = order_from_string(j.at("order").get<std::string>());
    v.holds = j.at("holds").get<bool>();
    v.min_slack = j.at("min_slack").get<double>();
    v.witness_t = j.at("witness_t").get<double>();
    v.mean_gap = j.at("mean_gap").get<double>();
    v.grid_resolution = j.at("grid_resolution").get<int>();
    v.tolerance = j.at("tolerance").get<double>();
    v.mean_tolerance = j.at("mean_tolerance").get<double>();
    return v;
}

namespace {

nlohmann::json to_json(const PremiseReport& p) {
    nlohmann::json j{{"name", p.name},
                     {"kind", p.kind},
                     {"requirement", p.requirement},
                     {"holds", p.holds}};
    if (p.property) j["property"] = to_json(*p.property);
    if (p.skew) j["skew"] = to_json(*p.skew);
    if (p.value) j["value"] = *p.value;
    return j;
}

PremiseReport premise_from_json(const nlohmann::json& j) {
    PremiseReport p;
    p.name = j.at("name").get<std::string>();
    p.kind = j.at("kind").get<std::string>();
    p.requirement = j.at("requirement").get<std::string>();
    p.holds = j.at("holds").get<bool>();
    if (j.contains("property")) p.property = property_report_from_json(j.at("property"));
    if (j.contains("skew")) p.skew = skew_verdict_from_json(j.at("skew"));
    if (j.contains("value")) p.value = j.at("value").get<double>();
    return p;
}

} // namespace

nlohmann::json to_json(const TheoremReport& r) {
    nlohmann::json premises = nlohmann::json::array();
    for (const auto& p : r.premises) premises.push_back(to_json(p));
    nlohmann::json j{{"prop_id", r.prop_id},
                     {"premises", premises},
                     {"premises_hold", r.premises_hold},
                     {"conclusion_evaluated", r.conclusion_evaluated},
                     {"conclusion_holds", r.conclusion_holds},
                     {"consistent", r.consistent}};
    if (r.conclusion_order) j["conclusion_order"] = to_json(*r.conclusion_order);
    if (r.conclusion_scalar)
        j["conclusion_scalar"] = nlohmann::json{{"name", r.conclusion_scalar->name},
                                                {"value", r.conclusion_scalar->value},
                                                {"tolerance", r.conclusion_scalar->tolerance},
                                                {"holds", r.conclusion_scalar->holds}};
    if (r.dual_form_agrees) j["dual_form_agrees"] = *r.dual_form_agrees;
    return j;
}

TheoremReport theorem_report_from_json(const nlohmann::json& j) {
    TheoremReport r;
    r.prop_id = j.at("prop_id").get<std::string>();
    for (const auto& p : j.at("premises")) r.premises.push_back(premise_from_json(p));
    r.premises_hold = j.at("premises_hold").get<bool>();
    r.conclusion_evaluated = j.at("conclusion_evaluated").get<bool>();
    r.conclusion_holds = j.at("conclusion_holds").get<bool>();
    r.consistent = j.at("consistent").get<bool>();
    if (j.contains("conclusion_order"))
        r.conclusion_order = order_verdict_from_json(j.at("conclusion_order"));
    if (j.contains("conclusion_scalar")) {
        const auto& s = j.at("conclusion_scalar");
        r.conclusion_scalar =
            ScalarConclusion{s.at("name").get<std::string>(), s.at("value").get<double>(),
                             s.at("tolerance").get<double>(), s.at("holds").get<bool>()};
    }
    if (j.contains("dual_form_agrees"))
        r.dual_form_agrees = j.at("dual_form_agrees").get<bool>();
    return r;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, target);
}

void write_json_atomic(const std::string& path, const nlohmann::json& j) {
    write_text_atomic(path, j.dump(2) + "\n");
}

std::string format_double(double x) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& columns) {
    if (columns.size() != header.size())
        throw std::invalid_argument("csv_table: header/column count mismatch");
    std::string out;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c) out += ',';
        out += header[c];
    }
    out += '\n';
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (const auto& col : columns)
        if (col.size() != rows) throw std::invalid_argument("csv_table: ragged columns");
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) out += ',';
            out += format_double(columns[c][r]);
        }
        out += '\n';
    }
    return out;
}

} // namespace copord
