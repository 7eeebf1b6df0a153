#include "llocv/config.hpp"

#include <fstream>
#include <set>

#include "json.hpp"

namespace llocv {

namespace {

using nlohmann::json;

const std::set<std::string> kParamKeys = {
    "v_a", "beta", "eta", "v_ele", "xi_e", "f_rep", "dnu_a", "dnu_b",
    "ref_amp_ratio", "alpha_std", "n0"};
const std::set<std::string> kScenarioKeys = {"length_km", "alpha_low"};

double require(const json& doc, const std::string& key, bool preset_fill, double fallback) {
    auto it = doc.find(key);
    if (it == doc.end()) {
        if (preset_fill) return fallback;
        throw ParamError("config: missing key '" + key + "' and no preset requested");
    }
    if (!it->is_number())
        throw ParamError("config: key '" + key + "' must be a number");
    return it->get<double>();
}

} // namespace

Config load_config(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParamError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParamError("config: top-level value must be an object");

    bool preset_fill = false;
    if (doc.contains("preset")) {
        if (!doc["preset"].is_string() || doc["preset"].get<std::string>() != "paper2017")
            throw ParamError("config: unknown preset (only \"paper2017\" is defined)");
        preset_fill = true;
    }

    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (key == "preset") continue;
        if (!kParamKeys.count(key) && !kScenarioKeys.count(key))
            throw ParamError("config: unknown key '" + key + "'");
    }

    const SystemParams def = paper2017();
    const AttackScenario def_sc{};

    Config cfg;
    cfg.params.v_a = require(doc, "v_a", preset_fill, def.v_a);
    cfg.params.beta = require(doc, "beta", preset_fill, def.beta);
    cfg.params.eta = require(doc, "eta", preset_fill, def.eta);
    cfg.params.v_ele = require(doc, "v_ele", preset_fill, def.v_ele);
    cfg.params.xi_e = require(doc, "xi_e", preset_fill, def.xi_e);
    cfg.params.f_rep = require(doc, "f_rep", preset_fill, def.f_rep);
    cfg.params.dnu_a = require(doc, "dnu_a", preset_fill, def.dnu_a);
    cfg.params.dnu_b = require(doc, "dnu_b", preset_fill, def.dnu_b);
    cfg.params.ref_amp_ratio = require(doc, "ref_amp_ratio", preset_fill, def.ref_amp_ratio);
    cfg.params.alpha_std = require(doc, "alpha_std", preset_fill, def.alpha_std);
    cfg.params.n0 = require(doc, "n0", preset_fill, def.n0);
    cfg.scenario.length_km = require(doc, "length_km", preset_fill, def_sc.length_km);
    cfg.scenario.alpha_low = require(doc, "alpha_low", preset_fill, def_sc.alpha_low);

    cfg.params.validate();
    cfg.scenario.validate(cfg.params);
    return cfg;
}

Config load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    return load_config(in);
}

} // namespace llocv
