// Copyright (c) 2026 The powmath developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <powmath/io.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace powmath {

namespace {

using nlohmann::json;

std::string format_sig(double value, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, value);
    return buf;
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const char* where)
{
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                known = true;
                break;
            }
        if (!known)
            throw std::invalid_argument(std::string("config: unknown key \"") + it.key() +
                                        "\" in " + where);
    }
}

const json& require_key(const json& obj, const char* key, const char* where)
{
    auto it = obj.find(key);
    if (it == obj.end())
        throw std::invalid_argument(std::string("config: missing \"") + key + "\" in " + where);
    return *it;
}

std::uint64_t get_uint(const json& j, const char* name)
{
    if (!j.is_number_integer() || (!j.is_number_unsigned() && j.get<std::int64_t>() < 0))
        throw std::invalid_argument(std::string("config: \"") + name +
                                    "\" must be a nonnegative integer");
    return j.get<std::uint64_t>();
}

double get_number(const json& j, const char* name)
{
    if (!j.is_number())
        throw std::invalid_argument(std::string("config: \"") + name + "\" must be a number");
    return j.get<double>();
}

bool get_bool(const json& j, const char* name)
{
    if (!j.is_boolean())
        throw std::invalid_argument(std::string("config: \"") + name + "\" must be a boolean");
    return j.get<bool>();
}

StrategyKind kind_from_token(const std::string& token)
{
    if (token == "honest") return StrategyKind::Honest;
    if (token == "selfish") return StrategyKind::SelfishMining;
    if (token == "lead_stubborn") return StrategyKind::LeadStubborn;
    if (token == "equal_fork_stubborn") return StrategyKind::EqualForkStubborn;
    if (token == "trailing") return StrategyKind::ATrailing;
    throw std::invalid_argument("config: unknown strategy kind \"" + token + "\"");
}

json estimate_to_json(const Estimate& e, int precision)
{
    return json{{"value", round_sig(e.value, precision)},
                {"std_error", round_sig(e.std_error, precision)}};
}

} // namespace

double round_sig(double value, int digits)
{
    validate_precision(digits);
    if (!std::isfinite(value)) return value;
    return std::strtod(format_sig(value, digits).c_str(), nullptr);
}

void validate_precision(int digits)
{
    if (digits < 1 || digits > 17)
        throw std::domain_error("precision must be between 1 and 17 significant digits");
}

SimulationConfig config_from_json(const json& doc)
{
    if (!doc.is_object()) throw std::invalid_argument("config: document must be a JSON object");
    reject_unknown_keys(doc,
                        {"schema_version", "params", "strategy", "horizon",
                         "difficulty_adjustment", "adjustment_window", "seed", "trials",
                         "estimate_time_to_profitability"},
                        "the top-level object");
    if (get_uint(require_key(doc, "schema_version", "the top-level object"), "schema_version") !=
        static_cast<std::uint64_t>(kSchemaVersion))
        throw std::invalid_argument("config: unsupported schema_version");

    SimulationConfig cfg;

    if (auto it = doc.find("params"); it != doc.end()) {
        if (!it->is_object()) throw std::invalid_argument("config: \"params\" must be an object");
        reject_unknown_keys(*it, {"q", "gamma", "tau0", "b"}, "params");
        if (auto f = it->find("q"); f != it->end()) cfg.params.q = get_number(*f, "q");
        if (auto f = it->find("gamma"); f != it->end()) cfg.params.gamma = get_number(*f, "gamma");
        if (auto f = it->find("tau0"); f != it->end()) cfg.params.tau0 = get_number(*f, "tau0");
        if (auto f = it->find("b"); f != it->end()) cfg.params.b = get_number(*f, "b");
    }

    {
        const json& st = require_key(doc, "strategy", "the top-level object");
        if (!st.is_object()) throw std::invalid_argument("config: \"strategy\" must be an object");
        const json& kind_node = require_key(st, "kind", "strategy");
        if (!kind_node.is_string())
            throw std::invalid_argument("config: strategy \"kind\" must be a string");
        const std::string token = kind_node.get<std::string>();
        if (token == "double_spend") {
            reject_unknown_keys(st, {"kind", "z", "A", "v"}, "strategy");
            DoubleSpendScenario sc;
            const std::uint64_t z = get_uint(require_key(st, "z", "strategy"), "z");
            const std::uint64_t a = get_uint(require_key(st, "A", "strategy"), "A");
            if (z > 0xffffffffULL || a > 0xffffffffULL)
                throw std::invalid_argument("config: z and A must fit in 32 bits");
            sc.z = static_cast<unsigned>(z);
            sc.A = static_cast<unsigned>(a);
            if (auto f = st.find("v"); f != st.end()) sc.v = get_number(*f, "v");
            cfg.strategy = sc;
        } else {
            reject_unknown_keys(st, {"kind", "A"}, "strategy");
            StrategySpec spec;
            spec.kind = kind_from_token(token);
            if (auto f = st.find("A"); f != st.end()) {
                const std::uint64_t a = get_uint(*f, "A");
                if (a > 0xffffffffULL)
                    throw std::invalid_argument("config: A must fit in 32 bits");
                spec.A = static_cast<unsigned>(a);
            }
            cfg.strategy = spec;
        }
    }

    {
        const json& hz = require_key(doc, "horizon", "the top-level object");
        if (!hz.is_object()) throw std::invalid_argument("config: \"horizon\" must be an object");
        reject_unknown_keys(hz, {"cycles", "sim_time"}, "horizon");
        if (auto f = hz.find("cycles"); f != hz.end()) cfg.cycles = get_uint(*f, "cycles");
        if (auto f = hz.find("sim_time"); f != hz.end()) cfg.sim_time = get_number(*f, "sim_time");
    }

    if (auto it = doc.find("difficulty_adjustment"); it != doc.end())
        cfg.difficulty_adjustment = get_bool(*it, "difficulty_adjustment");
    if (auto it = doc.find("adjustment_window"); it != doc.end()) {
        const std::uint64_t w = get_uint(*it, "adjustment_window");
        if (w > 0xffffffffULL)
            throw std::invalid_argument("config: adjustment_window must fit in 32 bits");
        cfg.adjustment_window = static_cast<unsigned>(w);
    }
    if (auto it = doc.find("seed"); it != doc.end()) cfg.seed = get_uint(*it, "seed");
    if (auto it = doc.find("trials"); it != doc.end()) {
        const std::uint64_t t = get_uint(*it, "trials");
        if (t > 0xffffffffULL) throw std::invalid_argument("config: trials must fit in 32 bits");
        cfg.trials = static_cast<unsigned>(t);
    }
    if (auto it = doc.find("estimate_time_to_profitability"); it != doc.end())
        cfg.estimate_time_to_profitability = get_bool(*it, "estimate_time_to_profitability");

    cfg.validate();
    return cfg;
}

json config_to_json(const SimulationConfig& config)
{
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["params"] = {{"q", config.params.q},
                     {"gamma", config.params.gamma},
                     {"tau0", config.params.tau0},
                     {"b", config.params.b}};
    if (const StrategySpec* spec = std::get_if<StrategySpec>(&config.strategy)) {
        json st{{"kind", strategy_kind_name(spec->kind)}};
        if (spec->A) st["A"] = *spec->A;
        doc["strategy"] = st;
    } else {
        const auto& sc = std::get<DoubleSpendScenario>(config.strategy);
        doc["strategy"] = {{"kind", "double_spend"}, {"z", sc.z}, {"A", sc.A}, {"v", sc.v}};
    }
    json hz;
    if (config.cycles > 0) hz["cycles"] = config.cycles;
    if (config.sim_time > 0.0) hz["sim_time"] = config.sim_time;
    doc["horizon"] = hz;
    doc["difficulty_adjustment"] = config.difficulty_adjustment;
    doc["adjustment_window"] = config.adjustment_window;
    doc["seed"] = config.seed;
    doc["trials"] = config.trials;
    doc["estimate_time_to_profitability"] = config.estimate_time_to_profitability;
    return doc;
}

json report_to_json(const SimulationReport& report, const SimulationConfig& config, int precision)
{
    validate_precision(precision);
    json rep;
    rep["revenue_ratio"] = estimate_to_json(report.revenue_ratio, precision);
    rep["apparent_hashrate"] = estimate_to_json(report.apparent_hashrate, precision);
    rep["mean_cycle_duration"] = estimate_to_json(report.mean_cycle_duration, precision);
    rep["delta"] = report.delta ? estimate_to_json(*report.delta, precision) : json(nullptr);
    rep["success_frequency"] = report.success_frequency
                                   ? estimate_to_json(*report.success_frequency, precision)
                                   : json(nullptr);
    if (report.time_to_profitability) {
        rep["time_to_profitability"] =
            json{{"seconds", round_sig(report.time_to_profitability->seconds, precision)},
                 {"std_error", round_sig(report.time_to_profitability->std_error, precision)}};
    } else {
        rep["time_to_profitability"] = nullptr;
    }
    rep["cycles_executed"] = report.cycles_executed;
    rep["seed"] = report.seed;
    rep["total_time"] = round_sig(report.total_time, precision);
    rep["final_difficulty"] = round_sig(report.final_difficulty, precision);

    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["config"] = config_to_json(config);
    doc["report"] = rep;
    return doc;
}

std::string report_to_csv(const SimulationReport& report, const SimulationConfig& config,
                          int precision)
{
    validate_precision(precision);
    (void)config;
    std::string out =
        "revenue_ratio,revenue_ratio_se,apparent_hashrate,apparent_hashrate_se,"
        "delta,delta_se,mean_cycle_duration,mean_cycle_duration_se,"
        "success_frequency,success_frequency_se,"
        "time_to_profitability,time_to_profitability_se,"
        "cycles_executed,seed,total_time,final_difficulty\n";
    auto cell = [&](double v) { out += format_sig(v, precision); };
    auto comma = [&] { out += ','; };

    cell(report.revenue_ratio.value);
    comma();
    cell(report.revenue_ratio.std_error);
    comma();
    cell(report.apparent_hashrate.value);
    comma();
    cell(report.apparent_hashrate.std_error);
    comma();
    if (report.delta) {
        cell(report.delta->value);
        comma();
        cell(report.delta->std_error);
    } else {
        comma();
    }
    comma();
    cell(report.mean_cycle_duration.value);
    comma();
    cell(report.mean_cycle_duration.std_error);
    comma();
    if (report.success_frequency) {
        cell(report.success_frequency->value);
        comma();
        cell(report.success_frequency->std_error);
    } else {
        comma();
    }
    comma();
    if (report.time_to_profitability) {
        cell(report.time_to_profitability->seconds);
        comma();
        cell(report.time_to_profitability->std_error);
    } else {
        comma();
    }
    comma();
    out += std::to_string(report.cycles_executed);
    comma();
    out += std::to_string(report.seed);
    comma();
    cell(report.total_time);
    comma();
    cell(report.final_difficulty);
    out += '\n';
    return out;
}

} // namespace powmath
