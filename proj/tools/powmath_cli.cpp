// Copyright (c) 2026 The powmath developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.
//
// Command line front end. Every command is a pure function of its inputs:
// identical invocations produce identical bytes. Exit codes: 0 success,
// 2 usage or input error, 3 simulate runs whose requested profitability
// crossing does not exist.

#include <powmath/doublespend.hpp>
#include <powmath/io.hpp>
#include <powmath/nakamoto.hpp>
#include <powmath/simulator.hpp>
#include <powmath/strategies.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace powmath;
using nlohmann::json;

namespace {

struct CommonOpts {
    std::string format = "json";
    std::string output;
    int precision = 10;
    double tau0 = 600.0;
    double b = 12.5;
};

void add_common(CLI::App* cmd, CommonOpts& c)
{
    cmd->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--output", c.output, "Write the result to this file instead of stdout");
    cmd->add_option("--precision", c.precision,
                    "Significant digits for serialized numbers, 1..17")
        ->capture_default_str();
    cmd->add_option("--tau0", c.tau0, "Target inter-block time in seconds")
        ->capture_default_str();
    cmd->add_option("--b", c.b, "Block reward in coins")->capture_default_str();
}

std::string sig(double v, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

void emit(const std::string& text, const CommonOpts& c)
{
    if (c.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(c.output, std::ios::binary);
    if (!out || !(out << text))
        throw std::runtime_error("cannot write output file " + c.output);
}

std::string dump_doc(const std::string& command, json inputs, json results)
{
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = command;
    doc["inputs"] = std::move(inputs);
    doc["results"] = std::move(results);
    return doc.dump(2) + "\n";
}

int run_ds_prob(double q, unsigned z, std::optional<double> kappa, const CommonOpts& c)
{
    validate_precision(c.precision);
    NetworkParams np;
    np.q = q;
    np.tau0 = c.tau0;
    np.b = c.b;
    const double prob = kappa ? double_spend_probability_conditional({z, np, kappa})
                              : double_spend_probability(z, np);

    if (c.format == "csv") {
        std::string text = "q,z,kappa,probability\n";
        text += sig(q, c.precision) + "," + std::to_string(z) + ",";
        if (kappa) text += sig(*kappa, c.precision);
        text += "," + sig(prob, c.precision) + "\n";
        emit(text, c);
    } else {
        json inputs{{"q", q}, {"z", z}};
        if (kappa) inputs["kappa"] = *kappa;
        emit(dump_doc("ds-prob", inputs,
                      json{{"probability", round_sig(prob, c.precision)}}),
             c);
    }
    return 0;
}

int run_ds_table(double q, unsigned zmax, const std::vector<double>& risks,
                 const CommonOpts& c)
{
    validate_precision(c.precision);
    if (zmax < 1) throw std::domain_error("ds-table: zmax must be >= 1");
    NetworkParams np;
    np.q = q;
    np.tau0 = c.tau0;
    np.b = c.b;

    struct Row {
        unsigned z;
        double prob, asym;
    };
    std::vector<Row> rows;
    for (unsigned z = 1; z <= zmax; ++z)
        rows.push_back({z, double_spend_probability(z, np), double_spend_asymptotic(z, np)});
    std::vector<std::pair<double, unsigned>> confirmations;
    for (double risk : risks) confirmations.emplace_back(risk, confirmations_for_risk(risk, np));

    if (c.format == "csv") {
        std::string text = "z,probability,asymptotic,ratio\n";
        for (const Row& r : rows)
            text += std::to_string(r.z) + "," + sig(r.prob, c.precision) + "," +
                    sig(r.asym, c.precision) + "," + sig(r.prob / r.asym, c.precision) + "\n";
        if (!confirmations.empty()) {
            text += "\nrisk,confirmations\n";
            for (const auto& [risk, z] : confirmations)
                text += sig(risk, c.precision) + "," + std::to_string(z) + "\n";
        }
        emit(text, c);
    } else {
        json table = json::array();
        for (const Row& r : rows)
            table.push_back({{"z", r.z},
                             {"probability", round_sig(r.prob, c.precision)},
                             {"asymptotic", round_sig(r.asym, c.precision)},
                             {"ratio", round_sig(r.prob / r.asym, c.precision)}});
        json conf = json::array();
        for (const auto& [risk, z] : confirmations)
            conf.push_back({{"risk", risk}, {"z", z}});
        emit(dump_doc("ds-table", json{{"q", q}, {"zmax", zmax}},
                      json{{"table", table}, {"confirmations", conf}}),
             c);
    }
    return 0;
}

int run_compare(double q, double gamma, const std::vector<unsigned>& A_values,
                const CommonOpts& c)
{
    validate_precision(c.precision);
    NetworkParams np;
    np.q = q;
    np.gamma = gamma;
    np.tau0 = c.tau0;
    np.b = c.b;
    np.require_minority();

    std::vector<StrategySpec> specs{{StrategyKind::Honest, std::nullopt},
                                    {StrategyKind::SelfishMining, std::nullopt},
                                    {StrategyKind::LeadStubborn, std::nullopt},
                                    {StrategyKind::EqualForkStubborn, std::nullopt}};
    for (unsigned A : A_values) specs.push_back({StrategyKind::ATrailing, A});

    if (c.format == "csv") {
        std::string text = "kind,A,revenue_ratio,apparent_hashrate,is_profitable\n";
        for (const StrategySpec& spec : specs) {
            const ProfitabilityResult r = strategy_revenue_ratio(spec, np);
            text += strategy_kind_name(spec.kind) + ",";
            if (spec.A) text += std::to_string(*spec.A);
            text += "," + sig(r.revenue_ratio_over_honest, c.precision) + ",";
            if (r.apparent_hashrate) text += sig(*r.apparent_hashrate, c.precision);
            text += std::string(",") + (r.is_profitable ? "true" : "false") + "\n";
        }
        emit(text, c);
    } else {
        json rows = json::array();
        for (const StrategySpec& spec : specs) {
            const ProfitabilityResult r = strategy_revenue_ratio(spec, np);
            json row{{"kind", strategy_kind_name(spec.kind)},
                     {"revenue_ratio", round_sig(r.revenue_ratio_over_honest, c.precision)},
                     {"is_profitable", r.is_profitable}};
            if (spec.A) row["A"] = *spec.A;
            if (r.apparent_hashrate)
                row["apparent_hashrate"] = round_sig(*r.apparent_hashrate, c.precision);
            rows.push_back(row);
        }
        emit(dump_doc("compare", json{{"q", q}, {"gamma", gamma}},
                      json{{"strategies", rows}}),
             c);
    }
    return 0;
}

std::vector<double> linear_grid(double lo, double hi, unsigned steps, const char* name)
{
    if (steps < 1) throw std::domain_error(std::string(name) + " steps must be >= 1");
    if (hi < lo) throw std::domain_error(std::string(name) + " range must have max >= min");
    std::vector<double> grid;
    if (steps == 1) {
        grid.push_back(lo);
        return grid;
    }
    for (unsigned i = 0; i < steps; ++i)
        grid.push_back(lo + (hi - lo) * static_cast<double>(i) / (steps - 1));
    return grid;
}

int run_dominance(double qmin, double qmax, unsigned qsteps, double gmin, double gmax,
                  unsigned gsteps, const std::vector<unsigned>& A_values, const CommonOpts& c)
{
    validate_precision(c.precision);
    const auto cells = dominance_grid(linear_grid(qmin, qmax, qsteps, "q"),
                                      linear_grid(gmin, gmax, gsteps, "gamma"), A_values);

    if (c.format == "csv") {
        std::string text = "q,gamma,winner,winner_A,winner_ratio\n";
        for (const DominanceCell& cell : cells) {
            text += sig(cell.q, c.precision) + "," + sig(cell.gamma, c.precision) + "," +
                    strategy_kind_name(cell.winner.kind) + ",";
            if (cell.winner.A) text += std::to_string(*cell.winner.A);
            text += "," + sig(cell.winner_ratio, c.precision) + "\n";
        }
        emit(text, c);
    } else {
        json rows = json::array();
        for (const DominanceCell& cell : cells) {
            json row{{"q", round_sig(cell.q, c.precision)},
                     {"gamma", round_sig(cell.gamma, c.precision)},
                     {"winner", strategy_kind_name(cell.winner.kind)},
                     {"winner_ratio", round_sig(cell.winner_ratio, c.precision)}};
            if (cell.winner.A) row["winner_A"] = *cell.winner.A;
            rows.push_back(row);
        }
        emit(dump_doc("dominance",
                      json{{"q_min", qmin},
                           {"q_max", qmax},
                           {"q_steps", qsteps},
                           {"gamma_min", gmin},
                           {"gamma_max", gmax},
                           {"gamma_steps", gsteps},
                           {"A_values", A_values}},
                      json{{"grid", rows}}),
             c);
    }
    return 0;
}

int run_simulate(const std::string& config_path, const CommonOpts& c)
{
    validate_precision(c.precision);
    std::ifstream in(config_path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open config file " + config_path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config file is not valid JSON: ") + e.what());
    }
    const SimulationConfig cfg = config_from_json(doc);
    const SimulationReport report = run(cfg);

    if (c.format == "csv") {
        emit(report_to_csv(report, cfg, c.precision), c);
    } else {
        const json full = report_to_json(report, cfg, c.precision);
        emit(dump_doc("simulate", full.at("config"), full.at("report")), c);
    }
    // A requested profitability estimate with no crossing is the one
    // non-error outcome that deserves its own exit status.
    if (cfg.estimate_time_to_profitability && !report.time_to_profitability) return 3;
    return 0;
}

int run_min_value(double q, unsigned z, std::optional<unsigned> A, const CommonOpts& c)
{
    validate_precision(c.precision);
    NetworkParams np;
    np.q = q;
    np.tau0 = c.tau0;
    np.b = c.b;
    const double v0 = minimal_profitable_double_spend(z, np);
    std::optional<double> vstar;
    if (A) vstar = break_even_double_spend(z, *A, np);

    if (c.format == "csv") {
        std::string text = "q,z,b,v0_coins,v0_coinbases,A,break_even_coins,break_even_coinbases\n";
        text += sig(q, c.precision) + "," + std::to_string(z) + "," + sig(np.b, c.precision) +
                "," + sig(v0, c.precision) + "," + sig(v0 / np.b, c.precision) + ",";
        if (A) text += std::to_string(*A);
        text += ",";
        if (vstar) text += sig(*vstar, c.precision);
        text += ",";
        if (vstar) text += sig(*vstar / np.b, c.precision);
        text += "\n";
        emit(text, c);
    } else {
        json inputs{{"q", q}, {"z", z}, {"b", np.b}};
        if (A) inputs["A"] = *A;
        json results{{"v0_coins", round_sig(v0, c.precision)},
                     {"v0_coinbases", round_sig(v0 / np.b, c.precision)}};
        if (vstar) {
            results["break_even_coins"] = round_sig(*vstar, c.precision);
            results["break_even_coinbases"] = round_sig(*vstar / np.b, c.precision);
            results["break_even_over_v0"] = round_sig(*vstar / v0, c.precision);
        }
        emit(dump_doc("min-value", inputs, results), c);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Proof-of-work mining-model calculator and simulator"};
    app.require_subcommand(1);
    CommonOpts common;
    std::function<int()> action;

    {
        auto* cmd = app.add_subcommand("ds-prob",
                                       "Double-spend success probability after z confirmations");
        auto q = std::make_shared<double>(0.1);
        auto z = std::make_shared<unsigned>(6);
        auto kappa = std::make_shared<double>(0.0);
        cmd->add_option("--q", *q, "Rogue hashrate share")->required();
        cmd->add_option("--z", *z, "Confirmation count")->required();
        auto* kopt = cmd->add_option("--kappa", *kappa,
                                     "Observed confirmation-time factor for the conditional law");
        add_common(cmd, common);
        cmd->callback([&, q, z, kappa, kopt] {
            action = [&, q, z, kappa, kopt] {
                std::optional<double> k;
                if (kopt->count() > 0) k = *kappa;
                return run_ds_prob(*q, *z, k, common);
            };
        });
    }

    {
        auto* cmd = app.add_subcommand("ds-table",
                                       "Risk table over confirmation counts, with optional "
                                       "confirmation lookups");
        auto q = std::make_shared<double>(0.1);
        auto zmax = std::make_shared<unsigned>(10);
        auto risks = std::make_shared<std::vector<double>>();
        cmd->add_option("--q", *q, "Rogue hashrate share")->required();
        cmd->add_option("--zmax", *zmax, "Largest confirmation count")->capture_default_str();
        cmd->add_option("--risk", *risks, "Risk level to invert (repeatable)");
        add_common(cmd, common);
        cmd->callback([&, q, zmax, risks] {
            action = [&, q, zmax, risks] { return run_ds_table(*q, *zmax, *risks, common); };
        });
    }

    {
        auto* cmd = app.add_subcommand("compare",
                                       "Revenue ratios of the block-withholding strategies");
        auto q = std::make_shared<double>(0.1);
        auto gamma = std::make_shared<double>(0.0);
        auto A_values = std::make_shared<std::vector<unsigned>>();
        cmd->add_option("--q", *q, "Rogue hashrate share")->required();
        cmd->add_option("--gamma", *gamma, "Fork-propagation share")->required();
        cmd->add_option("--A", *A_values, "Trailing abandon threshold (repeatable)");
        add_common(cmd, common);
        cmd->callback([&, q, gamma, A_values] {
            action = [&, q, gamma, A_values] {
                return run_compare(*q, *gamma, *A_values, common);
            };
        });
    }

    {
        auto* cmd = app.add_subcommand("dominance",
                                       "Best strategy per cell of a (q, gamma) grid");
        auto qmin = std::make_shared<double>(0.05);
        auto qmax = std::make_shared<double>(0.45);
        auto qsteps = std::make_shared<unsigned>(9);
        auto gmin = std::make_shared<double>(0.0);
        auto gmax = std::make_shared<double>(1.0);
        auto gsteps = std::make_shared<unsigned>(11);
        auto A_values = std::make_shared<std::vector<unsigned>>();
        cmd->add_option("--q-min", *qmin)->capture_default_str();
        cmd->add_option("--q-max", *qmax)->capture_default_str();
        cmd->add_option("--q-steps", *qsteps)->capture_default_str();
        cmd->add_option("--gamma-min", *gmin)->capture_default_str();
        cmd->add_option("--gamma-max", *gmax)->capture_default_str();
        cmd->add_option("--gamma-steps", *gsteps)->capture_default_str();
        cmd->add_option("--A", *A_values, "Trailing abandon threshold (repeatable)");
        add_common(cmd, common);
        cmd->callback([&, qmin, qmax, qsteps, gmin, gmax, gsteps, A_values] {
            action = [&, qmin, qmax, qsteps, gmin, gmax, gsteps, A_values] {
                return run_dominance(*qmin, *qmax, *qsteps, *gmin, *gmax, *gsteps, *A_values,
                                     common);
            };
        });
    }

    {
        auto* cmd = app.add_subcommand("simulate", "Run a simulation described by a JSON config");
        auto path = std::make_shared<std::string>();
        cmd->add_option("--config", *path, "Path to the JSON config")->required();
        add_common(cmd, common);
        cmd->callback([&, path] {
            action = [&, path] { return run_simulate(*path, common); };
        });
    }

    {
        auto* cmd = app.add_subcommand("min-value",
                                       "Minimal profitable double-spend amount, optionally with "
                                       "the break-even amount at threshold A");
        auto q = std::make_shared<double>(0.1);
        auto z = std::make_shared<unsigned>(1);
        auto A = std::make_shared<unsigned>(1);
        cmd->add_option("--q", *q, "Rogue hashrate share")->required();
        cmd->add_option("--z", *z, "Confirmation count")->required();
        auto* aopt = cmd->add_option("--A", *A, "Abandon threshold for the break-even amount");
        add_common(cmd, common);
        cmd->callback([&, q, z, A, aopt] {
            action = [&, q, z, A, aopt] {
                std::optional<unsigned> a;
                if (aopt->count() > 0) a = *A;
                return run_min_value(*q, *z, a, common);
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return action ? action() : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
