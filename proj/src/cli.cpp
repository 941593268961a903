#include "riskeq/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "riskeq/axioms.hpp"
#include "riskeq/errors.hpp"
#include "riskeq/market.hpp"
#include "riskeq/payoff.hpp"
#include "riskeq/portfolio.hpp"
#include "riskeq/risk.hpp"
#include "riskeq/scenario.hpp"
#include "riskeq/shortfall.hpp"
#include "riskeq/version.hpp"

namespace riskeq {

namespace {

using ojson = nlohmann::ordered_json;

ojson to_json(const PropertyCounterexample& ce) {
    ojson j;
    j["x"] = ce.x;
    if (!ce.y.empty()) j["y"] = ce.y;
    j["parameter"] = ce.parameter;
    j["lhs"] = ce.lhs;
    j["rhs"] = ce.rhs;
    return j;
}

void render_text(const ojson& j, const std::string& prefix, std::ostream& os) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        const ojson& v = it.value();
        const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
        if (v.is_object()) {
            render_text(v, key, os);
        } else if (v.is_array() && !v.empty() && v.front().is_object()) {
            for (std::size_t i = 0; i < v.size(); ++i) {
                render_text(v[i], key + "[" + std::to_string(i) + "]", os);
            }
        } else if (v.is_string()) {
            os << key << ": " << v.get<std::string>() << "\n";
        } else {
            os << key << ": " << v.dump() << "\n";
        }
    }
}

void emit(const ojson& report, const std::string& format, const std::string& out_path) {
    std::string rendered;
    if (format == "json") {
        rendered = report.dump(2);
        rendered += "\n";
    } else {
        std::ostringstream ss;
        render_text(report, "", ss);
        rendered = ss.str();
    }
    if (out_path.empty()) {
        std::cout << rendered;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw InputError("cannot write report to '" + out_path + "'");
        out << rendered;
    }
}

struct Common {
    std::string scenario_path;
    std::string out_path;
    std::string format = "text";
    double tol = kMembershipTol;
};

Scenario require_scenario(const Common& c) {
    if (c.scenario_path.empty()) {
        throw InputError("--scenario is required for this command");
    }
    return load_scenario(c.scenario_path);
}

ojson report_shell(const std::string& command, const Common& c, const Scenario& s) {
    ojson j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["command"] = command;
    j["scenario"] = c.scenario_path;
    j["input_digest"] = scenario_digest(s);
    return j;
}

int finish(ojson& report, const Common& c, std::optional<bool> pass) {
    if (pass) report["pass"] = *pass;
    emit(report, c.format, c.out_path);
    return (pass && !*pass) ? 1 : 0;
}

int cmd_check_arbitrage(const Common& c) {
    const Scenario s = require_scenario(c);
    const ArbitrageReport rep = check_arbitrage(s.market);
    ojson out = report_shell("check-arbitrage", c, s);
    ojson res;
    res["arbitrage_free"] = rep.arbitrage_free;
    if (rep.certificate) {
        ojson cert;
        cert["state_prices"] = rep.certificate->state_prices;
        cert["strictness"] = rep.certificate->strictness;
        cert["residual"] = rep.certificate->residual;
        res["certificate"] = std::move(cert);
    }
    if (rep.witness) {
        ojson wit;
        wit["portfolio"] = rep.witness->portfolio;
        wit["cost"] = rep.witness->cost;
        wit["payoff"] = rep.witness->payoff;
        res["witness"] = std::move(wit);
    }
    out["results"] = std::move(res);
    return finish(out, c, rep.arbitrage_free);
}

int cmd_price(const Common& c, const std::string& target_path) {
    const Scenario s = require_scenario(c);
    const Payoff target = load_payoff_file(target_path, s.market.num_states());
    const ReplicationReport rep = superreplication_price(s.market, target);
    const ValuationReport val = valuation_bound(s.market, target);
    const double gap = std::fabs(rep.price - val.value);

    ojson out = report_shell("price", c, s);
    out["target"] = target_path;
    ojson res;
    res["price"] = rep.price;
    res["portfolio"] = rep.portfolio;
    res["portfolio_payoff"] = rep.payoff;
    res["valuation_bound"] = val.value;
    res["state_prices"] = val.state_prices;
    res["duality_gap"] = gap;
    out["results"] = std::move(res);
    return finish(out, c, gap <= 1e-6);
}

int cmd_risk(const Common& c, const std::string& position_path) {
    const Scenario s = require_scenario(c);
    const Payoff x = load_payoff_file(position_path, s.market.num_states());
    const RiskReport rep = maxmin_utility(s.ambiguity, x, c.tol);
    const double cone_value = cone_risk(acceptance_cone(s.ambiguity), x);

    ojson out = report_shell("risk", c, s);
    out["position"] = position_path;
    ojson res;
    res["utility"] = rep.utility;
    res["value"] = rep.value;
    res["argmin_vertex"] = rep.argmin_vertex;
    res["acceptable"] = rep.acceptable;
    res["cone_value"] = cone_value;
    out["results"] = std::move(res);
    return finish(out, c, std::nullopt);
}

int cmd_sr(const Common& c, const std::string& position_path) {
    const Scenario s = require_scenario(c);
    const Payoff x = load_payoff_file(position_path, s.market.num_states());
    const ShortfallReport rep = shortfall_risk(s.ambiguity, s.loss, s.threshold, x);

    ojson out = report_shell("sr", c, s);
    out["position"] = position_path;
    ojson res;
    res["value"] = rep.value;
    res["loss"] = s.loss.name();
    res["lambda"] = rep.threshold;
    res["strict_loss"] = rep.strict_loss;
    res["iterations"] = rep.iterations;
    std::optional<bool> pass;
    if (s.loss.kind == LossKind::Identity && s.threshold == 0.0) {
        const bool matches = sr_matches_cone_risk(s.ambiguity, x);
        res["matches_cone_value"] = matches;
        pass = matches;
    }
    out["results"] = std::move(res);
    return finish(out, c, pass);
}

int cmd_optimize(const Common& c) {
    const Scenario s = require_scenario(c);
    const OptimizationResult rep = optimize_position(s.market, s.ambiguity);

    ojson out = report_shell("optimize", c, s);
    ojson res;
    res["position"] = rep.position;
    res["portfolio"] = rep.portfolio;
    res["utility"] = rep.utility;
    res["risk"] = rep.risk;
    res["argmin_vertex"] = rep.argmin_vertex;
    res["autarky_utility"] = rep.autarky_utility;
    res["lowered_exposure"] = rep.lowered_exposure;
    res["budget_slack"] = rep.budget_slack;
    out["results"] = std::move(res);
    return finish(out, c, std::nullopt);
}

int cmd_prudence(const Common& c) {
    const Scenario s = require_scenario(c);
    const PrudenceReport rep = prudence_check(s.market, s.ambiguity);

    ojson out = report_shell("prudence", c, s);
    ojson res;
    res["floor"] = rep.floor;
    res["utility"] = rep.utility;
    res["floor_cost"] = rep.floor_cost;
    res["constant_affordable"] = rep.constant_affordable;
    res["value_matches"] = rep.value_matches;
    out["results"] = std::move(res);
    return finish(out, c, rep.pass);
}

int cmd_equivalence(const Common& c) {
    const Scenario s = require_scenario(c);
    const EquivalenceReport rep = equivalence_report(s.market, s.ambiguity);

    ojson out = report_shell("equivalence", c, s);
    ojson res;
    res["max_utility"] = rep.max_utility;
    res["min_risk"] = rep.min_risk;
    res["value_gap"] = rep.value_gap;
    res["attainment_gap"] = rep.attainment_gap;
    res["values_negate"] = rep.values_negate;
    res["position_attains"] = rep.position_attains;
    out["results"] = std::move(res);
    return finish(out, c, rep.pass);
}

int cmd_axioms(const Common& c, int trials, std::uint64_t seed) {
    const Scenario s = require_scenario(c);
    const AxiomReport rep = run_axiom_battery(s.ambiguity, trials, seed);

    ojson out = report_shell("axioms", c, s);
    ojson res;
    res["trials"] = rep.trials;
    res["seed"] = rep.seed;
    ojson axioms = ojson::array();
    for (const AxiomResult& a : rep.axioms) {
        ojson aj;
        aj["axiom"] = a.axiom;
        aj["passed"] = a.passed;
        aj["checks"] = a.checks;
        if (a.counterexample) aj["counterexample"] = to_json(*a.counterexample);
        axioms.push_back(std::move(aj));
    }
    res["axioms"] = std::move(axioms);
    out["results"] = std::move(res);
    return finish(out, c, rep.all_passed());
}

int cmd_claim1(const Common& c, const std::string& pihat_text) {
    const Scenario s = require_scenario(c);
    const ProbabilityVector probe(parse_number_list(pihat_text));
    const AcceptanceWitness w = acceptance_witness(s.ambiguity, probe);

    ojson out = report_shell("claim1", c, s);
    ojson res;
    res["probe"] = probe.weights();
    res["witness"] = w.payoff;
    res["probe_expectation"] = w.reference_expectation;
    res["worst_case"] = w.worst_case;
    out["results"] = std::move(res);
    return finish(out, c, true);
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"finite-state engine for worst-case utility and shortfall risk"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.require_subcommand(1);

    Common c;
    app.add_option("--scenario", c.scenario_path, "scenario file (JSON)");
    app.add_option("--out", c.out_path, "write the report to this path instead of stdout");
    app.add_option("--tol", c.tol, "membership tolerance override");
    app.add_option("--format", c.format, "report format")
        ->check(CLI::IsMember({"json", "text"}));

    auto* arb = app.add_subcommand("check-arbitrage",
                                   "decide arbitrage and emit state prices or a witness");
    arb->fallthrough();

    std::string target_path;
    auto* price = app.add_subcommand("price", "super-replication price and valuation bound");
    price->add_option("--target", target_path, "target payoff file")->required();
    price->fallthrough();

    std::string risk_position;
    auto* risk = app.add_subcommand("risk", "worst-case utility and capital requirement");
    risk->add_option("--position", risk_position, "position payoff file")->required();
    risk->fallthrough();

    std::string sr_position;
    auto* sr = app.add_subcommand("sr", "shortfall risk under the scenario's loss function");
    sr->add_option("--position", sr_position, "position payoff file")->required();
    sr->fallthrough();

    auto* optimize = app.add_subcommand("optimize", "maxmin position under the trading budget");
    optimize->fallthrough();

    auto* prudence = app.add_subcommand(
        "prudence", "full-simplex check: constant payout at the floor is optimal");
    prudence->fallthrough();

    auto* equivalence = app.add_subcommand(
        "equivalence", "utility maximization against risk minimization, both directions");
    equivalence->fallthrough();

    int trials = 1000;
    std::uint64_t seed = 0;
    auto* axioms = app.add_subcommand("axioms", "randomized preference-axiom battery");
    axioms->add_option("--trials", trials, "trials per axiom")->check(CLI::PositiveNumber);
    axioms->add_option("--seed", seed, "PRNG seed");
    axioms->fallthrough();

    std::string pihat_text;
    auto* claim1 = app.add_subcommand(
        "claim1", "payoff accepted by a probe measure but rejected by the whole set");
    claim1->add_option("--pihat", pihat_text, "probe probability vector, comma-separated")
        ->required();
    claim1->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (arb->parsed()) return cmd_check_arbitrage(c);
        if (price->parsed()) return cmd_price(c, target_path);
        if (risk->parsed()) return cmd_risk(c, risk_position);
        if (sr->parsed()) return cmd_sr(c, sr_position);
        if (optimize->parsed()) return cmd_optimize(c);
        if (prudence->parsed()) return cmd_prudence(c);
        if (equivalence->parsed()) return cmd_equivalence(c);
        if (axioms->parsed()) return cmd_axioms(c, trials, seed);
        if (claim1->parsed()) return cmd_claim1(c, pihat_text);
        std::cerr << "no command given\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace riskeq
