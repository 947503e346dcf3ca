// Copyright 2026 The scqkd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "scqkd/analysis.hpp"
#include "scqkd/error.hpp"
#include "scqkd/montecarlo.hpp"

namespace scqkd::cli {
namespace {

using Json = nlohmann::ordered_json;

struct Options {
    std::string protocol = "trine";
    std::string attack = "standard";
    std::string mix = "symmetric";
    std::string guess_rule = "index";
    std::string format = "json";
    std::string out;
    double q = 0.0;
    double depolarize = 0.0;
    std::uint64_t n = 1'000'000;
    std::uint64_t seed = 1;
    double q_min = 0.0;
    double q_max = 1.0;
    double q_step = 0.01;
    std::uint64_t sifted = 0;
    std::uint64_t total = 0;
    double margin = -1.0;
};

/// A command's result: the JSON record plus the same data as CSV rows.
struct Output {
    Json record;
    std::vector<std::string> csv_header;
    std::vector<std::vector<Json>> csv_rows;
    int exit_code = kExitOk;
};

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

ProtocolKind protocol_of(const Options &o) { return *parse_protocol(o.protocol); }
EnsembleMix mix_of(const Options &o) { return *parse_mix(o.mix); }
GuessRule rule_of(const Options &o) { return o.guess_rule == "posterior" ? GuessRule::Posterior : GuessRule::Index; }

AttackKind attack_of(const Options &o) {
    if (o.attack == "none") return AttackKind::None;
    return o.attack == "gentle" ? AttackKind::Gentle : AttackKind::InterceptResend;
}

EveStrategy strategy_of(const Options &o) {
    switch (attack_of(o)) {
    case AttackKind::None: return EveStrategy::none();
    case AttackKind::InterceptResend: return EveStrategy::intercept_resend(o.q, mix_of(o));
    case AttackKind::Gentle: return EveStrategy::gentle(o.q, mix_of(o));
    }
    return EveStrategy::none();
}

double round4(double x) { return std::round(x * 1e4) / 1e4; }

void put_rates(Json &j, const RateReport &r) {
    j["i_ab"] = r.i_ab;
    j["i_ae"] = r.i_ae;
    j["i_be"] = r.i_be;
    j["r"] = r.r;
}

/// Flattens a single-level record into one CSV row.
void single_row(Output &out) {
    std::vector<Json> row;
    for (const auto &[key, value] : out.record.items()) {
        out.csv_header.push_back(key);
        row.push_back(value);
    }
    out.csv_rows.push_back(std::move(row));
}

Output cmd_analytic(const Options &o) {
    const ProtocolKind protocol = protocol_of(o);
    const auto joint =
        enumerate_joint(protocol, strategy_of(o), ChannelModel::depolarizing_channel(o.depolarize), rule_of(o));
    Output out;
    auto &j = out.record;
    j["command"] = "analytic";
    j["protocol"] = o.protocol;
    j["attack"] = o.attack;
    j["mix"] = o.mix;
    j["q"] = o.q;
    j["depolarize"] = o.depolarize;
    j["guess_rule"] = o.guess_rule;
    j["p_sift"] = joint.p_sift;
    j["qber"] = joint.qber();
    j["p_ae"] = joint.p_ae();
    j["p_be"] = joint.p_be();
    j["p_noguess"] = joint.p_noguess();
    put_rates(j, key_rate(joint));
    single_row(out);
    return out;
}

Output cmd_threshold(const Options &o) {
    if (o.attack == "none") throw UsageError("threshold needs --attack standard or gentle");
    const AttackFamily family = o.attack == "gentle" ? AttackFamily::Gentle : AttackFamily::Standard;
    const Threshold t = find_threshold(protocol_of(o), family, rule_of(o));
    Output out;
    auto &j = out.record;
    j["command"] = "threshold";
    j["protocol"] = o.protocol;
    j["attack"] = o.attack;
    j["mix"] = "symmetric";
    j["guess_rule"] = o.guess_rule;
    j["q_star"] = round4(t.q_star);
    j["qber_star"] = round4(t.qber_star);
    j["r_at_star"] = t.r_at_star;
    single_row(out);
    return out;
}

Output cmd_simulate(const Options &o) {
    const ProtocolKind protocol = protocol_of(o);
    const ChannelModel channel = ChannelModel::depolarizing_channel(o.depolarize);
    const TrialConfig config{protocol, strategy_of(o), channel, o.n, o.seed};
    const SampleStats stats = run_trials(config);
    const auto report = compare_to_oracle(stats, enumerate_joint(protocol, config.eve, channel));

    Output out;
    auto &j = out.record;
    j["command"] = "simulate";
    j["protocol"] = o.protocol;
    j["attack"] = o.attack;
    j["mix"] = o.mix;
    j["q"] = o.q;
    j["depolarize"] = o.depolarize;
    j["seed"] = o.seed;
    j["n_rounds"] = o.n;
    j["sifted"] = stats.sifted;
    j["errors"] = stats.errors;
    j["p_sift"] = stats.sift_rate().value;
    j["qber"] = stats.qber().value;
    j["p_ae"] = stats.eve_agree_a().value;
    j["p_be"] = stats.eve_agree_b().value;
    j["p_noguess"] = stats.eve_abstain_rate().value;
    if (stats.sifted > 0) {
        JointDistribution empirical;
        empirical.p_sift = stats.sift_rate().value;
        for (std::size_t i = 0; i < stats.table.size(); ++i)
            empirical.table[i] = static_cast<double>(stats.table[i]) / static_cast<double>(stats.sifted);
        put_rates(j, key_rate(empirical));
    }
    Json zs = Json::array();
    out.csv_header = {"statistic", "observed", "expected", "trials", "z", "flagged"};
    for (const auto &z : report.entries) {
        // A zero-variance mismatch has infinite z; JSON has no infinity, so
        // it is written as null and always flagged.
        const Json zval = std::isfinite(z.z) ? Json(z.z) : Json(nullptr);
        zs.push_back({{"statistic", z.statistic},
                      {"observed", z.observed},
                      {"expected", z.expected},
                      {"trials", z.trials},
                      {"z", zval},
                      {"flagged", z.flagged}});
        out.csv_rows.push_back({z.statistic, z.observed, z.expected, z.trials, zval, z.flagged});
    }
    j["z_scores"] = zs;
    j["mismatch"] = report.any_flagged;
    out.exit_code = report.any_flagged ? kExitMismatch : kExitOk;
    return out;
}

std::vector<double> q_grid(const Options &o) {
    if (!(o.q_step > 0.0)) throw UsageError("--q-step must be positive");
    if (o.q_min > o.q_max) throw UsageError("--q-min exceeds --q-max");
    // Rounded count so 0..1 step 0.01 gives exactly 101 points.
    const auto steps = static_cast<std::int64_t>(std::floor((o.q_max - o.q_min) / o.q_step + 1e-9));
    std::vector<double> grid;
    for (std::int64_t i = 0; i <= steps; ++i) grid.push_back(std::min(o.q_max, o.q_min + static_cast<double>(i) * o.q_step));
    return grid;
}

Output cmd_sweep(const Options &o) {
    const auto grid = q_grid(o);
    const auto rows = sweep(protocol_of(o), attack_of(o), mix_of(o), ChannelModel::depolarizing_channel(o.depolarize),
                            grid, rule_of(o));
    Output out;
    auto &j = out.record;
    j["command"] = "sweep";
    j["protocol"] = o.protocol;
    j["attack"] = o.attack;
    j["mix"] = o.mix;
    j["depolarize"] = o.depolarize;
    j["guess_rule"] = o.guess_rule;
    j["q_min"] = o.q_min;
    j["q_max"] = o.q_max;
    j["q_step"] = o.q_step;
    Json arr = Json::array();
    out.csv_header = {"q", "p_sift", "qber", "p_noguess", "i_ab", "i_ae", "i_be", "r"};
    for (const auto &row : rows) {
        Json r;
        r["q"] = row.q;
        r["p_sift"] = row.p_sift;
        r["qber"] = row.qber;
        r["p_noguess"] = row.p_noguess;
        put_rates(r, row.rate);
        std::vector<Json> cells;
        for (const auto &[key, value] : r.items()) cells.push_back(value);
        out.csv_rows.push_back(std::move(cells));
        arr.push_back(std::move(r));
    }
    j["rows"] = std::move(arr);
    return out;
}

Output cmd_estimate_q(const Options &o) {
    if (o.total == 0) throw UsageError("--total must be positive");
    if (o.sifted > o.total) throw UsageError("--sifted exceeds --total");
    const ProtocolKind protocol = protocol_of(o);
    const double n = static_cast<double>(o.total);
    const double s = static_cast<double>(o.sifted) / n;
    const double se = std::sqrt(s * (1.0 - s) / n);
    // Default margin: three binomial standard errors.
    const double margin = o.margin >= 0.0 ? o.margin : 3.0 * se;
    const QEstimate est = estimate_q_from_sift(protocol, s, margin);
    const double slope = protocol == ProtocolKind::Trine ? 12.0 : 9.0;
    const auto joint = enumerate_joint(protocol, EveStrategy::intercept_resend(est.q), ChannelModel::ideal());

    Output out;
    auto &j = out.record;
    j["command"] = "estimate-q";
    j["protocol"] = o.protocol;
    j["sifted"] = o.sifted;
    j["total"] = o.total;
    j["margin"] = margin;
    j["p_sift"] = s;
    j["p_sift_std_error"] = se;
    j["q"] = est.q;
    j["q_unclamped"] = est.q_unclamped;
    j["q_std_error"] = slope * se;
    j["clamped"] = est.clamped;
    j["out_of_model"] = est.out_of_model;
    j["qber"] = joint.qber();
    put_rates(j, key_rate(joint));
    single_row(out);
    return out;
}

std::string csv_cell(const Json &v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void write(const Output &result, const Options &o, std::ostream &os) {
    if (o.format == "json") {
        os << result.record.dump(2) << '\n';
        return;
    }
    auto join = [&](const auto &cells, auto &&fmt) {
        for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << fmt(cells[i]);
        os << '\n';
    };
    join(result.csv_header, [](const std::string &s) { return s; });
    for (const auto &row : result.csv_rows) join(row, csv_cell);
}

void add_protocol(CLI::App &cmd, Options &o) {
    cmd.add_option("--protocol", o.protocol, "trine | tetra | bb84 | six-state")
        ->check(CLI::IsMember({"trine", "tetra", "tetrahedron", "bb84", "six-state"}))
        ->capture_default_str();
}

void add_attack(CLI::App &cmd, Options &o, bool with_mix) {
    cmd.add_option("--attack", o.attack, "none | standard | gentle")
        ->check(CLI::IsMember({"none", "standard", "gentle"}))
        ->capture_default_str();
    if (with_mix)
        cmd.add_option("--mix", o.mix, "Eve's ensemble: alice | bob | symmetric")
            ->check(CLI::IsMember({"alice", "bob", "symmetric"}))
            ->capture_default_str();
}

void add_guess_rule(CLI::App &cmd, Options &o) {
    cmd.add_option("--guess-rule", o.guess_rule, "Eve's guess rule: index | posterior")
        ->check(CLI::IsMember({"index", "posterior"}))
        ->capture_default_str();
}

void add_channel(CLI::App &cmd, Options &o) {
    cmd.add_option("--depolarize", o.depolarize, "depolarizing probability of the channel")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
}

void add_q(CLI::App &cmd, Options &o) {
    cmd.add_option("--q", o.q, "interception fraction or gentle strength")->check(CLI::Range(0.0, 1.0))->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Options o;
    CLI::App app{"Spherical-code QKD analysis and simulation"};
    app.require_subcommand(1);
    app.add_option("--format", o.format, "json | csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    app.add_option("--out", o.out, "write the result to FILE instead of stdout");
    app.fallthrough();

    auto *analytic = app.add_subcommand("analytic", "exact statistics and key rate at one attack strength");
    add_protocol(*analytic, o);
    add_attack(*analytic, o, true);
    add_q(*analytic, o);
    add_channel(*analytic, o);
    add_guess_rule(*analytic, o);

    auto *threshold = app.add_subcommand("threshold", "largest tolerable error rate (symmetric ensemble)");
    add_protocol(*threshold, o);
    add_attack(*threshold, o, false);
    add_guess_rule(*threshold, o);

    auto *simulate = app.add_subcommand("simulate", "seeded Monte Carlo run checked against enumeration");
    add_protocol(*simulate, o);
    add_attack(*simulate, o, true);
    add_q(*simulate, o);
    add_channel(*simulate, o);
    simulate->add_option("--n", o.n, "number of rounds")->check(CLI::PositiveNumber)->capture_default_str();
    simulate->add_option("--seed", o.seed, "random seed")->capture_default_str();

    auto *sweep_cmd = app.add_subcommand("sweep", "statistics and key rate over a grid of q");
    add_protocol(*sweep_cmd, o);
    add_attack(*sweep_cmd, o, true);
    add_channel(*sweep_cmd, o);
    add_guess_rule(*sweep_cmd, o);
    sweep_cmd->add_option("--q-min", o.q_min)->check(CLI::Range(0.0, 1.0))->capture_default_str();
    sweep_cmd->add_option("--q-max", o.q_max)->check(CLI::Range(0.0, 1.0))->capture_default_str();
    sweep_cmd->add_option("--q-step", o.q_step)->capture_default_str();

    auto *estimate = app.add_subcommand("estimate-q", "infer q from observed sift counts");
    estimate->add_option("--protocol", o.protocol, "trine | tetra")
        ->check(CLI::IsMember({"trine", "tetra", "tetrahedron"}))
        ->capture_default_str();
    estimate->add_option("--sifted", o.sifted, "sifted rounds")->required();
    estimate->add_option("--total", o.total, "total rounds")->required();
    estimate->add_option("--margin", o.margin, "allowed distance of the sift rate outside the model range "
                                               "(default: 3 standard errors)");

    for (auto *cmd : {analytic, threshold, simulate, sweep_cmd, estimate}) {
        cmd->add_option("--format", o.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--out", o.out, "write the result to FILE instead of stdout");
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    Output result;
    try {
        if (*analytic) result = cmd_analytic(o);
        if (*threshold) result = cmd_threshold(o);
        if (*simulate) result = cmd_simulate(o);
        if (*sweep_cmd) result = cmd_sweep(o);
        if (*estimate) result = cmd_estimate_q(o);
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    if (o.out.empty()) {
        write(result, o, out);
    } else {
        std::ofstream file(o.out, std::ios::binary);
        if (!file) {
            err << "error: cannot open " << o.out << '\n';
            return kExitUsage;
        }
        write(result, o, file);
    }
    return result.exit_code;
}

}  // namespace scqkd::cli
