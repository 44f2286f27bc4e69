// gatelab: run gate CAs, measure their behaviour, evolve gates in simulated
// substrates, and compare the resulting complexity hierarchies.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gatelab/ca.hpp"
#include "gatelab/evolution.hpp"
#include "gatelab/gates.hpp"
#include "gatelab/hierarchy.hpp"
#include "gatelab/kernels.hpp"
#include "gatelab/measures.hpp"
#include "gatelab/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kToolVersion = "gatelab 0.1.0";

// Exit codes: 0 all requested checks passed; 1 a check failed; 2 usage error
// (bad flag or name); 3 I/O failure; 4 config validation; 5 cross-unit
// comparison refused.
enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kUsage = 2,
    kIoError = 3,
    kConfigInvalid = 4,
    kUnitMismatch = 5,
};

[[noreturn]] void die(int code, const std::string& message) {
    std::cerr << "gatelab: " << message << '\n';
    std::exit(code);
}

void write_file_atomic(const fs::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) die(kIoError, "cannot open for writing: " + tmp.string());
        out << content;
        if (!out) die(kIoError, "write failed: " + tmp.string());
    }
    fs::rename(tmp, path, ec);
    if (ec) die(kIoError, "cannot move into place: " + path.string());
}

std::string iso_utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

gatelab::Gate parse_gate_or_die(const std::string& name) {
    try {
        return gatelab::parse_gate(name);
    } catch (const std::invalid_argument& e) {
        die(kUsage, e.what());
    }
}

std::vector<gatelab::Gate> parse_gate_list(const std::string& csv) {
    std::vector<gatelab::Gate> gates;
    std::stringstream ss(csv);
    std::string name;
    while (std::getline(ss, name, ',')) {
        const auto b = name.find_first_not_of(" \t");
        const auto e = name.find_last_not_of(" \t");
        if (b == std::string::npos) continue;
        gates.push_back(parse_gate_or_die(name.substr(b, e - b + 1)));
    }
    if (gates.empty()) die(kUsage, "no gates given");
    return gates;
}

json ranking_json(const gatelab::hierarchy::Ranking& r) {
    return json(r.groups);
}

json effort_json(const gatelab::Effort& e) {
    return {{"value", e.value},
            {"unit", gatelab::to_string(e.unit)},
            {"censored", e.censored}};
}

json stats_json(const gatelab::GateStats& s) {
    return {{"gate", s.gate},
            {"protocol", s.protocol},
            {"mutation_rate", s.mutation_rate},
            {"success_rate",
             std::to_string(s.successes) + "/" + std::to_string(s.runs)},
            {"runs", s.runs},
            {"min", effort_json(s.min_effort)},
            {"max", effort_json(s.max_effort)},
            {"avg", s.avg},
            {"std", s.stddev},
            {"unit", gatelab::to_string(s.unit)},
            {"censored_runs", s.censored_runs}};
}

json findings_json(const gatelab::hierarchy::FindingsReport& report) {
    json checks = json::array();
    for (const auto& c : report.checks)
        checks.push_back({{"id", c.id},
                          {"description", c.description},
                          {"expected", c.expected},
                          {"actual", c.actual},
                          {"pass", c.pass}});
    return {{"checks", checks},
            {"notes", report.notes},
            {"behavioural_chain_discrepancy_flagged",
             report.finding3_discrepancy_flagged},
            {"all_pass", report.all_pass()}};
}

json profile_json(const gatelab::BehaviourProfile& p) {
    return {{"gate", gatelab::to_string(p.gate)},
            {"morphology", gatelab::to_string(p.morphology)},
            {"morphology_rank", gatelab::morphology_rank(p.morphology)},
            {"mean_transient_plus_period", p.mean_transient_plus_period},
            {"mean_attractor_entropy", p.mean_attractor_entropy},
            {"ensemble_size", p.ensemble_size},
            {"censored_seeds", p.censored_seeds},
            {"representative_attractor",
             {{"transient", p.attractor.transient},
              {"period", p.attractor.period},
              {"censored", p.attractor.censored},
              {"cap", p.attractor.cap}}},
            {"n", p.n},
            {"cap", p.cap},
            {"theta", p.theta},
            {"p_small", p.p_small},
            {"density", p.density}};
}

// ---- ca run -----------------------------------------------------------------

struct CaRunArgs {
    std::string gate;
    uint32_t n = 200;
    uint32_t steps = 200;
    uint64_t seed = 0;
    bool seed_set = false;
    bool single_seed = false;
    double density = 0.5;
    std::string boundary = "periodic";
    uint64_t cap = 1ull << 20;
    std::string out;
};

int cmd_ca_run(const CaRunArgs& args) {
    const gatelab::Gate gate = parse_gate_or_die(args.gate);
    if (!gatelab::is_binary(gate))
        die(kUsage, "the CA interpretation needs a binary gate, not NOT");
    if (args.seed_set == args.single_seed)
        die(kUsage, "give exactly one of --seed or --single-seed");
    gatelab::Boundary boundary;
    try {
        boundary = gatelab::parse_boundary(args.boundary);
    } catch (const std::invalid_argument& e) {
        die(kUsage, e.what());
    }

    const gatelab::Configuration initial =
        args.single_seed
            ? gatelab::single_seed_configuration(args.n, boundary)
            : gatelab::random_configuration(args.n, args.density, args.seed,
                                            boundary);
    const auto diagram = gatelab::run(initial, gate, args.steps);
    write_file_atomic(args.out, gatelab::pbm_string(diagram));

    const auto det = gatelab::detect_attractor(initial, gate, args.cap);
    std::cout << "gate=" << gatelab::to_string(gate) << " n=" << args.n
              << " steps=" << args.steps << " boundary=" << to_string(boundary)
              << (args.single_seed ? " single-seed"
                                   : " seed=" + std::to_string(args.seed))
              << '\n';
    if (det.censored) {
        std::cout << "attractor: censored at cap=" << det.cap
                  << " (transient+period > " << det.cap << ")\n";
    } else {
        std::cout << "attractor: transient=" << det.transient
                  << " period=" << det.period;
        const auto rows = gatelab::attractor_rows(initial, gate, det);
        bool homogeneous = true;
        for (const auto& r : rows)
            if (!r.homogeneous()) homogeneous = false;
        if (det.period == 1 && rows.front().all_zero())
            std::cout << " (fixed point, all-FALSE)";
        else if (det.period == 1 && rows.front().all_one())
            std::cout << " (fixed point, all-TRUE)";
        else if (det.period == 1)
            std::cout << " (fixed point)";
        else if (homogeneous)
            std::cout << " (homogeneous cycle)";
        std::cout << '\n';
    }
    std::cout << "wrote " << args.out << '\n';
    return kOk;
}

// ---- ca measure ---------------------------------------------------------------

struct MeasureArgs {
    std::string gates = "AND,OR,XOR,NAND,NOR";
    uint32_t n = 200;
    uint32_t ensemble = 20;
    uint64_t master_seed = 0;
    uint64_t cap = 1ull << 20;
    double theta = 0.0;
    uint32_t p_small = 8;
    double density = 0.5;
    uint32_t csv_steps = 200;
    std::string out;
};

int cmd_ca_measure(const MeasureArgs& args) {
    const auto gates = parse_gate_list(args.gates);
    for (auto g : gates)
        if (!gatelab::is_binary(g))
            die(kUsage, "behaviour measurement needs binary gates, not NOT");

    std::vector<uint64_t> seeds(args.ensemble);
    for (uint32_t i = 0; i < args.ensemble; ++i)
        seeds[i] = gatelab::rng::derive(args.master_seed, i);

    gatelab::ClassifyParams params;
    params.n = args.n;
    params.cap = args.cap;
    params.theta = args.theta;
    params.p_small = args.p_small;
    params.density = args.density;

    std::vector<gatelab::BehaviourProfile> profiles;
    for (auto gate : gates) {
        auto profile = gatelab::classify_behaviour(gate, seeds, params);
        std::printf("%-4s morphology=%-21s rank=%d mean_T+P=%.2f "
                    "mean_entropy=%.4f censored=%u/%u\n",
                    std::string(gatelab::to_string(gate)).c_str(),
                    std::string(gatelab::to_string(profile.morphology)).c_str(),
                    gatelab::morphology_rank(profile.morphology),
                    profile.mean_transient_plus_period,
                    profile.mean_attractor_entropy, profile.censored_seeds,
                    profile.ensemble_size);

        const auto initial =
            gatelab::random_configuration(args.n, args.density, seeds[0]);
        const auto diagram = gatelab::run(initial, gate, args.csv_steps);
        const auto freq = gatelab::neighbourhood_frequencies(diagram);
        write_file_atomic(fs::path(args.out) /
                              (std::string(gatelab::to_string(gate)) +
                               "_frequencies.csv"),
                          gatelab::frequency_csv(freq));
        profiles.push_back(std::move(profile));
    }

    const auto ranking = gatelab::behavioural_ranking(profiles);
    std::cout << "behavioural ranking: " << ranking.chain_string() << '\n';

    json out{{"tool", kToolVersion},
             {"kernel", std::string(gatelab::kernels::active_name())},
             {"params",
              {{"n", args.n},
               {"ensemble", args.ensemble},
               {"master_seed", args.master_seed},
               {"cap", args.cap},
               {"theta", params.effective_theta()},
               {"p_small", args.p_small},
               {"density", args.density}}},
             {"profiles", json::array()},
             {"ranking", ranking_json(ranking)},
             {"ranking_chain", ranking.chain_string()}};
    for (const auto& p : profiles) out["profiles"].push_back(profile_json(p));
    write_file_atomic(fs::path(args.out) / "behaviour.json", out.dump(2) + "\n");
    return kOk;
}

// ---- evolve -------------------------------------------------------------------

int cmd_evolve(const std::string& config_path, const std::string& out_dir,
               int workers) {
    std::vector<std::string> errors;
    const auto config = gatelab::parse_config_file(config_path, errors);
    if (!errors.empty()) {
        std::cerr << "gatelab: invalid config " << config_path << ":\n";
        for (const auto& e : errors) std::cerr << "  - " << e << '\n';
        return kConfigInvalid;
    }

    const std::string started = iso_utc_now();
    const auto t0 = std::chrono::steady_clock::now();
    const auto result = gatelab::run_experiment(config, workers);
    const auto t1 = std::chrono::steady_clock::now();

    const std::string csv = gatelab::stats_csv(result.stats);
    write_file_atomic(fs::path(out_dir) / "stats.csv", csv);
    write_file_atomic(fs::path(out_dir) / "runs.jsonl",
                      gatelab::records_jsonl(result.records));
    write_file_atomic(fs::path(out_dir) / "config_snapshot.ini",
                      gatelab::config_to_ini(config));

    json record{{"tool", kToolVersion},
                {"config", json::parse("{}")},
                {"stats", json::array()},
                {"run_records_file", "runs.jsonl"},
                {"findings", findings_json(gatelab::hierarchy::check_findings())},
                {"wallclock",
                 {{"started", started},
                  {"finished", iso_utc_now()},
                  {"seconds",
                   std::chrono::duration<double>(t1 - t0).count()}}}};
    json targets = json::array();
    for (auto g : config.targets) targets.push_back(gatelab::to_string(g));
    record["config"] = {
        {"protocol", gatelab::to_string(config.protocol)},
        {"targets", targets},
        {"runs", config.runs},
        {"master_seed", config.master_seed},
        {"population", config.population},
        {"elite", config.elite},
        {"mutations_per_individual", config.mutations_per_individual},
        {"generation_cutoff", config.generation_cutoff},
        {"mutation_rate", config.mutation_rate},
        {"fitness_iterations", config.fitness_iterations},
        {"material",
         {{"seed", config.material_seed},
          {"settle_steps", config.settle_steps},
          {"planted", config.material_planted}}},
        {"medium",
         {{"lattice", config.medium.lattice},
          {"block", config.medium.block},
          {"refractory", config.medium.refractory},
          {"window", config.medium.window},
          {"theta_out", config.medium.theta_out}}}};
    for (const auto& s : result.stats) record["stats"].push_back(stats_json(s));

    if (config.targets.size() >= 2) {
        std::vector<gatelab::hierarchy::StatRowView> rows;
        for (const auto& s : result.stats)
            rows.push_back({s.gate,
                            {static_cast<double>(s.min_effort.value),
                             s.min_effort.censored},
                            {static_cast<double>(s.max_effort.value),
                             s.max_effort.censored},
                            {s.avg, false},
                            std::string(gatelab::to_string(s.unit)),
                            s.protocol});
        json rankings;
        for (auto key : {gatelab::hierarchy::StatKey::min,
                         gatelab::hierarchy::StatKey::max,
                         gatelab::hierarchy::StatKey::avg}) {
            const auto r = gatelab::hierarchy::ranking_from_stats(
                rows, key,
                "experiment/" + std::string(gatelab::hierarchy::to_string(key)));
            rankings[std::string(gatelab::hierarchy::to_string(key))] =
                ranking_json(r);
            std::cout << "ranking[" << gatelab::hierarchy::to_string(key)
                      << "]: " << r.chain_string() << '\n';
        }
        record["rankings"] = rankings;
    }

    write_file_atomic(fs::path(out_dir) / "experiment.json",
                      record.dump(2) + "\n");
    std::cout << csv;
    std::cout << "wrote " << (fs::path(out_dir) / "experiment.json").string()
              << '\n';
    return kOk;
}

// ---- hierarchy / report --------------------------------------------------------

struct NamedRanking {
    std::string label;
    gatelab::hierarchy::Ranking ranking;
};

std::vector<gatelab::hierarchy::StatRowView> stat_rows_from_experiment(
    const fs::path& dir) {
    const fs::path file = dir / "experiment.json";
    std::ifstream in(file);
    if (!in) die(kIoError, "cannot open " + file.string());
    json record;
    try {
        in >> record;
    } catch (const json::exception& e) {
        die(kIoError, "cannot parse " + file.string() + ": " + e.what());
    }
    std::vector<gatelab::hierarchy::StatRowView> rows;
    for (const auto& s : record.at("stats")) {
        rows.push_back({s.at("gate").get<std::string>(),
                        {s.at("min").at("value").get<double>(),
                         s.at("min").at("censored").get<bool>()},
                        {s.at("max").at("value").get<double>(),
                         s.at("max").at("censored").get<bool>()},
                        {s.at("avg").get<double>(), false},
                        s.at("unit").get<std::string>(),
                        s.at("protocol").get<std::string>()});
    }
    return rows;
}

int compare_and_print(const std::vector<NamedRanking>& inputs,
                      const std::vector<NamedRanking>& references) {
    bool failed = false;
    for (const auto& in : inputs) {
        std::cout << "ranking[" << in.label << "]"
                  << (in.ranking.unit.empty() ? ""
                                              : " (" + in.ranking.unit + ")")
                  << ": " << in.ranking.chain_string() << '\n';
        for (const auto& ref : references) {
            try {
                const double tau =
                    gatelab::hierarchy::kendall_tau_b(in.ranking, ref.ranking);
                const double agreement = gatelab::hierarchy::pairwise_agreement(
                    in.ranking, ref.ranking);
                std::printf("  vs %s (%s): tau-b=%.4f agreement=%.4f\n",
                            ref.label.c_str(), ref.ranking.chain_string().c_str(),
                            tau, agreement);
            } catch (const gatelab::hierarchy::UnitMismatchError& e) {
                die(kUnitMismatch, e.what());
            } catch (const std::invalid_argument& e) {
                std::cout << "  vs " << ref.label << ": not comparable ("
                          << e.what() << ")\n";
            }
        }
    }
    for (size_t i = 0; i < inputs.size(); ++i) {
        for (size_t j = i + 1; j < inputs.size(); ++j) {
            try {
                const double tau = gatelab::hierarchy::kendall_tau_b(
                    inputs[i].ranking, inputs[j].ranking);
                const double agreement = gatelab::hierarchy::pairwise_agreement(
                    inputs[i].ranking, inputs[j].ranking);
                std::printf("%s vs %s: tau-b=%.4f agreement=%.4f\n",
                            inputs[i].label.c_str(), inputs[j].label.c_str(),
                            tau, agreement);
            } catch (const gatelab::hierarchy::UnitMismatchError& e) {
                die(kUnitMismatch, e.what());
            } catch (const std::invalid_argument& e) {
                std::cout << inputs[i].label << " vs " << inputs[j].label
                          << ": not comparable (" << e.what() << ")\n";
            }
        }
    }
    return failed ? kCheckFailed : kOk;
}

struct HierarchyArgs {
    std::vector<std::string> fixtures;
    std::vector<std::string> experiments;
    std::string controller = "coevolutionary";
    int rate = 6000;
    std::string key = "min";
    std::string reference;
    std::string json_path;
};

int cmd_hierarchy(const HierarchyArgs& args) {
    if (args.fixtures.empty() && args.experiments.empty())
        die(kUsage, "give at least one --fixture or --experiment");
    gatelab::hierarchy::StatKey key;
    try {
        key = gatelab::hierarchy::parse_stat_key(args.key);
    } catch (const std::invalid_argument& e) {
        die(kUsage, e.what());
    }

    std::vector<NamedRanking> inputs;
    bool any_fixture = false;
    for (const auto& f : args.fixtures) {
        try {
            if (f == "fig1a") {
                any_fixture = true;
                const auto& fx = gatelab::hierarchy::fig1a();
                gatelab::hierarchy::verify_fixture(fx);
                const auto rows = gatelab::hierarchy::stats_from_fig1a(fx);
                inputs.push_back(
                    {"fig1a/" + args.key,
                     gatelab::hierarchy::ranking_from_stats(rows, key,
                                                            "fig1a/" + args.key)});
            } else if (f == "fig1b") {
                any_fixture = true;
                const auto& fx = gatelab::hierarchy::fig1b();
                gatelab::hierarchy::verify_fixture(fx);
                std::string controller = args.controller;
                if (!controller.empty())
                    controller[0] = static_cast<char>(std::toupper(controller[0]));
                const auto rows = gatelab::hierarchy::stats_from_fig1b(
                    fx, controller, args.rate);
                if (rows.empty())
                    die(kUsage, "no fig1b rows for controller=" + controller +
                                    " rate=" + std::to_string(args.rate));
                const std::string label = "fig1b/" + controller + "/" +
                                          std::to_string(args.rate) + "/" +
                                          args.key;
                inputs.push_back(
                    {label, gatelab::hierarchy::ranking_from_stats(rows, key, label)});
            } else {
                die(kUsage, "unknown fixture: " + f + " (use fig1a or fig1b)");
            }
        } catch (const gatelab::hierarchy::FixtureError& e) {
            die(kCheckFailed, e.what());
        }
    }
    for (const auto& dir : args.experiments) {
        const auto rows = stat_rows_from_experiment(dir);
        const std::string label = dir + "/" + args.key;
        try {
            inputs.push_back(
                {label, gatelab::hierarchy::ranking_from_stats(rows, key, label)});
        } catch (const gatelab::hierarchy::UnitMismatchError& e) {
            die(kUnitMismatch, e.what());
        }
    }

    std::vector<NamedRanking> references;
    if (args.reference == "finding3" || args.reference == "finding3-literal")
        references.push_back(
            {"finding3-literal", gatelab::hierarchy::finding3_literal()});
    if (args.reference == "finding3" || args.reference == "finding3-prose")
        references.push_back(
            {"finding3-prose", gatelab::hierarchy::finding3_prose()});
    if (!args.reference.empty() && references.empty())
        die(kUsage, "unknown reference: " + args.reference);

    int status = compare_and_print(inputs, references);

    bool findings_pass = true;
    if (any_fixture) {
        const auto report = gatelab::hierarchy::check_findings();
        std::cout << "findings:\n" << render_text(report);
        findings_pass = report.all_pass();
    }

    if (!args.json_path.empty()) {
        json out{{"tool", kToolVersion}, {"rankings", json::array()}};
        for (const auto& in : inputs)
            out["rankings"].push_back({{"label", in.label},
                                       {"unit", in.ranking.unit},
                                       {"groups", ranking_json(in.ranking)}});
        if (any_fixture)
            out["findings"] = findings_json(gatelab::hierarchy::check_findings());
        write_file_atomic(args.json_path, out.dump(2) + "\n");
    }
    if (!findings_pass) return kCheckFailed;
    return status;
}

int cmd_report(const std::vector<std::string>& experiments,
               const std::string& json_path) {
    gatelab::hierarchy::FindingsReport report;
    try {
        report = gatelab::hierarchy::check_findings();
    } catch (const gatelab::hierarchy::FixtureError& e) {
        die(kCheckFailed, e.what());
    }
    std::cout << render_text(report);

    json out{{"tool", kToolVersion},
             {"findings", findings_json(report)},
             {"experiments", json::array()}};
    for (const auto& dir : experiments) {
        const auto rows = stat_rows_from_experiment(dir);
        json entry{{"experiment", dir}, {"rankings", json::object()}};
        std::vector<NamedRanking> inputs;
        for (auto key : {gatelab::hierarchy::StatKey::min,
                         gatelab::hierarchy::StatKey::max,
                         gatelab::hierarchy::StatKey::avg}) {
            const std::string key_name(gatelab::hierarchy::to_string(key));
            try {
                const auto r = gatelab::hierarchy::ranking_from_stats(
                    rows, key, dir + "/" + key_name);
                entry["rankings"][key_name] = ranking_json(r);
                inputs.push_back({dir + "/" + key_name, r});
            } catch (const std::invalid_argument& e) {
                entry["rankings"][key_name] = json{{"error", e.what()}};
            }
        }
        const std::vector<NamedRanking> references = {
            {"finding3-literal", gatelab::hierarchy::finding3_literal()},
            {"finding3-prose", gatelab::hierarchy::finding3_prose()}};
        compare_and_print(inputs, references);
        out["experiments"].push_back(entry);
    }
    if (!json_path.empty()) write_file_atomic(json_path, out.dump(2) + "\n");
    return report.all_pass() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(kToolVersion) +
                 " - behavioural vs evolutionary complexity of Boolean gates"};
    app.require_subcommand(1);

    // ca run / ca measure
    auto* ca = app.add_subcommand("ca", "cellular-automaton commands");
    ca->require_subcommand(1);

    CaRunArgs run_args;
    auto* ca_run = ca->add_subcommand("run", "render a space-time diagram");
    ca_run->add_option("--gate", run_args.gate, "gate name (AND, OR, XOR, NAND, NOR)")
        ->required();
    ca_run->add_option("--n", run_args.n, "cell count (>= 3)");
    ca_run->add_option("--steps", run_args.steps, "time steps");
    auto* seed_opt =
        ca_run->add_option("--seed", run_args.seed, "random initial condition seed");
    ca_run->add_flag("--single-seed", run_args.single_seed,
                     "single TRUE cell at n/2 instead of a random row");
    ca_run->add_option("--density", run_args.density, "TRUE density for --seed");
    ca_run->add_option("--boundary", run_args.boundary, "periodic | fixed-false");
    ca_run->add_option("--cap", run_args.cap, "attractor detection budget");
    ca_run->add_option("--out", run_args.out, "output PBM path")->required();

    MeasureArgs measure_args;
    auto* ca_measure =
        ca->add_subcommand("measure", "behavioural complexity of gate CAs");
    ca_measure->add_option("--gates", measure_args.gates, "comma-separated gates");
    ca_measure->add_option("--n", measure_args.n, "cell count");
    ca_measure->add_option("--ensemble", measure_args.ensemble,
                           "random initial conditions per gate");
    ca_measure->add_option("--master-seed", measure_args.master_seed,
                           "seed for the ensemble")
        ->required();
    ca_measure->add_option("--cap", measure_args.cap, "attractor budget");
    ca_measure->add_option("--theta", measure_args.theta,
                           "complexity threshold on T+P (default 10*n)");
    ca_measure->add_option("--p-small", measure_args.p_small,
                           "largest period counted as small domains");
    ca_measure->add_option("--density", measure_args.density, "initial density");
    ca_measure->add_option("--csv-steps", measure_args.csv_steps,
                           "steps in the frequency CSVs");
    ca_measure->add_option("--out", measure_args.out, "output directory")
        ->required();

    std::string evolve_config, evolve_out;
    int evolve_workers = 1;
    auto* evolve = app.add_subcommand("evolve", "run an evolution experiment");
    evolve->add_option("--config", evolve_config, "experiment config file")
        ->required();
    evolve->add_option("--out", evolve_out, "output directory")->required();
    evolve->add_option("--workers", evolve_workers, "parallel run workers");

    HierarchyArgs h_args;
    auto* hier = app.add_subcommand("hierarchy", "build and compare rankings");
    hier->add_option("--fixture", h_args.fixtures, "fig1a or fig1b (repeatable)");
    hier->add_option("--experiment", h_args.experiments,
                     "experiment output directory (repeatable)");
    hier->add_option("--controller", h_args.controller,
                     "fig1b controller: coevolutionary | random");
    hier->add_option("--rate", h_args.rate, "fig1b mutation rate: 4000 | 6000");
    hier->add_option("--key", h_args.key, "min | max | avg");
    hier->add_option("--reference", h_args.reference,
                     "finding3 | finding3-literal | finding3-prose");
    hier->add_option("--json", h_args.json_path, "write a JSON report here");

    std::vector<std::string> report_experiments;
    std::string report_json;
    auto* report =
        app.add_subcommand("report", "findings report over embedded tables");
    report->add_option("--experiment", report_experiments,
                       "experiment output directory (repeatable)");
    report->add_option("--json", report_json, "write a JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kUsage;
    }

    try {
        if (ca_run->parsed()) {
            run_args.seed_set = seed_opt->count() > 0;
            return cmd_ca_run(run_args);
        }
        if (ca_measure->parsed()) return cmd_ca_measure(measure_args);
        if (evolve->parsed())
            return cmd_evolve(evolve_config, evolve_out, evolve_workers);
        if (hier->parsed()) return cmd_hierarchy(h_args);
        if (report->parsed()) return cmd_report(report_experiments, report_json);
    } catch (const std::invalid_argument& e) {
        die(kUsage, e.what());
    } catch (const std::exception& e) {
        die(kCheckFailed, e.what());
    }
    return kUsage;
}
