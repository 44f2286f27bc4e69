#include "gatelab/evolution.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "gatelab/rng.hpp"

namespace gatelab {

std::string_view to_string(Protocol p) {
    switch (p) {
        case Protocol::lc_style: return "LC_STYLE";
        case Protocol::bz_coevolutionary: return "BZ_COEVOLUTIONARY";
        case Protocol::bz_random: return "BZ_RANDOM";
    }
    return "?";
}

Protocol parse_protocol(std::string_view name) {
    if (name == "LC_STYLE") return Protocol::lc_style;
    if (name == "BZ_COEVOLUTIONARY") return Protocol::bz_coevolutionary;
    if (name == "BZ_RANDOM") return Protocol::bz_random;
    throw std::invalid_argument("unknown protocol: " + std::string(name));
}

std::string_view to_string(EffortUnit u) {
    return u == EffortUnit::evaluations ? "EVALUATIONS" : "GENERATIONS";
}

std::vector<std::string> ExperimentConfig::validate() const {
    std::vector<std::string> errors;
    if (targets.empty()) errors.push_back("targets: at least one gate required");
    if (runs < 1) errors.push_back("runs: must be >= 1");
    if (population < 1) errors.push_back("population: must be >= 1");
    if (elite < 1) errors.push_back("elite: must be >= 1");
    if (elite >= population) errors.push_back("elite: must be < population");
    if (mutations_per_individual < 1)
        errors.push_back("mutations_per_individual: must be >= 1");
    if (generation_cutoff < 1) errors.push_back("generation_cutoff: must be >= 1");
    if (is_bz() && mutation_rate < 1)
        errors.push_back("mutation_rate: must be >= 1");
    if (fitness_iterations < 1)
        errors.push_back("fitness_iterations: must be >= 1");
    if (settle_steps < 1) errors.push_back("settle_steps: must be >= 1");
    if (is_bz()) {
        try {
            MediumParams p = medium;
            p.iterations = static_cast<int>(fitness_iterations);
            p.validate();
        } catch (const std::invalid_argument& e) {
            errors.push_back(e.what());
        }
    }
    return errors;
}

// ---- config file -------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    size_t e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

struct KeyValue {
    std::string section, key, value;
    int line;
};

bool parse_u64(const std::string& s, uint64_t& out) {
    if (s.empty()) return false;
    uint64_t v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
        v = v * 10 + static_cast<uint64_t>(c - '0');
    }
    out = v;
    return true;
}

bool parse_bool(const std::string& s, bool& out) {
    if (s == "true" || s == "1") {
        out = true;
        return true;
    }
    if (s == "false" || s == "0") {
        out = false;
        return true;
    }
    return false;
}

}  // namespace

ExperimentConfig parse_config(std::istream& in,
                              std::vector<std::string>& errors) {
    ExperimentConfig config;
    std::vector<KeyValue> entries;
    std::string section, line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line.substr(0, line.find('#')));
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']') {
                errors.push_back("line " + std::to_string(lineno) +
                                 ": malformed section header");
                continue;
            }
            section = t.substr(1, t.size() - 2);
            continue;
        }
        const size_t eq = t.find('=');
        if (eq == std::string::npos) {
            errors.push_back("line " + std::to_string(lineno) +
                             ": expected key = value");
            continue;
        }
        entries.push_back(
            {section, trim(t.substr(0, eq)), trim(t.substr(eq + 1)), lineno});
    }

    bool protocol_set = false, master_seed_set = false, cutoff_set = false;
    bool population_set = false, elite_set = false;

    auto bad = [&errors](const KeyValue& kv, const std::string& why) {
        errors.push_back(kv.section + "." + kv.key + " (line " +
                         std::to_string(kv.line) + "): " + why);
    };

    for (const auto& kv : entries) {
        uint64_t u = 0;
        bool flag = false;
        const bool is_uint = parse_u64(kv.value, u);
        if (kv.section == "experiment") {
            if (kv.key == "protocol") {
                try {
                    config.protocol = parse_protocol(kv.value);
                    protocol_set = true;
                } catch (const std::invalid_argument& e) {
                    bad(kv, e.what());
                }
            } else if (kv.key == "target" || kv.key == "targets") {
                std::stringstream ss(kv.value);
                std::string name;
                while (std::getline(ss, name, ',')) {
                    try {
                        config.targets.push_back(parse_gate(trim(name)));
                    } catch (const std::invalid_argument& e) {
                        bad(kv, e.what());
                    }
                }
            } else if (kv.key == "runs") {
                if (is_uint) config.runs = static_cast<uint32_t>(u);
                else bad(kv, "expected a nonnegative integer");
            } else if (kv.key == "master_seed") {
                if (is_uint) {
                    config.master_seed = u;
                    master_seed_set = true;
                } else bad(kv, "expected a nonnegative integer");
            } else if (kv.key == "population") {
                if (is_uint) {
                    config.population = static_cast<uint32_t>(u);
                    population_set = true;
                } else bad(kv, "expected a nonnegative integer");
            } else if (kv.key == "elite") {
                if (is_uint) {
                    config.elite = static_cast<uint32_t>(u);
                    elite_set = true;
                } else bad(kv, "expected a nonnegative integer");
            } else if (kv.key == "mutations_per_individual") {
                if (is_uint) config.mutations_per_individual = static_cast<uint32_t>(u);
                else bad(kv, "expected a nonnegative integer");
            } else if (kv.key == "generation_cutoff") {
                if (is_uint) {
                    config.generation_cutoff = static_cast<uint32_t>(u);
                    cutoff_set = true;
                } else bad(kv, "expected a nonnegative integer");
            } else if (kv.key == "mutation_rate") {
                if (is_uint) config.mutation_rate = static_cast<uint32_t>(u);
                else bad(kv, "expected a nonnegative integer");
            } else if (kv.key == "fitness_iterations") {
                if (is_uint) config.fitness_iterations = static_cast<uint32_t>(u);
                else bad(kv, "expected a nonnegative integer");
            } else {
                bad(kv, "unknown key");
            }
        } else if (kv.section == "material") {
            if (kv.key == "seed") {
                if (is_uint) config.material_seed = u;
                else bad(kv, "expected a nonnegative integer");
            } else if (kv.key == "settle_steps") {
                if (is_uint) config.settle_steps = static_cast<uint32_t>(u);
                else bad(kv, "expected a nonnegative integer");
            } else if (kv.key == "planted") {
                if (parse_bool(kv.value, flag)) config.material_planted = flag;
                else bad(kv, "expected true or false");
            } else {
                bad(kv, "unknown key");
            }
        } else if (kv.section == "medium") {
            int* slot = kv.key == "lattice"      ? &config.medium.lattice
                        : kv.key == "block"      ? &config.medium.block
                        : kv.key == "refractory" ? &config.medium.refractory
                        : kv.key == "window"     ? &config.medium.window
                        : kv.key == "theta_out"  ? &config.medium.theta_out
                                                 : nullptr;
            if (!slot) bad(kv, "unknown key");
            else if (is_uint) *slot = static_cast<int>(u);
            else bad(kv, "expected a nonnegative integer");
        } else {
            bad(kv, "unknown section");
        }
    }

    if (!protocol_set) errors.push_back("experiment.protocol: required");
    if (!master_seed_set)
        errors.push_back(
            "experiment.master_seed: required (runs never seed from the clock)");
    if (config.targets.empty())
        errors.push_back("experiment.target: at least one gate required");

    if (config.is_bz()) {
        if (!cutoff_set) config.generation_cutoff = 2000;
        if (!population_set) config.population = 10;
        if (!elite_set) config.elite = 1;
    }
    config.medium.iterations = static_cast<int>(config.fitness_iterations);

    for (const auto& e : config.validate()) errors.push_back(e);
    return config;
}

ExperimentConfig parse_config_file(const std::string& path,
                                   std::vector<std::string>& errors) {
    std::ifstream in(path);
    if (!in) {
        errors.push_back("cannot open config file: " + path);
        return {};
    }
    return parse_config(in, errors);
}

std::string config_to_ini(const ExperimentConfig& config) {
    std::ostringstream os;
    os << "[experiment]\n";
    os << "protocol = " << to_string(config.protocol) << '\n';
    os << "targets = ";
    for (size_t i = 0; i < config.targets.size(); ++i)
        os << (i ? "," : "") << to_string(config.targets[i]);
    os << '\n';
    os << "runs = " << config.runs << '\n';
    os << "master_seed = " << config.master_seed << '\n';
    os << "population = " << config.population << '\n';
    os << "elite = " << config.elite << '\n';
    os << "mutations_per_individual = " << config.mutations_per_individual << '\n';
    os << "generation_cutoff = " << config.generation_cutoff << '\n';
    os << "mutation_rate = " << config.mutation_rate << '\n';
    os << "fitness_iterations = " << config.fitness_iterations << '\n';
    os << "\n[material]\n";
    os << "seed = " << config.material_seed << '\n';
    os << "settle_steps = " << config.settle_steps << '\n';
    os << "planted = " << (config.material_planted ? "true" : "false") << '\n';
    os << "\n[medium]\n";
    os << "lattice = " << config.medium.lattice << '\n';
    os << "block = " << config.medium.block << '\n';
    os << "refractory = " << config.medium.refractory << '\n';
    os << "window = " << config.medium.window << '\n';
    os << "theta_out = " << config.medium.theta_out << '\n';
    return os.str();
}

// ---- fitness -----------------------------------------------------------------

namespace {

// Truth-table rows: (a, b) pairs. NOT is probed on input A with B held FALSE.
std::vector<std::pair<bool, bool>> fitness_rows(Gate target) {
    if (target == Gate::NOT) return {{false, false}, {true, false}};
    return {{false, false}, {false, true}, {true, false}, {true, true}};
}

bool target_output(Gate target, bool a, bool b) {
    return target == Gate::NOT ? apply1(target, a) : apply2(target, a, b);
}

}  // namespace

double fitness(const VirtualMaterial& material, const MaterialGenotype& genotype,
               Gate target, uint64_t& eval_counter) {
    const auto rows = fitness_rows(target);
    int correct = 0;
    for (const auto& [a, b] : rows)
        if (material.evaluate(genotype, a, b, eval_counter) ==
            target_output(target, a, b))
            ++correct;
    return static_cast<double>(correct) / static_cast<double>(rows.size());
}

double fitness(const ControllerGenotype& controller, Gate target,
               const MediumParams& params, uint64_t& eval_counter) {
    const auto rows = fitness_rows(target);
    int correct = 0;
    for (const auto& [a, b] : rows)
        if (medium_run(controller, a, b, params, eval_counter).output ==
            target_output(target, a, b))
            ++correct;
    return static_cast<double>(correct) / static_cast<double>(rows.size());
}

// ---- protocols ---------------------------------------------------------------

namespace {

RunRecord run_lc(const ExperimentConfig& config, Gate target,
                 uint32_t run_index, uint64_t run_seed) {
    RunRecord rec;
    rec.run_index = run_index;
    rec.run_seed = run_seed;
    rec.target = target;
    rec.effort.unit = EffortUnit::evaluations;

    const VirtualMaterial material =
        config.material_planted
            ? VirtualMaterial::planted(config.material_seed,
                                       static_cast<int>(config.settle_steps))
            : VirtualMaterial::from_seed(config.material_seed,
                                         static_cast<int>(config.settle_steps));
    rng::Stream stream(run_seed);

    struct Individual {
        MaterialGenotype genotype;
        double fit = -1.0;  // < 0 means not yet evaluated
    };
    std::vector<Individual> pop(config.population);
    for (auto& ind : pop) ind.genotype = random_material_genotype(stream);

    uint64_t evals = 0;
    double best = 0.0;
    for (uint32_t gen = 1; gen <= config.generation_cutoff; ++gen) {
        for (auto& ind : pop) {
            if (ind.fit >= 0.0) continue;
            ind.fit = fitness(material, ind.genotype, target, evals);
            if (ind.fit > best) best = ind.fit;
            if (ind.fit == 1.0) {
                rec.best_fitness_trace.push_back(best);
                rec.success = true;
                rec.effort = {evals, EffortUnit::evaluations, false};
                rec.winner_hex = ind.genotype.to_hex();
                rec.evaluations = evals;
                rec.generations = gen;
                return rec;
            }
        }
        rec.best_fitness_trace.push_back(best);
        if (gen == config.generation_cutoff) break;

        // Keep the elite, refill with mutated clones of random elites.
        std::vector<size_t> order(pop.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) {
            return pop[x].fit > pop[y].fit;
        });
        std::vector<Individual> next;
        next.reserve(pop.size());
        for (uint32_t e = 0; e < config.elite; ++e) next.push_back(pop[order[e]]);
        while (next.size() < pop.size()) {
            Individual child = next[stream.uniform_index(config.elite)];
            mutate_material_genotype(
                child.genotype, static_cast<int>(config.mutations_per_individual),
                stream);
            child.fit = -1.0;
            next.push_back(std::move(child));
        }
        pop = std::move(next);
    }
    rec.effort = {evals, EffortUnit::evaluations, true};
    rec.evaluations = evals;
    rec.generations = config.generation_cutoff;
    return rec;
}

RunRecord run_bz(const ExperimentConfig& config, Gate target,
                 uint32_t run_index, uint64_t run_seed) {
    RunRecord rec;
    rec.run_index = run_index;
    rec.run_seed = run_seed;
    rec.target = target;
    rec.effort.unit = EffortUnit::generations;

    MediumParams params = config.medium;
    params.iterations = static_cast<int>(config.fitness_iterations);
    rng::Stream stream(run_seed);
    const bool random_search = config.protocol == Protocol::bz_random;

    struct Individual {
        ControllerGenotype genotype;
        double fit = -1.0;
    };
    std::vector<Individual> pop(config.population);
    for (auto& ind : pop) ind.genotype = ControllerGenotype::random(stream);

    uint64_t evals = 0;
    double best_ever = 0.0;
    for (uint32_t gen = 1; gen <= config.generation_cutoff; ++gen) {
        double gen_best = 0.0;
        const Individual* winner = nullptr;
        for (auto& ind : pop) {
            if (ind.fit < 0.0)
                ind.fit = fitness(ind.genotype, target, params, evals);
            if (ind.fit > gen_best) gen_best = ind.fit;
            if (ind.fit == 1.0 && !winner) winner = &ind;
        }
        best_ever = std::max(best_ever, gen_best);
        rec.best_fitness_trace.push_back(random_search ? gen_best : best_ever);
        if (winner) {
            rec.success = true;
            rec.effort = {gen, EffortUnit::generations, false};
            rec.winner_hex = winner->genotype.to_hex();
            rec.evaluations = evals;
            rec.generations = gen;
            return rec;
        }
        if (gen == config.generation_cutoff) break;

        if (random_search) {
            for (auto& ind : pop) {
                ind.genotype = ControllerGenotype::random(stream);
                ind.fit = -1.0;
            }
        } else {
            std::vector<size_t> order(pop.size());
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) {
                return pop[x].fit > pop[y].fit;
            });
            std::vector<Individual> next;
            next.reserve(pop.size());
            for (uint32_t e = 0; e < config.elite; ++e)
                next.push_back(pop[order[e]]);
            const size_t first_offspring = next.size();
            while (next.size() < pop.size()) {
                Individual child = next[stream.uniform_index(config.elite)];
                child.fit = -1.0;
                next.push_back(std::move(child));
            }
            // mutation_rate random bit flips spread uniformly over the
            // offsprings' rule tables; elites stay untouched.
            const size_t n_offspring = next.size() - first_offspring;
            for (uint32_t flip = 0; flip < config.mutation_rate; ++flip) {
                const size_t who =
                    first_offspring + stream.uniform_index(n_offspring);
                next[who].genotype.flip_bit(static_cast<uint32_t>(
                    stream.uniform_index(ControllerGenotype::kTotalBits)));
            }
            pop = std::move(next);
        }
    }
    rec.effort = {config.generation_cutoff, EffortUnit::generations, true};
    rec.evaluations = evals;
    rec.generations = config.generation_cutoff;
    return rec;
}

}  // namespace

RunRecord run_evolution(const ExperimentConfig& config, Gate target,
                        uint32_t run_index, uint64_t run_seed) {
    const auto errors = config.validate();
    if (!errors.empty()) {
        std::string msg = "invalid experiment config:";
        for (const auto& e : errors) msg += " " + e + ";";
        throw std::invalid_argument(msg);
    }
    return config.protocol == Protocol::lc_style
               ? run_lc(config, target, run_index, run_seed)
               : run_bz(config, target, run_index, run_seed);
}

// ---- aggregation -------------------------------------------------------------

namespace {

// min/max ordering over efforts: plain value sorts before censored at the
// same value.
bool effort_less(const Effort& a, const Effort& b) {
    if (a.value != b.value) return a.value < b.value;
    return !a.censored && b.censored;
}

}  // namespace

GateStats aggregate_stats(const ExperimentConfig& config, Gate target,
                          const std::vector<RunRecord>& records) {
    if (records.empty()) throw std::invalid_argument("no run records");
    GateStats s;
    s.gate = to_string(target);
    s.protocol = std::string(to_string(config.protocol));
    s.mutation_rate = config.is_bz() ? config.mutation_rate : 0;
    s.runs = static_cast<uint32_t>(records.size());
    s.unit = config.effort_unit();
    s.min_effort = s.max_effort = records.front().effort;
    double sum = 0.0;
    for (const auto& r : records) {
        if (r.success) ++s.successes;
        if (r.effort.censored) ++s.censored_runs;
        if (effort_less(r.effort, s.min_effort)) s.min_effort = r.effort;
        if (effort_less(s.max_effort, r.effort)) s.max_effort = r.effort;
        sum += static_cast<double>(r.effort.value);
    }
    s.avg = sum / static_cast<double>(records.size());
    double var = 0.0;
    for (const auto& r : records) {
        const double d = static_cast<double>(r.effort.value) - s.avg;
        var += d * d;
    }
    s.stddev = std::sqrt(var / static_cast<double>(records.size()));
    return s;
}

ExperimentResult run_experiment(const ExperimentConfig& config, int workers) {
    const auto errors = config.validate();
    if (!errors.empty()) {
        std::string msg = "invalid experiment config:";
        for (const auto& e : errors) msg += " " + e + ";";
        throw std::invalid_argument(msg);
    }
    const size_t total = config.targets.size() * config.runs;
    std::vector<RunRecord> records(total);

    std::atomic<size_t> next_job{0};
    auto work = [&] {
        for (;;) {
            const size_t job = next_job.fetch_add(1);
            if (job >= total) return;
            const size_t gate_index = job / config.runs;
            const uint32_t run_index = static_cast<uint32_t>(job % config.runs);
            const uint64_t run_seed = rng::derive(config.master_seed, job);
            records[job] = run_evolution(config, config.targets[gate_index],
                                         run_index, run_seed);
        }
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    ExperimentResult result;
    result.records = std::move(records);
    for (size_t g = 0; g < config.targets.size(); ++g) {
        const std::vector<RunRecord> slice(
            result.records.begin() + static_cast<long>(g * config.runs),
            result.records.begin() + static_cast<long>((g + 1) * config.runs));
        result.stats.push_back(aggregate_stats(config, config.targets[g], slice));
    }
    return result;
}

// ---- serialization -----------------------------------------------------------

std::string effort_cell(const Effort& e) {
    return (e.censored ? ">" : "") + std::to_string(e.value);
}

std::string stats_csv(const std::vector<GateStats>& stats) {
    std::ostringstream os;
    os << "gate,protocol,mutation_rate,success_rate,runs,min,max,avg,std,unit,"
          "censored_runs\n";
    char buf[64];
    for (const auto& s : stats) {
        os << s.gate << ',' << s.protocol << ',' << s.mutation_rate << ','
           << s.successes << '/' << s.runs << ',' << s.runs << ','
           << effort_cell(s.min_effort) << ',' << effort_cell(s.max_effort);
        std::snprintf(buf, sizeof buf, ",%.2f,%.2f,", s.avg, s.stddev);
        os << buf << to_string(s.unit) << ',' << s.censored_runs << '\n';
    }
    return os.str();
}

std::string records_jsonl(const std::vector<RunRecord>& records) {
    std::ostringstream os;
    for (const auto& r : records) {
        nlohmann::json j{
            {"run", r.run_index},
            {"seed", r.run_seed},
            {"gate", to_string(r.target)},
            {"success", r.success},
            {"effort",
             {{"value", r.effort.value},
              {"unit", to_string(r.effort.unit)},
              {"censored", r.effort.censored}}},
            {"generations", r.generations},
            {"evaluations", r.evaluations},
            {"best_fitness_trace", r.best_fitness_trace},
            {"winner", r.winner_hex},
        };
        os << j.dump() << '\n';
    }
    return os.str();
}

}  // namespace gatelab
