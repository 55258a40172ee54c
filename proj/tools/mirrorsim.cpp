// mirrorsim: simulation and verification toolkit for the Lorentz mirror model
// on Z^2 and odd cylinders, with the Manhattan and rotating-mirror variants.
//
// Subcommands: trace, estimate, sweep, cylinder-check, oracle, bench.
// Exit codes: 0 all checks pass, 1 a bound/parity check failed, 2 usage or
// configuration error.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lorentz/dynamics.hpp"
#include "lorentz/environment.hpp"
#include "lorentz/estimate.hpp"
#include "lorentz/exact.hpp"
#include "lorentz/models.hpp"
#include "lorentz/percolation.hpp"
#include "lorentz/prf.hpp"
#include "lorentz/serialize.hpp"

namespace {

using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

std::uint64_t draw_seed_if_missing(std::optional<std::uint64_t> seed) {
    if (seed) return *seed;
    std::random_device rd;
    const std::uint64_t drawn =
        (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
    std::cerr << "seed: " << drawn << "\n";
    return drawn;
}

void write_output(const std::string& payload, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + output_path);
    out << payload;
}

lorentz::Topology make_topology(const std::string& kind, std::int64_t circumference) {
    if (kind == "plane") return lorentz::Topology::plane();
    if (kind == "cylinder") return lorentz::Topology::cylinder(circumference);
    throw std::invalid_argument("unknown topology: " + kind);
}

json topology_config(const lorentz::Topology& topology) {
    json j;
    j["kind"] = topology.is_plane() ? "plane" : "cylinder";
    if (topology.is_cylinder()) j["circumference"] = topology.circumference();
    return j;
}

json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    json record = json::parse(in);
    // Accept either a bare config object or a full run record embedding one.
    if (record.contains("config")) return record["config"];
    return record;
}

// ---------------------------------------------------------------------------
// trace

struct TraceConfig {
    std::string model = "mirror";
    double p = 0.5;
    double q = 0.5;
    std::string topology = "plane";
    std::int64_t circumference = 3;
    std::int64_t n = 10;
    std::int64_t window = 200;
    std::optional<std::uint64_t> seed;
    std::string heading = "E";
    std::uint64_t max_steps = 0;
    bool dump_path = false;
    std::string output;
};

json trace_config_json(const TraceConfig& cfg, std::uint64_t seed) {
    json j;
    j["command"] = "trace";
    j["model"] = cfg.model;
    j["p"] = cfg.p;
    j["q"] = cfg.q;
    j["topology"] = topology_config(make_topology(cfg.topology, cfg.circumference));
    j["n"] = cfg.n;
    j["L"] = cfg.window;
    j["seed"] = seed;
    j["heading"] = cfg.heading;
    j["max_steps"] = cfg.max_steps;
    j["dump_path"] = cfg.dump_path;
    return j;
}

TraceConfig trace_config_from_json(const json& j) {
    TraceConfig cfg;
    cfg.model = j.at("model").get<std::string>();
    cfg.p = j.at("p").get<double>();
    cfg.q = j.value("q", 0.5);
    const json& topo = j.at("topology");
    cfg.topology = topo.at("kind").get<std::string>();
    if (cfg.topology == "cylinder")
        cfg.circumference = topo.at("circumference").get<std::int64_t>();
    cfg.n = j.value("n", std::int64_t{10});
    cfg.window = j.value("L", std::int64_t{200});
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.heading = j.value("heading", "E");
    cfg.max_steps = j.value("max_steps", std::uint64_t{0});
    cfg.dump_path = j.value("dump_path", false);
    return cfg;
}

int cmd_trace(const TraceConfig& cfg) {
    const std::uint64_t seed = draw_seed_if_missing(cfg.seed);

    lorentz::EnvironmentSpec spec;
    spec.model = lorentz::model_kind_from_string(cfg.model);
    spec.p = cfg.p;
    spec.q = cfg.q;
    spec.seed = seed;
    spec.topology = make_topology(cfg.topology, cfg.circumference);

    const lorentz::TopologyValidation valid =
        lorentz::validate_model_topology(spec.model, spec.topology);
    if (!valid.ok) throw std::invalid_argument(valid.reason);

    const lorentz::Environment env(spec);
    const lorentz::RayState start =
        lorentz::initial_state(env, lorentz::direction_from_string(cfg.heading));
    const lorentz::EscapeRegion region = spec.topology.is_plane()
                                             ? lorentz::EscapeRegion::outside_box(cfg.n)
                                             : lorentz::EscapeRegion::outside_strip(cfg.window);
    lorentz::TraceOptions opts;
    opts.max_steps = cfg.max_steps;
    opts.record_path = cfg.dump_path;

    const lorentz::TraceResult result = lorentz::trace(env, start, region, opts);

    json record = json::parse(lorentz::to_json_string(result, cfg.dump_path));
    record["config"] = trace_config_json(cfg, seed);
    write_output(record.dump(), cfg.output);
    return kExitPass;
}

// ---------------------------------------------------------------------------
// estimate

struct EstimateConfig {
    std::string model = "mirror";
    double p = 0.5;
    double q = 0.5;
    std::string topology = "plane";
    std::int64_t circumference = 3;
    std::int64_t n = 5;
    std::int64_t window = 200;
    std::uint64_t trials = 100000;
    std::optional<std::uint64_t> seed;
    double alpha = 1e-3;
    int jobs = 0;
    std::uint64_t max_steps = 0;
    std::string heading = "E";
    std::string format = "json";
    std::string output;
};

json estimate_config_json(const EstimateConfig& cfg, std::uint64_t seed) {
    json j;
    j["command"] = "estimate";
    j["model"] = cfg.model;
    j["p"] = cfg.p;
    j["q"] = cfg.q;
    j["topology"] = topology_config(make_topology(cfg.topology, cfg.circumference));
    j["n"] = cfg.n;
    j["L"] = cfg.window;
    j["trials"] = cfg.trials;
    j["seed"] = seed;
    j["alpha"] = cfg.alpha;
    j["max_steps"] = cfg.max_steps;
    j["heading"] = cfg.heading;
    j["format"] = cfg.format;
    return j;
}

EstimateConfig estimate_config_from_json(const json& j) {
    EstimateConfig cfg;
    cfg.model = j.at("model").get<std::string>();
    cfg.p = j.at("p").get<double>();
    cfg.q = j.value("q", 0.5);
    const json& topo = j.at("topology");
    cfg.topology = topo.at("kind").get<std::string>();
    if (cfg.topology == "cylinder")
        cfg.circumference = topo.at("circumference").get<std::int64_t>();
    cfg.n = j.value("n", std::int64_t{5});
    cfg.window = j.value("L", std::int64_t{200});
    cfg.trials = j.at("trials").get<std::uint64_t>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.alpha = j.value("alpha", 1e-3);
    cfg.max_steps = j.value("max_steps", std::uint64_t{0});
    cfg.heading = j.value("heading", "E");
    cfg.format = j.value("format", "json");
    return cfg;
}

int cmd_estimate(const EstimateConfig& cfg) {
    const std::uint64_t seed = draw_seed_if_missing(cfg.seed);

    lorentz::EnvironmentSpec spec;
    spec.model = lorentz::model_kind_from_string(cfg.model);
    spec.p = cfg.p;
    spec.q = cfg.q;
    spec.topology = make_topology(cfg.topology, cfg.circumference);

    lorentz::EstimateOptions opts;
    opts.trials = cfg.trials;
    opts.master_seed = seed;
    opts.alpha = cfg.alpha;
    opts.jobs = cfg.jobs;
    opts.window = cfg.window;
    opts.max_steps = cfg.max_steps;
    opts.heading = lorentz::direction_from_string(cfg.heading);

    const lorentz::Estimate est = lorentz::escape_probability(spec, cfg.n, opts);
    if (est.verdict == lorentz::Verdict::Rejected)
        throw std::invalid_argument(est.rejection_reason);

    if (cfg.format == "csv") {
        std::string payload = lorentz::kEstimateCsvHeader;
        payload += '\n';
        payload += lorentz::to_csv_row(est);
        payload += '\n';
        write_output(payload, cfg.output);
    } else {
        json record = json::parse(lorentz::to_json_string(est));
        record["config"] = estimate_config_json(cfg, seed);
        write_output(record.dump(), cfg.output);
    }
    return est.verdict == lorentz::Verdict::Pass ? kExitPass : kExitViolation;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepConfig {
    std::vector<std::string> models = {"mirror"};
    std::vector<double> p_values;
    std::vector<std::int64_t> n_values;
    double q = 0.5;
    std::string topology = "plane";
    std::int64_t circumference = 3;
    std::int64_t window = 200;
    std::uint64_t trials = 100000;
    std::optional<std::uint64_t> seed;
    double alpha = 1e-3;
    int jobs = 0;
    std::uint64_t max_steps = 0;
    std::string format = "csv";
    std::string output;
};

json sweep_config_json(const SweepConfig& cfg, std::uint64_t seed) {
    json j;
    j["command"] = "sweep";
    j["models"] = cfg.models;
    j["p_values"] = cfg.p_values;
    j["n_values"] = cfg.n_values;
    j["q"] = cfg.q;
    j["topology"] = topology_config(make_topology(cfg.topology, cfg.circumference));
    j["L"] = cfg.window;
    j["trials"] = cfg.trials;
    j["seed"] = seed;
    j["alpha"] = cfg.alpha;
    j["max_steps"] = cfg.max_steps;
    j["format"] = cfg.format;
    return j;
}

SweepConfig sweep_config_from_json(const json& j) {
    SweepConfig cfg;
    cfg.models = j.at("models").get<std::vector<std::string>>();
    cfg.p_values = j.at("p_values").get<std::vector<double>>();
    cfg.n_values = j.at("n_values").get<std::vector<std::int64_t>>();
    cfg.q = j.value("q", 0.5);
    const json& topo = j.at("topology");
    cfg.topology = topo.at("kind").get<std::string>();
    if (cfg.topology == "cylinder")
        cfg.circumference = topo.at("circumference").get<std::int64_t>();
    cfg.window = j.value("L", std::int64_t{200});
    cfg.trials = j.at("trials").get<std::uint64_t>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.alpha = j.value("alpha", 1e-3);
    cfg.max_steps = j.value("max_steps", std::uint64_t{0});
    cfg.format = j.value("format", "csv");
    return cfg;
}

int cmd_sweep(const SweepConfig& cfg) {
    if (cfg.p_values.empty() || cfg.n_values.empty())
        throw std::invalid_argument("sweep needs at least one --p and one --n value");
    const std::uint64_t seed = draw_seed_if_missing(cfg.seed);

    std::vector<lorentz::SweepCell> grid;
    for (const std::string& model_name : cfg.models) {
        const lorentz::ModelKind model = lorentz::model_kind_from_string(model_name);
        for (const double p : cfg.p_values)
            for (const std::int64_t n : cfg.n_values)
                grid.push_back(lorentz::SweepCell{model, p, n});
    }

    lorentz::EstimateOptions opts;
    opts.trials = cfg.trials;
    opts.master_seed = seed;
    opts.alpha = cfg.alpha;
    opts.jobs = cfg.jobs;
    opts.window = cfg.window;
    opts.max_steps = cfg.max_steps;

    const lorentz::Topology topology = make_topology(cfg.topology, cfg.circumference);
    const std::vector<lorentz::Estimate> rows = lorentz::sweep(grid, cfg.q, topology, opts);

    bool any_violation = false;
    bool any_rejected = false;
    for (const lorentz::Estimate& est : rows) {
        any_violation = any_violation || est.verdict == lorentz::Verdict::Violation;
        any_rejected = any_rejected || est.verdict == lorentz::Verdict::Rejected;
    }

    if (cfg.format == "json") {
        json record;
        record["config"] = sweep_config_json(cfg, seed);
        json jrows = json::array();
        for (const lorentz::Estimate& est : rows)
            jrows.push_back(json::parse(lorentz::to_json_string(est)));
        record["rows"] = std::move(jrows);
        write_output(record.dump(), cfg.output);
    } else {
        write_output(lorentz::to_csv(rows), cfg.output);
    }

    if (any_rejected) return kExitUsage;
    return any_violation ? kExitViolation : kExitPass;
}

// ---------------------------------------------------------------------------
// cylinder-check

struct CylinderCheckConfig {
    std::string model = "mirror";
    double p = 0.5;
    double q = 0.5;
    std::int64_t n = 3;
    std::int64_t window = 200;
    std::optional<std::uint64_t> seed;
    std::uint64_t max_steps = 0;
    std::string output;
};

json cylinder_check_config_json(const CylinderCheckConfig& cfg, std::uint64_t seed) {
    json j;
    j["command"] = "cylinder-check";
    j["model"] = cfg.model;
    j["p"] = cfg.p;
    j["q"] = cfg.q;
    j["n"] = cfg.n;
    j["L"] = cfg.window;
    j["seed"] = seed;
    j["max_steps"] = cfg.max_steps;
    return j;
}

CylinderCheckConfig cylinder_check_config_from_json(const json& j) {
    CylinderCheckConfig cfg;
    cfg.model = j.value("model", "mirror");
    cfg.p = j.at("p").get<double>();
    cfg.q = j.value("q", 0.5);
    cfg.n = j.at("n").get<std::int64_t>();
    cfg.window = j.value("L", std::int64_t{200});
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.max_steps = j.value("max_steps", std::uint64_t{0});
    return cfg;
}

int cmd_cylinder_check(const CylinderCheckConfig& cfg) {
    if (cfg.n < 0) throw std::invalid_argument("n must be >= 0");
    const std::uint64_t seed = draw_seed_if_missing(cfg.seed);

    lorentz::EnvironmentSpec spec;
    spec.model = lorentz::model_kind_from_string(cfg.model);
    spec.p = cfg.p;
    spec.q = cfg.q;
    spec.seed = seed;
    spec.topology = lorentz::Topology::cylinder(2 * cfg.n + 1);

    const lorentz::ParityReport report =
        lorentz::cylinder_parity_check(spec, cfg.window, cfg.max_steps);

    json record = json::parse(lorentz::to_json_string(report));
    record["config"] = cylinder_check_config_json(cfg, seed);
    write_output(record.dump(), cfg.output);
    return report.ok() ? kExitPass : kExitViolation;
}

// ---------------------------------------------------------------------------
// oracle

struct OracleConfig {
    std::string model = "mirror";
    std::string p = "1/2";
    std::string q = "1/2";
    std::int64_t n = 1;
    std::string heading = "E";
    std::string output;
};

json oracle_config_json(const OracleConfig& cfg) {
    json j;
    j["command"] = "oracle";
    j["model"] = cfg.model;
    j["p"] = cfg.p;
    j["q"] = cfg.q;
    j["n"] = cfg.n;
    j["heading"] = cfg.heading;
    return j;
}

OracleConfig oracle_config_from_json(const json& j) {
    OracleConfig cfg;
    cfg.model = j.at("model").get<std::string>();
    cfg.p = j.at("p").get<std::string>();
    cfg.q = j.value("q", std::string{"1/2"});
    cfg.n = j.at("n").get<std::int64_t>();
    cfg.heading = j.value("heading", "E");
    return cfg;
}

int cmd_oracle(const OracleConfig& cfg) {
    const lorentz::ModelKind model = lorentz::model_kind_from_string(cfg.model);
    const lorentz::Rational p = lorentz::parse_rational(cfg.p);
    const lorentz::Rational q = lorentz::parse_rational(cfg.q);

    const lorentz::ExactResult result = lorentz::exact_escape_probability(
        model, cfg.n, p, q, lorentz::direction_from_string(cfg.heading));
    const lorentz::Rational bound = lorentz::theorem_bound(cfg.n);
    const bool bound_holds = result.probability >= bound;

    json record;
    record["config"] = oracle_config_json(cfg);
    record["probability"] = result.probability.str();
    record["probability_decimal"] = result.probability.convert_to<double>();
    record["configurations_explored"] = result.configurations_explored;
    record["total_mass"] = result.total_mass.str();
    record["bound"] = bound.str();
    record["bound_holds"] = bound_holds;
    write_output(record.dump(), cfg.output);
    return bound_holds ? kExitPass : kExitViolation;
}

// ---------------------------------------------------------------------------
// bench

struct BenchConfig {
    double p = 0.5;
    std::uint64_t budget = 20000000;
    std::optional<std::uint64_t> seed;
    std::string output;
};

json run_throughput(lorentz::ModelKind model, double p, std::uint64_t budget,
                    std::uint64_t seed) {
    lorentz::EnvironmentSpec spec;
    spec.model = model;
    spec.p = p;
    spec.q = 0.5;
    spec.seed = seed;
    spec.topology = lorentz::Topology::plane();

    lorentz::TraceOptions opts;
    opts.track_edges = false;

    std::uint64_t total_steps = 0;
    std::uint64_t traces = 0;
    const auto t0 = std::chrono::steady_clock::now();
    if (p == 0.0) {
        // Free flight: one long straight trace, truncated at the budget.
        opts.max_steps = budget;
        const lorentz::Environment env(spec);
        const lorentz::TraceResult tr =
            lorentz::trace(env, lorentz::initial_state(env),
                           lorentz::EscapeRegion::outside_strip(
                               static_cast<std::int64_t>(budget) + 1),
                           opts);
        total_steps = tr.steps;
        traces = 1;
    } else {
        // Fresh quenched environments until the step budget is consumed.
        lorentz::EnvironmentSpec trial_spec = spec;
        const lorentz::EscapeRegion region = lorentz::EscapeRegion::outside_box(1000);
        while (total_steps < budget) {
            trial_spec.seed = lorentz::trial_seed(seed, traces);
            const lorentz::Environment env(trial_spec);
            total_steps += lorentz::trace(env, lorentz::initial_state(env), region, opts).steps;
            ++traces;
        }
    }
    const auto t1 = std::chrono::steady_clock::now();
    const double seconds = std::chrono::duration<double>(t1 - t0).count();

    json j;
    j["steps"] = total_steps;
    j["traces"] = traces;
    j["seconds"] = seconds;
    j["steps_per_second"] = seconds > 0 ? static_cast<double>(total_steps) / seconds : 0.0;
    return j;
}

int cmd_bench(const BenchConfig& cfg) {
    const std::uint64_t seed = draw_seed_if_missing(cfg.seed);

    json record;
    record["config"] = {{"command", "bench"},
                        {"p", cfg.p},
                        {"budget", cfg.budget},
                        {"seed", seed}};
    record["free_flight"] = run_throughput(lorentz::ModelKind::Mirror, 0.0, cfg.budget, seed);
    record["mixed"] = run_throughput(lorentz::ModelKind::Mirror, cfg.p, cfg.budget, seed);
    const double free_rate = record["free_flight"]["steps_per_second"].get<double>();
    const double mixed_rate = record["mixed"]["steps_per_second"].get<double>();
    record["throughput_ratio"] = mixed_rate > 0 ? free_rate / mixed_rate : 0.0;
    write_output(record.dump(), cfg.output);
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lorentz mirror model simulator and theorem-bound checker"};
    app.require_subcommand(1);

    TraceConfig trace_cfg;
    EstimateConfig estimate_cfg;
    SweepConfig sweep_cfg;
    CylinderCheckConfig cyl_cfg;
    OracleConfig oracle_cfg;
    BenchConfig bench_cfg;
    std::string config_path;

    std::uint64_t seed_value = 0;

    auto* trace_cmd = app.add_subcommand("trace", "Trace one ray through one environment");
    trace_cmd->add_option("--model", trace_cfg.model,
                          "mirror|manhattan_periodic|manhattan_random|rotating");
    trace_cmd->add_option("--p", trace_cfg.p, "mirror/obstacle density in [0,1]");
    trace_cmd->add_option("--q", trace_cfg.q, "P(NE | mirror), default 1/2");
    trace_cmd->add_option("--topology", trace_cfg.topology, "plane|cylinder");
    trace_cmd->add_option("--circ", trace_cfg.circumference, "cylinder circumference (odd)");
    trace_cmd->add_option("--n", trace_cfg.n, "escape box radius Q(n) on the plane");
    trace_cmd->add_option("--L", trace_cfg.window, "cylinder escape window |x| > L");
    trace_cmd->add_option("--seed", seed_value, "environment seed");
    trace_cmd->add_option("--heading", trace_cfg.heading, "start heading N|E|S|W");
    trace_cmd->add_option("--max-steps", trace_cfg.max_steps, "step cap (0 = automatic)");
    trace_cmd->add_flag("--dump-path", trace_cfg.dump_path, "include the full path");
    trace_cmd->add_option("--output", trace_cfg.output, "write JSON here instead of stdout");
    trace_cmd->add_option("--config", config_path, "replay a recorded run config");

    auto* est_cmd = app.add_subcommand("estimate", "Monte Carlo escape-probability estimate");
    est_cmd->add_option("--model", estimate_cfg.model, "model kind");
    est_cmd->add_option("--p", estimate_cfg.p, "density");
    est_cmd->add_option("--q", estimate_cfg.q, "orientation bias");
    est_cmd->add_option("--topology", estimate_cfg.topology, "plane|cylinder");
    est_cmd->add_option("--circ", estimate_cfg.circumference, "cylinder circumference (odd)");
    est_cmd->add_option("--n", estimate_cfg.n, "box radius");
    est_cmd->add_option("--L", estimate_cfg.window, "cylinder escape window");
    est_cmd->add_option("--trials", estimate_cfg.trials, "Monte Carlo trials");
    est_cmd->add_option("--seed", seed_value, "master seed");
    est_cmd->add_option("--alpha", estimate_cfg.alpha, "one-sided confidence level");
    est_cmd->add_option("--jobs", estimate_cfg.jobs, "worker threads (0 = hardware)");
    est_cmd->add_option("--max-steps", estimate_cfg.max_steps, "per-trial cap (0 = automatic)");
    est_cmd->add_option("--heading", estimate_cfg.heading, "start heading");
    est_cmd->add_option("--format", estimate_cfg.format, "json|csv");
    est_cmd->add_option("--output", estimate_cfg.output, "output file");
    est_cmd->add_option("--config", config_path, "replay a recorded run config");

    auto* sweep_cmd = app.add_subcommand("sweep", "Estimate over a (model, p, n) grid");
    sweep_cmd->add_option("--model", sweep_cfg.models, "model kinds")->delimiter(',');
    sweep_cmd->add_option("--p", sweep_cfg.p_values, "densities")->delimiter(',');
    sweep_cmd->add_option("--n", sweep_cfg.n_values, "box radii")->delimiter(',');
    sweep_cmd->add_option("--q", sweep_cfg.q, "orientation bias");
    sweep_cmd->add_option("--topology", sweep_cfg.topology, "plane|cylinder");
    sweep_cmd->add_option("--circ", sweep_cfg.circumference, "cylinder circumference");
    sweep_cmd->add_option("--L", sweep_cfg.window, "cylinder escape window");
    sweep_cmd->add_option("--trials", sweep_cfg.trials, "trials per cell");
    sweep_cmd->add_option("--seed", seed_value, "sweep master seed");
    sweep_cmd->add_option("--alpha", sweep_cfg.alpha, "one-sided confidence level");
    sweep_cmd->add_option("--jobs", sweep_cfg.jobs, "worker threads");
    sweep_cmd->add_option("--max-steps", sweep_cfg.max_steps, "per-trial cap");
    sweep_cmd->add_option("--format", sweep_cfg.format, "csv|json");
    sweep_cmd->add_option("--output", sweep_cfg.output, "output file");
    sweep_cmd->add_option("--config", config_path, "replay a recorded run config");

    auto* cyl_cmd = app.add_subcommand(
        "cylinder-check", "Deterministic parity check on a cylinder of circumference 2n+1");
    cyl_cmd->add_option("--model", cyl_cfg.model, "mirror|manhattan_random");
    cyl_cmd->add_option("--p", cyl_cfg.p, "density");
    cyl_cmd->add_option("--q", cyl_cfg.q, "orientation bias");
    cyl_cmd->add_option("--n", cyl_cfg.n, "half-width; circumference is 2n+1");
    cyl_cmd->add_option("--L", cyl_cfg.window, "escape window |x| > L");
    cyl_cmd->add_option("--seed", seed_value, "environment seed");
    cyl_cmd->add_option("--max-steps", cyl_cfg.max_steps, "per-start cap (0 = automatic)");
    cyl_cmd->add_option("--output", cyl_cfg.output, "output file");
    cyl_cmd->add_option("--config", config_path, "replay a recorded run config");

    auto* oracle_cmd =
        app.add_subcommand("oracle", "Exact escape probability by branch-on-demand enumeration");
    oracle_cmd->add_option("--model", oracle_cfg.model, "non-rotating model kind");
    oracle_cmd->add_option("--p", oracle_cfg.p, "density as a rational, e.g. 1/2 or 0.5");
    oracle_cmd->add_option("--q", oracle_cfg.q, "orientation bias as a rational");
    oracle_cmd->add_option("--n", oracle_cfg.n, "box radius (n <= 4)");
    oracle_cmd->add_option("--heading", oracle_cfg.heading, "start heading");
    oracle_cmd->add_option("--output", oracle_cfg.output, "output file");
    oracle_cmd->add_option("--config", config_path, "replay a recorded run config");

    auto* bench_cmd = app.add_subcommand("bench", "Stepping-throughput report");
    bench_cmd->add_option("--p", bench_cfg.p, "density for the mixed workload");
    bench_cmd->add_option("--budget", bench_cfg.budget, "steps per workload");
    bench_cmd->add_option("--seed", seed_value, "seed");
    bench_cmd->add_option("--output", bench_cfg.output, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        CLI::App* active = app.get_subcommands().front();
        const bool seed_given =
            active->get_option_no_throw("--seed") != nullptr && active->count("--seed") > 0;
        std::optional<std::uint64_t> seed;
        if (seed_given) seed = seed_value;

        if (trace_cmd->parsed()) {
            if (!config_path.empty())
                trace_cfg = trace_config_from_json(load_config_file(config_path));
            else
                trace_cfg.seed = seed;
            return cmd_trace(trace_cfg);
        }
        if (est_cmd->parsed()) {
            if (!config_path.empty())
                estimate_cfg = estimate_config_from_json(load_config_file(config_path));
            else
                estimate_cfg.seed = seed;
            return cmd_estimate(estimate_cfg);
        }
        if (sweep_cmd->parsed()) {
            if (!config_path.empty())
                sweep_cfg = sweep_config_from_json(load_config_file(config_path));
            else
                sweep_cfg.seed = seed;
            return cmd_sweep(sweep_cfg);
        }
        if (cyl_cmd->parsed()) {
            if (!config_path.empty())
                cyl_cfg = cylinder_check_config_from_json(load_config_file(config_path));
            else
                cyl_cfg.seed = seed;
            return cmd_cylinder_check(cyl_cfg);
        }
        if (oracle_cmd->parsed()) {
            if (!config_path.empty())
                oracle_cfg = oracle_config_from_json(load_config_file(config_path));
            return cmd_oracle(oracle_cfg);
        }
        if (bench_cmd->parsed()) {
            bench_cfg.seed = seed;
            return cmd_bench(bench_cfg);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: bad config: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitViolation;
    }
    return kExitUsage;
}
