#include "lorentz/serialize.hpp"

#include <json.hpp>

namespace lorentz {

namespace {

nlohmann::json topology_json(const Topology& topology) {
    nlohmann::json j;
    j["kind"] = topology.is_plane() ? "plane" : "cylinder";
    if (topology.is_cylinder()) j["circumference"] = topology.circumference();
    return j;
}

nlohmann::json spec_json(const EnvironmentSpec& spec) {
    nlohmann::json j;
    j["model"] = to_string(spec.model);
    j["p"] = spec.p;
    j["q"] = spec.q;
    j["seed"] = spec.seed;
    j["topology"] = topology_json(spec.topology);
    return j;
}

nlohmann::json ray_state_json(const RayState& s) {
    return nlohmann::json{{"x", s.pos.x}, {"y", s.pos.y}, {"heading", to_string(s.heading)}};
}

}  // namespace

std::string to_json_string(const EnvironmentSpec& spec) { return spec_json(spec).dump(); }

EnvironmentSpec environment_spec_from_json(const std::string& json_text) {
    const nlohmann::json j = nlohmann::json::parse(json_text);
    EnvironmentSpec spec;
    spec.model = model_kind_from_string(j.at("model").get<std::string>());
    spec.p = j.at("p").get<double>();
    spec.q = j.value("q", 0.5);
    spec.seed = j.at("seed").get<std::uint64_t>();
    const nlohmann::json& topo = j.at("topology");
    const std::string kind = topo.at("kind").get<std::string>();
    if (kind == "plane")
        spec.topology = Topology::plane();
    else if (kind == "cylinder")
        spec.topology = Topology::cylinder(topo.at("circumference").get<std::int64_t>());
    else
        throw std::invalid_argument("unknown topology kind: " + kind);
    spec.validate();
    return spec;
}

std::string to_json_string(const TraceResult& result, bool include_path) {
    nlohmann::json j;
    j["outcome"] = to_string(result.outcome);
    j["steps"] = result.steps;
    if (result.exit_state) j["exit"] = ray_state_json(*result.exit_state);
    if (result.outcome == TraceOutcomeKind::Periodic) j["period"] = result.period;
    j["column0_crossings"] = result.column0_crossings;
    if (result.edges_tracked) j["visited_undirected_edges"] = result.visited_undirected_edges;
    j["returns_to_start_pos"] = result.returns_to_start_pos;
    if (include_path && !result.path.empty()) {
        nlohmann::json path = nlohmann::json::array();
        for (const RayState& s : result.path)
            path.push_back(nlohmann::json::array({s.pos.x, s.pos.y, to_string(s.heading)}));
        j["path"] = std::move(path);
    }
    return j.dump();
}

std::string to_json_string(const Estimate& est) {
    nlohmann::json j;
    j["spec"] = spec_json(est.spec);
    j["n"] = est.n;
    j["L"] = est.window;
    j["trials"] = est.trials;
    j["escapes"] = est.escapes;
    j["alpha"] = est.alpha;
    j["master_seed"] = est.master_seed;
    j["p_hat"] = est.p_hat;
    j["cp_lower"] = est.cp_lower;
    j["cp_upper"] = est.cp_upper;
    j["bound"] = est.bound;
    j["verdict"] = to_string(est.verdict);
    if (est.verdict == Verdict::Rejected) j["rejection_reason"] = est.rejection_reason;
    return j.dump();
}

std::string to_json_string(const ParityReport& report) {
    nlohmann::json j;
    j["circumference"] = report.circumference;
    j["L"] = report.window;
    j["escaped_count"] = report.escaped_count;
    j["all_periodic_crossings_even"] = report.all_periodic_crossings_even;
    j["ok"] = report.ok();
    nlohmann::json starts = nlohmann::json::array();
    for (const ParityStart& s : report.starts) {
        starts.push_back(nlohmann::json{{"start", ray_state_json(s.start)},
                                        {"outcome", to_string(s.outcome)},
                                        {"steps", s.steps},
                                        {"column0_crossings", s.column0_crossings}});
    }
    j["starts"] = std::move(starts);
    j["periodic_crossing_counts"] = report.periodic_crossing_counts;
    return j.dump();
}

}  // namespace lorentz
