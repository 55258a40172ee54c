#include "lorentz/percolation.hpp"

#include <deque>
#include <stdexcept>
#include <unordered_set>

namespace lorentz {

const char* to_string(ClusterStatus s) {
    switch (s) {
        case ClusterStatus::Finite: return "finite";
        case ClusterStatus::ReachedBound: return "reached_bound";
        case ClusterStatus::OriginBlocked: return "origin_blocked";
    }
    return "?";
}

ClusterResult vacant_star_cluster(const StateSource& src, std::int64_t bound) {
    if (!src.topology().is_plane())
        throw std::invalid_argument("vacant_star_cluster is defined on the plane");
    if (bound < 1) throw std::invalid_argument("cluster bound must be >= 1");

    ClusterResult result;
    result.bound = bound;
    if (src.obstacle_at(Vertex{0, 0})) {
        result.status = ClusterStatus::OriginBlocked;
        return result;
    }

    std::unordered_set<Vertex, VertexHash> seen;
    std::deque<Vertex> frontier;
    seen.insert(Vertex{0, 0});
    frontier.push_back(Vertex{0, 0});
    bool touched_edge = false;

    while (!frontier.empty()) {
        const Vertex v = frontier.front();
        frontier.pop_front();
        result.vertices.push_back(v);
        if (v.x == bound || v.x == -bound || v.y == bound || v.y == -bound)
            touched_edge = true;
        for (std::int64_t ox = -1; ox <= 1; ++ox) {
            for (std::int64_t oy = -1; oy <= 1; ++oy) {
                if (ox == 0 && oy == 0) continue;
                const Vertex w{v.x + ox, v.y + oy};
                if (w.x > bound || w.x < -bound || w.y > bound || w.y < -bound) continue;
                if (seen.count(w) != 0 || src.obstacle_at(w)) continue;
                seen.insert(w);
                frontier.push_back(w);
            }
        }
    }

    result.status = touched_edge ? ClusterStatus::ReachedBound : ClusterStatus::Finite;
    return result;
}

ConfinementVerdict confinement_check(const StateSource& src, std::int64_t n,
                                     const TraceResult& trace_outcome) {
    if (!is_manhattan(src.model()))
        throw std::invalid_argument("confinement_check applies to Manhattan traces");

    const ClusterResult cluster = vacant_star_cluster(src, n);
    if (cluster.status != ClusterStatus::Finite)
        return ConfinementVerdict{true, std::string("vacuous: cluster ") +
                                            to_string(cluster.status)};
    // A finite cluster at bound n lies in Q(n-1) and encloses the ray.
    if (trace_outcome.outcome == TraceOutcomeKind::Escaped)
        return ConfinementVerdict{
            false, "trace escaped although the vacant *-cluster of the origin is finite (" +
                       std::to_string(cluster.vertices.size()) + " vertices)"};
    return ConfinementVerdict{true, "enclosed cluster, trace " +
                                        std::string(to_string(trace_outcome.outcome))};
}

}  // namespace lorentz
