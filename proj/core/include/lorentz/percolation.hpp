#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lorentz/dynamics.hpp"
#include "lorentz/environment.hpp"

namespace lorentz {

enum class ClusterStatus : std::uint8_t {
    Finite = 0,        ///< exploration exhausted strictly inside the bounding box
    ReachedBound = 1,  ///< the cluster touches the box edge; it may extend beyond
    OriginBlocked = 2  ///< the origin carries an obstacle; the cluster is undefined
};

const char* to_string(ClusterStatus s);

struct ClusterResult {
    ClusterStatus status = ClusterStatus::Finite;
    std::int64_t bound = 0;
    std::vector<Vertex> vertices;  ///< obstacle-free, *-connected, contains the origin
};

/// Vacant *-cluster of the origin: breadth-first exploration over 8-neighbors
/// restricted to obstacle-free vertices, truncated at |x| > bound or
/// |y| > bound. Plane topology only; bound >= 1.
ClusterResult vacant_star_cluster(const StateSource& src, std::int64_t bound);

struct ConfinementVerdict {
    bool pass = true;
    std::string detail;
};

/// One-sided confinement check for a Manhattan trace over Q(n): if the vacant
/// *-cluster of the origin (bound n) is finite — hence contained in Q(n-1) —
/// the trace must be Periodic, not Escaped. A ReachedBound or OriginBlocked
/// cluster makes the check vacuous.
ConfinementVerdict confinement_check(const StateSource& src, std::int64_t n,
                                     const TraceResult& trace_outcome);

}  // namespace lorentz
