#pragma once

#include <optional>
#include <string>

#include "lorentz/dynamics.hpp"
#include "lorentz/environment.hpp"

namespace lorentz {

struct TopologyValidation {
    bool ok = true;
    std::string reason;
};

/// The periodic Manhattan model needs alternating lane orientations and so
/// cannot be defined on a cylinder of odd circumference; that combination is
/// rejected. Every other in-scope combination is accepted.
TopologyValidation validate_model_topology(ModelKind kind, const Topology& topology);

/// Orientation of the lane a ray with the given heading travels on through v.
Direction lane_orientation(const StateSource& src, Vertex v, Direction heading);

/// Turn rule applied at the arrival vertex. Mirror: reflect off the mirror
/// there. Rotating: reflect off the effective mirror, then record the flip.
/// Manhattan: pass straight through a vacant vertex; an obstacle deflects the
/// ray onto the crossing lane in that lane's mandated direction. A Manhattan
/// heading that violates the lane orientation is an invariant breach and
/// throws std::logic_error.
Direction turn_rule(const StateSource& src, RotatingOverlay* overlay, Vertex arrival,
                    Direction incoming);

/// Start state at the origin. Mirror/rotating: the requested heading
/// (default East). Manhattan kinds: the orientation of the horizontal lane
/// y = 0, so the lane invariant holds from the first step.
RayState initial_state(const StateSource& src,
                       std::optional<Direction> requested_heading = std::nullopt);

}  // namespace lorentz
