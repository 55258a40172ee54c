#include "lorentz/models.hpp"

#include <stdexcept>

#include "turn_detail.hpp"

namespace lorentz {

TopologyValidation validate_model_topology(ModelKind kind, const Topology& topology) {
    if (kind == ModelKind::ManhattanPeriodic && topology.is_cylinder()) {
        return TopologyValidation{
            false,
            "the periodic Manhattan model needs alternating lanes and cannot be "
            "defined on a cylinder of odd circumference"};
    }
    return TopologyValidation{};
}

Direction lane_orientation(const StateSource& src, Vertex v, Direction heading) {
    return detail::manhattan_lane(src, v, heading);
}

Direction turn_rule(const StateSource& src, RotatingOverlay* overlay, Vertex arrival,
                    Direction incoming) {
    return detail::turn(src, overlay, arrival, incoming);
}

RayState initial_state(const StateSource& src, std::optional<Direction> requested_heading) {
    const Vertex origin = src.topology().canonicalize(Vertex{0, 0});
    if (is_manhattan(src.model()))
        return RayState{origin, src.street_orientation(Axis::Horizontal, 0)};
    return RayState{origin, requested_heading.value_or(Direction::East)};
}

}  // namespace lorentz
