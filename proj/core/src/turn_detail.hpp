#pragma once

// Private header: turn rules as templates so the tracer's hot loop can
// devirtualize environment queries when the concrete Environment is known.

#include <stdexcept>
#include <string>

#include "lorentz/dynamics.hpp"
#include "lorentz/environment.hpp"

namespace lorentz::detail {

template <class Src>
Direction manhattan_lane(const Src& src, Vertex v, Direction heading) {
    return is_horizontal(heading) ? src.street_orientation(Axis::Horizontal, v.y)
                                  : src.street_orientation(Axis::Vertical, v.x);
}

template <class Src>
Direction manhattan_turn(const Src& src, Vertex arrival, Direction incoming) {
    if (incoming != manhattan_lane(src, arrival, incoming))
        throw std::logic_error("Manhattan lane invariant breached: heading " +
                               std::string(to_string(incoming)) + " at (" +
                               std::to_string(arrival.x) + "," + std::to_string(arrival.y) +
                               ") opposes its lane");
    if (!src.obstacle_at(arrival)) return incoming;
    return is_horizontal(incoming) ? src.street_orientation(Axis::Vertical, arrival.x)
                                   : src.street_orientation(Axis::Horizontal, arrival.y);
}

template <class Src>
Direction turn(const Src& src, RotatingOverlay* overlay, Vertex arrival, Direction incoming) {
    switch (src.model()) {
        case ModelKind::Mirror:
            return reflect(src.mirror_at(arrival), incoming);
        case ModelKind::Rotating: {
            if (overlay == nullptr)
                throw std::logic_error("rotating turn rule needs an overlay");
            const MirrorState m = overlay->effective_mirror(arrival);
            const Direction out = reflect(m, incoming);
            if (m != MirrorState::Empty) overlay->record_flip(arrival);
            return out;
        }
        case ModelKind::ManhattanPeriodic:
        case ModelKind::ManhattanRandom:
            return manhattan_turn(src, arrival, incoming);
    }
    throw std::logic_error("unreachable model kind");
}

/// Shared involution for non-rotating models: the per-vertex turn map is its
/// own inverse on lane-valid headings, which makes inverse_step uniform.
template <class Src>
Direction turn_involution(const Src& src, Vertex v, Direction d) {
    if (src.model() == ModelKind::Mirror) return reflect(src.mirror_at(v), d);
    return manhattan_turn(src, v, d);
}

}  // namespace lorentz::detail
