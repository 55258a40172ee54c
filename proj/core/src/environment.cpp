#include "lorentz/environment.hpp"

#include <stdexcept>

#include "lorentz/prf.hpp"

namespace lorentz {

const char* to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::Mirror: return "mirror";
        case ModelKind::ManhattanPeriodic: return "manhattan_periodic";
        case ModelKind::ManhattanRandom: return "manhattan_random";
        case ModelKind::Rotating: return "rotating";
    }
    return "?";
}

ModelKind model_kind_from_string(const std::string& s) {
    if (s == "mirror") return ModelKind::Mirror;
    if (s == "manhattan_periodic") return ModelKind::ManhattanPeriodic;
    if (s == "manhattan_random") return ModelKind::ManhattanRandom;
    if (s == "rotating") return ModelKind::Rotating;
    throw std::invalid_argument("unknown model: " + s);
}

const char* to_string(MirrorState m) {
    switch (m) {
        case MirrorState::Empty: return "empty";
        case MirrorState::NE: return "NE";
        case MirrorState::NW: return "NW";
    }
    return "?";
}

void EnvironmentSpec::validate() const {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("density p must lie in [0, 1]");
    if (!(q >= 0.0 && q <= 1.0))
        throw std::invalid_argument("orientation bias q must lie in [0, 1]");
}

Environment::Environment(EnvironmentSpec spec) : spec_(spec) { spec_.validate(); }

MirrorState Environment::mirror_at(Vertex v) const {
    v = spec_.topology.canonicalize(v);
    const double present = vertex_u01(spec_.seed, v.x, v.y, kStreamMirrorPresence);
    if (present >= spec_.p) return MirrorState::Empty;
    const double orient = vertex_u01(spec_.seed, v.x, v.y, kStreamMirrorOrientation);
    return orient < spec_.q ? MirrorState::NE : MirrorState::NW;
}

bool Environment::obstacle_at(Vertex v) const {
    v = spec_.topology.canonicalize(v);
    return vertex_u01(spec_.seed, v.x, v.y, kStreamMirrorPresence) < spec_.p;
}

Direction Environment::street_orientation(Axis axis, std::int64_t line_index) const {
    if (!is_manhattan(spec_.model))
        throw std::invalid_argument("street orientations exist only for Manhattan models");
    if (axis == Axis::Horizontal && spec_.topology.is_cylinder()) {
        // Horizontal lines live on the wrapped coordinate; index them
        // canonically so the assignment is consistent around the cylinder.
        line_index = spec_.topology.canonicalize(Vertex{0, line_index}).y;
    }
    if (spec_.model == ModelKind::ManhattanPeriodic) {
        const bool even = (line_index & 1) == 0;
        if (axis == Axis::Horizontal) return even ? Direction::East : Direction::West;
        return even ? Direction::North : Direction::South;
    }
    const std::uint64_t stream =
        axis == Axis::Horizontal ? kStreamStreetHorizontal : kStreamStreetVertical;
    const bool positive = index_u01(spec_.seed, line_index, stream) < 0.5;
    if (axis == Axis::Horizontal) return positive ? Direction::East : Direction::West;
    return positive ? Direction::North : Direction::South;
}

MirrorState RotatingOverlay::effective_mirror(Vertex v) const {
    v = base_->topology().canonicalize(v);
    const MirrorState m = base_->mirror_at(v);
    if (m == MirrorState::Empty || odd_parity_.count(v) == 0) return m;
    return m == MirrorState::NE ? MirrorState::NW : MirrorState::NE;
}

void RotatingOverlay::record_flip(Vertex v) {
    v = base_->topology().canonicalize(v);
    if (base_->mirror_at(v) == MirrorState::Empty)
        throw std::logic_error("record_flip on an empty vertex");
    const auto [it, inserted] = odd_parity_.insert(v);
    if (!inserted) odd_parity_.erase(it);
}

bool RotatingOverlay::flip_parity(Vertex v) const {
    return odd_parity_.count(base_->topology().canonicalize(v)) != 0;
}

}  // namespace lorentz
