#pragma once

// Hand-built environments for tests: explicit mirror/obstacle placements and
// street orientations, independent of the hash-derived Environment.

#include <map>
#include <unordered_map>
#include <unordered_set>

#include "lorentz/environment.hpp"

namespace lorentz::testing {

class MapSource final : public StateSource {
  public:
    MapSource(ModelKind model, Topology topology = Topology::plane())
        : model_(model), topology_(topology) {}

    MapSource& set_mirror(Vertex v, MirrorState m) {
        mirrors_[topology_.canonicalize(v)] = m;
        return *this;
    }
    MapSource& set_obstacle(Vertex v) {
        obstacles_.insert(topology_.canonicalize(v));
        return *this;
    }
    MapSource& set_street(Axis axis, std::int64_t line, Direction d) {
        streets_[{static_cast<int>(axis), line}] = d;
        return *this;
    }

    ModelKind model() const override { return model_; }
    Topology topology() const override { return topology_; }

    MirrorState mirror_at(Vertex v) const override {
        const auto it = mirrors_.find(topology_.canonicalize(v));
        return it == mirrors_.end() ? MirrorState::Empty : it->second;
    }

    bool obstacle_at(Vertex v) const override {
        return obstacles_.count(topology_.canonicalize(v)) != 0;
    }

    Direction street_orientation(Axis axis, std::int64_t line) const override {
        if (axis == Axis::Horizontal && topology_.is_cylinder())
            line = topology_.canonicalize(Vertex{0, line}).y;
        const auto it = streets_.find({static_cast<int>(axis), line});
        if (it != streets_.end()) return it->second;
        // Unset lanes fall back to the periodic convention.
        const bool even = (line & 1) == 0;
        if (axis == Axis::Horizontal) return even ? Direction::East : Direction::West;
        return even ? Direction::North : Direction::South;
    }

  private:
    ModelKind model_;
    Topology topology_;
    std::unordered_map<Vertex, MirrorState, VertexHash> mirrors_;
    std::unordered_set<Vertex, VertexHash> obstacles_;
    std::map<std::pair<int, std::int64_t>, Direction> streets_;
};

}  // namespace lorentz::testing
