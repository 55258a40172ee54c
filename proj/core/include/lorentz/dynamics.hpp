#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lorentz/environment.hpp"
#include "lorentz/lattice.hpp"

namespace lorentz {

/// Directed-edge state of the ray: it sits at pos and will next traverse the
/// edge from pos to pos + heading. pos is canonical for the active topology.
struct RayState {
    Vertex pos;
    Direction heading = Direction::East;

    friend bool operator==(const RayState& a, const RayState& b) {
        return a.pos == b.pos && a.heading == b.heading;
    }
    friend bool operator!=(const RayState& a, const RayState& b) { return !(a == b); }
};

/// Escape predicate for a trace. OutsideBox escapes when pos leaves
/// Q(n) = [-n, n]^2 (the theorem's region); OutsideStrip escapes when
/// |x| > L (the cylinder window).
struct EscapeRegion {
    enum class Kind : std::uint8_t { OutsideBox = 0, OutsideStrip = 1 };

    Kind kind = Kind::OutsideBox;
    std::int64_t radius = 0;

    static EscapeRegion outside_box(std::int64_t n) {
        return EscapeRegion{Kind::OutsideBox, n};
    }
    static EscapeRegion outside_strip(std::int64_t limit) {
        return EscapeRegion{Kind::OutsideStrip, limit};
    }

    bool escaped(Vertex v) const {
        if (kind == Kind::OutsideBox)
            return v.x > radius || v.x < -radius || v.y > radius || v.y < -radius;
        return v.x > radius || v.x < -radius;
    }
};

enum class TraceOutcomeKind : std::uint8_t { Escaped = 0, Periodic = 1, Truncated = 2 };

const char* to_string(TraceOutcomeKind k);

struct TraceResult {
    TraceOutcomeKind outcome = TraceOutcomeKind::Truncated;
    std::uint64_t steps = 0;  ///< edges traversed (escaped: to exit; periodic: one period)

    /// Escaped only: the ray at the first position outside the region,
    /// carrying the heading along which it arrived there.
    std::optional<RayState> exit_state;

    std::uint64_t period = 0;  ///< Periodic only; equals steps

    /// Traversals of horizontal edges whose left endpoint has x = 0, counted
    /// in either direction.
    std::uint64_t column0_crossings = 0;

    bool edges_tracked = false;
    std::uint64_t visited_undirected_edges = 0;  ///< distinct, when tracked

    /// Arrivals at the start vertex after the first step. Reported for the
    /// rotating model, where recurrence is measured but never asserted.
    std::uint64_t returns_to_start_pos = 0;

    std::vector<RayState> path;  ///< when recorded: start state, then each post-step state
};

struct TraceOptions {
    /// 0 selects the automatic cap where one exists: 4*(2n+1)^2 + 1 inside a
    /// box, 4*C*(2L+1) + 1 inside a cylinder strip, 10^7 for the rotating
    /// model or a plane strip. A non-rotating trace on a finite state space
    /// that hits an automatic cap throws std::logic_error instead of
    /// returning Truncated (injectivity makes that unreachable).
    std::uint64_t max_steps = 0;

    bool track_edges = true;
    bool record_path = false;

    /// Stepping topology override: positions wrap per this topology while
    /// environment queries still follow the source's own topology. Used for
    /// the plane/cylinder coupling check.
    std::optional<Topology> step_topology;
};

/// Reflection tables. Empty keeps the direction; NE ("/") swaps E<->N and
/// W<->S; NW ("\") swaps E<->S and W<->N. Each table is an involution.
constexpr Direction reflect(MirrorState m, Direction d) {
    constexpr Direction table[3][4] = {
        // N, E, S, W incoming
        {Direction::North, Direction::East, Direction::South, Direction::West},
        {Direction::East, Direction::North, Direction::West, Direction::South},
        {Direction::West, Direction::South, Direction::East, Direction::North},
    };
    return table[static_cast<std::uint8_t>(m)][static_cast<std::uint8_t>(d)];
}

/// One step of the deterministic dynamics for non-rotating models:
/// u = canonicalize(pos + heading), then the model's turn rule at u.
RayState step(const StateSource& src, RayState s);
RayState step(const StateSource& src, const Topology& step_topology, RayState s);

/// Rotating variant: reflects using the overlay's effective mirror, then
/// records the flip.
RayState step_rotating(const StateSource& src, RotatingOverlay& overlay, RayState s);

/// The unique state t with step(t) == s. Non-rotating models only; the
/// rotating model is rejected with std::invalid_argument.
RayState inverse_step(const StateSource& src, RayState s);
RayState inverse_step(const StateSource& src, const Topology& step_topology, RayState s);

/// Traces the ray from start until it escapes the region, returns to the
/// start state (non-rotating models), or hits the step cap. The start must
/// not already be escaped. For the rotating model a fresh overlay is created
/// per trace unless one is supplied.
TraceResult trace(const StateSource& src, RayState start, const EscapeRegion& region,
                  const TraceOptions& opts = {}, RotatingOverlay* overlay = nullptr);

}  // namespace lorentz
