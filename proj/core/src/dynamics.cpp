#include "lorentz/dynamics.hpp"

#include <stdexcept>
#include <unordered_set>

#include "lorentz/prf.hpp"
#include "turn_detail.hpp"

namespace lorentz {

const char* to_string(TraceOutcomeKind k) {
    switch (k) {
        case TraceOutcomeKind::Escaped: return "escaped";
        case TraceOutcomeKind::Periodic: return "periodic";
        case TraceOutcomeKind::Truncated: return "truncated";
    }
    return "?";
}

namespace {

constexpr std::uint64_t kDefaultOpenCap = 10'000'000;

/// Undirected edge, keyed by the canonical vertex that owns it (the west
/// endpoint of a horizontal edge, the south endpoint of a vertical edge).
struct UndirectedEdge {
    std::int64_t x;
    std::int64_t y;
    std::uint8_t axis;

    friend bool operator==(const UndirectedEdge& a, const UndirectedEdge& b) {
        return a.x == b.x && a.y == b.y && a.axis == b.axis;
    }
};

struct UndirectedEdgeHash {
    std::size_t operator()(const UndirectedEdge& e) const {
        return static_cast<std::size_t>(
            mix64(static_cast<std::uint64_t>(e.x) ^
                  rotl64(mix64(static_cast<std::uint64_t>(e.y)), 32) ^ e.axis));
    }
};

UndirectedEdge edge_of(const Topology& topo, Vertex from, Direction heading) {
    const Vertex owner = (heading == Direction::East || heading == Direction::North)
                             ? from
                             : topo.canonicalize(displaced(from, heading));
    return UndirectedEdge{owner.x, owner.y,
                          static_cast<std::uint8_t>(is_horizontal(heading) ? 0 : 1)};
}

/// Steps with no repeated directed-edge state inside the region, when the
/// confined state space is finite; 0 when it is not (plane strip, rotating).
std::uint64_t injectivity_cap(ModelKind kind, const Topology& step_topo,
                              const EscapeRegion& region) {
    if (kind == ModelKind::Rotating) return 0;
    unsigned __int128 states = 0;
    const unsigned __int128 width = 2 * static_cast<unsigned __int128>(region.radius) + 1;
    if (region.kind == EscapeRegion::Kind::OutsideBox && step_topo.is_plane())
        states = 4 * width * width;
    else if (region.kind == EscapeRegion::Kind::OutsideStrip && step_topo.is_cylinder())
        states = 4 * width * static_cast<unsigned __int128>(step_topo.circumference());
    else
        return 0;
    const unsigned __int128 cap = states + 1;
    constexpr unsigned __int128 kMax = static_cast<std::uint64_t>(-1);
    return cap > kMax ? static_cast<std::uint64_t>(kMax) : static_cast<std::uint64_t>(cap);
}

template <class Src>
TraceResult trace_impl(const Src& src, RayState start, const EscapeRegion& region,
                       const TraceOptions& opts, RotatingOverlay* overlay) {
    const Topology step_topo = opts.step_topology.value_or(src.topology());
    start.pos = step_topo.canonicalize(start.pos);
    if (region.escaped(start.pos))
        throw std::invalid_argument("trace start is already outside the region");

    const ModelKind kind = src.model();
    const bool rotating = kind == ModelKind::Rotating;

    RotatingOverlay local_overlay{src};
    if (rotating && overlay == nullptr) overlay = &local_overlay;

    const std::uint64_t auto_cap = injectivity_cap(kind, step_topo, region);
    const std::uint64_t cap =
        opts.max_steps != 0 ? opts.max_steps : (auto_cap != 0 ? auto_cap : kDefaultOpenCap);

    TraceResult result;
    result.edges_tracked = opts.track_edges;
    std::unordered_set<UndirectedEdge, UndirectedEdgeHash> edges;
    if (opts.track_edges) edges.reserve(64);
    if (opts.record_path) result.path.push_back(start);

    RayState cur = start;
    for (;;) {
        // Traverse the edge cur.pos -> cur.pos + cur.heading.
        if ((cur.pos.x == 0 && cur.heading == Direction::East) ||
            (cur.pos.x == 1 && cur.heading == Direction::West))
            ++result.column0_crossings;
        if (opts.track_edges) edges.insert(edge_of(step_topo, cur.pos, cur.heading));

        const Vertex arrival = step_topo.canonicalize(displaced(cur.pos, cur.heading));
        ++result.steps;

        if (region.escaped(arrival)) {
            result.outcome = TraceOutcomeKind::Escaped;
            result.exit_state = RayState{arrival, cur.heading};
            if (opts.record_path) result.path.push_back(*result.exit_state);
            break;
        }
        if (arrival == start.pos) ++result.returns_to_start_pos;

        cur = RayState{arrival, detail::turn(src, overlay, arrival, cur.heading)};
        if (opts.record_path) result.path.push_back(cur);

        if (!rotating && cur == start) {
            result.outcome = TraceOutcomeKind::Periodic;
            result.period = result.steps;
            break;
        }
        if (result.steps >= cap) {
            if (!rotating && auto_cap != 0 && cap >= auto_cap)
                throw std::logic_error(
                    "trace exceeded the injectivity cap without repeating: "
                    "the dynamics is inconsistent");
            result.outcome = TraceOutcomeKind::Truncated;
            break;
        }
    }

    if (opts.track_edges) result.visited_undirected_edges = edges.size();
    return result;
}

template <class Src>
RayState step_impl(const Src& src, const Topology& step_topo, RotatingOverlay* overlay,
                   RayState s) {
    const Vertex arrival = step_topo.canonicalize(displaced(s.pos, s.heading));
    return RayState{arrival, detail::turn(src, overlay, arrival, s.heading)};
}

}  // namespace

RayState step(const StateSource& src, RayState s) {
    return step(src, src.topology(), s);
}

RayState step(const StateSource& src, const Topology& step_topology, RayState s) {
    if (src.model() == ModelKind::Rotating)
        throw std::invalid_argument("rotating model steps need an overlay; use step_rotating");
    return step_impl(src, step_topology, nullptr, s);
}

RayState step_rotating(const StateSource& src, RotatingOverlay& overlay, RayState s) {
    if (src.model() != ModelKind::Rotating)
        throw std::invalid_argument("step_rotating requires the rotating model");
    return step_impl(src, src.topology(), &overlay, s);
}

RayState inverse_step(const StateSource& src, RayState s) {
    return inverse_step(src, src.topology(), s);
}

RayState inverse_step(const StateSource& src, const Topology& step_topology, RayState s) {
    if (src.model() == ModelKind::Rotating)
        throw std::invalid_argument(
            "inverse_step is undefined for the rotating model (the overlay would need "
            "unwinding)");
    // Each non-rotating turn map is an involution at the arrival vertex, so
    // the incoming heading is turn(s.pos, s.heading) and the predecessor sits
    // one step behind along it.
    const Direction incoming = detail::turn_involution(src, s.pos, s.heading);
    const Vertex prev = step_topology.canonicalize(displaced(s.pos, reverse(incoming)));
    return RayState{prev, incoming};
}

TraceResult trace(const StateSource& src, RayState start, const EscapeRegion& region,
                  const TraceOptions& opts, RotatingOverlay* overlay) {
    if (const auto* env = dynamic_cast<const Environment*>(&src))
        return trace_impl(*env, start, region, opts, overlay);
    return trace_impl(src, start, region, opts, overlay);
}

}  // namespace lorentz
