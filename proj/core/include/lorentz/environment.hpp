#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>

#include "lorentz/lattice.hpp"

namespace lorentz {

/// The four model variants. Serialized as lowercase strings:
/// "mirror" | "manhattan_periodic" | "manhattan_random" | "rotating".
enum class ModelKind : std::uint8_t {
    Mirror = 0,
    ManhattanPeriodic = 1,
    ManhattanRandom = 2,
    Rotating = 3,
};

const char* to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& s);

constexpr bool is_manhattan(ModelKind kind) {
    return kind == ModelKind::ManhattanPeriodic || kind == ModelKind::ManhattanRandom;
}

/// Local scatterer state at a vertex. NE is the "/" diagonal, NW the "\"
/// diagonal. Manhattan models read the same presence variate as an obstacle
/// indicator instead.
enum class MirrorState : std::uint8_t { Empty = 0, NE = 1, NW = 2 };

const char* to_string(MirrorState m);

/// Full description of a quenched random environment. Mirror/obstacle states
/// and street orientations are derived statelessly from (seed, coordinates),
/// so the same spec yields a bit-identical environment on every query, in any
/// query order, on any thread.
struct EnvironmentSpec {
    ModelKind model = ModelKind::Mirror;
    double p = 0.0;   ///< mirror/obstacle density, in [0, 1]
    double q = 0.5;   ///< P(NE | mirror), in [0, 1]; ignored by Manhattan kinds
    std::uint64_t seed = 0;
    Topology topology = Topology::plane();

    void validate() const;  ///< throws std::invalid_argument on out-of-range p or q

    friend bool operator==(const EnvironmentSpec& a, const EnvironmentSpec& b) {
        return a.model == b.model && a.p == b.p && a.q == b.q && a.seed == b.seed &&
               a.topology == b.topology;
    }
};

/// Read access to one realized environment: what the dynamics is allowed to
/// ask about the world. Implemented by Environment (hash-derived quenched
/// fields) and by the test / exact-enumeration sources.
class StateSource {
  public:
    virtual ~StateSource() = default;

    virtual ModelKind model() const = 0;
    virtual Topology topology() const = 0;

    /// Mirror state at a vertex (mirror and rotating models).
    virtual MirrorState mirror_at(Vertex v) const = 0;

    /// Obstacle indicator at a vertex (Manhattan models).
    virtual bool obstacle_at(Vertex v) const = 0;

    /// Mandated direction of a one-way lane (Manhattan models). Horizontal
    /// lines are indexed by y (canonical y on a cylinder), vertical lines
    /// by x. Returns East/West for Horizontal, North/South for Vertical.
    virtual Direction street_orientation(Axis axis, std::int64_t line_index) const = 0;
};

/// Lazily evaluated quenched environment over a plane or odd cylinder.
/// Queries canonicalize the vertex first, so mirror_at(spec, (x, y)) equals
/// mirror_at(spec, (x, y + C)) on a cylinder.
class Environment final : public StateSource {
  public:
    explicit Environment(EnvironmentSpec spec);

    const EnvironmentSpec& spec() const { return spec_; }

    ModelKind model() const override { return spec_.model; }
    Topology topology() const override { return spec_.topology; }

    MirrorState mirror_at(Vertex v) const override;
    bool obstacle_at(Vertex v) const override;

    /// Periodic Manhattan: horizontal line y is East-bound iff y is even,
    /// vertical line x is North-bound iff x is even. Random Manhattan: a
    /// fair-coin orientation per line. Rejects non-Manhattan models.
    Direction street_orientation(Axis axis, std::int64_t line_index) const override;

  private:
    EnvironmentSpec spec_;
};

/// Mutable flip-parity overlay for the rotating-mirror variant. Single-owner
/// state confined to one trajectory trace; never shared between traces.
class RotatingOverlay {
  public:
    explicit RotatingOverlay(const StateSource& base) : base_(&base) {}

    /// Base mirror with NE and NW swapped iff the flip parity at v is odd.
    MirrorState effective_mirror(Vertex v) const;

    /// Toggles the flip parity at v. Flipping an Empty vertex is a contract
    /// violation and throws std::logic_error (cannot occur at p = 1).
    void record_flip(Vertex v);

    bool flip_parity(Vertex v) const;
    std::size_t flipped_site_count() const { return odd_parity_.size(); }

    friend bool operator==(const RotatingOverlay& a, const RotatingOverlay& b) {
        return a.odd_parity_ == b.odd_parity_;
    }

  private:
    const StateSource* base_;
    std::unordered_set<Vertex, VertexHash> odd_parity_;
};

}  // namespace lorentz
