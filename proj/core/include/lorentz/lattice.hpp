#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace lorentz {

/// A vertex of the lattice. On a cylinder the y coordinate is stored
/// canonically in [0, C) after canonicalization.
struct Vertex {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend bool operator==(const Vertex& a, const Vertex& b) {
        return a.x == b.x && a.y == b.y;
    }
    friend bool operator!=(const Vertex& a, const Vertex& b) { return !(a == b); }
};

/// Axis headings of the ray. Values are laid out clockwise so that
/// reverse(d) == d ^ 2 holds for the underlying index.
enum class Direction : std::uint8_t { North = 0, East = 1, South = 2, West = 3 };

constexpr Direction reverse(Direction d) {
    return static_cast<Direction>(static_cast<std::uint8_t>(d) ^ 2u);
}

constexpr bool is_horizontal(Direction d) {
    return d == Direction::East || d == Direction::West;
}

constexpr std::int64_t dx(Direction d) {
    constexpr std::int64_t table[4] = {0, 1, 0, -1};
    return table[static_cast<std::uint8_t>(d)];
}

constexpr std::int64_t dy(Direction d) {
    constexpr std::int64_t table[4] = {1, 0, -1, 0};
    return table[static_cast<std::uint8_t>(d)];
}

constexpr Vertex displaced(Vertex v, Direction d) {
    return Vertex{v.x + dx(d), v.y + dy(d)};
}

const char* to_string(Direction d);
Direction direction_from_string(const std::string& s);

/// Horizontal lines ("streets") have constant y; vertical lines ("avenues")
/// have constant x.
enum class Axis : std::uint8_t { Horizontal = 0, Vertical = 1 };

/// Plane Z^2 or an infinite cylinder Z x S_C of odd circumference C.
class Topology {
  public:
    enum class Kind : std::uint8_t { Plane = 0, Cylinder = 1 };

    Topology() = default;

    static Topology plane() { return Topology{}; }

    /// Throws std::invalid_argument unless C is odd and >= 1.
    static Topology cylinder(std::int64_t circumference);

    Kind kind() const { return kind_; }
    bool is_plane() const { return kind_ == Kind::Plane; }
    bool is_cylinder() const { return kind_ == Kind::Cylinder; }

    /// Valid only for cylinders.
    std::int64_t circumference() const { return circumference_; }

    /// Plane: identity. Cylinder: y is reduced into [0, C) with the
    /// mathematical modulus (correct for negative y); x is unchanged.
    Vertex canonicalize(Vertex v) const {
        if (kind_ == Kind::Plane) return v;
        std::int64_t y = v.y % circumference_;
        if (y < 0) y += circumference_;
        return Vertex{v.x, y};
    }

    friend bool operator==(const Topology& a, const Topology& b) {
        return a.kind_ == b.kind_ && a.circumference_ == b.circumference_;
    }
    friend bool operator!=(const Topology& a, const Topology& b) { return !(a == b); }

  private:
    Kind kind_ = Kind::Plane;
    std::int64_t circumference_ = 0;
};

struct VertexHash {
    std::size_t operator()(const Vertex& v) const;
};

}  // namespace lorentz
