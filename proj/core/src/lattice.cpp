#include "lorentz/lattice.hpp"

#include "lorentz/prf.hpp"

namespace lorentz {

const char* to_string(Direction d) {
    switch (d) {
        case Direction::North: return "N";
        case Direction::East: return "E";
        case Direction::South: return "S";
        case Direction::West: return "W";
    }
    return "?";
}

Direction direction_from_string(const std::string& s) {
    if (s == "N" || s == "n" || s == "north") return Direction::North;
    if (s == "E" || s == "e" || s == "east") return Direction::East;
    if (s == "S" || s == "s" || s == "south") return Direction::South;
    if (s == "W" || s == "w" || s == "west") return Direction::West;
    throw std::invalid_argument("unknown direction: " + s);
}

Topology Topology::cylinder(std::int64_t circumference) {
    if (circumference < 1 || circumference % 2 == 0)
        throw std::invalid_argument("cylinder circumference must be odd and >= 1, got " +
                                    std::to_string(circumference));
    Topology t;
    t.kind_ = Kind::Cylinder;
    t.circumference_ = circumference;
    return t;
}

std::size_t VertexHash::operator()(const Vertex& v) const {
    return static_cast<std::size_t>(mix64(static_cast<std::uint64_t>(v.x) ^
                                          rotl64(mix64(static_cast<std::uint64_t>(v.y)), 32)));
}

}  // namespace lorentz
