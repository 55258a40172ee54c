#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "lorentz/environment.hpp"
#include "lorentz/lattice.hpp"

namespace lorentz {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "3/4", "0.75", or "1" into an exact rational in [0, 1].
Rational parse_rational(const std::string& s);

/// 1/(2n+1), exactly.
Rational theorem_bound(std::int64_t n);

struct ExactResult {
    ModelKind model = ModelKind::Mirror;
    std::int64_t n = 0;
    Rational p;
    Rational q;

    /// Exact escape probability: total weight of escaping leaves.
    Rational probability;

    /// Leaves of the branch-on-demand tree with nonzero weight.
    std::uint64_t configurations_explored = 0;

    /// Sum of all leaf weights; equals 1 whenever the enumeration is sound.
    Rational total_mass;
};

/// Exact escape probability from the origin out of Q(n) on the plane, by
/// depth-first branch-on-demand enumeration: a vertex state (or street
/// orientation) is branched over only when the trajectory first queries it,
/// and branch weights multiply along the path. Non-rotating models only;
/// n <= 4 (the exploration count grows too fast beyond that).
ExactResult exact_escape_probability(ModelKind model, std::int64_t n, const Rational& p,
                                     const Rational& q,
                                     std::optional<Direction> heading = std::nullopt);

}  // namespace lorentz
