#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "lorentz/environment.hpp"
#include "lorentz/prf.hpp"
#include "lorentz/serialize.hpp"

using namespace lorentz;

namespace {

EnvironmentSpec mirror_spec(double p, double q, std::uint64_t seed,
                            Topology topology = Topology::plane()) {
    EnvironmentSpec spec;
    spec.model = ModelKind::Mirror;
    spec.p = p;
    spec.q = q;
    spec.seed = seed;
    spec.topology = topology;
    return spec;
}

}  // namespace

TEST_CASE("canonicalize: plane identity, cylinder wrap, negative modulus") {
    const Topology plane = Topology::plane();
    CHECK(plane.canonicalize(Vertex{7, -3}) == Vertex{7, -3});

    const Topology cyl3 = Topology::cylinder(3);
    CHECK(cyl3.canonicalize(Vertex{5, 3}) == Vertex{5, 0});
    CHECK(cyl3.canonicalize(Vertex{5, -1}) == Vertex{5, 2});
    CHECK(cyl3.canonicalize(Vertex{5, -7}) == Vertex{5, 2});
}

TEST_CASE("cylinder circumference must be odd and positive") {
    CHECK_THROWS_AS(Topology::cylinder(4), std::invalid_argument);
    CHECK_THROWS_AS(Topology::cylinder(0), std::invalid_argument);
    CHECK_THROWS_AS(Topology::cylinder(-3), std::invalid_argument);
    CHECK_NOTHROW(Topology::cylinder(1));
    CHECK_NOTHROW(Topology::cylinder(7));
}

TEST_CASE("mirror_at: zero density is empty, forced density and orientation") {
    const Environment empty(mirror_spec(0.0, 0.5, 123));
    const Environment forced(mirror_spec(1.0, 1.0, 123));
    for (std::int64_t i = -50; i <= 50; i += 7) {
        CHECK(empty.mirror_at(Vertex{i, -i}) == MirrorState::Empty);
        CHECK(forced.mirror_at(Vertex{i, -i}) == MirrorState::NE);
    }
    const Environment forced_nw(mirror_spec(1.0, 0.0, 99));
    CHECK(forced_nw.mirror_at(Vertex{3, 4}) == MirrorState::NW);
}

TEST_CASE("mirror_at frequencies pass a chi-squared test at significance 1e-6") {
    const Environment env(mirror_spec(0.5, 0.5, 1));
    std::uint64_t counts[3] = {0, 0, 0};
    for (std::int64_t x = 0; x < 1000; ++x)
        for (std::int64_t y = 0; y < 1000; ++y)
            ++counts[static_cast<int>(env.mirror_at(Vertex{x, y}))];

    const double total = 1e6;
    const double expected[3] = {0.5 * total, 0.25 * total, 0.25 * total};
    double chi2 = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double d = static_cast<double>(counts[i]) - expected[i];
        chi2 += d * d / expected[i];
    }
    // chi^2 with 2 degrees of freedom: the 1 - 1e-6 quantile is
    // -2 ln(1e-6) = 27.6310211...
    CHECK(chi2 < -2.0 * std::log(1e-6));
}

TEST_CASE("mirror_at frequencies sit within 5 sigma of (1-p, pq, p(1-q))") {
    const double p = 0.3, q = 0.25;
    const Environment env(mirror_spec(p, q, 77));
    std::uint64_t counts[3] = {0, 0, 0};
    const std::int64_t side = 1000;
    for (std::int64_t x = 0; x < side; ++x)
        for (std::int64_t y = 0; y < side; ++y)
            ++counts[static_cast<int>(env.mirror_at(Vertex{x, y}))];

    const double total = static_cast<double>(side * side);
    const double probs[3] = {1.0 - p, p * q, p * (1.0 - q)};
    for (int i = 0; i < 3; ++i) {
        const double sigma = std::sqrt(total * probs[i] * (1.0 - probs[i]));
        CHECK(std::abs(static_cast<double>(counts[i]) - total * probs[i]) < 5.0 * sigma);
    }
}

TEST_CASE("environment queries are pure: any order, repeated calls") {
    const Environment env(mirror_spec(0.4, 0.6, 2024));
    std::vector<Vertex> vertices;
    for (std::int64_t i = -40; i < 40; ++i) vertices.push_back(Vertex{i * 13, -i * 5});

    std::vector<MirrorState> forward, backward;
    for (const Vertex& v : vertices) forward.push_back(env.mirror_at(v));
    for (auto it = vertices.rbegin(); it != vertices.rend(); ++it)
        backward.push_back(env.mirror_at(*it));
    std::reverse(backward.begin(), backward.end());
    CHECK(forward == backward);
    for (std::size_t i = 0; i < vertices.size(); ++i)
        CHECK(env.mirror_at(vertices[i]) == forward[i]);
}

TEST_CASE("cylinder consistency: mirror state is periodic in y") {
    const Environment env(mirror_spec(0.5, 0.5, 5, Topology::cylinder(7)));
    for (std::int64_t x = -20; x <= 20; x += 3)
        for (std::int64_t y = -10; y <= 10; ++y)
            CHECK(env.mirror_at(Vertex{x, y}) == env.mirror_at(Vertex{x, y + 7}));
}

TEST_CASE("distinct seeds give distinct fields") {
    const Environment a(mirror_spec(0.5, 0.5, 1));
    const Environment b(mirror_spec(0.5, 0.5, 2));
    int differ = 0;
    for (std::int64_t i = 0; i < 200; ++i)
        if (a.mirror_at(Vertex{i, 0}) != b.mirror_at(Vertex{i, 0})) ++differ;
    CHECK(differ > 0);
}

TEST_CASE("PRF regression vectors") {
    // Frozen outputs of the splitmix64 finalizer chain; a change here means
    // every recorded seed in every result file changes meaning.
    CHECK(mix64(0x0000000000000001ull) == 0x5692161d100b05e5ull);
    CHECK(mix64(0xdeadbeefcafebabeull) == 0x7ad6664f09ffe52cull);
    CHECK(vertex_word(1, 2, 3, kStreamMirrorPresence) == 0xbc6039284fcaeb7eull);
    CHECK(index_word(42, -7, kStreamStreetHorizontal) == 0x487cc3c6d3ffd93cull);
    const double u = vertex_u01(1, 2, 3, kStreamMirrorPresence);
    CHECK(u == doctest::Approx(0.73584325060054889).epsilon(1e-15));
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
}

TEST_CASE("street orientations: periodic convention anchors") {
    EnvironmentSpec spec;
    spec.model = ModelKind::ManhattanPeriodic;
    spec.p = 0.3;
    spec.seed = 9;
    const Environment env(spec);

    CHECK(env.street_orientation(Axis::Horizontal, 0) == Direction::East);
    CHECK(env.street_orientation(Axis::Horizontal, -1) == Direction::West);
    CHECK(env.street_orientation(Axis::Horizontal, 2) == Direction::East);
    CHECK(env.street_orientation(Axis::Vertical, 0) == Direction::North);
    CHECK(env.street_orientation(Axis::Vertical, 3) == Direction::South);
    CHECK(env.street_orientation(Axis::Vertical, -2) == Direction::North);
}

TEST_CASE("street orientations: random model is deterministic and axis-separated") {
    EnvironmentSpec spec;
    spec.model = ModelKind::ManhattanRandom;
    spec.p = 0.3;
    spec.seed = 31337;
    const Environment env(spec);

    const Direction first = env.street_orientation(Axis::Horizontal, 5);
    CHECK(env.street_orientation(Axis::Horizontal, 5) == first);
    CHECK((first == Direction::East || first == Direction::West));
    const Direction v = env.street_orientation(Axis::Vertical, 5);
    CHECK((v == Direction::North || v == Direction::South));

    int east = 0;
    for (std::int64_t y = 0; y < 2000; ++y)
        if (env.street_orientation(Axis::Horizontal, y) == Direction::East) ++east;
    CHECK(east > 800);
    CHECK(east < 1200);
}

TEST_CASE("street orientations wrap canonically on a cylinder") {
    EnvironmentSpec spec;
    spec.model = ModelKind::ManhattanRandom;
    spec.p = 0.3;
    spec.seed = 4;
    spec.topology = Topology::cylinder(5);
    const Environment env(spec);
    for (std::int64_t y = -10; y <= 10; ++y)
        CHECK(env.street_orientation(Axis::Horizontal, y) ==
              env.street_orientation(Axis::Horizontal, y + 5));
}

TEST_CASE("street orientations are rejected for non-Manhattan models") {
    const Environment env(mirror_spec(0.5, 0.5, 1));
    CHECK_THROWS_AS(env.street_orientation(Axis::Horizontal, 0), std::invalid_argument);
}

TEST_CASE("spec validation rejects out-of-range densities") {
    CHECK_THROWS_AS(Environment(mirror_spec(-0.1, 0.5, 1)), std::invalid_argument);
    CHECK_THROWS_AS(Environment(mirror_spec(1.5, 0.5, 1)), std::invalid_argument);
    CHECK_THROWS_AS(Environment(mirror_spec(0.5, 2.0, 1)), std::invalid_argument);
}

TEST_CASE("rotating overlay: swap, involution, locality") {
    const Environment base(mirror_spec(1.0, 1.0, 8));  // every vertex NE
    RotatingOverlay overlay(base);

    const Vertex v{2, 3};
    const Vertex w{4, -1};
    CHECK(overlay.effective_mirror(v) == MirrorState::NE);

    overlay.record_flip(v);
    CHECK(overlay.effective_mirror(v) == MirrorState::NW);
    CHECK(overlay.flip_parity(v));
    CHECK(overlay.effective_mirror(w) == MirrorState::NE);

    overlay.record_flip(v);
    CHECK(overlay.effective_mirror(v) == MirrorState::NE);
    CHECK_FALSE(overlay.flip_parity(v));

    // two flips at v, one at w: v unchanged, w toggled
    overlay.record_flip(v);
    overlay.record_flip(v);
    overlay.record_flip(w);
    CHECK(overlay.effective_mirror(v) == MirrorState::NE);
    CHECK(overlay.effective_mirror(w) == MirrorState::NW);
    CHECK(overlay.flipped_site_count() == 1);
}

TEST_CASE("rotating overlay: NW base flips to NE") {
    const Environment base(mirror_spec(1.0, 0.0, 8));  // every vertex NW
    RotatingOverlay overlay(base);
    const Vertex v{0, 0};
    overlay.record_flip(v);
    CHECK(overlay.effective_mirror(v) == MirrorState::NE);
    overlay.record_flip(v);
    CHECK(overlay.effective_mirror(v) == MirrorState::NW);
}

TEST_CASE("rotating overlay rejects flipping an empty vertex") {
    const Environment base(mirror_spec(0.0, 0.5, 8));
    RotatingOverlay overlay(base);
    CHECK_THROWS_AS(overlay.record_flip(Vertex{1, 1}), std::logic_error);
}

TEST_CASE("environment spec JSON round trip") {
    EnvironmentSpec spec;
    spec.model = ModelKind::ManhattanRandom;
    spec.p = 0.65;
    spec.q = 0.5;
    spec.seed = 0xfeedface12345678ull;
    spec.topology = Topology::cylinder(11);

    const std::string text = to_json_string(spec);
    const EnvironmentSpec back = environment_spec_from_json(text);
    CHECK(back == spec);

    const EnvironmentSpec plane_back =
        environment_spec_from_json(to_json_string(mirror_spec(0.25, 0.75, 7)));
    CHECK(plane_back == mirror_spec(0.25, 0.75, 7));
}
