#include "lorentz/exact.hpp"

#include <cassert>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lorentz/dynamics.hpp"
#include "lorentz/models.hpp"

namespace lorentz {

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational");
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
        const std::string num = s.substr(0, slash);
        const std::string den = s.substr(slash + 1);
        if (num.empty() || den.empty())
            throw std::invalid_argument("malformed rational: " + s);
        const boost::multiprecision::cpp_int d{den};
        if (d == 0) throw std::invalid_argument("zero denominator: " + s);
        return Rational(boost::multiprecision::cpp_int{num}, d);
    }
    const auto dot = s.find('.');
    if (dot != std::string::npos) {
        const std::string ipart = s.substr(0, dot);
        const std::string fpart = s.substr(dot + 1);
        boost::multiprecision::cpp_int scale = 1;
        for (std::size_t i = 0; i < fpart.size(); ++i) scale *= 10;
        const boost::multiprecision::cpp_int whole =
            (ipart.empty() || ipart == "-") ? 0 : boost::multiprecision::cpp_int{ipart};
        const boost::multiprecision::cpp_int frac =
            fpart.empty() ? 0 : boost::multiprecision::cpp_int{fpart};
        const bool negative = !ipart.empty() && ipart[0] == '-';
        if (negative) return Rational(whole * scale - frac, scale);
        return Rational(whole * scale + frac, scale);
    }
    return Rational(boost::multiprecision::cpp_int{s});
}

Rational theorem_bound(std::int64_t n) {
    if (n < 0) throw std::invalid_argument("theorem bound needs n >= 0");
    return Rational(1, 2 * n + 1);
}

namespace {

/// One decision point of the enumeration: which of its nonzero-weight
/// options is currently explored.
struct BranchRecord {
    int option = 0;
    int option_count = 0;
};

/// Environment that reveals itself on demand. Queries for states not yet
/// assigned consume the replay script (or extend it with option 0), so
/// rerunning the trace per script enumerates the branch tree depth-first.
class ScriptedSource final : public StateSource {
  public:
    ScriptedSource(ModelKind model, Rational p, Rational q)
        : model_(model), p_(std::move(p)), q_(std::move(q)) {}

    void begin_run(std::vector<BranchRecord>* script) {
        script_ = script;
        cursor_ = 0;
        weight_ = 1;
        mirrors_.clear();
        obstacles_.clear();
        streets_.clear();
    }

    const Rational& run_weight() const {
        assert(cursor_ == script_->size());
        return weight_;
    }

    ModelKind model() const override { return model_; }
    Topology topology() const override { return Topology::plane(); }

    MirrorState mirror_at(Vertex v) const override {
        if (const auto it = mirrors_.find(v); it != mirrors_.end()) return it->second;
        std::vector<std::pair<MirrorState, Rational>> options;
        if (p_ != 1) options.emplace_back(MirrorState::Empty, 1 - p_);
        if (p_ * q_ != 0) options.emplace_back(MirrorState::NE, p_ * q_);
        if (p_ * (1 - q_) != 0) options.emplace_back(MirrorState::NW, p_ * (1 - q_));
        const auto& [state, w] = options[choose(static_cast<int>(options.size()))];
        weight_ *= w;
        mirrors_.emplace(v, state);
        return state;
    }

    bool obstacle_at(Vertex v) const override {
        if (const auto it = obstacles_.find(v); it != obstacles_.end()) return it->second;
        std::vector<std::pair<bool, Rational>> options;
        if (p_ != 1) options.emplace_back(false, 1 - p_);
        if (p_ != 0) options.emplace_back(true, p_);
        const auto& [blocked, w] = options[choose(static_cast<int>(options.size()))];
        weight_ *= w;
        obstacles_.emplace(v, blocked);
        return blocked;
    }

    Direction street_orientation(Axis axis, std::int64_t line_index) const override {
        if (model_ == ModelKind::ManhattanPeriodic) {
            const bool even = (line_index & 1) == 0;
            if (axis == Axis::Horizontal) return even ? Direction::East : Direction::West;
            return even ? Direction::North : Direction::South;
        }
        const auto key = std::make_pair(static_cast<int>(axis), line_index);
        if (const auto it = streets_.find(key); it != streets_.end()) return it->second;
        const int idx = choose(2);
        weight_ *= Rational(1, 2);
        Direction d;
        if (axis == Axis::Horizontal)
            d = idx == 0 ? Direction::East : Direction::West;
        else
            d = idx == 0 ? Direction::North : Direction::South;
        streets_.emplace(key, d);
        return d;
    }

  private:
    int choose(int option_count) const {
        if (cursor_ < script_->size()) {
            const BranchRecord& rec = (*script_)[cursor_];
            assert(rec.option_count == option_count);
            ++cursor_;
            return rec.option;
        }
        script_->push_back(BranchRecord{0, option_count});
        ++cursor_;
        return 0;
    }

    ModelKind model_;
    Rational p_;
    Rational q_;
    mutable std::vector<BranchRecord>* script_ = nullptr;
    mutable std::size_t cursor_ = 0;
    mutable Rational weight_ = 1;
    mutable std::unordered_map<Vertex, MirrorState, VertexHash> mirrors_;
    mutable std::unordered_map<Vertex, bool, VertexHash> obstacles_;
    mutable std::map<std::pair<int, std::int64_t>, Direction> streets_;
};

}  // namespace

ExactResult exact_escape_probability(ModelKind model, std::int64_t n, const Rational& p,
                                     const Rational& q, std::optional<Direction> heading) {
    if (model == ModelKind::Rotating)
        throw std::invalid_argument("exact enumeration is undefined for the rotating model");
    if (n < 0 || n > 4)
        throw std::invalid_argument(
            "exact enumeration is guarded to n <= 4; the explored configuration count "
            "grows too fast beyond that");
    if (p < 0 || p > 1 || q < 0 || q > 1)
        throw std::invalid_argument("p and q must lie in [0, 1]");

    ExactResult result;
    result.model = model;
    result.n = n;
    result.p = p;
    result.q = q;
    result.probability = 0;
    result.total_mass = 0;

    ScriptedSource src(model, p, q);
    std::vector<BranchRecord> script;
    TraceOptions opts;
    opts.track_edges = false;
    const EscapeRegion region = EscapeRegion::outside_box(n);

    for (;;) {
        src.begin_run(&script);
        const RayState start = initial_state(src, heading);
        const TraceResult tr = trace(src, start, region, opts);
        const Rational& w = src.run_weight();
        result.total_mass += w;
        ++result.configurations_explored;
        if (tr.outcome == TraceOutcomeKind::Escaped) result.probability += w;

        while (!script.empty() && script.back().option + 1 >= script.back().option_count)
            script.pop_back();
        if (script.empty()) break;
        ++script.back().option;
    }
    return result;
}

}  // namespace lorentz
