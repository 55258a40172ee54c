#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lorentz/dynamics.hpp"
#include "lorentz/environment.hpp"

namespace lorentz {

enum class Verdict : std::uint8_t { Pass = 0, Violation = 1, Rejected = 2 };

const char* to_string(Verdict v);

/// Monte Carlo escape-probability result with exact one-sided
/// Clopper-Pearson bounds and the theorem-bound verdict.
struct Estimate {
    EnvironmentSpec spec;
    std::int64_t n = 0;       ///< box radius (plane) or (C-1)/2 (cylinder)
    std::int64_t window = 0;  ///< cylinder escape window L; 0 on the plane
    std::uint64_t trials = 0;
    std::uint64_t escapes = 0;
    double alpha = 1e-3;
    std::uint64_t master_seed = 0;
    double p_hat = 0.0;
    double cp_lower = 0.0;
    double cp_upper = 1.0;
    double bound = 0.0;  ///< 1/(2n+1)
    Verdict verdict = Verdict::Pass;
    std::string rejection_reason;  ///< Rejected only
};

/// Exact one-sided Clopper-Pearson bounds: the upper bound is 1 when
/// successes == trials and otherwise the unique theta with
/// P[Bin(trials, theta) <= successes] = alpha; the lower bound is 0 when
/// successes == 0 and otherwise the unique theta with
/// P[Bin(trials, theta) >= successes] = alpha. Solved by bisection with
/// log-space binomial tail summation to relative accuracy 1e-10.
double clopper_pearson_upper(std::uint64_t successes, std::uint64_t trials, double alpha);
double clopper_pearson_lower(std::uint64_t successes, std::uint64_t trials, double alpha);

/// Violation iff cp_upper < 1/(2n+1): the data refutes the theorem bound at
/// confidence 1 - alpha. Sampling noise below the bound is not a violation.
Verdict check_bound(const Estimate& est);

struct EstimateOptions {
    std::uint64_t trials = 100000;
    std::uint64_t master_seed = 0;
    double alpha = 1e-3;
    int jobs = 0;  ///< 0 = hardware parallelism; results never depend on this
    std::int64_t window = 200;          ///< cylinder escape window L
    std::uint64_t max_steps = 0;        ///< per-trial cap override; 0 = automatic
    std::optional<Direction> heading;   ///< start heading (mirror/rotating)
};

/// Estimates P(0 <-> Q(n)^c) over `trials` independently seeded environments.
/// The escape count is bit-identical for fixed inputs regardless of worker
/// count or scheduling. Invalid model/topology combinations yield a Rejected
/// estimate before any work.
Estimate escape_probability(const EnvironmentSpec& spec, std::int64_t n,
                            const EstimateOptions& opts);

/// Per-start-edge outcome of the deterministic cylinder check.
struct ParityStart {
    RayState start;
    TraceOutcomeKind outcome = TraceOutcomeKind::Escaped;
    std::uint64_t steps = 0;
    std::uint64_t column0_crossings = 0;
};

/// Deterministic core of the proof, checked on one quenched cylinder
/// environment: of the C = 2n+1 column-0 horizontal edges, at least one lies
/// on an escaping path, and every periodic orbit crosses column 0 an even
/// number of times.
struct ParityReport {
    std::int64_t circumference = 0;
    std::int64_t window = 0;
    std::vector<ParityStart> starts;
    std::uint64_t escaped_count = 0;
    std::vector<std::uint64_t> periodic_crossing_counts;
    bool all_periodic_crossings_even = true;

    bool ok() const { return escaped_count >= 1 && all_periodic_crossings_even; }
};

/// Traces from every column-0 edge of a cylinder environment (odd C), escape
/// region |x| > window. Mirror and randomly-oriented Manhattan models only;
/// for a West-bound Manhattan street the edge's start state is ((1,y), W),
/// the lane-consistent traversal of that edge.
ParityReport cylinder_parity_check(const EnvironmentSpec& spec, std::int64_t window,
                                   std::uint64_t max_steps = 0);

struct SweepCell {
    ModelKind model = ModelKind::Mirror;
    double p = 0.0;
    std::int64_t n = 0;
};

/// One Estimate per cell; cells are independent and the whole sweep is
/// deterministic for fixed inputs. Rejected cells are recorded in their row,
/// not fatal.
std::vector<Estimate> sweep(const std::vector<SweepCell>& grid, double q,
                            const Topology& topology, const EstimateOptions& opts);

/// CSV fields, in order:
/// model,p,q,topology,n,L,trials,escapes,p_hat,cp_lower,cp_upper,bound,verdict
extern const char* const kEstimateCsvHeader;
std::string to_csv_row(const Estimate& est);
std::string to_csv(const std::vector<Estimate>& rows);

}  // namespace lorentz
