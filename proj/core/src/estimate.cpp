#include "lorentz/estimate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>
#include <vector>

#include "lorentz/exact.hpp"
#include "lorentz/models.hpp"
#include "lorentz/prf.hpp"

namespace lorentz {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Violation: return "violation";
        case Verdict::Rejected: return "rejected";
    }
    return "?";
}

namespace {

double log_binomial_pmf(std::uint64_t k, std::uint64_t trials, double theta) {
    const double n = static_cast<double>(trials);
    const double kk = static_cast<double>(k);
    return std::lgamma(n + 1.0) - std::lgamma(kk + 1.0) - std::lgamma(n - kk + 1.0) +
           kk * std::log(theta) + (n - kk) * std::log1p(-theta);
}

// P[Bin(trials, theta) <= x], summed backward from k = x. Terms below the
// mode decay monotonically, so the truncation error is bounded by
// term * (k + 1); the early stop keeps the relative error under 1e-12.
double left_tail(std::uint64_t x, std::uint64_t trials, double theta) {
    if (theta <= 0.0) return 1.0;
    if (theta >= 1.0) return x >= trials ? 1.0 : 0.0;
    const double log_top = log_binomial_pmf(x, trials, theta);
    if (log_top == -HUGE_VAL) return 0.0;
    double sum = 1.0;  // scaled by exp(log_top + rescale)
    double term = 1.0;
    double rescale = 0.0;
    for (std::uint64_t k = x; k > 0; --k) {
        term *= static_cast<double>(k) * (1.0 - theta) /
                (static_cast<double>(trials - k + 1) * theta);
        sum += term;
        if (term * static_cast<double>(k) < sum * 1e-12) break;
        if (sum > 1e300) {
            sum *= 1e-300;
            term *= 1e-300;
            rescale += 300.0 * std::log(10.0);
        }
    }
    return std::min(1.0, std::exp(log_top + rescale + std::log(sum)));
}

// P[Bin(trials, theta) >= x], summed forward from k = x.
double right_tail(std::uint64_t x, std::uint64_t trials, double theta) {
    if (theta >= 1.0) return 1.0;
    if (theta <= 0.0) return x == 0 ? 1.0 : 0.0;
    const double log_bottom = log_binomial_pmf(x, trials, theta);
    if (log_bottom == -HUGE_VAL) return 0.0;
    double sum = 1.0;
    double term = 1.0;
    double rescale = 0.0;
    for (std::uint64_t k = x; k < trials; ++k) {
        term *= static_cast<double>(trials - k) * theta /
                (static_cast<double>(k + 1) * (1.0 - theta));
        sum += term;
        if (term * static_cast<double>(trials - k) < sum * 1e-12) break;
        if (sum > 1e300) {
            sum *= 1e-300;
            term *= 1e-300;
            rescale += 300.0 * std::log(10.0);
        }
    }
    return std::min(1.0, std::exp(log_bottom + rescale + std::log(sum)));
}

void check_cp_arguments(std::uint64_t successes, std::uint64_t trials, double alpha) {
    if (trials == 0) throw std::invalid_argument("Clopper-Pearson needs trials >= 1");
    if (successes > trials)
        throw std::invalid_argument("successes exceed trials");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("alpha must lie in (0, 1)");
}

}  // namespace

double clopper_pearson_upper(std::uint64_t successes, std::uint64_t trials, double alpha) {
    check_cp_arguments(successes, trials, alpha);
    if (successes == trials) return 1.0;
    // left_tail is decreasing in theta; bracket the crossing with alpha.
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (left_tail(successes, trials, mid) > alpha)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double clopper_pearson_lower(std::uint64_t successes, std::uint64_t trials, double alpha) {
    check_cp_arguments(successes, trials, alpha);
    if (successes == 0) return 0.0;
    // right_tail is increasing in theta.
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (right_tail(successes, trials, mid) < alpha)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

Verdict check_bound(const Estimate& est) {
    if (est.verdict == Verdict::Rejected) return Verdict::Rejected;
    return est.cp_upper < est.bound ? Verdict::Violation : Verdict::Pass;
}

Estimate escape_probability(const EnvironmentSpec& spec, std::int64_t n,
                            const EstimateOptions& opts) {
    spec.validate();
    Estimate est;
    est.spec = spec;
    est.trials = opts.trials;
    est.alpha = opts.alpha;
    est.master_seed = opts.master_seed;

    const TopologyValidation valid = validate_model_topology(spec.model, spec.topology);
    if (!valid.ok) {
        est.verdict = Verdict::Rejected;
        est.rejection_reason = valid.reason;
        return est;
    }
    if (opts.trials < 1) throw std::invalid_argument("trials must be >= 1");

    EscapeRegion region;
    if (spec.topology.is_plane()) {
        if (n < 0) throw std::invalid_argument("box radius n must be >= 0");
        est.n = n;
        est.window = 0;
        region = EscapeRegion::outside_box(n);
    } else {
        est.n = (spec.topology.circumference() - 1) / 2;
        est.window = opts.window;
        if (est.window < 1) throw std::invalid_argument("cylinder window must be >= 1");
        region = EscapeRegion::outside_strip(est.window);
    }
    est.bound = 1.0 / static_cast<double>(2 * est.n + 1);

    TraceOptions trace_opts;
    trace_opts.max_steps = opts.max_steps;
    trace_opts.track_edges = false;

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned jobs =
        opts.jobs > 0 ? static_cast<unsigned>(opts.jobs)
                      : static_cast<unsigned>(std::min<std::uint64_t>(hw, opts.trials));

    std::atomic<std::uint64_t> escapes{0};
    auto worker = [&](std::uint64_t begin, std::uint64_t end) {
        std::uint64_t local = 0;
        EnvironmentSpec trial_spec = spec;
        for (std::uint64_t i = begin; i < end; ++i) {
            trial_spec.seed = trial_seed(opts.master_seed, i);
            const Environment env(trial_spec);
            const RayState start = initial_state(env, opts.heading);
            const TraceResult tr = trace(env, start, region, trace_opts);
            if (tr.outcome == TraceOutcomeKind::Escaped) ++local;
        }
        escapes.fetch_add(local, std::memory_order_relaxed);
    };

    if (jobs <= 1) {
        worker(0, opts.trials);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (unsigned j = 0; j < jobs; ++j) {
            const std::uint64_t begin = opts.trials * j / jobs;
            const std::uint64_t end = opts.trials * (j + 1) / jobs;
            pool.emplace_back(worker, begin, end);
        }
        for (auto& t : pool) t.join();
    }

    est.escapes = escapes.load();
    est.p_hat = static_cast<double>(est.escapes) / static_cast<double>(est.trials);
    est.cp_lower = clopper_pearson_lower(est.escapes, est.trials, est.alpha);
    est.cp_upper = clopper_pearson_upper(est.escapes, est.trials, est.alpha);
    est.verdict = check_bound(est);
    return est;
}

ParityReport cylinder_parity_check(const EnvironmentSpec& spec, std::int64_t window,
                                   std::uint64_t max_steps) {
    spec.validate();
    if (!spec.topology.is_cylinder())
        throw std::invalid_argument("the parity check runs on a cylinder");
    if (spec.model != ModelKind::Mirror && spec.model != ModelKind::ManhattanRandom)
        throw std::invalid_argument(
            "the parity check supports the mirror and randomly-oriented Manhattan models");
    if (window < 1) throw std::invalid_argument("window must be >= 1");

    const Environment env(spec);
    const std::int64_t circumference = spec.topology.circumference();

    ParityReport report;
    report.circumference = circumference;
    report.window = window;

    TraceOptions opts;
    opts.max_steps = max_steps;
    opts.track_edges = false;
    const EscapeRegion region = EscapeRegion::outside_strip(window);

    for (std::int64_t y = 0; y < circumference; ++y) {
        // The directed traversal of the column-0 edge {(0,y),(1,y)}: East
        // from (0,y), unless a Manhattan street mandates West from (1,y).
        RayState start{Vertex{0, y}, Direction::East};
        if (spec.model == ModelKind::ManhattanRandom &&
            env.street_orientation(Axis::Horizontal, y) == Direction::West)
            start = RayState{Vertex{1, y}, Direction::West};

        const TraceResult tr = trace(env, start, region, opts);
        report.starts.push_back(
            ParityStart{start, tr.outcome, tr.steps, tr.column0_crossings});
        if (tr.outcome == TraceOutcomeKind::Escaped) {
            ++report.escaped_count;
        } else if (tr.outcome == TraceOutcomeKind::Periodic) {
            report.periodic_crossing_counts.push_back(tr.column0_crossings);
            if (tr.column0_crossings % 2 != 0) report.all_periodic_crossings_even = false;
        }
    }
    return report;
}

std::vector<Estimate> sweep(const std::vector<SweepCell>& grid, double q,
                            const Topology& topology, const EstimateOptions& opts) {
    std::vector<Estimate> rows;
    rows.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const SweepCell& cell = grid[i];
        EnvironmentSpec spec;
        spec.model = cell.model;
        spec.p = cell.p;
        spec.q = q;
        spec.topology = topology;
        // Each cell gets its own master seed so cells stay independent while
        // the whole sweep remains a pure function of (grid, seed).
        EstimateOptions cell_opts = opts;
        cell_opts.master_seed = index_word(opts.master_seed, static_cast<std::int64_t>(i),
                                           kStreamTrialSeed);
        rows.push_back(escape_probability(spec, cell.n, cell_opts));
    }
    return rows;
}

const char* const kEstimateCsvHeader =
    "model,p,q,topology,n,L,trials,escapes,p_hat,cp_lower,cp_upper,bound,verdict";

namespace {

std::string format_double(double value) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.10g", value);
    return buf;
}

std::string topology_label(const Topology& topology) {
    if (topology.is_plane()) return "plane";
    return "cylinder:" + std::to_string(topology.circumference());
}

}  // namespace

std::string to_csv_row(const Estimate& est) {
    std::string row;
    row += to_string(est.spec.model);
    row += ',';
    row += format_double(est.spec.p);
    row += ',';
    row += format_double(est.spec.q);
    row += ',';
    row += topology_label(est.spec.topology);
    row += ',';
    row += std::to_string(est.n);
    row += ',';
    row += std::to_string(est.window);
    row += ',';
    row += std::to_string(est.trials);
    row += ',';
    row += std::to_string(est.escapes);
    row += ',';
    row += format_double(est.p_hat);
    row += ',';
    row += format_double(est.cp_lower);
    row += ',';
    row += format_double(est.cp_upper);
    row += ',';
    row += format_double(est.bound);
    row += ',';
    row += to_string(est.verdict);
    return row;
}

std::string to_csv(const std::vector<Estimate>& rows) {
    std::string out = kEstimateCsvHeader;
    out += '\n';
    for (const Estimate& est : rows) {
        out += to_csv_row(est);
        out += '\n';
    }
    return out;
}

}  // namespace lorentz
