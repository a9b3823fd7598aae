#include "distclust/tuning.hpp"

#include <cmath>

#include "distclust/clustering.hpp"
#include "distclust/metrics.hpp"

namespace distclust {

TuneTrace sweep_power(const PowerSolver& solve, const EnergyOf& energy, double step,
                      double max_power) {
    if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("tuning step must be > 0");
    TuneTrace trace;
    auto evaluate = [&](double k) {
        Solved s = solve(k);
        const double e = energy(s.centers);
        trace.steps.push_back({k, e, std::move(s.centers), std::move(s.report)});
        return e;
    };

    double previous = evaluate(0.0);
    for (std::size_t m = 0;; ++m) {
        const double k = 1.0 + static_cast<double>(m) * step;
        if (k > max_power) break;
        const double e = evaluate(k);
        if (!(e < previous)) break;
        previous = e;
        trace.best = trace.steps.size() - 1;
    }
    return trace;
}

DcResult dc(const DataMatrix& data, std::int64_t n, double step, const SolverConfig& cfg) {
    cfg.validate();
    if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("tuning step must be > 0");
    const auto start = std::chrono::steady_clock::now();
    const CenterSet init = initial_centers(data, n, cfg.seed);
    const double self_term = mean_pair_distance(data, data);

    auto solve = [&](double k) -> Solved {
        ClusterResult r = k == 0.0 ? dc_asymp(data, init, cfg) : dc_finite(data, init, k, cfg);
        return {std::move(r.centers), std::move(r.report)};
    };
    auto energy = [&](const CenterSet& c) { return energy_distance(data, c.points, self_term); };

    DcResult out;
    out.trace = sweep_power(solve, energy, step, cfg.max_power);
    const TuneStep& best = out.trace.steps[out.trace.best];
    out.centers = best.centers;

    RunReport& rep = out.report;
    rep.objective_trace = best.report.objective_trace;
    rep.converged = true;
    for (const auto& s : out.trace.steps) {
        rep.iters += s.report.iters;
        rep.converged = rep.converged && s.report.converged;
    }
    rep.energy = best.energy;
    rep.cramer = cramer_statistic(data, out.centers);
    rep.k_star = best.power;
    rep.elapsed = std::chrono::steady_clock::now() - start;
    return out;
}

}  // namespace distclust
