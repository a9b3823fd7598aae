#ifndef DISTCLUST_TUNING_HPP
#define DISTCLUST_TUNING_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "distclust/core.hpp"

namespace distclust {

struct TuneStep {
    double power = 0.0;
    double energy = 0.0;
    CenterSet centers;
    RunReport report;
};

/// Every (power, energy) evaluation of the sweep in order, and the winner.
struct TuneTrace {
    std::vector<TuneStep> steps;
    std::size_t best = 0;

    double k_star() const { return steps.at(best).power; }
    const CenterSet& final_centers() const { return steps.at(best).centers; }
};

struct Solved {
    CenterSet centers;
    RunReport report;
};

using PowerSolver = std::function<Solved(double power)>;
using EnergyOf = std::function<double(const CenterSet&)>;

/// Energy-guided power sweep: power 0, then 1, 1 + step, 1 + 2 step, ...
/// Stops at the first evaluation whose energy is not below the previous one
/// (or once the next power would exceed max_power) and selects the power just
/// before it.
TuneTrace sweep_power(const PowerSolver& solve, const EnergyOf& energy, double step,
                      double max_power);

struct DcResult {
    CenterSet centers;
    TuneTrace trace;
    RunReport report;
};

/// Distributional clustering with the power tuned by energy distance: the
/// log-potential solver at power 0 and the sum-of-powers solver above it,
/// each started from the same seeded sample of X.
DcResult dc(const DataMatrix& data, std::int64_t n, double step, const SolverConfig& cfg);

}  // namespace distclust

#endif  // DISTCLUST_TUNING_HPP
