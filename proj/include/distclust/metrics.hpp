#ifndef DISTCLUST_METRICS_HPP
#define DISTCLUST_METRICS_HPP

#include <optional>
#include <string_view>

#include "distclust/core.hpp"

namespace distclust {

enum class MetricName { energy, cramer, v_k, v_0 };

struct MetricValue {
    MetricName name = MetricName::energy;
    double value = 0.0;
    std::optional<double> power;
    std::optional<double> nugget;
};

std::string_view metric_name(MetricName m);

/// Mean pairwise Euclidean distance between the rows of a and b, summed in
/// row-major order.
double mean_pair_distance(const DataMatrix& a, const DataMatrix& b);

/// Two-sample energy distance
///   2/(nN) sum ||x - d|| - 1/N^2 sum ||x - x'|| - 1/n^2 sum ||d - d'||.
/// Every double sum runs over all ordered pairs, so identical samples give
/// exactly zero.
double energy_distance(const DataMatrix& x, const DataMatrix& d);
double energy_distance(const DataMatrix& x, const CenterSet& d);

/// Same value with the data self-term supplied by the caller, for sweeps that
/// compare many center sets against one dataset.
double energy_distance(const DataMatrix& x, const DataMatrix& d, double x_self_term);

/// Cramér two-sample statistic with kernel phi(z) = 1 - exp(-z/2) applied to
/// squared distances, scaled by nN/(N+n).
double cramer_statistic(const DataMatrix& x, const DataMatrix& d);
double cramer_statistic(const DataMatrix& x, const CenterSet& d);

/// Quantization error [1/N sum ||x - Q(x;D)||^k]^(1/k), k > 0.
double v_k(const DataMatrix& x, const CenterSet& d, double k);

/// Geometric-mean quantization error exp{1/N sum log(||x - Q(x;D)|| + delta)}.
/// With delta = 0 any zero distance yields 0.
double v_0(const DataMatrix& x, const CenterSet& d, double delta);

}  // namespace distclust

#endif  // DISTCLUST_METRICS_HPP
