#include "distclust/metrics.hpp"

#include <cmath>

namespace distclust {

std::string_view metric_name(MetricName m) {
    switch (m) {
        case MetricName::energy: return "energy";
        case MetricName::cramer: return "cramer";
        case MetricName::v_k: return "v_k";
        case MetricName::v_0: return "v_0";
    }
    return "unknown";
}

namespace {

void check_same_dim(const DataMatrix& a, const DataMatrix& b) {
    if (a.empty() || b.empty()) throw InvalidArgument("metric of an empty sample");
    if (a.cols() != b.cols()) {
        throw InvalidArgument("samples have dimensions " + std::to_string(a.cols()) + " and " +
                              std::to_string(b.cols()));
    }
}

double squared(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t c = 0; c < a.size(); ++c) {
        const double t = a[c] - b[c];
        s += t * t;
    }
    return s;
}

double kernel_sum(const DataMatrix& a, const DataMatrix& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.rows(); ++j) {
            s += -std::expm1(-0.5 * squared(a.row(i), b.row(j)));
        }
    }
    return s / (static_cast<double>(a.rows()) * static_cast<double>(b.rows()));
}

}  // namespace

double mean_pair_distance(const DataMatrix& a, const DataMatrix& b) {
    check_same_dim(a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.rows(); ++j) s += euclidean(a.row(i), b.row(j));
    }
    return s / (static_cast<double>(a.rows()) * static_cast<double>(b.rows()));
}

double energy_distance(const DataMatrix& x, const DataMatrix& d, double x_self_term) {
    check_same_dim(x, d);
    const double cross = mean_pair_distance(x, d);
    const double self_d = mean_pair_distance(d, d);
    return 2.0 * cross - x_self_term - self_d;
}

double energy_distance(const DataMatrix& x, const DataMatrix& d) {
    check_same_dim(x, d);
    return energy_distance(x, d, mean_pair_distance(x, x));
}

double energy_distance(const DataMatrix& x, const CenterSet& d) {
    return energy_distance(x, d.points);
}

double cramer_statistic(const DataMatrix& x, const DataMatrix& d) {
    check_same_dim(x, d);
    const double big_n = static_cast<double>(x.rows());
    const double n = static_cast<double>(d.rows());
    const double inner = 2.0 * kernel_sum(x, d) - kernel_sum(x, x) - kernel_sum(d, d);
    return n * big_n / (big_n + n) * inner;
}

double cramer_statistic(const DataMatrix& x, const CenterSet& d) {
    return cramer_statistic(x, d.points);
}

double v_k(const DataMatrix& x, const CenterSet& d, double k) {
    if (!(k > 0.0)) throw InvalidArgument("v_k: power k must be > 0 (use v_0 for the limit)");
    check_same_dim(x, d.points);
    double s = 0.0;
    for (std::size_t j = 0; j < x.rows(); ++j) {
        s += std::pow(nearest_center(x.row(j), d).dist, k);
    }
    return std::pow(s / static_cast<double>(x.rows()), 1.0 / k);
}

double v_0(const DataMatrix& x, const CenterSet& d, double delta) {
    if (!(delta >= 0.0)) throw InvalidArgument("v_0: nugget must be >= 0");
    check_same_dim(x, d.points);
    double s = 0.0;
    for (std::size_t j = 0; j < x.rows(); ++j) {
        const double r = nearest_center(x.row(j), d).dist + delta;
        if (r == 0.0) return 0.0;
        s += std::log(r);
    }
    return std::exp(s / static_cast<double>(x.rows()));
}

}  // namespace distclust
