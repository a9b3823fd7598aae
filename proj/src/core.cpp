#include "distclust/core.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace distclust {

DataMatrix::DataMatrix(std::vector<double> values, std::size_t rows, std::size_t cols)
    : values_(std::move(values)), rows_(rows), cols_(cols) {
    if (rows_ == 0 || cols_ == 0) {
        throw InvalidArgument("data matrix needs at least one row and one column, got " +
                              std::to_string(rows_) + "x" + std::to_string(cols_));
    }
    if (values_.size() != rows_ * cols_) {
        throw InvalidArgument("data matrix has " + std::to_string(values_.size()) +
                              " values, expected " + std::to_string(rows_ * cols_));
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw InvalidArgument("non-finite coordinate at row " + std::to_string(i / cols_) +
                                  ", column " + std::to_string(i % cols_));
        }
    }
}

DataMatrix DataMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw InvalidArgument("data matrix needs at least one row");
    const std::size_t p = rows.front().size();
    std::vector<double> values;
    values.reserve(rows.size() * p);
    for (std::size_t j = 0; j < rows.size(); ++j) {
        if (rows[j].size() != p) {
            throw InvalidArgument("row " + std::to_string(j) + " has " +
                                  std::to_string(rows[j].size()) + " columns, expected " +
                                  std::to_string(p));
        }
        values.insert(values.end(), rows[j].begin(), rows[j].end());
    }
    return {std::move(values), rows.size(), p};
}

DataMatrix DataMatrix::select_rows(std::span<const std::size_t> indices) const {
    std::vector<double> out;
    out.reserve(indices.size() * cols_);
    for (std::size_t j : indices) {
        if (j >= rows_) throw InvalidArgument("row index " + std::to_string(j) + " out of range");
        auto r = row(j);
        out.insert(out.end(), r.begin(), r.end());
    }
    return {std::move(out), indices.size(), cols_};
}

std::string_view method_name(Method m) {
    switch (m) {
        case Method::kmeans: return "kmeans";
        case Method::dc_log: return "dc_log";
        case Method::dc_power: return "dc_power";
        case Method::subsample: return "subsample";
    }
    return "unknown";
}

CenterSet::CenterSet(DataMatrix pts, double k, Method m)
    : points(std::move(pts)), power(k), method(m) {
    if (points.empty()) throw InvalidArgument("center set is empty");
    if (!(k >= 0.0) || !std::isfinite(k)) {
        throw InvalidArgument("center power must be finite and >= 0");
    }
}

void SolverConfig::validate() const {
    if (!(nugget > 0.0)) throw InvalidArgument("nugget must be > 0");
    if (!(screen_fraction > 0.0 && screen_fraction <= 1.0)) {
        throw InvalidArgument("screen fraction r must lie in (0, 1]");
    }
    if (!(tuning_step > 0.0)) throw InvalidArgument("tuning step must be > 0");
    if (max_iters <= 0) throw InvalidArgument("max_iters must be positive");
    if (!(rel_tol > 0.0)) throw InvalidArgument("rel_tol must be > 0");
    if (!(optimizer_tol > 0.0)) throw InvalidArgument("optimizer_tol must be > 0");
    if (!(max_power >= 1.0)) throw InvalidArgument("max_power must be >= 1");
}

double euclidean(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t c = 0; c < a.size(); ++c) {
        const double d = a[c] - b[c];
        s += d * d;
    }
    return std::sqrt(s);
}

Nearest nearest_center(std::span<const double> x, const CenterSet& centers) {
    if (centers.size() == 0) throw InvalidArgument("nearest_center: empty center set");
    if (x.size() != centers.dim()) {
        throw InvalidArgument("nearest_center: point has dimension " + std::to_string(x.size()) +
                              ", centers have " + std::to_string(centers.dim()));
    }
    Nearest best{0, euclidean(x, centers[0])};
    for (std::size_t i = 1; i < centers.size(); ++i) {
        const double d = euclidean(x, centers[i]);
        if (d < best.dist) best = {i, d};
    }
    return best;
}

Assignment assign_all(const DataMatrix& data, const CenterSet& centers) {
    if (data.cols() != centers.dim()) {
        throw InvalidArgument("assign_all: data has dimension " + std::to_string(data.cols()) +
                              ", centers have " + std::to_string(centers.dim()));
    }
    Assignment a;
    a.labels.resize(data.rows());
    a.counts.assign(centers.size(), 0);
    for (std::size_t j = 0; j < data.rows(); ++j) {
        const std::size_t i = nearest_center(data.row(j), centers).index;
        a.labels[j] = i;
        ++a.counts[i];
    }
    return a;
}

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::uniform_index(std::uint64_t bound) {
    if (bound == 0) throw InvalidArgument("uniform_index: bound must be positive");
    // Reject the top partial block so every residue is equally likely.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t v;
    do {
        v = engine_();
    } while (v >= limit);
    return v % bound;
}

double Rng::normal() {
    if (spare_normal_) {
        const double z = *spare_normal_;
        spare_normal_.reset();
        return z;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * m;
    return u * m;
}

double Rng::exponential(double rate) {
    // 1 - u lies in (0, 1], so the log is finite.
    return -std::log1p(-uniform()) / rate;
}

double Rng::gamma(double shape, double rate) {
    if (!(shape > 0.0) || !(rate > 0.0)) {
        throw InvalidArgument("gamma: shape and rate must be > 0");
    }
    if (shape == 1.0) return exponential(rate);
    if (shape < 1.0) {
        const double g = gamma(shape + 1.0, 1.0);
        double u;
        do {
            u = uniform();
        } while (u == 0.0);
        return g * std::pow(u, 1.0 / shape) / rate;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v / rate;
        if (u > 0.0 && std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v / rate;
    }
}

std::vector<std::size_t> sample_without_replacement(std::size_t population, std::size_t n,
                                                    std::uint64_t seed) {
    if (n > population) {
        throw InvalidArgument("cannot sample " + std::to_string(n) + " distinct items from " +
                              std::to_string(population));
    }
    std::vector<std::size_t> idx(population);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.uniform_index(population - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(n);
    return idx;
}

std::size_t check_cluster_count(std::int64_t n, std::size_t N) {
    if (n <= 0) {
        throw InvalidArgument("n (" + std::to_string(n) + ") must be >= 1");
    }
    if (static_cast<std::uint64_t>(n) > N) {
        throw InvalidArgument("n (" + std::to_string(n) + ") exceeds N (" + std::to_string(N) +
                              "): requires 1 <= n <= N");
    }
    return static_cast<std::size_t>(n);
}

}  // namespace distclust
