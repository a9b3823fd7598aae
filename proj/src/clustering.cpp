#include "distclust/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace distclust {

ClusterView::ClusterView(const DataMatrix& data, std::vector<std::size_t> members,
                         std::size_t index)
    : data_(&data), members_(std::move(members)), index_(index) {
    for (std::size_t j : members_) {
        if (j >= data.rows()) throw InvalidArgument("cluster member out of range");
    }
}

ClusterView ClusterView::all_of(const DataMatrix& data) {
    std::vector<std::size_t> all(data.rows());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return {data, std::move(all), 0};
}

std::vector<double> ClusterView::mean() const {
    if (members_.empty()) throw InvalidArgument("mean of an empty cluster");
    std::vector<double> m(dim(), 0.0);
    for (std::size_t pos = 0; pos < size(); ++pos) {
        auto x = point(pos);
        for (std::size_t c = 0; c < m.size(); ++c) m[c] += x[c];
    }
    for (double& v : m) v /= static_cast<double>(size());
    return m;
}

double ClusterView::extent() const {
    if (members_.empty()) return 0.0;
    std::vector<double> lo(point(0).begin(), point(0).end());
    std::vector<double> hi = lo;
    for (std::size_t pos = 1; pos < size(); ++pos) {
        auto x = point(pos);
        for (std::size_t c = 0; c < lo.size(); ++c) {
            lo[c] = std::min(lo[c], x[c]);
            hi[c] = std::max(hi[c], x[c]);
        }
    }
    return euclidean(lo, hi);
}

namespace {

void check_dim(const ClusterView& cluster, std::span<const double> d) {
    if (d.size() != cluster.dim()) {
        throw InvalidArgument("center has dimension " + std::to_string(d.size()) +
                              ", cluster has " + std::to_string(cluster.dim()));
    }
}

bool same_point(std::span<const double> a, std::span<const double> b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

double power_of(double dist, double k) {
    return k == 2.0 ? dist * dist : std::pow(dist, k);
}

double power_objective(const ClusterView& cluster, std::span<const double> d, double k) {
    double s = 0.0;
    for (std::size_t pos = 0; pos < cluster.size(); ++pos) {
        s += power_of(euclidean(cluster.point(pos), d), k);
    }
    return s;
}

}  // namespace

double log_potential(const ClusterView& cluster, std::span<const double> d, double delta) {
    if (!(delta > 0.0)) throw InvalidArgument("log_potential: nugget must be > 0");
    check_dim(cluster, d);
    double s = 0.0;
    for (std::size_t pos = 0; pos < cluster.size(); ++pos) {
        s += std::log(euclidean(cluster.point(pos), d) + delta);
    }
    return s;
}

double log_objective(const ClusterView& cluster, std::span<const double> d) {
    check_dim(cluster, d);
    double s = 0.0;
    for (std::size_t pos = 0; pos < cluster.size(); ++pos) {
        auto x = cluster.point(pos);
        if (same_point(x, d)) continue;
        const double dist = euclidean(x, d);
        // Coordinates that differ by less than sqrt(denorm_min) square to zero.
        if (dist == 0.0) continue;
        s += std::log(dist);
    }
    return s;
}

std::size_t log_center_position(const ClusterView& cluster, double r) {
    if (cluster.size() == 0) {
        throw InvalidArgument("log-potential update on an empty cluster");
    }
    if (!(r > 0.0 && r <= 1.0)) throw InvalidArgument("screen fraction r must lie in (0, 1]");
    const std::size_t n_i = cluster.size();
    if (n_i == 1) return 0;

    // Shave rounding noise so that e.g. 0.1 * 30 screens 3 points, not 4.
    const double want = r * static_cast<double>(n_i);
    auto count = static_cast<std::size_t>(std::ceil(want * (1.0 - 1e-12)));
    count = std::clamp<std::size_t>(count, 1, n_i);

    std::vector<std::size_t> order(n_i);
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (count < n_i) {
        const auto center = cluster.mean();
        std::vector<double> to_mean(n_i);
        for (std::size_t pos = 0; pos < n_i; ++pos) {
            to_mean[pos] = euclidean(cluster.point(pos), center);
        }
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count),
                          order.end(), [&](std::size_t a, std::size_t b) {
                              return to_mean[a] != to_mean[b] ? to_mean[a] < to_mean[b] : a < b;
                          });
        order.resize(count);
        std::sort(order.begin(), order.end());
    }

    std::size_t best = order.front();
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t pos : order) {
        const double v = log_objective(cluster, cluster.point(pos));
        if (v < best_value) {
            best_value = v;
            best = pos;
        }
    }
    return best;
}

std::vector<double> update_center_log(const ClusterView& cluster, double r) {
    auto p = cluster.point(log_center_position(cluster, r));
    return {p.begin(), p.end()};
}

PowerSum sum_of_powers(const ClusterView& cluster, std::span<const double> d, double k,
                       double guard) {
    if (!(k >= 1.0)) throw InvalidArgument("sum_of_powers: power k must be >= 1");
    check_dim(cluster, d);
    PowerSum out;
    out.gradient.assign(d.size(), 0.0);
    for (std::size_t pos = 0; pos < cluster.size(); ++pos) {
        auto x = cluster.point(pos);
        const double dist = euclidean(x, d);
        out.value += power_of(dist, k);
        if (dist <= guard || dist == 0.0) continue;
        const double w = k * std::pow(dist, k - 2.0);
        for (std::size_t c = 0; c < d.size(); ++c) out.gradient[c] += w * (d[c] - x[c]);
    }
    return out;
}

namespace {

double norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// Hessian of the sum of powers, row-major p x p, with the same guard as the
// gradient.
std::vector<double> power_hessian(const ClusterView& cluster, std::span<const double> d, double k,
                                  double guard) {
    const std::size_t p = d.size();
    std::vector<double> h(p * p, 0.0);
    std::vector<double> r(p);
    for (std::size_t pos = 0; pos < cluster.size(); ++pos) {
        auto x = cluster.point(pos);
        const double dist = euclidean(x, d);
        if (dist <= guard || dist == 0.0) {
            if (k == 2.0) {
                for (std::size_t c = 0; c < p; ++c) h[c * p + c] += 2.0;
            }
            continue;
        }
        for (std::size_t c = 0; c < p; ++c) r[c] = (d[c] - x[c]) / dist;
        const double a = k * std::pow(dist, k - 2.0);
        const double b = a * (k - 2.0);
        for (std::size_t u = 0; u < p; ++u) {
            h[u * p + u] += a;
            for (std::size_t v = 0; v < p; ++v) h[u * p + v] += b * r[u] * r[v];
        }
    }
    return h;
}

// Solves (A) s = rhs in place for symmetric A by Cholesky; false if A is not
// numerically positive definite.
bool cholesky_solve(std::vector<double> a, std::vector<double>& rhs) {
    const std::size_t p = rhs.size();
    for (std::size_t j = 0; j < p; ++j) {
        double diag = a[j * p + j];
        for (std::size_t m = 0; m < j; ++m) diag -= a[j * p + m] * a[j * p + m];
        if (!(diag > 0.0)) return false;
        const double l = std::sqrt(diag);
        a[j * p + j] = l;
        for (std::size_t i = j + 1; i < p; ++i) {
            double s = a[i * p + j];
            for (std::size_t m = 0; m < j; ++m) s -= a[i * p + m] * a[j * p + m];
            a[i * p + j] = s / l;
        }
    }
    for (std::size_t i = 0; i < p; ++i) {
        double s = rhs[i];
        for (std::size_t m = 0; m < i; ++m) s -= a[i * p + m] * rhs[m];
        rhs[i] = s / a[i * p + i];
    }
    for (std::size_t i = p; i-- > 0;) {
        double s = rhs[i];
        for (std::size_t m = i + 1; m < p; ++m) s -= a[m * p + i] * rhs[m];
        rhs[i] = s / a[i * p + i];
    }
    return true;
}

constexpr int kMaxNewtonIters = 500;
constexpr double kArmijo = 1e-4;

}  // namespace

std::vector<double> update_center_power(const ClusterView& cluster, double k,
                                        const SolverConfig& cfg) {
    if (!(k >= 1.0)) throw InvalidArgument("update_center_power: power k must be >= 1");
    if (cluster.size() == 0) throw InvalidArgument("power update on an empty cluster");
    std::vector<double> d = cluster.mean();
    if (cluster.size() == 1) {
        auto x = cluster.point(0);
        return {x.begin(), x.end()};
    }
    const std::size_t p = d.size();
    const double extent = cluster.extent();
    const double guard = k < 2.0 ? 1e-12 * extent : 0.0;

    std::vector<double> trial(p);
    for (int it = 0; it < kMaxNewtonIters; ++it) {
        const PowerSum f = sum_of_powers(cluster, d, k, guard);
        const double gnorm = norm(f.gradient);
        if (gnorm <= cfg.optimizer_tol * (1.0 + std::abs(f.value))) break;

        std::vector<double> h = power_hessian(cluster, d, k, guard);
        double max_diag = 0.0;
        for (std::size_t c = 0; c < p; ++c) max_diag = std::max(max_diag, h[c * p + c]);
        std::vector<double> step(p);
        for (std::size_t c = 0; c < p; ++c) step[c] = -f.gradient[c];
        bool newton = false;
        if (max_diag > 0.0) {
            for (std::size_t c = 0; c < p; ++c) h[c * p + c] += 1e-10 * max_diag;
            newton = cholesky_solve(std::move(h), step);
        }
        double slope = 0.0;
        for (std::size_t c = 0; c < p; ++c) slope += f.gradient[c] * step[c];
        if (!newton || !(slope < 0.0) || !std::isfinite(slope)) {
            for (std::size_t c = 0; c < p; ++c) step[c] = -f.gradient[c];
            slope = -gnorm * gnorm;
        }
        // Never try a step longer than the cluster itself.
        const double len = norm(step);
        if (len > extent && extent > 0.0) {
            const double scale = extent / len;
            for (double& s : step) s *= scale;
            slope *= scale;
        }

        double t = 1.0;
        bool moved = false;
        for (;;) {
            bool changed = false;
            for (std::size_t c = 0; c < p; ++c) {
                trial[c] = d[c] + t * step[c];
                changed = changed || trial[c] != d[c];
            }
            if (!changed) break;
            const double v = power_objective(cluster, trial, k);
            if (v <= f.value + kArmijo * t * slope) {
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if (!moved) break;
        d = trial;
    }
    return d;
}

CenterSet initial_centers(const DataMatrix& data, std::int64_t n, std::uint64_t seed) {
    const std::size_t count = check_cluster_count(n, data.rows());
    const auto rows = sample_without_replacement(data.rows(), count, seed);
    return {data.select_rows(rows), 0.0, Method::subsample};
}

CenterSet random_subsample(const DataMatrix& data, std::int64_t n, std::uint64_t seed) {
    return initial_centers(data, n, seed);
}

namespace {

using Propose = std::function<std::vector<double>(const ClusterView&)>;
using Objective = std::function<double(const ClusterView&, std::span<const double>)>;

struct LloydSpec {
    Propose propose;
    Objective objective;
    // Discrete updates stop on an exact fixpoint; continuous ones also on a
    // small relative objective change or center movement.
    bool discrete = false;
    // Discrete centers must be cluster members; a stale center that is not
    // one is always replaced.
    bool centers_in_data = false;
    double power = 0.0;
    Method method = Method::kmeans;
};

DataMatrix flatten(const std::vector<std::vector<double>>& centers) {
    return DataMatrix::from_rows(centers);
}

// Gives every empty cluster the point farthest from its stale center, taken
// from a cluster that can spare one.
void repair_empty(const DataMatrix& data, Assignment& a, std::vector<std::vector<double>>& centers) {
    for (std::size_t i = 0; i < centers.size(); ++i) {
        if (a.counts[i] != 0) continue;
        std::size_t pick = data.rows();
        double far = -1.0;
        for (std::size_t j = 0; j < data.rows(); ++j) {
            if (a.counts[a.labels[j]] <= 1) continue;
            const double dist = euclidean(data.row(j), centers[i]);
            if (dist > far) {
                far = dist;
                pick = j;
            }
        }
        if (pick == data.rows()) throw InvalidArgument("cannot repair empty cluster");
        --a.counts[a.labels[pick]];
        a.labels[pick] = i;
        a.counts[i] = 1;
        auto x = data.row(pick);
        centers[i].assign(x.begin(), x.end());
    }
}

ClusterResult run_lloyd(const DataMatrix& data, const CenterSet& init, const SolverConfig& cfg,
                        const LloydSpec& spec) {
    cfg.validate();
    check_cluster_count(static_cast<std::int64_t>(init.size()), data.rows());
    if (init.dim() != data.cols()) {
        throw InvalidArgument("initial centers have dimension " + std::to_string(init.dim()) +
                              ", data has " + std::to_string(data.cols()));
    }
    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = init.size();
    std::vector<std::vector<double>> centers(n);
    for (std::size_t i = 0; i < n; ++i) centers[i].assign(init[i].begin(), init[i].end());

    RunReport report;
    for (int iter = 1; iter <= cfg.max_iters; ++iter) {
        Assignment a = assign_all(data, CenterSet(flatten(centers), spec.power, spec.method));
        repair_empty(data, a, centers);

        std::vector<std::vector<std::size_t>> members(n);
        for (std::size_t i = 0; i < n; ++i) members[i].reserve(a.counts[i]);
        for (std::size_t j = 0; j < data.rows(); ++j) members[a.labels[j]].push_back(j);

        double total = 0.0;
        double max_move = 0.0;
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            const ClusterView view(data, std::move(members[i]), i);
            const double current = spec.objective(view, centers[i]);
            std::vector<double> proposal = spec.propose(view);
            const double proposed = spec.objective(view, proposal);
            bool stale = false;
            if (spec.centers_in_data) {
                stale = true;
                for (std::size_t pos = 0; pos < view.size() && stale; ++pos) {
                    stale = !same_point(view.point(pos), centers[i]);
                }
            }
            // Otherwise accept only strict improvements so each round is a
            // descent step.
            if (proposal != centers[i] && (stale || proposed < current)) {
                max_move = std::max(max_move, euclidean(proposal, centers[i]));
                centers[i] = std::move(proposal);
                total += proposed;
                changed = true;
            } else {
                total += current;
            }
        }
        report.objective_trace.push_back(total);
        report.iters = iter;

        if (!changed) {
            report.converged = true;
            break;
        }
        if (!spec.discrete) {
            const auto& tr = report.objective_trace;
            const bool small_move = max_move < cfg.optimizer_tol;
            const bool small_change =
                tr.size() >= 2 && std::abs(tr[tr.size() - 2] - total) <=
                                      cfg.rel_tol * std::abs(tr[tr.size() - 2]);
            if (small_move || small_change || total == 0.0) {
                report.converged = true;
                break;
            }
        }
    }

    ClusterResult out;
    out.centers = CenterSet(flatten(centers), spec.power, spec.method);
    out.assignment = assign_all(data, out.centers);
    report.elapsed = std::chrono::steady_clock::now() - start;
    out.report = std::move(report);
    return out;
}

}  // namespace

ClusterResult dc_asymp(const DataMatrix& data, const CenterSet& init, const SolverConfig& cfg) {
    LloydSpec spec;
    spec.propose = [r = cfg.screen_fraction](const ClusterView& v) {
        return update_center_log(v, r);
    };
    spec.objective = [](const ClusterView& v, std::span<const double> d) {
        return log_objective(v, d);
    };
    spec.discrete = true;
    spec.centers_in_data = true;
    spec.power = 0.0;
    spec.method = Method::dc_log;
    return run_lloyd(data, init, cfg, spec);
}

ClusterResult dc_asymp(const DataMatrix& data, std::int64_t n, const SolverConfig& cfg) {
    cfg.validate();
    return dc_asymp(data, initial_centers(data, n, cfg.seed), cfg);
}

ClusterResult dc_finite(const DataMatrix& data, const CenterSet& init, double k,
                        const SolverConfig& cfg) {
    if (!(k >= 1.0) || !std::isfinite(k)) {
        throw InvalidArgument("dc_finite: power k must be finite and >= 1");
    }
    LloydSpec spec;
    spec.propose = [k, &cfg](const ClusterView& v) { return update_center_power(v, k, cfg); };
    spec.objective = [k](const ClusterView& v, std::span<const double> d) {
        return power_objective(v, d, k);
    };
    spec.power = k;
    spec.method = Method::dc_power;
    return run_lloyd(data, init, cfg, spec);
}

ClusterResult dc_finite(const DataMatrix& data, std::int64_t n, double k,
                        const SolverConfig& cfg) {
    cfg.validate();
    if (!(k >= 1.0) || !std::isfinite(k)) {
        throw InvalidArgument("dc_finite: power k must be finite and >= 1");
    }
    return dc_finite(data, initial_centers(data, n, cfg.seed), k, cfg);
}

ClusterResult kmeans(const DataMatrix& data, const CenterSet& init, const SolverConfig& cfg) {
    LloydSpec spec;
    spec.propose = [](const ClusterView& v) { return v.mean(); };
    spec.objective = [](const ClusterView& v, std::span<const double> d) {
        return power_objective(v, d, 2.0);
    };
    spec.power = 2.0;
    spec.method = Method::kmeans;
    return run_lloyd(data, init, cfg, spec);
}

ClusterResult kmeans(const DataMatrix& data, std::int64_t n, const SolverConfig& cfg) {
    cfg.validate();
    return kmeans(data, initial_centers(data, n, cfg.seed), cfg);
}

}  // namespace distclust
