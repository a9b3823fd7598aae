#ifndef DISTCLUST_CLUSTERING_HPP
#define DISTCLUST_CLUSTERING_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "distclust/core.hpp"

namespace distclust {

/// The member points of one cluster, as row indices into a data matrix.
/// Members are kept in ascending row order; "within-cluster index" below means
/// a position in this list.
class ClusterView {
public:
    ClusterView(const DataMatrix& data, std::vector<std::size_t> members, std::size_t index = 0);

    /// View over every row of `data`.
    static ClusterView all_of(const DataMatrix& data);

    std::size_t size() const { return members_.size(); }
    std::size_t dim() const { return data_->cols(); }
    std::size_t index() const { return index_; }
    std::size_t row_of(std::size_t pos) const { return members_[pos]; }
    std::span<const double> point(std::size_t pos) const { return data_->row(members_[pos]); }

    std::vector<double> mean() const;
    /// Diagonal of the axis-aligned bounding box of the members.
    double extent() const;

private:
    const DataMatrix* data_;
    std::vector<std::size_t> members_;
    std::size_t index_;
};

/// Sum over members of log(||x - d|| + delta).
double log_potential(const ClusterView& cluster, std::span<const double> d, double delta);

/// Sum over members x != d of log ||x - d||: the nugget-free log-potential
/// used by the discrete center update.
double log_objective(const ClusterView& cluster, std::span<const double> d);

/// Within-cluster position of the log-potential center. Candidates are the
/// ceil(r * N_i) members (at least one) nearest the cluster mean; ties in the
/// objective go to the lowest within-cluster index.
std::size_t log_center_position(const ClusterView& cluster, double r);

std::vector<double> update_center_log(const ClusterView& cluster, double r);

struct PowerSum {
    double value = 0.0;
    std::vector<double> gradient;
};

/// Sum over members of ||x - d||^k and its gradient in d, k >= 1. Gradient
/// terms for members within `guard` of d are taken as zero.
PowerSum sum_of_powers(const ClusterView& cluster, std::span<const double> d, double k,
                       double guard = 0.0);

/// Minimizer of sum_of_powers by damped Newton with Armijo backtracking,
/// started at the cluster mean.
std::vector<double> update_center_power(const ClusterView& cluster, double k,
                                        const SolverConfig& cfg);

struct ClusterResult {
    CenterSet centers;
    Assignment assignment;
    RunReport report;
};

/// n rows of X drawn uniformly without replacement; the common starting point
/// of every solver for a given seed.
CenterSet initial_centers(const DataMatrix& data, std::int64_t n, std::uint64_t seed);

/// Log-potential Lloyd iteration. Every returned center is a row of X.
ClusterResult dc_asymp(const DataMatrix& data, std::int64_t n, const SolverConfig& cfg);
ClusterResult dc_asymp(const DataMatrix& data, const CenterSet& init, const SolverConfig& cfg);

/// Sum-of-powers Lloyd iteration for a fixed power k >= 1.
ClusterResult dc_finite(const DataMatrix& data, std::int64_t n, double k,
                        const SolverConfig& cfg);
ClusterResult dc_finite(const DataMatrix& data, const CenterSet& init, double k,
                        const SolverConfig& cfg);

ClusterResult kmeans(const DataMatrix& data, std::int64_t n, const SolverConfig& cfg);
ClusterResult kmeans(const DataMatrix& data, const CenterSet& init, const SolverConfig& cfg);

CenterSet random_subsample(const DataMatrix& data, std::int64_t n, std::uint64_t seed);

}  // namespace distclust

#endif  // DISTCLUST_CLUSTERING_HPP
