#ifndef DISTCLUST_CORE_HPP
#define DISTCLUST_CORE_HPP

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace distclust {

/// Raised for precondition violations (bad sizes, non-finite input, invalid
/// configuration). Messages are single-line so the CLI can forward them.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Dense row-major N x p matrix of finite reals. Immutable after construction.
class DataMatrix {
public:
    DataMatrix() = default;
    DataMatrix(std::vector<double> values, std::size_t rows, std::size_t cols);

    /// Builds a matrix from a list of equal-length rows.
    static DataMatrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0; }

    std::span<const double> row(std::size_t j) const {
        return {values_.data() + j * cols_, cols_};
    }
    double operator()(std::size_t j, std::size_t c) const { return values_[j * cols_ + c]; }
    const std::vector<double>& values() const { return values_; }

    /// Copies the selected rows, in the given order, into a new matrix.
    DataMatrix select_rows(std::span<const std::size_t> indices) const;

    friend bool operator==(const DataMatrix&, const DataMatrix&) = default;

private:
    std::vector<double> values_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
};

enum class Method { kmeans, dc_log, dc_power, subsample };

std::string_view method_name(Method m);

/// Ordered set of n prototype points together with the power k that produced
/// them (0 for the log-potential solver, 2 for k-means).
struct CenterSet {
    DataMatrix points;
    double power = 0.0;
    Method method = Method::kmeans;

    CenterSet() = default;
    CenterSet(DataMatrix pts, double k, Method m);

    std::size_t size() const { return points.rows(); }
    std::size_t dim() const { return points.cols(); }
    std::span<const double> operator[](std::size_t i) const { return points.row(i); }
};

/// Point-to-cluster map. counts[i] is the number of labels equal to i.
struct Assignment {
    std::vector<std::size_t> labels;
    std::vector<std::size_t> counts;
};

struct SolverConfig {
    double nugget = 1e-2;
    double screen_fraction = 0.10;
    double tuning_step = 0.5;
    int max_iters = 100;
    double rel_tol = 1e-8;
    std::uint64_t seed = 0;
    double optimizer_tol = 1e-9;
    // Upper bound on the power reached by the energy-distance sweep.
    double max_power = 64.0;

    void validate() const;
};

struct RunReport {
    std::vector<double> objective_trace;
    int iters = 0;
    bool converged = false;
    double energy = 0.0;
    double cramer = 0.0;
    std::optional<double> k_star;
    std::chrono::duration<double> elapsed{0.0};
};

struct Nearest {
    std::size_t index = 0;
    double dist = 0.0;
};

double euclidean(std::span<const double> a, std::span<const double> b);

/// Closest center to x in Euclidean norm; ties go to the lowest index.
Nearest nearest_center(std::span<const double> x, const CenterSet& centers);

Assignment assign_all(const DataMatrix& data, const CenterSet& centers);

/// Seeded generator with platform-independent variate transforms. The engine
/// is mt19937_64, whose output sequence is fixed by the standard; the
/// transforms below avoid std:: distributions, whose algorithms are
/// implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform integer on [0, bound) by rejection, bound > 0.
    std::uint64_t uniform_index(std::uint64_t bound);
    /// Standard normal (Marsaglia polar method).
    double normal();
    /// Exponential with the given rate (inversion).
    double exponential(double rate = 1.0);
    /// Gamma(shape, rate). Shape 1 reduces to the exponential; otherwise
    /// Marsaglia-Tsang squeeze, with the u^(1/shape) boost for shape < 1.
    double gamma(double shape, double rate);

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_normal_;
};

/// n distinct indices from [0, N), uniformly without replacement, via a
/// partial Fisher-Yates shuffle. Deterministic given the seed.
std::vector<std::size_t> sample_without_replacement(std::size_t population, std::size_t n,
                                                    std::uint64_t seed);

/// Throws InvalidArgument unless 1 <= n <= N. Signed so that a
/// non-positive request is reported rather than wrapped.
std::size_t check_cluster_count(std::int64_t n, std::size_t N);

}  // namespace distclust

#endif  // DISTCLUST_CORE_HPP
