#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "distclust/core.hpp"
#include "distclust/datagen.hpp"

using namespace distclust;

namespace {

CenterSet centers_of(const std::vector<std::vector<double>>& rows) {
    return {DataMatrix::from_rows(rows), 0.0, Method::subsample};
}

DataMatrix column(const std::vector<double>& xs) {
    std::vector<std::vector<double>> rows;
    for (double x : xs) rows.push_back({x});
    return DataMatrix::from_rows(rows);
}

// Random orthogonal p x p matrix by Gram-Schmidt on normal draws.
std::vector<double> random_rotation(std::size_t p, Rng& rng) {
    std::vector<double> q(p * p);
    for (double& v : q) v = rng.normal();
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            double dot = 0.0;
            for (std::size_t c = 0; c < p; ++c) dot += q[i * p + c] * q[j * p + c];
            for (std::size_t c = 0; c < p; ++c) q[i * p + c] -= dot * q[j * p + c];
        }
        double nrm = 0.0;
        for (std::size_t c = 0; c < p; ++c) nrm += q[i * p + c] * q[i * p + c];
        nrm = std::sqrt(nrm);
        for (std::size_t c = 0; c < p; ++c) q[i * p + c] /= nrm;
    }
    return q;
}

std::vector<double> rotate(const std::vector<double>& q, std::span<const double> x) {
    const std::size_t p = x.size();
    std::vector<double> y(p, 0.0);
    for (std::size_t r = 0; r < p; ++r) {
        for (std::size_t c = 0; c < p; ++c) y[r] += q[r * p + c] * x[c];
    }
    return y;
}

}  // namespace

TEST_CASE("data matrix validates shape and finiteness") {
    CHECK_THROWS_AS(DataMatrix({}, 0, 1), InvalidArgument);
    CHECK_THROWS_AS(DataMatrix({1.0, 2.0}, 1, 3), InvalidArgument);
    CHECK_THROWS_AS(DataMatrix({1.0, NAN}, 1, 2), InvalidArgument);
    CHECK_THROWS_AS(DataMatrix({1.0, INFINITY}, 2, 1), InvalidArgument);
    CHECK_THROWS_AS(DataMatrix::from_rows({{1.0, 2.0}, {3.0}}), InvalidArgument);
    const DataMatrix m = DataMatrix::from_rows({{1, 2}, {3, 4}, {5, 6}});
    CHECK(m.rows() == 3);
    CHECK(m.cols() == 2);
    CHECK(m(2, 1) == 6.0);
    const std::vector<std::size_t> pick = {2, 0};
    CHECK(m.select_rows(pick) == DataMatrix::from_rows({{5, 6}, {1, 2}}));
}

TEST_CASE("solver config rejects out-of-range values") {
    SolverConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    auto bad = [](auto mutate) {
        SolverConfig c;
        mutate(c);
        CHECK_THROWS_AS(c.validate(), InvalidArgument);
    };
    bad([](SolverConfig& c) { c.nugget = 0.0; });
    bad([](SolverConfig& c) { c.screen_fraction = 0.0; });
    bad([](SolverConfig& c) { c.screen_fraction = 1.5; });
    bad([](SolverConfig& c) { c.tuning_step = -0.5; });
    bad([](SolverConfig& c) { c.rel_tol = 0.0; });
    bad([](SolverConfig& c) { c.max_iters = 0; });
}

TEST_CASE("nearest_center examples") {
    const CenterSet d = centers_of({{0, 0}, {1, 1}});
    const std::vector<double> a = {0.1, 0.0};
    auto r = nearest_center(a, d);
    CHECK(r.index == 0);
    CHECK(r.dist == doctest::Approx(0.1).epsilon(1e-15));

    const std::vector<double> mid = {0.5, 0.5};
    r = nearest_center(mid, d);
    CHECK(r.index == 0);
    CHECK(r.dist == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));

    const CenterSet single = centers_of({{3, -1}});
    const std::vector<double> x = {0, 3};
    r = nearest_center(x, single);
    CHECK(r.index == 0);
    CHECK(r.dist == doctest::Approx(5.0));
}

TEST_CASE("nearest_center errors") {
    const CenterSet d = centers_of({{0, 0}});
    const std::vector<double> x = {1.0};
    CHECK_THROWS_AS(nearest_center(x, d), InvalidArgument);
    CHECK_THROWS_AS(nearest_center(x, CenterSet{}), InvalidArgument);
    CHECK_THROWS_AS(CenterSet(DataMatrix{}, 0.0, Method::kmeans), InvalidArgument);
}

TEST_CASE("assign_all examples") {
    const DataMatrix x = column({0, 1, 10, 11});
    auto a = assign_all(x, CenterSet(column({0, 10}), 0.0, Method::kmeans));
    CHECK(a.labels == std::vector<std::size_t>{0, 0, 1, 1});
    CHECK(a.counts == std::vector<std::size_t>{2, 2});

    a = assign_all(x, CenterSet(x, 0.0, Method::subsample));
    CHECK(a.labels == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(a.counts == std::vector<std::size_t>{1, 1, 1, 1});

    a = assign_all(x, CenterSet(column({5}), 0.0, Method::kmeans));
    CHECK(a.labels == std::vector<std::size_t>(4, 0));
    CHECK(a.counts == std::vector<std::size_t>{4});

    CHECK_THROWS_AS(assign_all(x, centers_of({{0, 0}})), InvalidArgument);
}

TEST_CASE("assignment is optimal against exhaustive comparison") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(seed);
        const std::size_t p = 1 + seed % 4;
        const std::size_t big_n = 20 + rng.uniform_index(180);
        const std::size_t n = 1 + rng.uniform_index(12);
        const DataMatrix x = generate({Family::normal, 1, 1, big_n, p, seed});
        const CenterSet d(generate({Family::normal, 1, 1, n, p, seed + 100}), 0, Method::kmeans);
        const Assignment a = assign_all(x, d);
        std::size_t total = 0;
        for (std::size_t c : a.counts) total += c;
        CHECK(total == big_n);
        for (std::size_t j = 0; j < big_n; ++j) {
            REQUIRE(a.labels[j] < n);
            const double mine = euclidean(x.row(j), d[a.labels[j]]);
            for (std::size_t i = 0; i < n; ++i) CHECK(mine <= euclidean(x.row(j), d[i]));
        }
    }
}

TEST_CASE("permuting centers permutes labels consistently") {
    const DataMatrix x = generate({Family::normal, 1, 1, 150, 2, 7});
    const DataMatrix c = generate({Family::normal, 1, 1, 6, 2, 8});
    const std::vector<std::size_t> perm = {3, 0, 5, 1, 4, 2};
    const CenterSet d(c, 0, Method::kmeans);
    const CenterSet dp(c.select_rows(perm), 0, Method::kmeans);
    const auto a = assign_all(x, d);
    const auto b = assign_all(x, dp);
    std::multiset<std::vector<double>> pa, pb;
    for (std::size_t j = 0; j < x.rows(); ++j) {
        CHECK(perm[b.labels[j]] == a.labels[j]);
        std::vector<double> ka(x.row(j).begin(), x.row(j).end());
        std::vector<double> kb = ka;
        ka.insert(ka.end(), d[a.labels[j]].begin(), d[a.labels[j]].end());
        kb.insert(kb.end(), dp[b.labels[j]].begin(), dp[b.labels[j]].end());
        pa.insert(ka);
        pb.insert(kb);
    }
    CHECK(pa == pb);
}

TEST_CASE("nearest_center is invariant under rotation") {
    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t p = 1 + static_cast<std::size_t>(trial % 5);
        const auto q = random_rotation(p, rng);
        const DataMatrix c = generate({Family::normal, 1, 1, 8, p, 40u + trial});
        std::vector<std::vector<double>> rotated;
        for (std::size_t i = 0; i < c.rows(); ++i) rotated.push_back(rotate(q, c.row(i)));
        const CenterSet d(c, 0, Method::kmeans);
        const CenterSet dr(DataMatrix::from_rows(rotated), 0, Method::kmeans);
        std::vector<double> x(p);
        for (double& v : x) v = rng.normal();
        const auto a = nearest_center(x, d);
        const auto b = nearest_center(rotate(q, x), dr);
        CHECK(std::abs(a.dist - b.dist) <= 1e-10);
        if (a.index != b.index) {
            // Only a numerical near-tie may flip the winner.
            CHECK(std::abs(euclidean(x, d[a.index]) - euclidean(x, d[b.index])) <= 1e-10);
        }
    }
}

TEST_CASE("sampling without replacement") {
    const auto s = sample_without_replacement(50, 20, 3);
    CHECK(s.size() == 20);
    CHECK(std::set<std::size_t>(s.begin(), s.end()).size() == 20);
    CHECK(std::all_of(s.begin(), s.end(), [](std::size_t v) { return v < 50; }));
    CHECK(s == sample_without_replacement(50, 20, 3));
    CHECK(s != sample_without_replacement(50, 20, 4));
    auto full = sample_without_replacement(7, 7, 1);
    std::sort(full.begin(), full.end());
    CHECK(full == std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6});
    CHECK_THROWS_AS(sample_without_replacement(3, 4, 0), InvalidArgument);
}

TEST_CASE("uniform_index is unbiased over a small range") {
    Rng rng(5);
    std::map<std::uint64_t, int> hist;
    const int draws = 60000;
    for (int i = 0; i < draws; ++i) ++hist[rng.uniform_index(6)];
    CHECK(hist.size() == 6);
    for (const auto& [v, count] : hist) {
        // 5 sigma around 10000.
        CHECK(std::abs(count - draws / 6) < 5 * std::sqrt(draws * (1.0 / 6) * (5.0 / 6)));
    }
}

TEST_CASE("check_cluster_count bounds") {
    CHECK(check_cluster_count(1, 1) == 1);
    CHECK(check_cluster_count(4, 4) == 4);
    CHECK_THROWS_AS(check_cluster_count(0, 4), InvalidArgument);
    CHECK_THROWS_AS(check_cluster_count(-2, 4), InvalidArgument);
    CHECK_THROWS_AS(check_cluster_count(5, 4), InvalidArgument);
}
