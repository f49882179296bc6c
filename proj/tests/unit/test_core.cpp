#include "doctest.h"

#include <cmath>
#include <limits>

#include "dkm/core.hpp"
#include "oracles.hpp"

using namespace dkm;

TEST_CASE("squared distance examples") {
    CHECK(squared_distance(Point{0, 0}, Point{0, 0}) == 0.0);
    CHECK(squared_distance(Point{0, 0}, Point{3, 4}) == 25.0);
    CHECK(squared_distance(Point{1, 2, 3}, Point{4, 6, 3}) == 25.0);
    CHECK_THROWS_AS(squared_distance(Point{1, 2}, Point{1, 2, 3}), Error);
}

TEST_CASE("squared distance is symmetric and matches the oracle") {
    std::mt19937_64 gen(11);
    for (int t = 0; t < 200; ++t) {
        const auto m = oracle::random_mat(gen, 2, 1 + t % 7);
        const Point a(m[0]);
        const Point b(m[1]);
        CHECK(squared_distance(a, b) == squared_distance(b, a));
        CHECK(squared_distance(a, b) == doctest::Approx(oracle::sqdist(m[0], m[1])).epsilon(1e-14));
        CHECK(squared_distance(a, a) == 0.0);
        CHECK(squared_distance(a, b) > 0.0);
    }
}

TEST_CASE("point rejects non-finite and empty coordinates") {
    CHECK_THROWS_AS(Point({1.0, std::nan("")}), Error);
    CHECK_THROWS_AS(Point({std::numeric_limits<double>::infinity()}), Error);
    CHECK_THROWS_AS(Point(std::vector<double>{}), Error);
}

TEST_CASE("centroid examples") {
    std::vector<Point> a{{0, 0}, {2, 0}, {1, 3}};
    CHECK(centroid(a) == Point{1, 1});
    std::vector<Point> b{{5, 5}};
    CHECK(centroid(b) == Point{5, 5});
    std::vector<Point> c{{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
    CHECK(centroid(c) == Point{0, 0});
    CHECK_THROWS_AS(centroid(std::span<const Point>{}), Error);
}

TEST_CASE("centroid minimises the within-set squared error") {
    std::mt19937_64 gen(5);
    for (int t = 0; t < 100; ++t) {
        const auto m = oracle::random_mat(gen, 1 + t % 20, 3);
        const auto pts = oracle::to_points(m);
        const auto c = centroid(pts);
        const auto other = oracle::random_mat(gen, 1, 3)[0];
        double at_centroid = 0.0;
        double at_other = 0.0;
        for (const auto& row : m) {
            at_centroid += oracle::sqdist(c.values(), row);
            at_other += oracle::sqdist(other, row);
        }
        CHECK(at_centroid <= at_other);
    }
}

TEST_CASE("dataset validation") {
    CHECK_THROWS_AS(Dataset({}), Error);
    CHECK_THROWS_AS(Dataset({Point{1, 2}, Point{1}}), Error);
    CHECK_THROWS_AS(Dataset({Point{1}, Point{2}}, std::vector<BinaryLabel>{BinaryLabel::Positive}), Error);
    CHECK_THROWS_AS(Dataset({Point{1}, Point{2}}, std::nullopt, std::vector<Identity>{0, 1, 2}), Error);
    Dataset d({Point{1}, Point{2}, Point{3}}, std::nullopt, std::vector<Identity>{4, 1, 4});
    CHECK(d.distinct_identities() == std::vector<Identity>{1, 4});
    std::vector<std::size_t> idx{2, 0};
    const auto s = d.subset(idx);
    CHECK(s.size() == 2);
    CHECK(s.point(0) == Point{3});
    CHECK(s.identity(1) == 4);
}

TEST_CASE("objective examples") {
    Dataset d({Point{0, 0}, Point{2, 0}});
    Clustering one;
    one.clusters = {Cluster{Point{1, 0}, {0, 1}}};
    CHECK(objective(d, one) == 2.0);

    Clustering own;
    own.clusters = {Cluster{Point{0, 0}, {0}}, Cluster{Point{2, 0}, {1}}};
    CHECK(objective(d, own) == 0.0);

    Clustering bad;
    bad.clusters = {Cluster{Point{0, 0}, {0}}};
    CHECK_THROWS_AS(objective(d, bad), Error);
    bad.clusters = {Cluster{Point{0, 0}, {0, 1}}, Cluster{Point{0, 0}, {1}}};
    CHECK_THROWS_AS(objective(d, bad), Error);
}

TEST_CASE("objective matches brute-force re-summation") {
    std::mt19937_64 gen(17);
    for (int t = 0; t < 50; ++t) {
        const auto m = oracle::random_mat(gen, 6, 2);
        const auto cs = oracle::random_mat(gen, 2, 2);
        std::vector<std::size_t> a(6);
        Clustering cl;
        cl.clusters = {Cluster{Point(cs[0]), {}}, Cluster{Point(cs[1]), {}}};
        for (std::size_t i = 0; i < 6; ++i) {
            a[i] = gen() % 2;
            cl.clusters[a[i]].members.push_back(i);
        }
        const Dataset d(oracle::to_points(m));
        CHECK(objective(d, cl) == doctest::Approx(oracle::objective(m, cs, a)).epsilon(1e-12));
    }
}

TEST_CASE("perturbing exact centroids never lowers the objective") {
    std::mt19937_64 gen(23);
    std::normal_distribution<double> noise(0.0, 0.5);
    for (int t = 0; t < 50; ++t) {
        const auto m = oracle::random_mat(gen, 12, 2);
        const Dataset d(oracle::to_points(m));
        Assignment a(12);
        for (std::size_t i = 0; i < 12; ++i) {
            a[i] = i % 3;
        }
        std::vector<Point> exact;
        std::vector<Point> moved;
        for (std::size_t c = 0; c < 3; ++c) {
            std::vector<std::size_t> idx;
            for (std::size_t i = c; i < 12; i += 3) {
                idx.push_back(i);
            }
            exact.push_back(centroid(d, idx));
            moved.push_back(Point{exact.back()[0] + noise(gen), exact.back()[1] + noise(gen)});
        }
        CHECK(objective(d, exact, a) <= objective(d, moved, a));
    }
}

TEST_CASE("config parsing and validation") {
    CHECK(weight_mode_from_string("datacount") == WeightMode::data_count());
    CHECK(weight_mode_from_string("fixed:0.5") == WeightMode::fixed(0.5));
    CHECK(to_string(WeightMode::fixed(0.25)) == "fixed:0.25");
    CHECK_THROWS_AS(weight_mode_from_string("fixed:-1"), Error);
    CHECK_THROWS_AS(weight_mode_from_string("bogus"), Error);
    CHECK(init_mode_from_string("plusplus") == InitMode::PlusPlus);
    CHECK(termination_from_string(to_string(Termination::MaxClusters)) == Termination::MaxClusters);
    Config c;
    c.k_max = 0;
    CHECK_THROWS_AS(c.validate(), Error);
    c.k_max = 3;
    c.tolerance = 0.0;
    CHECK_THROWS_AS(c.validate(), Error);
    c.tolerance = 1e-9;
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("clustering assignment requires a partition") {
    Clustering cl;
    cl.clusters = {Cluster{Point{0}, {0, 2}}, Cluster{Point{1}, {1}}};
    CHECK(cl.assignment(3) == Assignment{0, 1, 0});
    CHECK_THROWS_AS(cl.assignment(4), Error);
}
