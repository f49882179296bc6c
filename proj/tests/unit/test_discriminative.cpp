#include "doctest.h"

#include <algorithm>

#include "dkm/discriminative.hpp"
#include "dkm/experiment.hpp"
#include "dkm/kmeans.hpp"
#include "dkm/synth.hpp"
#include "oracles.hpp"

using namespace dkm;

namespace {

constexpr auto P = BinaryLabel::Positive;
constexpr auto N = BinaryLabel::Negative;

double dot_diff(const Point& a, const Point& b, const Point& c, const Point& d) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.dim(); ++j) {
        s += (a[j] - b[j]) * (c[j] - d[j]);
    }
    return s;
}

Config with_k(std::size_t k) {
    Config c;
    c.k_max = k;
    return c;
}

Dataset random_labelled(std::uint64_t seed, std::size_t n, std::size_t d) {
    std::mt19937_64 gen(seed);
    const auto m = oracle::random_mat(gen, n, d);
    std::vector<BinaryLabel> labels(n);
    for (auto& l : labels) {
        l = gen() % 2 ? P : N;
    }
    labels[0] = P;
    labels[1] = N;
    return Dataset(oracle::to_points(m), labels);
}

} // namespace

TEST_CASE("pooled mean update examples") {
    CHECK(pooled_mean_update(Point{0, 0}, 3, Point{4, 0}, 1) == Point{1, 0});
    CHECK(pooled_mean_update(Point{0, 0}, 2, Point{2, 2}, 2) == Point{1, 1});
    CHECK_THROWS_AS(pooled_mean_update(Point{0, 0}, 0, Point{2, 2}, 2), Error);
    CHECK_THROWS_AS(pooled_mean_update(Point{0, 0}, 1, Point{2, 2}, 0), Error);
}

TEST_CASE("pooled mean update equals the centroid of the union") {
    std::mt19937_64 gen(31);
    for (int t = 0; t < 200; ++t) {
        const std::size_t d = 1 + t % 10;
        const std::size_t na = 1 + gen() % 50;
        const std::size_t nb = 1 + gen() % 50;
        const auto a = oracle::random_mat(gen, na, d);
        const auto b = oracle::random_mat(gen, nb, d);
        auto u = a;
        u.insert(u.end(), b.begin(), b.end());
        std::vector<std::size_t> ia(na);
        std::vector<std::size_t> iu(na + nb);
        for (std::size_t i = 0; i < iu.size(); ++i) {
            iu[i] = i;
            if (i < na) {
                ia[i] = i;
            }
        }
        std::vector<std::size_t> ib(nb);
        for (std::size_t i = 0; i < nb; ++i) {
            ib[i] = i;
        }
        const auto got = pooled_mean_update(Point(oracle::mean_of(a, ia)), na, Point(oracle::mean_of(b, ib)), nb);
        const auto want = oracle::mean_of(u, iu);
        for (std::size_t j = 0; j < d; ++j) {
            CHECK(std::abs(got[j] - want[j]) <= 1e-12);
        }
    }
}

TEST_CASE("split children follow the repulsion equations") {
    const Dataset d({Point{-1, 1}, Point{1, -1}, Point{0, 0}, Point{4, 0}}, std::vector<BinaryLabel>{P, P, P, N});
    const Cluster all{Point{1, 0}, {0, 1, 2, 3}};

    const auto ev = split_mixed_cluster(d, all, WeightMode::data_count());
    CHECK(ev.positive_child_centre == Point{-1, 0});
    CHECK(ev.negative_child_centre == Point{7, 0});
    CHECK(ev.w_used_positive == 0.25);
    CHECK(ev.w_used_negative == 0.75);
    CHECK(ev.positive_count == 3);
    CHECK(ev.negative_count == 1);

    const auto zero = split_mixed_cluster(d, all, WeightMode::fixed(0.0));
    CHECK(zero.positive_child_centre == Point{0, 0});
    CHECK(zero.negative_child_centre == Point{4, 0});

    const Dataset gap({Point{0, 1}, Point{0, -1}, Point{2, 0}}, std::vector<BinaryLabel>{P, P, N});
    const auto one = split_mixed_cluster(gap, Cluster{Point{0, 0}, {0, 1, 2}}, WeightMode::fixed(1.0));
    CHECK(one.positive_child_centre == Point{-2, 0});
    CHECK(one.negative_child_centre == Point{4, 0});
}

TEST_CASE("split rejects pure clusters and flags degenerate ones") {
    const Dataset d({Point{1, 1}, Point{1, 1}, Point{2, 2}}, std::vector<BinaryLabel>{P, N, P});
    CHECK_THROWS_AS(split_mixed_cluster(d, Cluster{Point{1, 1}, {0, 2}}, WeightMode::data_count()), Error);
    const auto ev = split_mixed_cluster(d, Cluster{Point{1, 1}, {0, 1}}, WeightMode::data_count());
    CHECK(ev.degenerate);
    CHECK(ev.positive_child_centre == Point{1, 1});
    CHECK(ev.negative_child_centre == Point{1, 1});
    const Dataset unlabelled({Point{0}, Point{1}});
    CHECK_THROWS_AS(split_mixed_cluster(unlabelled, Cluster{Point{0}, {0, 1}}, WeightMode::data_count()), Error);
}

TEST_CASE("four point example splits once and stops at the budget") {
    const Dataset d({Point{0, 0}, Point{1, 0}, Point{10, 0}, Point{11, 0}}, std::vector<BinaryLabel>{P, P, N, N});
    const auto r = run_discriminative(d, with_k(2));
    REQUIRE(r.splits.size() == 1);
    CHECK(r.splits[0].iteration == 0);
    CHECK(r.splits[0].positive_child_centre == Point{-4.5, 0});
    CHECK(r.splits[0].negative_child_centre == Point{15.5, 0});
    CHECK(r.clustering.terminated_by == Termination::MaxClusters);
    REQUIRE(r.clustering.clusters.size() == 2);
    CHECK(r.clustering.clusters[0].members == std::vector<std::size_t>{0, 1});
    CHECK(r.clustering.clusters[1].members == std::vector<std::size_t>{2, 3});

    const auto ref = oracle::discriminative(oracle::to_mat(d.points()), {true, true, false, false}, 2);
    CHECK(oracle::to_mat(r.clustering.centres()) == ref);
}

TEST_CASE("discriminative run matches the step-by-step oracle") {
    for (std::uint64_t s = 0; s < 40; ++s) {
        const auto d = random_labelled(s, 10 + s % 30, 1 + s % 3);
        const std::size_t k = 2 + s % 7;
        const auto r = run_discriminative(d, with_k(k));
        std::vector<bool> pos(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            pos[i] = d.label(i) == P;
        }
        const auto ref = oracle::discriminative(oracle::to_mat(d.points()), pos, k);
        const auto got = r.clustering.centres();
        REQUIRE(got.size() == ref.size());
        for (std::size_t c = 0; c < ref.size(); ++c) {
            CHECK(oracle::sqdist(got[c].values(), ref[c]) < 1e-18);
        }
    }
}

TEST_CASE("single label data never splits") {
    std::mt19937_64 gen(4);
    const auto m = oracle::random_mat(gen, 25, 2);
    const Dataset d(oracle::to_points(m), std::vector<BinaryLabel>(25, P));
    for (std::size_t k : {1u, 5u, 25u}) {
        const auto r = run_discriminative(d, with_k(k));
        CHECK(r.splits.empty());
        REQUIRE(r.clustering.clusters.size() == 1);
        const auto c = centroid(d.points());
        CHECK(squared_distance(r.clustering.clusters[0].centre, c) < 1e-24);
        CHECK(r.clustering.terminated_by == Termination::Converged);
    }
}

TEST_CASE("missing labels and oversize warm starts are errors") {
    const Dataset d({Point{0}, Point{1}});
    CHECK_THROWS_AS(run_discriminative(d, with_k(2)), Error);
    const Dataset l({Point{0}, Point{1}}, std::vector<BinaryLabel>{P, N});
    std::vector<Point> warm{{0}, {1}, {2}};
    CHECK_THROWS_AS(run_discriminative(l, with_k(2), warm), Error);
    std::vector<Point> wrong_dim{{0, 0}};
    CHECK_THROWS_AS(run_discriminative(l, with_k(2), wrong_dim), Error);
}

TEST_CASE("budget, purity and repulsion hold on random instances") {
    for (std::uint64_t s = 0; s < 40; ++s) {
        const auto d = random_labelled(1000 + s, 20 + s, 2);
        const std::size_t k = 2 + s % 20;
        std::size_t peak = 0;
        const auto r = run_discriminative(d, with_k(k), std::nullopt, [&](const IterationSnapshot& snap) {
            peak = std::max({peak, snap.centres.size(), snap.next_centres.size()});
        });
        CHECK(peak <= k);
        CHECK(r.clustering.clusters.size() <= k);
        if (r.clustering.terminated_by == Termination::Converged) {
            for (const auto& cl : r.clustering.clusters) {
                const auto [np, nn] = label_counts(d, cl.members);
                CHECK((np == 0 || nn == 0));
            }
        }
        for (const auto& ev : r.splits) {
            CHECK(ev.positive_count >= 1);
            CHECK(ev.negative_count >= 1);
            if (!ev.degenerate) {
                CHECK(dot_diff(ev.positive_child_centre, ev.positive_mean, ev.negative_mean, ev.positive_mean) <= 0.0);
                CHECK(dot_diff(ev.negative_child_centre, ev.negative_mean, ev.positive_mean, ev.negative_mean) <= 0.0);
            }
        }
    }
}

TEST_CASE("fixed zero weight leaves children at the class means") {
    const auto d = random_labelled(55, 60, 3);
    Config c = with_k(12);
    c.weight_mode = WeightMode::fixed(0.0);
    const auto r = run_discriminative(d, c);
    REQUIRE_FALSE(r.splits.empty());
    for (const auto& ev : r.splits) {
        CHECK(ev.positive_child_centre == ev.positive_mean);
        CHECK(ev.negative_child_centre == ev.negative_mean);
    }
}

TEST_CASE("warm start from a converged model is a fixed point") {
    const auto suite = experiment_suite(1);
    const auto d = generate(suite.e1);
    const auto cold = run_discriminative(d, with_k(d.size()));
    REQUIRE(cold.clustering.terminated_by == Termination::Converged);
    const auto warm = run_discriminative(d, with_k(d.size()), cold.clustering.centres());
    CHECK(warm.splits.empty());
    CHECK(warm.clustering.clusters.size() == cold.clustering.clusters.size());
    for (std::size_t c = 0; c < cold.clustering.clusters.size(); ++c) {
        CHECK(squared_distance(warm.clustering.clusters[c].centre, cold.clustering.clusters[c].centre) < 1e-18);
        CHECK(warm.clustering.clusters[c].members == cold.clustering.clusters[c].members);
    }
}

TEST_CASE("split scheduling takes the most contested cluster first") {
    // Two mixed groups; only one split fits. The right group is more contested.
    const Dataset d({Point{0}, Point{0.1}, Point{0.2}, Point{100}, Point{100.1}, Point{100.2}, Point{100.3}},
                    std::vector<BinaryLabel>{P, P, N, P, P, N, N});
    const std::vector<Point> warm{{0.1}, {100.15}};
    const auto r = run_discriminative(d, with_k(3), warm);
    REQUIRE(r.splits.size() == 1);
    CHECK(r.splits[0].parent_cluster == 1);
    CHECK(r.splits[0].negative_child_cluster == 2);
}

TEST_CASE("discriminative runs are deterministic") {
    const auto d = random_labelled(9, 80, 2);
    const auto a = run_discriminative(d, with_k(9));
    const auto b = run_discriminative(d, with_k(9));
    CHECK(a.clustering == b.clustering);
    CHECK(a.splits == b.splits);
}
