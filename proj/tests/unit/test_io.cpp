#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <regex>

#include "dkm/discriminative.hpp"
#include "dkm/eval.hpp"
#include "dkm/io.hpp"
#include "dkm/kmeans.hpp"
#include "dkm/pca.hpp"
#include "dkm/plot.hpp"
#include "dkm/synth.hpp"
#include "oracles.hpp"

using namespace dkm;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "dkm_test_io";
    fs::create_directories(dir);
    return dir / name;
}

fs::path data_dir() {
    const char* env = std::getenv("DKMEANS_DATA_DIR");
    return env ? fs::path(env) : fs::path("data");
}

std::size_t count_matches(const std::string& text, const std::string& pattern) {
    const std::regex re(pattern);
    return static_cast<std::size_t>(std::distance(std::sregex_iterator(text.begin(), text.end(), re), {}));
}

} // namespace

TEST_CASE("csv with labels loads") {
    const auto d = parse_csv("x,y,label\n1,2,pos\n3,4.5,neg\n-1e-3,0,pos\n");
    CHECK(d.size() == 3);
    CHECK(d.dim() == 2);
    REQUIRE(d.has_labels());
    CHECK_FALSE(d.has_identities());
    CHECK(d.label(1) == BinaryLabel::Negative);
    CHECK(d.point(2) == Point{-1e-3, 0});
}

TEST_CASE("csv errors carry coordinates") {
    CHECK_THROWS_WITH_AS(parse_csv("a,b\n1,2\n3,nan\n"), doctest::Contains("line 3"), Error);
    CHECK_THROWS_WITH_AS(parse_csv("a,b\n1,2\n3,nan\n"), doctest::Contains("'b'"), Error);
    CHECK_THROWS_AS(parse_csv("a,b\n1,2\n3\n"), Error);
    CHECK_THROWS_AS(parse_csv("a,label\n1,maybe\n"), Error);
    CHECK_THROWS_AS(parse_csv("a,identity\n1,-2\n"), Error);
    CHECK_THROWS_AS(parse_csv("a\n"), Error);
    CHECK_THROWS_AS(load_csv(scratch("does_not_exist.csv")), Error);
}

TEST_CASE("csv round trip is exact") {
    std::mt19937_64 gen(1);
    auto m = oracle::random_mat(gen, 40, 3, 1e6);
    m[0][0] = 0.1;
    m[1][1] = 1e-300;
    std::vector<BinaryLabel> labels(40, BinaryLabel::Negative);
    labels[3] = BinaryLabel::Positive;
    std::vector<Identity> ids(40, 7);
    const Dataset d(oracle::to_points(m), labels, ids);
    const auto path = scratch("round.csv");
    save_csv(d, path);
    CHECK(load_csv(path) == d);
    CHECK(format_csv(load_csv(path)) == read_text(path));
}

TEST_CASE("model file round trip is byte-identical") {
    const auto sc = interleaved_scenario(3);
    const auto data = generate(sc.training);
    Config c;
    c.k_max = 6;
    const auto r = run_discriminative(data, c);
    const auto text = to_json(make_model_file(Algorithm::Discriminative, c, r.clustering, r.splits));
    const auto back = model_from_json(text);
    CHECK(to_json(back) == text);
    CHECK(back.splits == r.splits);
    CHECK(back.centres == r.clustering.centres());

    const auto km = run_kmeans(data, c);
    const auto kt = to_json(make_model_file(Algorithm::Classic, c, km));
    CHECK(to_json(model_from_json(kt)) == kt);
    CHECK(kt.find("split_events") == std::string::npos);
    CHECK_THROWS_AS(model_from_json("{\"algorithm\": \"kmeans\"}"), Error);
    CHECK_THROWS_AS(model_from_json("not json"), Error);
}

TEST_CASE("reloaded discriminative model resumes as a no-op") {
    const auto data = generate(experiment_suite(2).e1);
    Config c;
    c.k_max = data.size();
    const auto r = run_discriminative(data, c);
    REQUIRE(r.clustering.terminated_by == Termination::Converged);
    const auto path = scratch("model.json");
    save_model(make_model_file(Algorithm::Discriminative, c, r.clustering, r.splits), path);
    const auto again = run_discriminative(data, c, load_model(path).centres);
    CHECK(again.splits.empty());
    CHECK(again.clustering.assignment(data.size()) == r.clustering.assignment(data.size()));
}

TEST_CASE("synth spec json round trip and bundled specs") {
    const auto spec = experiment_suite(5).e2;
    CHECK(synth_spec_from_json(to_json(spec)) == spec);
    const auto sc = interleaved_scenario(canonical_scenario_seed);
    CHECK(load_synth_spec(data_dir() / "interleaved_train.json") == sc.training);
    CHECK(load_synth_spec(data_dir() / "interleaved_queries.json") == sc.queries);
    const auto three = generate(three_identity_spec());
    CHECK(load_csv(data_dir() / "three_identities.csv") == Dataset(three.points(), std::nullopt, three.identities()));
}

TEST_CASE("report csv formats") {
    ConfusionMatrix cm({0, 4});
    cm.add(0, 0);
    cm.add(0, 4);
    cm.add(4, 4);
    CHECK(confusion_csv(cm) == "true\\predicted,0,4\n0,1,1\n4,0,1\n");
    CHECK(marginalized_csv(cm) == "identity,queries,misclassified_fraction\n0,2,0.5\n4,1,0\n");
    CHECK(ssd_csv({SsdRecord{0, 1.5, 2.0, 1}}) == "query_id,ssd_kmeans,ssd_dkmeans,benefit\n0,1.5,2,1\n");
}

TEST_CASE("pca of 2-D data is a rotation") {
    std::mt19937_64 gen(6);
    const auto m = oracle::random_mat(gen, 30, 2);
    const Dataset d(oracle::to_points(m));
    const auto p = pca_project(d, 2);
    for (std::size_t i = 0; i < 30; ++i) {
        for (std::size_t j = 0; j < 30; ++j) {
            CHECK(squared_distance(p.projected.point(i), p.projected.point(j)) ==
                  doctest::Approx(oracle::sqdist(m[i], m[j])).epsilon(1e-9));
        }
    }
    CHECK(p.basis.eigenvalues[0] >= p.basis.eigenvalues[1]);
    for (const auto& comp : p.basis.components) {
        const auto it = std::max_element(comp.begin(), comp.end(),
                                         [](double a, double b) { return std::abs(a) < std::abs(b); });
        CHECK(*it > 0.0);
    }
}

TEST_CASE("pca of a line in 3-D has a vanishing second eigenvalue") {
    std::vector<Point> pts;
    for (int i = 0; i < 10; ++i) {
        pts.push_back(Point{1.0 * i, 2.0 * i + 1, -0.5 * i});
    }
    const Dataset d(pts);
    const auto pc = principal_components(d);
    CHECK(pc.eigenvalues[0] > 1.0);
    CHECK(std::abs(pc.eigenvalues[1]) < 1e-9);
    CHECK_THROWS_AS(pca_project(d, 2), Error);
    CHECK_NOTHROW(pca_project(d, 1));
}

TEST_CASE("pca residual equals the trailing eigenvalues") {
    std::mt19937_64 gen(13);
    const auto m = oracle::random_mat(gen, 50, 5);
    const Dataset d(oracle::to_points(m));
    const auto p = pca_project(d, 3);
    double residual = 0.0;
    for (std::size_t i = 0; i < 50; ++i) {
        oracle::Vec rec = p.basis.mean;
        for (std::size_t k = 0; k < 3; ++k) {
            for (std::size_t j = 0; j < 5; ++j) {
                rec[j] += p.projected.point(i)[k] * p.basis.components[k][j];
            }
        }
        residual += oracle::sqdist(rec, m[i]);
    }
    residual /= 50.0;
    CHECK(residual == doctest::Approx(p.basis.eigenvalues[3] + p.basis.eigenvalues[4]).epsilon(1e-9));
    CHECK_THROWS_AS(pca_project(d, 6), Error);
    CHECK_THROWS_AS(pca_project(Dataset({Point{1, 2, 3}, Point{2, 3, 4}}), 2), Error);
}

TEST_CASE("svg plots are deterministic and count their marks") {
    const auto data = generate(experiment_suite(1).e1);
    const auto empty = render_scatter(data, {});
    CHECK(empty.rfind("<?xml", 0) == 0);
    CHECK(empty.find("</svg>") != std::string::npos);
    CHECK(count_matches(empty, "<circle class=\"point\"") == data.size());
    CHECK(count_matches(empty, "class=\"centre\"") == 0);

    Config c;
    c.k_max = 10;
    const auto centres = run_discriminative(data, c).clustering.centres();
    const auto svg = render_scatter(data, centres, {"test"});
    CHECK(count_matches(svg, "<circle class=\"point\"") + count_matches(svg, "<path class=\"centre\"") ==
          data.size() + centres.size());
    emit_plot(data, centres, scratch("a.svg"));
    emit_plot(data, centres, scratch("b.svg"));
    CHECK(read_text(scratch("a.svg")) == read_text(scratch("b.svg")));

    std::mt19937_64 gen(2);
    const Dataset high(oracle::to_points(oracle::random_mat(gen, 20, 4)));
    CHECK(count_matches(render_scatter(high, high.points()), "class=\"centre\"") == 20);
    CHECK_THROWS_AS(emit_plot(data, centres, "/nonexistent_dir/x/plot.svg"), Error);
}

TEST_CASE("ssd plot and slope") {
    std::vector<SsdRecord> recs{{0, 1.0, 2.0, 1}, {1, 2.0, 4.0, 0}, {2, 3.0, 6.0, -1}};
    CHECK(ssd_slope(recs) == doctest::Approx(2.0));
    const auto svg = render_ssd_scatter(recs);
    CHECK(count_matches(svg, "<circle class=\"point\"") == 3);
    CHECK(svg == render_ssd_scatter(recs));
}
