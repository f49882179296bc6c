#include "dkm/synth.hpp"

#include "dkm/rng.hpp"

namespace dkm {

namespace {

Blob blob(double x, double y, double sd, std::size_t count, BinaryLabel label, Identity id = 0) {
    return Blob{Point{x, y}, sd, count, label, id};
}

constexpr auto pos = BinaryLabel::Positive;
constexpr auto neg = BinaryLabel::Negative;

} // namespace

void SynthSpec::validate() const {
    if (blobs.empty()) {
        throw Error("synthetic spec needs at least one blob");
    }
    const auto d = blobs.front().mean.dim();
    for (std::size_t b = 0; b < blobs.size(); ++b) {
        const auto& bl = blobs[b];
        if (bl.count == 0) {
            throw Error("blob " + std::to_string(b) + " has zero count");
        }
        if (!(bl.stddev > 0.0)) {
            throw Error("blob " + std::to_string(b) + " needs a positive stddev");
        }
        if (bl.mean.dim() != d || d == 0) {
            throw Error("blob " + std::to_string(b) + " has a mismatched dimension");
        }
    }
}

Dataset generate(const SynthSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    std::vector<Point> points;
    std::vector<BinaryLabel> labels;
    std::vector<Identity> ids;
    for (const auto& bl : spec.blobs) {
        for (std::size_t s = 0; s < bl.count; ++s) {
            std::vector<double> x(bl.mean.dim());
            for (std::size_t j = 0; j < x.size(); ++j) {
                x[j] = bl.mean[j] + bl.stddev * rng.normal();
            }
            points.emplace_back(std::move(x));
            labels.push_back(bl.label);
            ids.push_back(bl.identity);
        }
    }
    return Dataset(std::move(points), std::move(labels), std::move(ids));
}

ExperimentSuite experiment_suite(std::uint64_t seed) {
    ExperimentSuite suite;
    suite.e1.seed = seed;
    suite.e1.blobs = {
        // Interleaved band along y = 0.
        blob(-4.0, 0.0, 0.7, 25, pos),
        blob(-2.0, 0.6, 0.7, 25, neg),
        blob(0.0, 0.0, 0.7, 25, pos),
        blob(2.0, 0.6, 0.7, 25, neg),
        // Well separated pair further up.
        blob(-3.0, 7.0, 0.9, 30, pos),
        blob(4.0, 7.0, 0.9, 30, neg),
    };
    suite.e2 = suite.e1;
    suite.e2.blobs.push_back(blob(2.5, 5.5, 0.5, 15, pos));
    suite.e2.blobs.push_back(blob(4.5, 2.5, 0.5, 15, pos));
    suite.e3_data = suite.e2;
    return suite;
}

RecognitionScenario interleaved_scenario(std::uint64_t seed) {
    RecognitionScenario sc;
    sc.training.seed = seed;
    sc.training.blobs = {
        blob(1.2, 0.0, 0.5, 60, neg, 0),
        // Dense positive modes away from the negatives.
        blob(-5.0, 0.0, 0.6, 40, pos, 1),
        blob(-8.0, 3.0, 0.6, 40, pos, 1),
        blob(-8.0, -3.0, 0.6, 40, pos, 1),
        blob(-11.0, 0.0, 0.6, 40, pos, 1),
        blob(-8.0, 0.0, 0.6, 40, pos, 1),
        // Sparse positive mode right next to the negatives.
        blob(-1.0, 0.0, 0.35, 12, pos, 1),
    };
    sc.queries.seed = seed + 1000003;
    sc.queries.blobs = {blob(-1.0, 0.0, 0.35, 20, pos, 1)};
    return sc;
}

SynthSpec three_identity_spec(std::uint64_t seed) {
    SynthSpec spec;
    spec.seed = seed;
    spec.blobs = {
        blob(0.0, 0.0, 0.8, 10, pos, 0), blob(3.0, 1.0, 0.8, 10, pos, 0),
        blob(1.5, 3.0, 0.8, 10, pos, 1), blob(4.5, 3.5, 0.8, 10, pos, 1),
        blob(-1.5, 3.0, 0.8, 10, pos, 2), blob(-2.5, -1.0, 0.8, 10, pos, 2),
    };
    return spec;
}

} // namespace dkm
