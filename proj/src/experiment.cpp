#include "dkm/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dkm {

ExperimentId experiment_from_string(const std::string& s) {
    if (s == "e1") {
        return ExperimentId::E1;
    }
    if (s == "e2") {
        return ExperimentId::E2;
    }
    if (s == "e3") {
        return ExperimentId::E3;
    }
    throw Error("experiment must be e1, e2 or e3, got '" + s + "'");
}

std::string to_string(ExperimentId id) {
    switch (id) {
    case ExperimentId::E1:
        return "e1";
    case ExperimentId::E2:
        return "e2";
    case ExperimentId::E3:
        return "e3";
    }
    return "unknown";
}

ExperimentOutcome run_experiment(ExperimentId id, Config config, const IterationObserver& observer) {
    const auto suite = experiment_suite(config.seed);
    auto unbounded = [&](const Dataset& data) {
        Config c = config;
        c.k_max = data.size();
        return c;
    };

    if (id == ExperimentId::E1 || id == ExperimentId::E2) {
        auto data = generate(id == ExperimentId::E1 ? suite.e1 : suite.e2);
        auto result = run_discriminative(data, unbounded(data), std::nullopt, observer);
        return ExperimentOutcome{std::move(data), std::move(result), std::nullopt};
    }

    const auto e1_data = generate(suite.e1);
    auto source = run_discriminative(e1_data, unbounded(e1_data));
    auto data = generate(suite.e3_data);
    auto result = run_discriminative(data, unbounded(data), source.clustering.centres(), observer);
    return ExperimentOutcome{std::move(data), std::move(result), std::move(source)};
}

double hausdorff_distance(std::span<const Point> a, std::span<const Point> b) {
    if (a.empty() || b.empty()) {
        throw Error("Hausdorff distance needs two non-empty sets");
    }
    auto directed = [](std::span<const Point> from, std::span<const Point> to) {
        double worst = 0.0;
        for (const auto& p : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& q : to) {
                best = std::min(best, squared_distance(p, q));
            }
            worst = std::max(worst, best);
        }
        return std::sqrt(worst);
    };
    return std::max(directed(a, b), directed(b, a));
}

double bounding_box_diagonal(const Dataset& data) {
    std::vector<double> lo = data.point(0).values();
    std::vector<double> hi = lo;
    for (const auto& p : data.points()) {
        for (std::size_t j = 0; j < p.dim(); ++j) {
            lo[j] = std::min(lo[j], p[j]);
            hi[j] = std::max(hi[j], p[j]);
        }
    }
    double s = 0.0;
    for (std::size_t j = 0; j < lo.size(); ++j) {
        s += (hi[j] - lo[j]) * (hi[j] - lo[j]);
    }
    return std::sqrt(s);
}

} // namespace dkm
