#include "dkm/eval.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "dkm/discriminative.hpp"
#include "dkm/kmeans.hpp"

namespace dkm {

std::string to_string(Algorithm a) {
    return a == Algorithm::Classic ? "kmeans" : "dkmeans";
}

Algorithm algorithm_from_string(const std::string& s) {
    if (s == "kmeans" || s == "classic") {
        return Algorithm::Classic;
    }
    if (s == "dkmeans" || s == "discriminative") {
        return Algorithm::Discriminative;
    }
    throw Error("unknown algorithm '" + s + "'");
}

ConfusionMatrix::ConfusionMatrix(std::vector<Identity> identities) : identities_(std::move(identities)) {
    if (!std::is_sorted(identities_.begin(), identities_.end()) ||
        std::adjacent_find(identities_.begin(), identities_.end()) != identities_.end()) {
        throw Error("confusion matrix identities must be strictly ascending");
    }
    counts_.assign(identities_.size() * identities_.size(), 0);
}

std::size_t ConfusionMatrix::index_of(Identity id) const {
    auto it = std::lower_bound(identities_.begin(), identities_.end(), id);
    if (it == identities_.end() || *it != id) {
        throw Error("identity " + std::to_string(id) + " is not part of the confusion matrix");
    }
    return static_cast<std::size_t>(it - identities_.begin());
}

void ConfusionMatrix::add(Identity truth, Identity predicted) {
    ++counts_[index_of(truth) * size() + index_of(predicted)];
}

std::size_t ConfusionMatrix::row_sum(std::size_t row) const {
    std::size_t s = 0;
    for (std::size_t c = 0; c < size(); ++c) {
        s += count(row, c);
    }
    return s;
}

std::size_t ConfusionMatrix::total() const {
    return std::accumulate(counts_.begin(), counts_.end(), std::size_t{0});
}

std::size_t ConfusionMatrix::trace() const {
    std::size_t s = 0;
    for (std::size_t r = 0; r < size(); ++r) {
        s += count(r, r);
    }
    return s;
}

std::vector<double> ConfusionMatrix::marginalized() const {
    std::vector<double> out(size(), 0.0);
    for (std::size_t r = 0; r < size(); ++r) {
        const auto rs = row_sum(r);
        if (rs > 0) {
            out[r] = 1.0 - static_cast<double>(count(r, r)) / static_cast<double>(rs);
        }
    }
    return out;
}

double ConfusionMatrix::error_rate() const {
    const auto t = total();
    return t == 0 ? 0.0 : 1.0 - static_cast<double>(trace()) / static_cast<double>(t);
}

namespace {

std::vector<std::vector<std::size_t>> members_by_identity(const Dataset& data, std::span<const Identity> ids) {
    std::vector<std::vector<std::size_t>> out(ids.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        auto it = std::lower_bound(ids.begin(), ids.end(), data.identity(i));
        out[static_cast<std::size_t>(it - ids.begin())].push_back(i);
    }
    return out;
}

IdentityModel classic_model(const Dataset& data, Identity id, std::span<const std::size_t> members,
                            const Config& config) {
    if (members.size() < config.k_max) {
        throw Error("identity " + std::to_string(id) + " has " + std::to_string(members.size()) +
                    " points, fewer than k = " + std::to_string(config.k_max));
    }
    auto clustering = run_kmeans(data.subset(members), config);
    return IdentityModel{id, clustering.centres(), Algorithm::Classic, false};
}

IdentityModel discriminative_model(const Dataset& data, Identity id, std::span<const std::size_t> members,
                                   const Config& config) {
    std::vector<BinaryLabel> labels(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        labels[i] = data.identity(i) == id ? BinaryLabel::Positive : BinaryLabel::Negative;
    }
    const auto labelled = data.with_labels(std::move(labels));
    const auto result = run_discriminative(labelled, config);

    IdentityModel model{id, {}, Algorithm::Discriminative, false};
    for (const auto& cluster : result.clustering.clusters) {
        const auto [npos, nneg] = label_counts(labelled, cluster.members);
        if (npos > nneg) {
            model.centres.push_back(cluster.centre);
        }
    }
    if (model.centres.empty()) {
        model.centres.push_back(centroid(data, members));
        model.fallback = true;
    }
    return model;
}

template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&] {
            for (auto i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                    next = n;
                }
            }
        });
    }
    for (auto& w : workers) {
        w.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

} // namespace

std::vector<IdentityModel> train_identity_models(const Dataset& data, Algorithm algorithm, const Config& config) {
    config.validate();
    const auto ids = data.distinct_identities();
    if (ids.size() < 2) {
        throw Error("at least two identities are required");
    }
    const auto members = members_by_identity(data, ids);

    std::vector<IdentityModel> models;
    models.reserve(ids.size());
    for (std::size_t k = 0; k < ids.size(); ++k) {
        if (algorithm == Algorithm::Classic) {
            models.push_back(classic_model(data, ids[k], members[k], config));
        } else {
            models.push_back(discriminative_model(data, ids[k], members[k], config));
        }
    }
    return models;
}

Identity classify(const Point& query, std::span<const IdentityModel> models) {
    if (models.empty()) {
        throw Error("at least one identity model is required");
    }
    Identity best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    bool found = false;
    for (const auto& model : models) {
        for (const auto& c : model.centres) {
            const double dist = squared_distance(query, c);
            if (!found || dist < best_dist || (dist == best_dist && model.identity < best)) {
                best = model.identity;
                best_dist = dist;
                found = true;
            }
        }
    }
    if (!found) {
        throw Error("identity models contain no centres");
    }
    return best;
}

double ssd_of(const Dataset& data, std::span<const IdentityModel> models) {
    double total = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto id = data.identity(i);
        auto it = std::find_if(models.begin(), models.end(), [&](const IdentityModel& m) { return m.identity == id; });
        if (it == models.end()) {
            throw Error("no model for identity " + std::to_string(id));
        }
        total += squared_distance(data.point(i), it->centres[nearest_centre(data.point(i), it->centres)]);
    }
    return total;
}

double ssd_of(const Dataset& data, const Clustering& clustering) {
    const auto centres = clustering.centres();
    double total = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        total += squared_distance(data.point(i), centres[nearest_centre(data.point(i), centres)]);
    }
    return total;
}

LooResult leave_one_out(const Dataset& data, Algorithm algorithm, const Config& config, unsigned threads) {
    config.validate();
    const auto ids = data.distinct_identities();
    const auto members = members_by_identity(data, ids);
    for (std::size_t k = 0; k < ids.size(); ++k) {
        if (members[k].size() < 2) {
            throw Error("identity " + std::to_string(ids[k]) + " needs at least two points for leave-one-out");
        }
    }

    const auto n = data.size();
    LooResult out;
    out.predictions.assign(n, 0);
    out.ssd.assign(n, 0.0);
    parallel_for(n, threads, [&](std::size_t q) {
        std::vector<std::size_t> rest;
        rest.reserve(n - 1);
        for (std::size_t i = 0; i < n; ++i) {
            if (i != q) {
                rest.push_back(i);
            }
        }
        const auto training = data.subset(rest);
        const auto models = train_identity_models(training, algorithm, config);
        out.predictions[q] = classify(data.point(q), models);
        out.ssd[q] = ssd_of(training, models);
    });

    out.confusion = ConfusionMatrix(ids);
    for (std::size_t q = 0; q < n; ++q) {
        out.confusion.add(data.identity(q), out.predictions[q]);
    }
    return out;
}

EvalReport compare_leave_one_out(const Dataset& data, const Config& config, unsigned threads) {
    EvalReport report;
    report.config = config;
    report.classic = leave_one_out(data, Algorithm::Classic, config, threads);
    report.discriminative = leave_one_out(data, Algorithm::Discriminative, config, threads);
    report.ssd_records.reserve(data.size());
    for (std::size_t q = 0; q < data.size(); ++q) {
        const int classic_ok = report.classic.predictions[q] == data.identity(q) ? 1 : 0;
        const int disc_ok = report.discriminative.predictions[q] == data.identity(q) ? 1 : 0;
        report.ssd_records.push_back(
            SsdRecord{q, report.classic.ssd[q], report.discriminative.ssd[q], disc_ok - classic_ok});
    }
    return report;
}

double median(std::vector<double> values) {
    if (values.empty()) {
        throw Error("median of an empty sample");
    }
    std::sort(values.begin(), values.end());
    const auto mid = values.size() / 2;
    return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

TimingReport time_to_model(const Dataset& data, const Config& config, std::size_t repetitions) {
    if (repetitions == 0) {
        throw Error("repetitions must be at least 1");
    }
    using clock = std::chrono::steady_clock;
    auto time_once = [&](Algorithm algorithm) {
        const auto start = clock::now();
        auto models = train_identity_models(data, algorithm, config);
        const auto stop = clock::now();
        // Keep the work observable.
        if (models.empty()) {
            throw Error("no models trained");
        }
        return std::chrono::duration<double>(stop - start).count();
    };

    TimingReport report;
    for (std::size_t r = 0; r < repetitions; ++r) {
        report.classic_seconds.push_back(time_once(Algorithm::Classic));
        report.discriminative_seconds.push_back(time_once(Algorithm::Discriminative));
    }
    report.classic_median = median(report.classic_seconds);
    report.discriminative_median = median(report.discriminative_seconds);
    return report;
}

std::string TimingReport::summary() const {
    std::string out;
    char buf[128];
    auto line = [&](const char* name, const std::vector<double>& samples, double med) {
        out += name;
        out += " samples (s):";
        for (double s : samples) {
            std::snprintf(buf, sizeof(buf), " %.6e", s);
            out += buf;
        }
        std::snprintf(buf, sizeof(buf), "\n%s median (s): %.6e\n", name, med);
        out += buf;
    };
    line("kmeans", classic_seconds, classic_median);
    line("dkmeans", discriminative_seconds, discriminative_median);
    if (classic_median > 0.0) {
        std::snprintf(buf, sizeof(buf), "dkmeans time reduction vs kmeans: %.1f%%\n",
                      100.0 * (1.0 - discriminative_median / classic_median));
        out += buf;
    }
    out += "reference reduction on the published face benchmark (k=8): approximately 73%\n";
    return out;
}

} // namespace dkm
