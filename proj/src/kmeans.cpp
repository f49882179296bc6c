#include "dkm/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dkm/rng.hpp"

namespace dkm {

namespace {

void check_k(const Dataset& data, std::size_t k) {
    if (k == 0) {
        throw Error("k must be at least 1");
    }
    if (k > data.size()) {
        throw Error("k = " + std::to_string(k) + " exceeds the number of points (" + std::to_string(data.size()) +
                    ")");
    }
}

std::vector<std::size_t> random_indices(std::size_t n, std::size_t k, Rng& rng) {
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    // Partial Fisher-Yates.
    for (std::size_t i = 0; i < k; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

std::vector<std::size_t> plusplus_indices(const Dataset& data, std::size_t k, Rng& rng) {
    const auto n = data.size();
    std::vector<std::size_t> chosen;
    chosen.reserve(k);
    std::vector<char> taken(n, 0);
    std::vector<double> mindist(n, 0.0);

    const auto first = static_cast<std::size_t>(rng.below(n));
    chosen.push_back(first);
    taken[first] = 1;
    for (std::size_t i = 0; i < n; ++i) {
        mindist[i] = squared_distance(data.point(i), data.point(first));
    }

    while (chosen.size() < k) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!taken[i]) {
                total += mindist[i];
            }
        }

        std::size_t pick = n;
        if (total > 0.0) {
            const double target = rng.uniform01() * total;
            double cumulative = 0.0;
            std::size_t last_positive = n;
            for (std::size_t i = 0; i < n; ++i) {
                if (taken[i] || mindist[i] <= 0.0) {
                    continue;
                }
                last_positive = i;
                cumulative += mindist[i];
                if (target < cumulative) {
                    pick = i;
                    break;
                }
            }
            if (pick == n) {
                pick = last_positive; // rounding at the top of the range
            }
        } else {
            std::vector<std::size_t> remaining;
            for (std::size_t i = 0; i < n; ++i) {
                if (!taken[i]) {
                    remaining.push_back(i);
                }
            }
            pick = remaining[static_cast<std::size_t>(rng.below(remaining.size()))];
        }

        chosen.push_back(pick);
        taken[pick] = 1;
        for (std::size_t i = 0; i < n; ++i) {
            mindist[i] = std::min(mindist[i], squared_distance(data.point(i), data.point(pick)));
        }
    }
    return chosen;
}

double max_shift(std::span<const Point> before, std::span<const Point> after) {
    double worst = 0.0;
    for (std::size_t c = 0; c < before.size(); ++c) {
        worst = std::max(worst, squared_distance(before[c], after[c]));
    }
    return std::sqrt(worst);
}

} // namespace

std::vector<std::size_t> init_centre_indices(const Dataset& data, std::size_t k, InitMode mode,
                                             std::uint64_t seed) {
    check_k(data, k);
    Rng rng(seed);
    if (mode == InitMode::PlusPlus) {
        return plusplus_indices(data, k, rng);
    }
    return random_indices(data.size(), k, rng);
}

std::vector<Point> init_centres(const Dataset& data, std::size_t k, InitMode mode, std::uint64_t seed) {
    std::vector<Point> out;
    for (auto i : init_centre_indices(data, k, mode, seed)) {
        out.push_back(data.point(i));
    }
    return out;
}

std::size_t nearest_centre(const Point& x, std::span<const Point> centres) {
    if (centres.empty()) {
        throw Error("at least one centre is required");
    }
    std::size_t best = 0;
    double best_dist = squared_distance(x, centres[0]);
    for (std::size_t c = 1; c < centres.size(); ++c) {
        const double dist = squared_distance(x, centres[c]);
        if (dist < best_dist) {
            best_dist = dist;
            best = c;
        }
    }
    return best;
}

Assignment assign(const Dataset& data, std::span<const Point> centres) {
    Assignment out(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        out[i] = nearest_centre(data.point(i), centres);
    }
    return out;
}

CentreUpdate update_centres(const Dataset& data, const Assignment& assignment, std::span<const Point> current) {
    if (assignment.size() != data.size()) {
        throw Error("assignment does not cover the dataset");
    }
    const auto k = current.size();
    std::vector<std::vector<std::size_t>> members(k);
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        if (assignment[i] >= k) {
            throw Error("assignment refers to a missing cluster");
        }
        members[assignment[i]].push_back(i);
    }

    CentreUpdate out;
    out.centres.reserve(k);
    for (std::size_t c = 0; c < k; ++c) {
        out.centres.push_back(members[c].empty() ? current[c] : centroid(data, members[c]));
    }

    std::vector<double> dist;
    for (std::size_t c = 0; c < k; ++c) {
        if (!members[c].empty()) {
            continue;
        }
        if (dist.empty()) {
            dist.resize(data.size());
            for (std::size_t i = 0; i < data.size(); ++i) {
                dist[i] = squared_distance(data.point(i), current[assignment[i]]);
            }
        }
        std::size_t far = 0;
        for (std::size_t i = 1; i < dist.size(); ++i) {
            if (dist[i] > dist[far]) {
                far = i;
            }
        }
        out.centres[c] = data.point(far);
        out.relocated.push_back(c);
        dist[far] = -1.0; // taken
    }
    return out;
}

Clustering make_clustering(const Dataset& data, const std::vector<Point>& centres, const Assignment& assignment) {
    std::vector<std::vector<std::size_t>> members(centres.size());
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        members[assignment[i]].push_back(i);
    }
    Clustering out;
    for (std::size_t c = 0; c < centres.size(); ++c) {
        if (!members[c].empty()) {
            out.clusters.push_back(Cluster{centres[c], std::move(members[c])});
        }
    }
    out.objective = objective(data, centres, assignment);
    return out;
}

Clustering run_kmeans_from(const Dataset& data, std::vector<Point> centres, const Config& config) {
    config.validate();
    if (centres.empty()) {
        throw Error("at least one initial centre is required");
    }
    for (const auto& c : centres) {
        if (c.dim() != data.dim()) {
            throw Error("initial centre dimension does not match the data");
        }
    }

    auto assignment = assign(data, centres);
    std::vector<double> trace{objective(data, centres, assignment)};
    auto reason = Termination::MaxIterations;
    std::size_t iterations = 0;

    while (iterations < config.max_iterations) {
        auto update = update_centres(data, assignment, centres);
        auto next = assign(data, update.centres);
        trace.push_back(objective(data, update.centres, next));
        ++iterations;

        const double shift = max_shift(centres, update.centres);
        const bool stable = next == assignment && update.relocated.empty();
        centres = std::move(update.centres);
        assignment = std::move(next);
        if (stable || shift < config.tolerance) {
            reason = Termination::Converged;
            break;
        }
    }

    auto out = make_clustering(data, centres, assignment);
    out.iterations_run = iterations;
    out.terminated_by = reason;
    out.objective_trace = std::move(trace);
    return out;
}

Clustering run_kmeans(const Dataset& data, const Config& config) {
    config.validate();
    return run_kmeans_from(data, init_centres(data, config.k_max, config.init_mode, config.seed), config);
}

} // namespace dkm
