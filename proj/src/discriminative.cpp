#include "dkm/discriminative.hpp"

#include <algorithm>
#include <cmath>

#include "dkm/kmeans.hpp"

namespace dkm {

namespace {

// Drop clusters that received no points and renumber the rest.
void compact(std::vector<Point>& centres, Assignment& assignment) {
    std::vector<std::size_t> count(centres.size(), 0);
    for (auto a : assignment) {
        ++count[a];
    }
    std::vector<std::size_t> remap(centres.size(), 0);
    std::vector<Point> kept;
    for (std::size_t c = 0; c < centres.size(); ++c) {
        if (count[c] > 0) {
            remap[c] = kept.size();
            kept.push_back(std::move(centres[c]));
        }
    }
    if (kept.size() == centres.size()) {
        centres = std::move(kept);
        return;
    }
    for (auto& a : assignment) {
        a = remap[a];
    }
    centres = std::move(kept);
}

double max_shift(std::span<const Point> before, std::span<const Point> after) {
    double worst = 0.0;
    for (std::size_t c = 0; c < before.size(); ++c) {
        worst = std::max(worst, squared_distance(before[c], after[c]));
    }
    return std::sqrt(worst);
}

void split_members(const Dataset& data, std::span<const std::size_t> members, std::vector<std::size_t>& pos,
                   std::vector<std::size_t>& neg) {
    for (auto m : members) {
        (data.label(m) == BinaryLabel::Positive ? pos : neg).push_back(m);
    }
}

} // namespace

std::pair<std::size_t, std::size_t> label_counts(const Dataset& data, std::span<const std::size_t> members) {
    std::size_t pos = 0;
    for (auto m : members) {
        if (data.label(m) == BinaryLabel::Positive) {
            ++pos;
        }
    }
    return {pos, members.size() - pos};
}

Point pooled_mean_update(const Point& c_dot, std::size_t n_dot, const Point& c_ddot, std::size_t n_ddot) {
    if (n_dot == 0 || n_ddot == 0) {
        throw Error("pooled mean update needs non-empty sub-sets");
    }
    if (c_dot.dim() != c_ddot.dim()) {
        throw Error("dimension mismatch in pooled mean update");
    }
    const double w = static_cast<double>(n_ddot) / static_cast<double>(n_dot + n_ddot);
    std::vector<double> out(c_dot.dim());
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = c_dot[j] + w * (c_ddot[j] - c_dot[j]);
    }
    return Point(std::move(out));
}

SplitEvent split_mixed_cluster(const Dataset& data, const Cluster& cluster, const WeightMode& weight_mode) {
    if (!data.has_labels()) {
        throw Error("splitting requires binary labels");
    }
    std::vector<std::size_t> pos;
    std::vector<std::size_t> neg;
    split_members(data, cluster.members, pos, neg);
    if (pos.empty() || neg.empty()) {
        throw Error("cannot split a label-pure cluster");
    }

    SplitEvent ev;
    ev.positive_count = pos.size();
    ev.negative_count = neg.size();
    ev.positive_mean = centroid(data, pos);
    ev.negative_mean = centroid(data, neg);

    if (weight_mode.kind == WeightMode::Kind::DataCount) {
        const auto total = static_cast<double>(pos.size() + neg.size());
        ev.w_used_positive = static_cast<double>(neg.size()) / total;
        ev.w_used_negative = static_cast<double>(pos.size()) / total;
    } else {
        ev.w_used_positive = weight_mode.w;
        ev.w_used_negative = weight_mode.w;
    }

    if (std::sqrt(squared_distance(ev.positive_mean, ev.negative_mean)) < degenerate_split_distance) {
        ev.degenerate = true;
        ev.w_used_positive = 0.0;
        ev.w_used_negative = 0.0;
        ev.positive_child_centre = ev.positive_mean;
        ev.negative_child_centre = ev.negative_mean;
        return ev;
    }

    const auto d = data.dim();
    std::vector<double> plus(d);
    std::vector<double> minus(d);
    for (std::size_t j = 0; j < d; ++j) {
        const double p = ev.positive_mean[j];
        const double n = ev.negative_mean[j];
        plus[j] = p - ev.w_used_positive * (n - p);
        minus[j] = n - ev.w_used_negative * (p - n);
    }
    ev.positive_child_centre = Point(std::move(plus));
    ev.negative_child_centre = Point(std::move(minus));
    return ev;
}

DiscriminativeResult run_discriminative(const Dataset& data, const Config& config,
                                        const std::optional<std::vector<Point>>& warm_start,
                                        const IterationObserver& observer) {
    config.validate();
    if (!data.has_labels()) {
        throw Error("discriminative k-means requires binary labels");
    }

    std::vector<Point> centres;
    if (warm_start) {
        if (warm_start->empty()) {
            throw Error("warm start must supply at least one centre");
        }
        if (warm_start->size() > config.k_max) {
            throw Error("warm start has " + std::to_string(warm_start->size()) + " centres, more than k_max = " +
                        std::to_string(config.k_max));
        }
        for (const auto& c : *warm_start) {
            if (c.dim() != data.dim()) {
                throw Error("warm start centre dimension does not match the data");
            }
        }
        centres = *warm_start;
    } else {
        centres.push_back(centroid(data.points()));
    }

    DiscriminativeResult result;
    std::vector<double> trace;
    auto reason = Termination::MaxIterations;
    std::size_t iterations = 0;

    while (iterations < config.max_iterations) {
        auto assignment = assign(data, centres);
        compact(centres, assignment);
        trace.push_back(objective(data, centres, assignment));

        const auto k = centres.size();
        std::vector<std::vector<std::size_t>> pos(k);
        std::vector<std::vector<std::size_t>> neg(k);
        for (std::size_t i = 0; i < data.size(); ++i) {
            (data.label(i) == BinaryLabel::Positive ? pos : neg)[assignment[i]].push_back(i);
        }

        std::vector<std::size_t> mixed;
        for (std::size_t c = 0; c < k; ++c) {
            if (!pos[c].empty() && !neg[c].empty()) {
                mixed.push_back(c);
            }
        }

        // Most contested clusters get the remaining budget first.
        std::vector<std::size_t> to_split = mixed;
        std::stable_sort(to_split.begin(), to_split.end(), [&](std::size_t a, std::size_t b) {
            return std::min(pos[a].size(), neg[a].size()) > std::min(pos[b].size(), neg[b].size());
        });
        to_split.resize(std::min(to_split.size(), config.k_max - k));
        std::sort(to_split.begin(), to_split.end());

        std::vector<Point> next(centres.size());
        std::vector<Point> appended;
        auto split_it = to_split.begin();
        for (std::size_t c = 0; c < k; ++c) {
            std::vector<std::size_t> members = pos[c];
            members.insert(members.end(), neg[c].begin(), neg[c].end());
            std::sort(members.begin(), members.end());

            if (split_it != to_split.end() && *split_it == c) {
                ++split_it;
                auto ev = split_mixed_cluster(data, Cluster{centres[c], std::move(members)}, config.weight_mode);
                ev.iteration = iterations;
                ev.parent_cluster = c;
                ev.negative_child_cluster = k + appended.size();
                next[c] = ev.positive_child_centre;
                appended.push_back(ev.negative_child_centre);
                result.splits.push_back(std::move(ev));
            } else if (!pos[c].empty() && !neg[c].empty()) {
                next[c] = pooled_mean_update(centroid(data, pos[c]), pos[c].size(), centroid(data, neg[c]),
                                             neg[c].size());
            } else {
                next[c] = centroid(data, members);
            }
        }
        for (auto& p : appended) {
            next.push_back(std::move(p));
        }
        ++iterations;

        if (observer) {
            observer(IterationSnapshot{iterations - 1, centres, assignment, next, to_split.size()});
        }

        if (!to_split.empty()) {
            centres = std::move(next);
            if (centres.size() == config.k_max) {
                reason = Termination::MaxClusters;
                break;
            }
            continue;
        }

        // No split happened: either nothing is mixed or the budget is spent.
        const double shift = max_shift(centres, next);
        const bool settled = shift < config.tolerance || assign(data, next) == assignment;
        centres = std::move(next);
        if (settled) {
            reason = mixed.empty() ? Termination::Converged : Termination::MaxClusters;
            break;
        }
    }

    auto assignment = assign(data, centres);
    compact(centres, assignment);
    result.clustering = make_clustering(data, centres, assignment);
    trace.push_back(result.clustering.objective);
    result.clustering.iterations_run = iterations;
    result.clustering.terminated_by = reason;
    result.clustering.objective_trace = std::move(trace);
    return result;
}

} // namespace dkm
