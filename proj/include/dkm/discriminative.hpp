#ifndef DKM_DISCRIMINATIVE_HPP
#define DKM_DISCRIMINATIVE_HPP

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "core.hpp"

/**
 * @file discriminative.hpp
 *
 * @brief Discriminative k-means for two-class labelled data.
 *
 * Clustering starts from one cluster holding every point. Each iteration
 * assigns points to their nearest centre, splits every cluster that holds
 * both labels into a positive and a negative child whose centres are pushed
 * away from each other, and moves label-pure clusters to their centroid. It
 * stops once the cluster budget is reached or when no mixed cluster remains
 * and the centres have settled.
 */

namespace dkm {

/**
 * Record of one split. `positive_mean` and `negative_mean` are the
 * class-conditional means of the parent's members; the children are these
 * means displaced away from each other.
 */
struct SplitEvent {
    std::size_t iteration = 0;
    std::size_t parent_cluster = 0;
    /// Index the negative child received (the positive child keeps the parent's index).
    std::size_t negative_child_cluster = 0;
    Point positive_child_centre;
    Point negative_child_centre;
    Point positive_mean;
    Point negative_mean;
    double w_used_positive = 0.0;
    double w_used_negative = 0.0;
    std::size_t positive_count = 0;
    std::size_t negative_count = 0;
    /// Class means coincided, so no repulsion direction existed.
    bool degenerate = false;

    bool operator==(const SplitEvent&) const = default;
};

/**
 * `c_dot + w * (c_ddot - c_dot)` with `w = n_ddot / (n_dot + n_ddot)`: the
 * mean of two sub-sets written as one sub-mean plus a correction toward the
 * other.
 */
Point pooled_mean_update(const Point& c_dot, std::size_t n_dot, const Point& c_ddot, std::size_t n_ddot);

/**
 * Split a label-mixed cluster of `data` (which must carry binary labels).
 *
 * With DataCount weights the positive child uses the negative share of the
 * members as its weight and vice versa; Fixed(w) uses w for both. Throws if
 * the cluster is not mixed. `iteration` and `parent_cluster` are left for the
 * caller to fill in.
 */
SplitEvent split_mixed_cluster(const Dataset& data, const Cluster& cluster, const WeightMode& weight_mode);

/// Class means closer than this (Euclidean) are treated as coincident.
inline constexpr double degenerate_split_distance = 1e-12;

struct IterationSnapshot {
    std::size_t iteration = 0;
    /// Centres the points were assigned to in this iteration.
    std::vector<Point> centres;
    Assignment assignment;
    /// Centres after this iteration's splits and updates.
    std::vector<Point> next_centres;
    std::size_t splits = 0;
};

using IterationObserver = std::function<void(const IterationSnapshot&)>;

struct DiscriminativeResult {
    Clustering clustering;
    std::vector<SplitEvent> splits;
};

/**
 * Run the discriminative algorithm on labelled `data`.
 *
 * `warm_start`, when given, replaces the single initial cluster; its centres
 * are used verbatim. At most `config.k_max` clusters ever exist. When several
 * mixed clusters compete for the remaining budget, those with the larger
 * minority count split first (lower index on ties); the rest move to their
 * pooled mean. When a split fills the budget the points are reassigned once
 * to the new centres and the run stops.
 */
DiscriminativeResult run_discriminative(const Dataset& data, const Config& config,
                                        const std::optional<std::vector<Point>>& warm_start = std::nullopt,
                                        const IterationObserver& observer = {});

/// Count of positive / negative members.
std::pair<std::size_t, std::size_t> label_counts(const Dataset& data, std::span<const std::size_t> members);

} // namespace dkm

#endif
