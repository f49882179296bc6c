#ifndef DKM_KMEANS_HPP
#define DKM_KMEANS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "core.hpp"

/**
 * @file kmeans.hpp
 *
 * @brief Lloyd's k-means: seeding, nearest-centre assignment, centroid update.
 */

namespace dkm {

/**
 * Choose `k` starting centres from distinct data indices.
 *
 * RandomPoints draws a uniform sample without replacement. PlusPlus picks the
 * first centre uniformly and each later one with probability proportional to
 * its squared distance from the nearest centre chosen so far; when every
 * remaining point coincides with a chosen centre it falls back to a uniform
 * draw among the unchosen indices.
 */
std::vector<Point> init_centres(const Dataset& data, std::size_t k, InitMode mode, std::uint64_t seed);

/// Same selection as init_centres, returned as data indices in pick order.
std::vector<std::size_t> init_centre_indices(const Dataset& data, std::size_t k, InitMode mode,
                                             std::uint64_t seed);

/// Nearest centre for every point; ties go to the lowest centre index.
Assignment assign(const Dataset& data, std::span<const Point> centres);

/// Index of the nearest centre to `x`, lowest index on ties.
std::size_t nearest_centre(const Point& x, std::span<const Point> centres);

struct CentreUpdate {
    std::vector<Point> centres;
    /// Clusters that had no members and were moved onto a data point.
    std::vector<std::size_t> relocated;
};

/**
 * Recompute each cluster's centre as the mean of its members.
 *
 * A cluster left without members is moved onto the point that is farthest
 * from the centre it is currently assigned to (`current` supplies those
 * centres). Several empty clusters are handled in index order, each taking the
 * farthest point not already taken.
 */
CentreUpdate update_centres(const Dataset& data, const Assignment& assignment, std::span<const Point> current);

/**
 * Alternate assign / update_centres from seeded initial centres until the
 * assignment is stable, the largest centre move is below the tolerance, or the
 * iteration cap is hit. Uses `config.k_max` as k.
 */
Clustering run_kmeans(const Dataset& data, const Config& config);

/// Same loop started from caller-supplied centres.
Clustering run_kmeans_from(const Dataset& data, std::vector<Point> centres, const Config& config);

/// Build a Clustering from centres and an assignment, dropping empty clusters.
Clustering make_clustering(const Dataset& data, const std::vector<Point>& centres, const Assignment& assignment);

} // namespace dkm

#endif
