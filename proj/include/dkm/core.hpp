#ifndef DKM_CORE_HPP
#define DKM_CORE_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

/**
 * @file core.hpp
 *
 * @brief Domain types and distance primitives shared by the clustering algorithms.
 */

namespace dkm {

/**
 * Raised for malformed input: dimension mismatches, empty collections,
 * invalid configuration, unparseable files.
 */
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * A d-dimensional point with finite coordinates.
 */
class Point {
public:
    Point() = default;
    explicit Point(std::vector<double> coords);
    Point(std::initializer_list<double> coords);

    std::size_t dim() const { return coords_.size(); }
    double operator[](std::size_t j) const { return coords_[j]; }
    std::span<const double> coords() const { return coords_; }
    const std::vector<double>& values() const { return coords_; }

    bool operator==(const Point&) const = default;

private:
    std::vector<double> coords_;
};

enum class BinaryLabel : std::uint8_t { Positive, Negative };

using Identity = std::uint32_t;

/// Point index into a Dataset mapped to cluster index.
using Assignment = std::vector<std::size_t>;

/**
 * Non-empty ordered collection of points sharing one dimension, optionally
 * carrying binary labels and/or identity labels of the same length.
 */
class Dataset {
public:
    explicit Dataset(std::vector<Point> points,
                     std::optional<std::vector<BinaryLabel>> labels = std::nullopt,
                     std::optional<std::vector<Identity>> identities = std::nullopt);

    std::size_t size() const { return points_.size(); }
    std::size_t dim() const { return points_.front().dim(); }

    const Point& point(std::size_t i) const { return points_[i]; }
    const std::vector<Point>& points() const { return points_; }

    bool has_labels() const { return labels_.has_value(); }
    BinaryLabel label(std::size_t i) const { return (*labels_)[i]; }
    const std::vector<BinaryLabel>& labels() const;

    bool has_identities() const { return identities_.has_value(); }
    Identity identity(std::size_t i) const { return (*identities_)[i]; }
    const std::vector<Identity>& identities() const;

    /// Sorted, de-duplicated identity values. Throws if identities are absent.
    std::vector<Identity> distinct_identities() const;

    /// Rows at `indices`, in the given order, with whatever labels are present.
    Dataset subset(std::span<const std::size_t> indices) const;

    Dataset with_labels(std::vector<BinaryLabel> labels) const;

    bool operator==(const Dataset&) const = default;

private:
    std::vector<Point> points_;
    std::optional<std::vector<BinaryLabel>> labels_;
    std::optional<std::vector<Identity>> identities_;
};

struct Cluster {
    Point centre;
    std::vector<std::size_t> members; // ascending

    bool operator==(const Cluster&) const = default;
};

enum class Termination : std::uint8_t { Converged, MaxClusters, MaxIterations };

std::string to_string(Termination t);
Termination termination_from_string(const std::string& s);

/**
 * A fitted model. Cluster member sets partition the indices of the data it
 * was fitted on; empty clusters are never retained.
 */
struct Clustering {
    std::vector<Cluster> clusters;
    std::size_t iterations_run = 0;
    double objective = 0.0;
    Termination terminated_by = Termination::Converged;
    /// Objective value after each iteration, starting with the initial state.
    std::vector<double> objective_trace;

    std::vector<Point> centres() const;
    /// Throws if the member sets do not partition {0..n-1}.
    Assignment assignment(std::size_t n) const;

    bool operator==(const Clustering&) const = default;
};

/// Weight applied to the repulsion term when a label-mixed cluster splits.
struct WeightMode {
    enum class Kind : std::uint8_t { DataCount, Fixed };

    Kind kind = Kind::DataCount;
    double w = 0.0; // only meaningful for Fixed

    static WeightMode data_count() { return {}; }
    static WeightMode fixed(double w);

    bool operator==(const WeightMode&) const = default;
};

std::string to_string(const WeightMode& mode);
/// Accepts "datacount" or "fixed:W".
WeightMode weight_mode_from_string(const std::string& s);

enum class InitMode : std::uint8_t { RandomPoints, PlusPlus };

std::string to_string(InitMode m);
InitMode init_mode_from_string(const std::string& s);

struct Config {
    std::size_t k_max = 8;
    double tolerance = 1e-9;
    std::size_t max_iterations = 1000;
    WeightMode weight_mode;
    std::uint64_t seed = 42;
    InitMode init_mode = InitMode::RandomPoints;

    /// Throws Error on k_max == 0, non-positive tolerance, zero iterations or w < 0.
    void validate() const;

    bool operator==(const Config&) const = default;
};

/// Sum of squared coordinate differences.
double squared_distance(const Point& a, const Point& b);
double squared_distance(std::span<const double> a, std::span<const double> b);

/// Coordinate-wise arithmetic mean, accumulated in sequence order.
Point centroid(std::span<const Point> points);
/// Mean of `data` rows at `indices`, accumulated in the order given.
Point centroid(const Dataset& data, std::span<const std::size_t> indices);

/// Within-cluster sum of squared distances using the stored centres.
double objective(const Dataset& data, const Clustering& clustering);
/// Same sum for a raw assignment against a centre list.
double objective(const Dataset& data, std::span<const Point> centres, const Assignment& assignment);

} // namespace dkm

#endif
