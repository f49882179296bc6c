#include "dkm/core.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>

namespace dkm {

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) {
        throw Error("point must have at least one coordinate");
    }
    for (std::size_t j = 0; j < coords_.size(); ++j) {
        if (!std::isfinite(coords_[j])) {
            throw Error("non-finite coordinate at index " + std::to_string(j));
        }
    }
}

Point::Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

Dataset::Dataset(std::vector<Point> points,
                 std::optional<std::vector<BinaryLabel>> labels,
                 std::optional<std::vector<Identity>> identities)
    : points_(std::move(points)), labels_(std::move(labels)), identities_(std::move(identities)) {
    if (points_.empty()) {
        throw Error("dataset must contain at least one point");
    }
    const auto d = points_.front().dim();
    if (d == 0) {
        throw Error("points must have at least one coordinate");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (points_[i].dim() != d) {
            throw Error("point " + std::to_string(i) + " has dimension " + std::to_string(points_[i].dim()) +
                        ", expected " + std::to_string(d));
        }
    }
    if (labels_ && labels_->size() != points_.size()) {
        throw Error("binary label count does not match point count");
    }
    if (identities_ && identities_->size() != points_.size()) {
        throw Error("identity label count does not match point count");
    }
}

const std::vector<BinaryLabel>& Dataset::labels() const {
    if (!labels_) {
        throw Error("dataset has no binary labels");
    }
    return *labels_;
}

const std::vector<Identity>& Dataset::identities() const {
    if (!identities_) {
        throw Error("dataset has no identity labels");
    }
    return *identities_;
}

std::vector<Identity> Dataset::distinct_identities() const {
    auto ids = identities();
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
    std::vector<Point> pts;
    pts.reserve(indices.size());
    std::optional<std::vector<BinaryLabel>> labs;
    std::optional<std::vector<Identity>> ids;
    if (labels_) {
        labs.emplace();
    }
    if (identities_) {
        ids.emplace();
    }
    for (auto i : indices) {
        if (i >= points_.size()) {
            throw Error("subset index out of range");
        }
        pts.push_back(points_[i]);
        if (labs) {
            labs->push_back((*labels_)[i]);
        }
        if (ids) {
            ids->push_back((*identities_)[i]);
        }
    }
    return Dataset(std::move(pts), std::move(labs), std::move(ids));
}

Dataset Dataset::with_labels(std::vector<BinaryLabel> labels) const {
    return Dataset(points_, std::move(labels), identities_);
}

std::string to_string(Termination t) {
    switch (t) {
    case Termination::Converged:
        return "converged";
    case Termination::MaxClusters:
        return "max_clusters";
    case Termination::MaxIterations:
        return "max_iterations";
    }
    return "unknown";
}

Termination termination_from_string(const std::string& s) {
    if (s == "converged") {
        return Termination::Converged;
    }
    if (s == "max_clusters") {
        return Termination::MaxClusters;
    }
    if (s == "max_iterations") {
        return Termination::MaxIterations;
    }
    throw Error("unknown termination reason '" + s + "'");
}

std::vector<Point> Clustering::centres() const {
    std::vector<Point> out;
    out.reserve(clusters.size());
    for (const auto& c : clusters) {
        out.push_back(c.centre);
    }
    return out;
}

Assignment Clustering::assignment(std::size_t n) const {
    constexpr auto unset = static_cast<std::size_t>(-1);
    Assignment out(n, unset);
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        for (auto m : clusters[c].members) {
            if (m >= n) {
                throw Error("cluster member index " + std::to_string(m) + " out of range");
            }
            if (out[m] != unset) {
                throw Error("point " + std::to_string(m) + " belongs to more than one cluster");
            }
            out[m] = c;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (out[i] == unset) {
            throw Error("point " + std::to_string(i) + " belongs to no cluster");
        }
    }
    return out;
}

WeightMode WeightMode::fixed(double w) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
        throw Error("fixed weight must be a finite non-negative number");
    }
    return {Kind::Fixed, w};
}

std::string to_string(const WeightMode& mode) {
    if (mode.kind == WeightMode::Kind::DataCount) {
        return "datacount";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), mode.w);
    return "fixed:" + std::string(buf, res.ptr);
}

WeightMode weight_mode_from_string(const std::string& s) {
    if (s == "datacount") {
        return WeightMode::data_count();
    }
    constexpr std::string_view prefix = "fixed:";
    if (s.size() > prefix.size() && s.compare(0, prefix.size(), prefix) == 0) {
        double w = 0.0;
        const char* first = s.data() + prefix.size();
        const char* last = s.data() + s.size();
        auto res = std::from_chars(first, last, w);
        if (res.ec != std::errc() || res.ptr != last) {
            throw Error("invalid fixed weight in '" + s + "'");
        }
        return WeightMode::fixed(w);
    }
    throw Error("weight mode must be 'datacount' or 'fixed:W', got '" + s + "'");
}

std::string to_string(InitMode m) {
    return m == InitMode::RandomPoints ? "random" : "plusplus";
}

InitMode init_mode_from_string(const std::string& s) {
    if (s == "random") {
        return InitMode::RandomPoints;
    }
    if (s == "plusplus") {
        return InitMode::PlusPlus;
    }
    throw Error("init mode must be 'random' or 'plusplus', got '" + s + "'");
}

void Config::validate() const {
    if (k_max == 0) {
        throw Error("k_max must be at least 1");
    }
    if (!(tolerance > 0.0)) {
        throw Error("tolerance must be positive");
    }
    if (max_iterations == 0) {
        throw Error("max_iterations must be at least 1");
    }
    if (weight_mode.kind == WeightMode::Kind::Fixed && !(weight_mode.w >= 0.0)) {
        throw Error("fixed weight must be non-negative");
    }
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw Error("dimension mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double diff = a[j] - b[j];
        sum += diff * diff;
    }
    return sum;
}

double squared_distance(const Point& a, const Point& b) {
    return squared_distance(a.coords(), b.coords());
}

Point centroid(std::span<const Point> points) {
    if (points.empty()) {
        throw Error("centroid of an empty set is undefined");
    }
    const auto d = points.front().dim();
    std::vector<double> sum(d, 0.0);
    for (const auto& p : points) {
        if (p.dim() != d) {
            throw Error("dimension mismatch in centroid");
        }
        for (std::size_t j = 0; j < d; ++j) {
            sum[j] += p[j];
        }
    }
    const auto n = static_cast<double>(points.size());
    for (auto& v : sum) {
        v /= n;
    }
    return Point(std::move(sum));
}

Point centroid(const Dataset& data, std::span<const std::size_t> indices) {
    if (indices.empty()) {
        throw Error("centroid of an empty set is undefined");
    }
    std::vector<double> sum(data.dim(), 0.0);
    for (auto i : indices) {
        const auto& p = data.point(i);
        for (std::size_t j = 0; j < sum.size(); ++j) {
            sum[j] += p[j];
        }
    }
    const auto n = static_cast<double>(indices.size());
    for (auto& v : sum) {
        v /= n;
    }
    return Point(std::move(sum));
}

double objective(const Dataset& data, std::span<const Point> centres, const Assignment& assignment) {
    if (assignment.size() != data.size()) {
        throw Error("assignment does not cover the dataset");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (assignment[i] >= centres.size()) {
            throw Error("assignment refers to a missing cluster");
        }
        total += squared_distance(data.point(i), centres[assignment[i]]);
    }
    return total;
}

double objective(const Dataset& data, const Clustering& clustering) {
    const auto assignment = clustering.assignment(data.size());
    const auto centres = clustering.centres();
    return objective(data, centres, assignment);
}

} // namespace dkm
