#ifndef DKM_EVAL_HPP
#define DKM_EVAL_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "core.hpp"

/**
 * @file eval.hpp
 *
 * @brief Recognition harness: per-identity cluster models, nearest-centre
 * classification, leave-one-out confusion matrices, SSD and timing.
 */

namespace dkm {

enum class Algorithm : std::uint8_t { Classic, Discriminative };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);

struct IdentityModel {
    Identity identity = 0;
    std::vector<Point> centres;
    Algorithm algorithm = Algorithm::Classic;
    /// Discriminative run produced no majority-positive cluster; `centres`
    /// holds the identity's centroid instead.
    bool fallback = false;

    bool operator==(const IdentityModel&) const = default;
};

/**
 * Counts indexed by (true identity, predicted identity) over a fixed,
 * ascending list of identities.
 */
class ConfusionMatrix {
public:
    ConfusionMatrix() = default;
    explicit ConfusionMatrix(std::vector<Identity> identities);

    const std::vector<Identity>& identities() const { return identities_; }
    std::size_t size() const { return identities_.size(); }

    void add(Identity truth, Identity predicted);
    std::size_t count(std::size_t row, std::size_t col) const { return counts_[row * size() + col]; }
    std::size_t row_sum(std::size_t row) const;
    std::size_t total() const;
    std::size_t trace() const;

    /// Fraction of each identity's queries predicted as any other identity.
    std::vector<double> marginalized() const;
    double error_rate() const;

    bool operator==(const ConfusionMatrix&) const = default;

private:
    std::size_t index_of(Identity id) const;

    std::vector<Identity> identities_;
    std::vector<std::size_t> counts_;
};

struct SsdRecord {
    std::size_t query_id = 0;
    double ssd_classic = 0.0;
    double ssd_discriminative = 0.0;
    /// +1 discriminative right and classic wrong, -1 the reverse, else 0.
    int benefit = 0;

    bool operator==(const SsdRecord&) const = default;
};

/**
 * One model per identity, ascending by identity.
 *
 * Classic clusters each identity's points on their own with k = k_max.
 * Discriminative labels one identity Positive and every other Negative, runs
 * the discriminative algorithm on all points, and keeps the centres of the
 * clusters whose members are mostly positive.
 */
std::vector<IdentityModel> train_identity_models(const Dataset& data, Algorithm algorithm, const Config& config);

/// Identity owning the nearest centre over all models; lowest identity on ties.
Identity classify(const Point& query, std::span<const IdentityModel> models);

/**
 * Sum over points of the squared distance to the nearest centre of the model
 * for that point's identity.
 */
double ssd_of(const Dataset& data, std::span<const IdentityModel> models);
/// Sum over points of the squared distance to the nearest clustering centre.
double ssd_of(const Dataset& data, const Clustering& clustering);

struct LooResult {
    ConfusionMatrix confusion;
    /// Prediction for each held-out point, by index.
    std::vector<Identity> predictions;
    /// SSD of the models trained without each point, by index.
    std::vector<double> ssd;
};

/**
 * Hold out each point in index order, train on the rest, classify the held-out
 * point. Queries are independent and run on up to `threads` workers
 * (0 = hardware concurrency); results do not depend on the thread count.
 */
LooResult leave_one_out(const Dataset& data, Algorithm algorithm, const Config& config, unsigned threads = 0);

struct EvalReport {
    Config config;
    LooResult classic;
    LooResult discriminative;
    std::vector<SsdRecord> ssd_records;
};

/// Both algorithms over the same query sequence, plus paired SSD records.
EvalReport compare_leave_one_out(const Dataset& data, const Config& config, unsigned threads = 0);

struct TimingReport {
    std::vector<double> classic_seconds;
    std::vector<double> discriminative_seconds;
    double classic_median = 0.0;
    double discriminative_median = 0.0;

    /// Plain-text summary with the raw samples.
    std::string summary() const;
};

/// Wall time to train the identity models with each algorithm, `repetitions` times.
TimingReport time_to_model(const Dataset& data, const Config& config, std::size_t repetitions);

double median(std::vector<double> values);

} // namespace dkm

#endif
