#ifndef DKM_SYNTH_HPP
#define DKM_SYNTH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "core.hpp"

/**
 * @file synth.hpp
 *
 * @brief Seeded Gaussian blob layouts for the synthetic experiments.
 */

namespace dkm {

struct Blob {
    Point mean;
    double stddev = 1.0;
    std::size_t count = 1;
    BinaryLabel label = BinaryLabel::Positive;
    /// Identity recorded for every sample of this blob when the spec is used for recognition.
    Identity identity = 0;

    bool operator==(const Blob&) const = default;
};

struct SynthSpec {
    std::vector<Blob> blobs;
    std::uint64_t seed = 1;

    /// Throws on empty blob list, zero counts, non-positive stddevs or mixed dimensions.
    void validate() const;

    bool operator==(const SynthSpec&) const = default;
};

/**
 * Isotropic Gaussian samples for each blob, concatenated in blob order, drawn
 * from one generator seeded with `spec.seed`. Appending blobs to a spec leaves
 * the samples of the earlier blobs unchanged. The result carries binary labels
 * and identities.
 */
Dataset generate(const SynthSpec& spec);

/// The three synthetic experiments.
struct ExperimentSuite {
    /// Two-class layout: interleaved in one region, well apart in another.
    SynthSpec e1;
    /// e1 plus extra positive blobs pushed toward negative territory.
    SynthSpec e2;
    /// e2's data, started from e1's converged model.
    SynthSpec e3_data;
    std::string e3_warm_start_from = "e1";
};

ExperimentSuite experiment_suite(std::uint64_t seed = 1);

/**
 * Two-class recognition layout: `training` holds both classes (Positive is
 * the class the queries belong to, identity 1; Negative is identity 0);
 * `queries` holds held-out positive samples.
 */
struct RecognitionScenario {
    SynthSpec training;
    SynthSpec queries;
};

RecognitionScenario interleaved_scenario(std::uint64_t seed);

/// Canonical seed for the recognition layout.
inline constexpr std::uint64_t canonical_scenario_seed = 1;

/// Three identities in the CSV recognition format for the leave-one-out pipeline.
SynthSpec three_identity_spec(std::uint64_t seed = 1);

} // namespace dkm

#endif
