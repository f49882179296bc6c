#ifndef DKM_EXPERIMENT_HPP
#define DKM_EXPERIMENT_HPP

#include <optional>
#include <string>

#include "discriminative.hpp"
#include "synth.hpp"

namespace dkm {

enum class ExperimentId : std::uint8_t { E1, E2, E3 };

ExperimentId experiment_from_string(const std::string& s);
std::string to_string(ExperimentId id);

struct ExperimentOutcome {
    Dataset data;
    DiscriminativeResult result;
    /// For E3: the converged E1 run whose centres seeded this one.
    std::optional<DiscriminativeResult> warm_source;
};

/**
 * Run one synthetic experiment to convergence. `config.k_max` is raised to
 * the dataset size so the cluster budget never binds; `config.seed` picks the
 * data. The observer sees the iterations of the final run only.
 */
ExperimentOutcome run_experiment(ExperimentId id, Config config, const IterationObserver& observer = {});

/// Symmetric Hausdorff distance between two non-empty centre sets.
double hausdorff_distance(std::span<const Point> a, std::span<const Point> b);

/// Length of the diagonal of the axis-aligned bounding box of the data.
double bounding_box_diagonal(const Dataset& data);

} // namespace dkm

#endif
