#ifndef DKM_IO_HPP
#define DKM_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "core.hpp"
#include "discriminative.hpp"
#include "eval.hpp"
#include "synth.hpp"

/**
 * @file io.hpp
 *
 * @brief CSV datasets, JSON model and spec files, report CSVs.
 *
 * Dataset CSV: a header row naming the feature columns, plus optional
 * `label` (pos|neg) and `identity` (non-negative integer) columns in any
 * position. One row per point.
 */

namespace dkm {

Dataset load_csv(const std::filesystem::path& path);
Dataset parse_csv(const std::string& text);

/// Features are written as x0..x{d-1}, in shortest round-trip form.
void save_csv(const Dataset& data, const std::filesystem::path& path);
std::string format_csv(const Dataset& data);

/// Shortest decimal string that parses back to exactly `v`.
std::string format_real(double v);

struct ModelFile {
    Algorithm algorithm = Algorithm::Classic;
    Config config;
    std::vector<Point> centres;
    std::vector<SplitEvent> splits;
    double objective = 0.0;
    std::size_t iterations = 0;
    Termination termination = Termination::Converged;

    bool operator==(const ModelFile&) const = default;
};

ModelFile make_model_file(Algorithm algorithm, const Config& config, const Clustering& clustering,
                          std::vector<SplitEvent> splits = {});

std::string to_json(const ModelFile& model);
ModelFile model_from_json(const std::string& text);
void save_model(const ModelFile& model, const std::filesystem::path& path);
ModelFile load_model(const std::filesystem::path& path);

std::string to_json(const SynthSpec& spec);
SynthSpec synth_spec_from_json(const std::string& text);
void save_synth_spec(const SynthSpec& spec, const std::filesystem::path& path);
SynthSpec load_synth_spec(const std::filesystem::path& path);

std::string confusion_csv(const ConfusionMatrix& cm);
/// identity,queries,misclassified_fraction
std::string marginalized_csv(const ConfusionMatrix& cm);
/// query_id,ssd_kmeans,ssd_dkmeans,benefit
std::string ssd_csv(const std::vector<SsdRecord>& records);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

} // namespace dkm

#endif
