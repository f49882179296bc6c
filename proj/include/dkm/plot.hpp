#ifndef DKM_PLOT_HPP
#define DKM_PLOT_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "core.hpp"
#include "eval.hpp"

/**
 * @file plot.hpp
 *
 * @brief Deterministic SVG scatter plots.
 *
 * Every data point is one `<circle class="point">` and every centre one
 * `<path class="centre">` cross; no other element uses those classes.
 * Data with d > 2 is drawn in its first two principal directions, d = 1 on a
 * horizontal line.
 */

namespace dkm {

struct PlotOptions {
    std::string title;
    int width = 480;
    int height = 480;
};

/// Points coloured by binary label, else by identity, else grey.
std::string render_scatter(const Dataset& data, std::span<const Point> centres, const PlotOptions& options = {});
void emit_plot(const Dataset& data, std::span<const Point> centres, const std::filesystem::path& path,
               const PlotOptions& options = {});

/// One circle per record at (classic SSD, discriminative SSD), bluer with
/// larger benefit, plus the least-squares line through the origin.
std::string render_ssd_scatter(const std::vector<SsdRecord>& records, const PlotOptions& options = {});
void emit_ssd_plot(const std::vector<SsdRecord>& records, const std::filesystem::path& path,
                   const PlotOptions& options = {});

/// Slope of the least-squares line through the origin for y = discriminative, x = classic SSD.
double ssd_slope(const std::vector<SsdRecord>& records);

} // namespace dkm

#endif
