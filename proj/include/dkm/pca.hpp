#ifndef DKM_PCA_HPP
#define DKM_PCA_HPP

#include <vector>

#include "core.hpp"

namespace dkm {

/**
 * Eigendecomposition of the empirical covariance (normalised by n).
 * Eigenvalues are in descending order; `components[k]` is the unit
 * eigenvector for `eigenvalues[k]`, signed so its largest-magnitude
 * coordinate is positive.
 */
struct PrincipalComponents {
    std::vector<double> mean;
    std::vector<double> eigenvalues;
    std::vector<std::vector<double>> components;
};

/// Full spectrum, no rank check.
PrincipalComponents principal_components(const Dataset& data);

struct PcaProjection {
    /// Coordinates in the top-`dims` basis; labels and identities carried over.
    Dataset projected;
    PrincipalComponents basis;
};

/**
 * Project centred data onto its top `dims` principal directions.
 * Requires n > dims, dims <= d, and `dims` eigenvalues above
 * `1e-12 * largest eigenvalue`.
 */
PcaProjection pca_project(const Dataset& data, std::size_t dims);

/// Project points with an existing basis (first `dims` components).
std::vector<Point> project(std::span<const Point> points, const PrincipalComponents& basis, std::size_t dims);

} // namespace dkm

#endif
