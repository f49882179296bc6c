#include "dkm/pca.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace dkm {

PrincipalComponents principal_components(const Dataset& data) {
    const auto n = data.size();
    const auto d = data.dim();

    Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = data.point(i)[j];
        }
    }
    const Eigen::RowVectorXd mean = x.colwise().mean();
    x.rowwise() -= mean;
    const Eigen::MatrixXd cov = (x.transpose() * x) / static_cast<double>(n);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) {
        throw Error("covariance eigendecomposition failed");
    }

    PrincipalComponents pc;
    pc.mean.assign(mean.data(), mean.data() + d);
    // Eigen returns ascending eigenvalues.
    for (Eigen::Index k = static_cast<Eigen::Index>(d) - 1; k >= 0; --k) {
        pc.eigenvalues.push_back(solver.eigenvalues()(k));
        Eigen::VectorXd v = solver.eigenvectors().col(k);
        Eigen::Index arg = 0;
        for (Eigen::Index j = 1; j < v.size(); ++j) {
            if (std::abs(v(j)) > std::abs(v(arg))) {
                arg = j;
            }
        }
        if (v(arg) < 0.0) {
            v = -v;
        }
        pc.components.emplace_back(v.data(), v.data() + v.size());
    }
    return pc;
}

std::vector<Point> project(std::span<const Point> points, const PrincipalComponents& basis, std::size_t dims) {
    std::vector<Point> out;
    out.reserve(points.size());
    for (const auto& p : points) {
        std::vector<double> y(dims, 0.0);
        for (std::size_t k = 0; k < dims; ++k) {
            for (std::size_t j = 0; j < p.dim(); ++j) {
                y[k] += (p[j] - basis.mean[j]) * basis.components[k][j];
            }
        }
        out.emplace_back(std::move(y));
    }
    return out;
}

PcaProjection pca_project(const Dataset& data, std::size_t dims) {
    if (dims == 0 || dims > data.dim()) {
        throw Error("projection dimension must be between 1 and the data dimension");
    }
    if (data.size() <= dims) {
        throw Error("projection needs more points than target dimensions");
    }
    auto basis = principal_components(data);
    const double scale = std::max(basis.eigenvalues.front(), 0.0);
    if (!(basis.eigenvalues[dims - 1] > 1e-12 * scale)) {
        throw Error("data spans fewer than " + std::to_string(dims) + " principal directions");
    }
    auto pts = project(data.points(), basis, dims);
    std::optional<std::vector<BinaryLabel>> labels;
    std::optional<std::vector<Identity>> ids;
    if (data.has_labels()) {
        labels = data.labels();
    }
    if (data.has_identities()) {
        ids = data.identities();
    }
    return PcaProjection{Dataset(std::move(pts), std::move(labels), std::move(ids)), std::move(basis)};
}

} // namespace dkm
