#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "dkm/core.hpp"
#include "dkm/discriminative.hpp"
#include "dkm/eval.hpp"
#include "dkm/experiment.hpp"
#include "dkm/io.hpp"
#include "dkm/kmeans.hpp"
#include "dkm/pca.hpp"
#include "dkm/synth.hpp"

namespace py = pybind11;
using namespace dkm;

namespace {

using Matrix = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<Point> points_from(const Matrix& arr) {
    if (arr.ndim() != 2) {
        throw Error("expected a 2-D array of shape (n, d)");
    }
    auto r = arr.unchecked<2>();
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(r.shape(0)));
    for (py::ssize_t i = 0; i < r.shape(0); ++i) {
        std::vector<double> row(static_cast<std::size_t>(r.shape(1)));
        for (py::ssize_t j = 0; j < r.shape(1); ++j) {
            row[static_cast<std::size_t>(j)] = r(i, j);
        }
        out.emplace_back(std::move(row));
    }
    return out;
}

Matrix matrix_from(const std::vector<Point>& pts) {
    const auto d = pts.empty() ? 0 : pts.front().dim();
    Matrix out({static_cast<py::ssize_t>(pts.size()), static_cast<py::ssize_t>(d)});
    auto w = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            w(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j)) = pts[i][j];
        }
    }
    return out;
}

Point point_from(const std::vector<double>& v) {
    return Point(v);
}

BinaryLabel label_from(const py::handle& h) {
    if (py::isinstance<py::str>(h)) {
        const auto s = h.cast<std::string>();
        if (s == "pos") {
            return BinaryLabel::Positive;
        }
        if (s == "neg") {
            return BinaryLabel::Negative;
        }
        throw Error("label strings must be 'pos' or 'neg'");
    }
    if (py::isinstance<BinaryLabel>(h)) {
        return h.cast<BinaryLabel>();
    }
    return h.cast<bool>() ? BinaryLabel::Positive : BinaryLabel::Negative;
}

Dataset make_dataset(const Matrix& points, const py::object& labels, const py::object& identities) {
    std::optional<std::vector<BinaryLabel>> labs;
    std::optional<std::vector<Identity>> ids;
    if (!labels.is_none()) {
        labs.emplace();
        for (auto h : labels) {
            labs->push_back(label_from(h));
        }
    }
    if (!identities.is_none()) {
        ids = identities.cast<std::vector<Identity>>();
    }
    return Dataset(points_from(points), std::move(labs), std::move(ids));
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Classic and discriminative k-means clustering";

    py::register_exception<Error>(m, "Error", PyExc_ValueError);

    py::enum_<BinaryLabel>(m, "BinaryLabel")
        .value("Positive", BinaryLabel::Positive)
        .value("Negative", BinaryLabel::Negative);

    py::enum_<Termination>(m, "Termination")
        .value("Converged", Termination::Converged)
        .value("MaxClusters", Termination::MaxClusters)
        .value("MaxIterations", Termination::MaxIterations);

    py::enum_<Algorithm>(m, "Algorithm")
        .value("Classic", Algorithm::Classic)
        .value("Discriminative", Algorithm::Discriminative);

    py::enum_<InitMode>(m, "InitMode")
        .value("RandomPoints", InitMode::RandomPoints)
        .value("PlusPlus", InitMode::PlusPlus);

    py::class_<Dataset>(m, "Dataset")
        .def(py::init(&make_dataset), py::arg("points"), py::arg("labels") = py::none(),
             py::arg("identities") = py::none())
        .def("__len__", &Dataset::size)
        .def_property_readonly("dim", &Dataset::dim)
        .def_property_readonly("points", [](const Dataset& d) { return matrix_from(d.points()); })
        .def_property_readonly("labels",
                               [](const Dataset& d) -> py::object {
                                   if (!d.has_labels()) {
                                       return py::none();
                                   }
                                   return py::cast(d.labels());
                               })
        .def_property_readonly("identities", [](const Dataset& d) -> py::object {
            if (!d.has_identities()) {
                return py::none();
            }
            return py::cast(d.identities());
        });

    py::class_<Config>(m, "Config")
        .def(py::init<>())
        .def(py::init([](std::size_t k, double tol, std::size_t max_iter, const std::string& weight_mode,
                         std::uint64_t seed, const std::string& init) {
                 Config c;
                 c.k_max = k;
                 c.tolerance = tol;
                 c.max_iterations = max_iter;
                 c.weight_mode = weight_mode_from_string(weight_mode);
                 c.seed = seed;
                 c.init_mode = init_mode_from_string(init);
                 c.validate();
                 return c;
             }),
             py::arg("k") = 8, py::arg("tol") = 1e-9, py::arg("max_iter") = 1000, py::arg("weight_mode") = "datacount",
             py::arg("seed") = 42, py::arg("init") = "random")
        .def_readwrite("k_max", &Config::k_max)
        .def_readwrite("tolerance", &Config::tolerance)
        .def_readwrite("max_iterations", &Config::max_iterations)
        .def_readwrite("seed", &Config::seed)
        .def_property(
            "weight_mode", [](const Config& c) { return to_string(c.weight_mode); },
            [](Config& c, const std::string& s) { c.weight_mode = weight_mode_from_string(s); });

    py::class_<Clustering>(m, "Clustering")
        .def_property_readonly("centres", [](const Clustering& c) { return matrix_from(c.centres()); })
        .def_property_readonly("members",
                               [](const Clustering& c) {
                                   std::vector<std::vector<std::size_t>> out;
                                   for (const auto& cl : c.clusters) {
                                       out.push_back(cl.members);
                                   }
                                   return out;
                               })
        .def("assignment", &Clustering::assignment, py::arg("n"))
        .def_readonly("iterations_run", &Clustering::iterations_run)
        .def_readonly("objective", &Clustering::objective)
        .def_readonly("terminated_by", &Clustering::terminated_by)
        .def_readonly("objective_trace", &Clustering::objective_trace);

    py::class_<SplitEvent>(m, "SplitEvent")
        .def_readonly("iteration", &SplitEvent::iteration)
        .def_readonly("parent_cluster", &SplitEvent::parent_cluster)
        .def_readonly("negative_child_cluster", &SplitEvent::negative_child_cluster)
        .def_property_readonly("positive_child_centre",
                               [](const SplitEvent& e) { return e.positive_child_centre.values(); })
        .def_property_readonly("negative_child_centre",
                               [](const SplitEvent& e) { return e.negative_child_centre.values(); })
        .def_property_readonly("positive_mean", [](const SplitEvent& e) { return e.positive_mean.values(); })
        .def_property_readonly("negative_mean", [](const SplitEvent& e) { return e.negative_mean.values(); })
        .def_readonly("w_used_positive", &SplitEvent::w_used_positive)
        .def_readonly("w_used_negative", &SplitEvent::w_used_negative)
        .def_readonly("positive_count", &SplitEvent::positive_count)
        .def_readonly("negative_count", &SplitEvent::negative_count)
        .def_readonly("degenerate", &SplitEvent::degenerate);

    py::class_<IdentityModel>(m, "IdentityModel")
        .def_readonly("identity", &IdentityModel::identity)
        .def_property_readonly("centres", [](const IdentityModel& mdl) { return matrix_from(mdl.centres); })
        .def_readonly("algorithm", &IdentityModel::algorithm)
        .def_readonly("fallback", &IdentityModel::fallback);

    py::class_<ConfusionMatrix>(m, "ConfusionMatrix")
        .def_property_readonly("identities", &ConfusionMatrix::identities)
        .def_property_readonly("counts",
                               [](const ConfusionMatrix& cm) {
                                   std::vector<std::vector<std::size_t>> rows(cm.size());
                                   for (std::size_t r = 0; r < cm.size(); ++r) {
                                       for (std::size_t c = 0; c < cm.size(); ++c) {
                                           rows[r].push_back(cm.count(r, c));
                                       }
                                   }
                                   return rows;
                               })
        .def("marginalized", &ConfusionMatrix::marginalized)
        .def("error_rate", &ConfusionMatrix::error_rate);

    py::class_<SsdRecord>(m, "SsdRecord")
        .def_readonly("query_id", &SsdRecord::query_id)
        .def_readonly("ssd_classic", &SsdRecord::ssd_classic)
        .def_readonly("ssd_discriminative", &SsdRecord::ssd_discriminative)
        .def_readonly("benefit", &SsdRecord::benefit);

    py::class_<LooResult>(m, "LooResult")
        .def_readonly("confusion", &LooResult::confusion)
        .def_readonly("predictions", &LooResult::predictions)
        .def_readonly("ssd", &LooResult::ssd);

    py::class_<EvalReport>(m, "EvalReport")
        .def_readonly("classic", &EvalReport::classic)
        .def_readonly("discriminative", &EvalReport::discriminative)
        .def_readonly("ssd_records", &EvalReport::ssd_records);

    m.def("squared_distance", [](const std::vector<double>& a, const std::vector<double>& b) {
        return squared_distance(point_from(a), point_from(b));
    });
    m.def("centroid", [](const Matrix& pts) { return centroid(points_from(pts)).values(); });

    m.def("run_kmeans", &run_kmeans, py::arg("data"), py::arg("config"));
    m.def(
        "run_discriminative",
        [](const Dataset& data, const Config& config, const py::object& warm_start) {
            std::optional<std::vector<Point>> warm;
            if (!warm_start.is_none()) {
                warm = points_from(warm_start.cast<Matrix>());
            }
            auto result = run_discriminative(data, config, warm);
            return py::make_tuple(result.clustering, result.splits);
        },
        py::arg("data"), py::arg("config"), py::arg("warm_start") = py::none());
    m.def(
        "pooled_mean_update",
        [](const std::vector<double>& c_dot, std::size_t n_dot, const std::vector<double>& c_ddot,
           std::size_t n_ddot) {
            return pooled_mean_update(point_from(c_dot), n_dot, point_from(c_ddot), n_ddot).values();
        },
        py::arg("c_dot"), py::arg("n_dot"), py::arg("c_ddot"), py::arg("n_ddot"));

    m.def("train_identity_models", &train_identity_models, py::arg("data"), py::arg("algorithm"),
          py::arg("config"));
    m.def(
        "classify",
        [](const std::vector<double>& query, const std::vector<IdentityModel>& models) {
            return classify(point_from(query), models);
        },
        py::arg("query"), py::arg("models"));
    m.def("leave_one_out", &leave_one_out, py::arg("data"), py::arg("algorithm"), py::arg("config"),
          py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());
    m.def("compare_leave_one_out", &compare_leave_one_out, py::arg("data"), py::arg("config"),
          py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());
    m.def(
        "ssd_of", [](const Dataset& data, const std::vector<IdentityModel>& models) { return ssd_of(data, models); },
        py::arg("data"), py::arg("models"));

    m.def(
        "experiment_data",
        [](const std::string& which, std::uint64_t seed) {
            const auto suite = experiment_suite(seed);
            const auto id = experiment_from_string(which);
            return generate(id == ExperimentId::E1 ? suite.e1 : suite.e2);
        },
        py::arg("which"), py::arg("seed") = 1);
    m.def(
        "run_experiment",
        [](const std::string& which, const Config& config) {
            auto outcome = run_experiment(experiment_from_string(which), config);
            return py::make_tuple(outcome.data, outcome.result.clustering, outcome.result.splits);
        },
        py::arg("which"), py::arg("config"));
    m.def(
        "three_identity_data", [](std::uint64_t seed) { return generate(three_identity_spec(seed)); },
        py::arg("seed") = 1);

    m.def("load_csv", &load_csv, py::arg("path"));
    m.def("save_csv", &save_csv, py::arg("data"), py::arg("path"));
    m.def(
        "pca_project",
        [](const Dataset& data, std::size_t dims) {
            auto proj = pca_project(data, dims);
            return py::make_tuple(matrix_from(proj.projected.points()), proj.basis.eigenvalues);
        },
        py::arg("data"), py::arg("dims"));
}
