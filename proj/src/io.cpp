#include "dkm/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace dkm {

using json = nlohmann::ordered_json;

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.push_back(trim(std::string_view(line).substr(start, comma - start)));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return cells;
}

std::string where(std::size_t line, const std::string& column) {
    return "line " + std::to_string(line) + ", column '" + column + "'";
}

} // namespace

std::string format_real(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

Dataset parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;

    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) {
            header = split_row(line);
            break;
        }
    }
    if (header.empty()) {
        throw Error("CSV input has no header row");
    }

    std::ptrdiff_t label_col = -1;
    std::ptrdiff_t identity_col = -1;
    std::vector<std::size_t> feature_cols;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == "label") {
            if (label_col >= 0) {
                throw Error("duplicate 'label' column");
            }
            label_col = static_cast<std::ptrdiff_t>(c);
        } else if (header[c] == "identity") {
            if (identity_col >= 0) {
                throw Error("duplicate 'identity' column");
            }
            identity_col = static_cast<std::ptrdiff_t>(c);
        } else {
            feature_cols.push_back(c);
        }
    }
    if (feature_cols.empty()) {
        throw Error("CSV header names no feature columns");
    }

    std::vector<Point> points;
    std::vector<BinaryLabel> labels;
    std::vector<Identity> ids;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        const auto cells = split_row(line);
        if (cells.size() != header.size()) {
            throw Error("line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                        " cells, expected " + std::to_string(header.size()));
        }
        std::vector<double> coords;
        coords.reserve(feature_cols.size());
        for (auto c : feature_cols) {
            const auto& cell = cells[c];
            double v = 0.0;
            const char* first = cell.data();
            const char* last = cell.data() + cell.size();
            auto res = std::from_chars(first, last, v);
            if (cell.empty() || res.ec != std::errc() || res.ptr != last || !std::isfinite(v)) {
                throw Error("invalid number '" + cell + "' at " + where(line_no, header[c]));
            }
            coords.push_back(v);
        }
        points.emplace_back(std::move(coords));
        if (label_col >= 0) {
            const auto& cell = cells[static_cast<std::size_t>(label_col)];
            if (cell == "pos") {
                labels.push_back(BinaryLabel::Positive);
            } else if (cell == "neg") {
                labels.push_back(BinaryLabel::Negative);
            } else {
                throw Error("label must be 'pos' or 'neg', got '" + cell + "' at " + where(line_no, "label"));
            }
        }
        if (identity_col >= 0) {
            const auto& cell = cells[static_cast<std::size_t>(identity_col)];
            Identity id = 0;
            const char* first = cell.data();
            const char* last = cell.data() + cell.size();
            auto res = std::from_chars(first, last, id);
            if (cell.empty() || res.ec != std::errc() || res.ptr != last) {
                throw Error("identity must be a non-negative integer, got '" + cell + "' at " +
                            where(line_no, "identity"));
            }
            ids.push_back(id);
        }
    }
    if (points.empty()) {
        throw Error("CSV input has no data rows");
    }

    std::optional<std::vector<BinaryLabel>> opt_labels;
    std::optional<std::vector<Identity>> opt_ids;
    if (label_col >= 0) {
        opt_labels = std::move(labels);
    }
    if (identity_col >= 0) {
        opt_ids = std::move(ids);
    }
    return Dataset(std::move(points), std::move(opt_labels), std::move(opt_ids));
}

Dataset load_csv(const std::filesystem::path& path) {
    return parse_csv(read_text(path));
}

std::string format_csv(const Dataset& data) {
    std::string out;
    for (std::size_t j = 0; j < data.dim(); ++j) {
        out += (j == 0 ? "x" : ",x") + std::to_string(j);
    }
    if (data.has_labels()) {
        out += ",label";
    }
    if (data.has_identities()) {
        out += ",identity";
    }
    out += '\n';
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto& p = data.point(i);
        for (std::size_t j = 0; j < p.dim(); ++j) {
            if (j > 0) {
                out += ',';
            }
            out += format_real(p[j]);
        }
        if (data.has_labels()) {
            out += data.label(i) == BinaryLabel::Positive ? ",pos" : ",neg";
        }
        if (data.has_identities()) {
            out += ',' + std::to_string(data.identity(i));
        }
        out += '\n';
    }
    return out;
}

void save_csv(const Dataset& data, const std::filesystem::path& path) {
    write_text(path, format_csv(data));
}

namespace {

json point_json(const Point& p) {
    return json(p.values());
}

Point point_from(const json& j) {
    return Point(j.get<std::vector<double>>());
}

json config_json(const Config& c) {
    return json{{"k_max", c.k_max},
                {"tolerance", c.tolerance},
                {"max_iterations", c.max_iterations},
                {"weight_mode", to_string(c.weight_mode)},
                {"seed", c.seed},
                {"init_mode", to_string(c.init_mode)}};
}

Config config_from(const json& j) {
    Config c;
    c.k_max = j.at("k_max").get<std::size_t>();
    c.tolerance = j.at("tolerance").get<double>();
    c.max_iterations = j.at("max_iterations").get<std::size_t>();
    c.weight_mode = weight_mode_from_string(j.at("weight_mode").get<std::string>());
    c.seed = j.at("seed").get<std::uint64_t>();
    c.init_mode = init_mode_from_string(j.at("init_mode").get<std::string>());
    c.validate();
    return c;
}

json split_json(const SplitEvent& e) {
    return json{{"iteration", e.iteration},
                {"parent_cluster", e.parent_cluster},
                {"negative_child_cluster", e.negative_child_cluster},
                {"positive_child_centre", point_json(e.positive_child_centre)},
                {"negative_child_centre", point_json(e.negative_child_centre)},
                {"positive_mean", point_json(e.positive_mean)},
                {"negative_mean", point_json(e.negative_mean)},
                {"w_used_positive", e.w_used_positive},
                {"w_used_negative", e.w_used_negative},
                {"positive_count", e.positive_count},
                {"negative_count", e.negative_count},
                {"degenerate", e.degenerate}};
}

SplitEvent split_from(const json& j) {
    SplitEvent e;
    e.iteration = j.at("iteration").get<std::size_t>();
    e.parent_cluster = j.at("parent_cluster").get<std::size_t>();
    e.negative_child_cluster = j.at("negative_child_cluster").get<std::size_t>();
    e.positive_child_centre = point_from(j.at("positive_child_centre"));
    e.negative_child_centre = point_from(j.at("negative_child_centre"));
    e.positive_mean = point_from(j.at("positive_mean"));
    e.negative_mean = point_from(j.at("negative_mean"));
    e.w_used_positive = j.at("w_used_positive").get<double>();
    e.w_used_negative = j.at("w_used_negative").get<double>();
    e.positive_count = j.at("positive_count").get<std::size_t>();
    e.negative_count = j.at("negative_count").get<std::size_t>();
    e.degenerate = j.at("degenerate").get<bool>();
    return e;
}

template <class Fn>
auto parse_json(const std::string& text, const char* what, Fn&& fn) {
    try {
        return fn(json::parse(text));
    } catch (const json::exception& e) {
        throw Error(std::string("malformed ") + what + ": " + e.what());
    }
}

} // namespace

ModelFile make_model_file(Algorithm algorithm, const Config& config, const Clustering& clustering,
                          std::vector<SplitEvent> splits) {
    return ModelFile{algorithm,           config,
                     clustering.centres(), std::move(splits),
                     clustering.objective, clustering.iterations_run,
                     clustering.terminated_by};
}

std::string to_json(const ModelFile& model) {
    json centres = json::array();
    for (const auto& c : model.centres) {
        centres.push_back(point_json(c));
    }
    json j{{"algorithm", to_string(model.algorithm)},
           {"config", config_json(model.config)},
           {"centres", std::move(centres)}};
    if (model.algorithm == Algorithm::Discriminative) {
        json splits = json::array();
        for (const auto& e : model.splits) {
            splits.push_back(split_json(e));
        }
        j["split_events"] = std::move(splits);
    }
    j["objective"] = model.objective;
    j["iterations"] = model.iterations;
    j["termination"] = to_string(model.termination);
    return j.dump(2) + "\n";
}

ModelFile model_from_json(const std::string& text) {
    return parse_json(text, "model file", [](const json& j) {
        ModelFile m;
        m.algorithm = algorithm_from_string(j.at("algorithm").get<std::string>());
        m.config = config_from(j.at("config"));
        for (const auto& c : j.at("centres")) {
            m.centres.push_back(point_from(c));
        }
        if (m.centres.empty()) {
            throw Error("model file has no centres");
        }
        if (j.contains("split_events")) {
            for (const auto& e : j.at("split_events")) {
                m.splits.push_back(split_from(e));
            }
        }
        m.objective = j.at("objective").get<double>();
        m.iterations = j.at("iterations").get<std::size_t>();
        m.termination = termination_from_string(j.at("termination").get<std::string>());
        return m;
    });
}

void save_model(const ModelFile& model, const std::filesystem::path& path) {
    write_text(path, to_json(model));
}

ModelFile load_model(const std::filesystem::path& path) {
    return model_from_json(read_text(path));
}

std::string to_json(const SynthSpec& spec) {
    json blobs = json::array();
    for (const auto& b : spec.blobs) {
        blobs.push_back(json{{"mean", point_json(b.mean)},
                             {"stddev", b.stddev},
                             {"count", b.count},
                             {"label", b.label == BinaryLabel::Positive ? "pos" : "neg"},
                             {"identity", b.identity}});
    }
    json j{{"seed", spec.seed}, {"blobs", std::move(blobs)}};
    return j.dump(2) + "\n";
}

SynthSpec synth_spec_from_json(const std::string& text) {
    return parse_json(text, "synthetic spec", [](const json& j) {
        SynthSpec spec;
        spec.seed = j.value("seed", std::uint64_t{1});
        for (const auto& b : j.at("blobs")) {
            Blob blob;
            blob.mean = point_from(b.at("mean"));
            blob.stddev = b.at("stddev").get<double>();
            blob.count = b.at("count").get<std::size_t>();
            const auto label = b.at("label").get<std::string>();
            if (label != "pos" && label != "neg") {
                throw Error("blob label must be 'pos' or 'neg'");
            }
            blob.label = label == "pos" ? BinaryLabel::Positive : BinaryLabel::Negative;
            blob.identity = b.value("identity", Identity{0});
            spec.blobs.push_back(std::move(blob));
        }
        spec.validate();
        return spec;
    });
}

void save_synth_spec(const SynthSpec& spec, const std::filesystem::path& path) {
    write_text(path, to_json(spec));
}

SynthSpec load_synth_spec(const std::filesystem::path& path) {
    return synth_spec_from_json(read_text(path));
}

std::string confusion_csv(const ConfusionMatrix& cm) {
    std::string out = "true\\predicted";
    for (auto id : cm.identities()) {
        out += ',' + std::to_string(id);
    }
    out += '\n';
    for (std::size_t r = 0; r < cm.size(); ++r) {
        out += std::to_string(cm.identities()[r]);
        for (std::size_t c = 0; c < cm.size(); ++c) {
            out += ',' + std::to_string(cm.count(r, c));
        }
        out += '\n';
    }
    return out;
}

std::string marginalized_csv(const ConfusionMatrix& cm) {
    std::string out = "identity,queries,misclassified_fraction\n";
    const auto m = cm.marginalized();
    for (std::size_t r = 0; r < cm.size(); ++r) {
        out += std::to_string(cm.identities()[r]) + ',' + std::to_string(cm.row_sum(r)) + ',' + format_real(m[r]) +
               '\n';
    }
    return out;
}

std::string ssd_csv(const std::vector<SsdRecord>& records) {
    std::string out = "query_id,ssd_kmeans,ssd_dkmeans,benefit\n";
    for (const auto& r : records) {
        out += std::to_string(r.query_id) + ',' + format_real(r.ssd_classic) + ',' +
               format_real(r.ssd_discriminative) + ',' + std::to_string(r.benefit) + '\n';
    }
    return out;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot open '" + path.string() + "' for writing");
    }
    out << text;
    if (!out) {
        throw Error("failed writing '" + path.string() + "'");
    }
}

} // namespace dkm
