#include "dkm/plot.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

#include "dkm/io.hpp"
#include "dkm/pca.hpp"

namespace dkm {

namespace {

struct Xy {
    double x;
    double y;
};

std::vector<Xy> to_plane(std::span<const Point> points, const PrincipalComponents* basis) {
    std::vector<Xy> out;
    out.reserve(points.size());
    for (const auto& p : points) {
        if (basis) {
            const auto q = project(std::span<const Point>(&p, 1), *basis, 2).front();
            out.push_back({q[0], q[1]});
        } else if (p.dim() == 1) {
            out.push_back({p[0], 0.0});
        } else {
            out.push_back({p[0], p[1]});
        }
    }
    return out;
}

class Canvas {
public:
    Canvas(const PlotOptions& options, std::span<const Xy> a, std::span<const Xy> b) : opt_(options) {
        double xmin = std::numeric_limits<double>::infinity();
        double ymin = xmin;
        double xmax = -xmin;
        double ymax = -xmin;
        for (auto span : {a, b}) {
            for (const auto& p : span) {
                xmin = std::min(xmin, p.x);
                xmax = std::max(xmax, p.x);
                ymin = std::min(ymin, p.y);
                ymax = std::max(ymax, p.y);
            }
        }
        if (!(xmax >= xmin)) {
            xmin = ymin = -1.0;
            xmax = ymax = 1.0;
        }
        if (xmax - xmin <= 0.0) {
            xmin -= 1.0;
            xmax += 1.0;
        }
        if (ymax - ymin <= 0.0) {
            ymin -= 1.0;
            ymax += 1.0;
        }
        const double px = 0.05 * (xmax - xmin);
        const double py = 0.05 * (ymax - ymin);
        xmin_ = xmin - px;
        xspan_ = (xmax + px) - xmin_;
        ymin_ = ymin - py;
        yspan_ = (ymax + py) - ymin_;
    }

    double sx(double x) const { return margin + (x - xmin_) / xspan_ * (opt_.width - 2 * margin); }
    double sy(double y) const { return opt_.height - margin - (y - ymin_) / yspan_ * (opt_.height - 2 * margin); }

    std::string header() const {
        char buf[512];
        std::snprintf(buf, sizeof(buf),
                      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"%d\" height=\"%d\" "
                      "viewBox=\"0 0 %d %d\">\n"
                      "<rect x=\"0\" y=\"0\" width=\"%d\" height=\"%d\" fill=\"white\" stroke=\"black\"/>\n",
                      opt_.width, opt_.height, opt_.width, opt_.height, opt_.width, opt_.height);
        std::string out = buf;
        if (!opt_.title.empty()) {
            std::snprintf(buf, sizeof(buf), "<text x=\"%d\" y=\"16\" font-size=\"13\" text-anchor=\"middle\">",
                          opt_.width / 2);
            out += buf + escape(opt_.title) + "</text>\n";
        }
        return out;
    }

    static std::string escape(const std::string& s) {
        std::string out;
        for (char c : s) {
            switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
            }
        }
        return out;
    }

    static constexpr double margin = 24.0;

private:
    PlotOptions opt_;
    double xmin_ = 0.0;
    double xspan_ = 1.0;
    double ymin_ = 0.0;
    double yspan_ = 1.0;
};

const char* identity_colour(Identity id) {
    static constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                              "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    return palette[id % std::size(palette)];
}

std::string circle(double cx, double cy, double r, const char* fill) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "<circle class=\"point\" cx=\"%.2f\" cy=\"%.2f\" r=\"%.1f\" fill=\"%s\"/>\n", cx,
                  cy, r, fill);
    return buf;
}

std::string cross(double cx, double cy) {
    constexpr double h = 6.0;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "<path class=\"centre\" d=\"M%.2f %.2fL%.2f %.2fM%.2f %.2fL%.2f %.2f\" stroke=\"black\" "
                  "stroke-width=\"2\"/>\n",
                  cx - h, cy - h, cx + h, cy + h, cx - h, cy + h, cx + h, cy - h);
    return buf;
}

} // namespace

std::string render_scatter(const Dataset& data, std::span<const Point> centres, const PlotOptions& options) {
    for (const auto& c : centres) {
        if (c.dim() != data.dim()) {
            throw Error("centre dimension does not match the data");
        }
    }
    std::optional<PrincipalComponents> basis;
    if (data.dim() > 2) {
        basis = principal_components(data);
    }
    const auto pts = to_plane(data.points(), basis ? &*basis : nullptr);
    const auto cen = to_plane(centres, basis ? &*basis : nullptr);
    Canvas canvas(options, pts, cen);

    std::string out = canvas.header();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const char* fill = "#888888";
        if (data.has_labels()) {
            fill = data.label(i) == BinaryLabel::Positive ? "#1f4fd6" : "#d62728";
        } else if (data.has_identities()) {
            fill = identity_colour(data.identity(i));
        }
        out += circle(canvas.sx(pts[i].x), canvas.sy(pts[i].y), 3.0, fill);
    }
    for (const auto& c : cen) {
        out += cross(canvas.sx(c.x), canvas.sy(c.y));
    }
    out += "</svg>\n";
    return out;
}

void emit_plot(const Dataset& data, std::span<const Point> centres, const std::filesystem::path& path,
               const PlotOptions& options) {
    write_text(path, render_scatter(data, centres, options));
}

double ssd_slope(const std::vector<SsdRecord>& records) {
    double sxy = 0.0;
    double sxx = 0.0;
    for (const auto& r : records) {
        sxy += r.ssd_classic * r.ssd_discriminative;
        sxx += r.ssd_classic * r.ssd_classic;
    }
    return sxx > 0.0 ? sxy / sxx : 0.0;
}

std::string render_ssd_scatter(const std::vector<SsdRecord>& records, const PlotOptions& options) {
    std::vector<Xy> pts;
    pts.reserve(records.size());
    for (const auto& r : records) {
        pts.push_back({r.ssd_classic, r.ssd_discriminative});
    }
    const Xy origin{0.0, 0.0};
    Canvas canvas(options, pts, std::span<const Xy>(&origin, 1));

    std::string out = canvas.header();
    const double slope = ssd_slope(records);
    double xmax = 0.0;
    for (const auto& p : pts) {
        xmax = std::max(xmax, p.x);
    }
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "<line class=\"fit\" x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"red\"/>\n",
                  canvas.sx(0.0), canvas.sy(0.0), canvas.sx(xmax), canvas.sy(slope * xmax));
    out += buf;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const char* fill = records[i].benefit > 0 ? "#0000ff" : records[i].benefit < 0 ? "#c8c8c8" : "#8c8cdc";
        out += circle(canvas.sx(pts[i].x), canvas.sy(pts[i].y), 3.5, fill);
    }
    std::snprintf(buf, sizeof(buf), "<text x=\"30\" y=\"36\" font-size=\"12\">slope a = %.4f</text>\n", slope);
    out += buf;
    out += "</svg>\n";
    return out;
}

void emit_ssd_plot(const std::vector<SsdRecord>& records, const std::filesystem::path& path,
                   const PlotOptions& options) {
    write_text(path, render_ssd_scatter(records, options));
}

} // namespace dkm
