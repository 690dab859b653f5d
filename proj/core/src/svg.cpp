#include "topopass/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace topopass {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 440;
constexpr double kLeft = 70;
constexpr double kRight = 150;
constexpr double kTop = 40;
constexpr double kBottom = 50;

constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                              "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string escape(const std::string& s) {
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

// Viridis-like ramp through five anchor colours.
std::string ramp(double t) {
    static constexpr std::array<std::array<double, 3>, 5> stops{{{68, 1, 84},
                                                                 {59, 82, 139},
                                                                 {33, 145, 140},
                                                                 {94, 201, 98},
                                                                 {253, 231, 37}}};
    t = std::clamp(std::isfinite(t) ? t : 0.0, 0.0, 1.0) * 4.0;
    const auto i = std::min<std::size_t>(3, static_cast<std::size_t>(t));
    const double f = t - static_cast<double>(i);
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                  static_cast<int>(std::lround(stops[i][0] + f * (stops[i + 1][0] - stops[i][0]))),
                  static_cast<int>(std::lround(stops[i][1] + f * (stops[i + 1][1] - stops[i][1]))),
                  static_cast<int>(std::lround(stops[i][2] + f * (stops[i + 1][2] - stops[i][2]))));
    return buf;
}

struct Frame {
    double x0, x1, y0, y1;

    double px(double x) const { return kLeft + (x1 > x0 ? (x - x0) / (x1 - x0) : 0.5) * (kWidth - kLeft - kRight); }
    double py(double y) const {
        return kHeight - kBottom - (y1 > y0 ? (y - y0) / (y1 - y0) : 0.5) * (kHeight - kTop - kBottom);
    }
};

void header(std::ostringstream& out, const PlotSpec& spec) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(spec.title)
        << "</text>\n";
}

void axes(std::ostringstream& out, const Frame& f, const std::string& xlabel, const std::string& ylabel,
          bool y_ticks) {
    const double left = kLeft;
    const double right = kWidth - kRight;
    const double top = kTop;
    const double bottom = kHeight - kBottom;
    out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << right - left << "\" height=\""
        << bottom - top << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = f.x0 + (f.x1 - f.x0) * i / 4.0;
        out << "<text x=\"" << fmt(f.px(xv)) << "\" y=\"" << bottom + 16 << "\" text-anchor=\"middle\">" << fmt(xv)
            << "</text>\n";
        if (y_ticks) {
            const double yv = f.y0 + (f.y1 - f.y0) * i / 4.0;
            out << "<text x=\"" << left - 6 << "\" y=\"" << fmt(f.py(yv) + 4) << "\" text-anchor=\"end\">" << fmt(yv)
                << "</text>\n";
        }
    }
    out << "<text x=\"" << (left + right) / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">"
        << escape(xlabel) << "</text>\n";
    out << "<text x=\"16\" y=\"" << (top + bottom) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << (top + bottom) / 2 << ")\">" << escape(ylabel) << "</text>\n";
}

std::string lines(const ResultTable& table, const PlotSpec& spec) {
    const auto xs = table.column(spec.x);
    std::vector<std::vector<double>> ys;
    for (const auto& name : spec.series) ys.push_back(table.column(name));

    Frame f{0, 1, 0, 1};
    if (!xs.empty()) {
        f.x0 = *std::min_element(xs.begin(), xs.end());
        f.x1 = *std::max_element(xs.begin(), xs.end());
    }
    bool first = true;
    for (const auto& col : ys)
        for (double v : col) {
            f.y0 = first ? v : std::min(f.y0, v);
            f.y1 = first ? v : std::max(f.y1, v);
            first = false;
        }
    if (f.y1 == f.y0) {
        f.y0 -= 0.5;
        f.y1 += 0.5;
    }

    std::ostringstream out;
    header(out, spec);
    axes(out, f, spec.x, spec.series.size() == 1 ? spec.series.front() : "", true);
    for (std::size_t s = 0; s < ys.size(); ++s) {
        const char* colour = kPalette[s % kPalette.size()];
        out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < xs.size(); ++i) out << fmt(f.px(xs[i])) << ',' << fmt(f.py(ys[s][i])) << ' ';
        out << "\"/>\n";
        const double ly = kTop + 14 + 18 * static_cast<double>(s);
        out << "<line x1=\"" << kWidth - kRight + 10 << "\" y1=\"" << ly - 4 << "\" x2=\"" << kWidth - kRight + 30
            << "\" y2=\"" << ly - 4 << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << kWidth - kRight + 34 << "\" y=\"" << ly << "\">" << escape(spec.series[s])
            << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

void colour_bar(std::ostringstream& out, double lo, double hi, const std::string& label) {
    const double x = kWidth - kRight + 20;
    const double top = kTop;
    const double h = kHeight - kTop - kBottom;
    for (int i = 0; i < 50; ++i)
        out << "<rect x=\"" << x << "\" y=\"" << fmt(top + h * i / 50.0) << "\" width=\"16\" height=\""
            << fmt(h / 50.0 + 0.5) << "\" fill=\"" << ramp(1.0 - i / 49.0) << "\"/>\n";
    out << "<text x=\"" << x + 20 << "\" y=\"" << top + 10 << "\">" << fmt(hi) << "</text>\n"
        << "<text x=\"" << x + 20 << "\" y=\"" << top + h << "\">" << fmt(lo) << "</text>\n"
        << "<text x=\"" << x + 20 << "\" y=\"" << top + h / 2 << "\">" << escape(label) << "</text>\n";
}

// cells[row][col] rendered with row 0 at the bottom.
std::string heatmap(const PlotSpec& spec, const std::vector<double>& xs, const std::vector<std::string>& row_labels,
                    const std::vector<std::vector<double>>& cells, const std::string& ylabel,
                    const std::string& value_label) {
    double lo = 0;
    double hi = 0;
    bool first = true;
    for (const auto& row : cells)
        for (double v : row) {
            if (!std::isfinite(v)) continue;
            lo = first ? v : std::min(lo, v);
            hi = first ? v : std::max(hi, v);
            first = false;
        }

    std::ostringstream out;
    header(out, spec);
    Frame f{xs.empty() ? 0 : xs.front(), xs.empty() ? 1 : xs.back(), 0, 1};
    const double width = (kWidth - kLeft - kRight) / std::max<std::size_t>(1, xs.size());
    const double height = (kHeight - kTop - kBottom) / std::max<std::size_t>(1, cells.size());
    for (std::size_t r = 0; r < cells.size(); ++r) {
        const double y = kHeight - kBottom - height * static_cast<double>(r + 1);
        for (std::size_t c = 0; c < cells[r].size(); ++c) {
            const double t = hi > lo ? (cells[r][c] - lo) / (hi - lo) : 0.5;
            out << "<rect x=\"" << fmt(kLeft + width * static_cast<double>(c)) << "\" y=\"" << fmt(y)
                << "\" width=\"" << fmt(width + 0.3) << "\" height=\"" << fmt(height + 0.3) << "\" fill=\""
                << (std::isfinite(cells[r][c]) ? ramp(t) : std::string("#ffffff")) << "\"/>\n";
        }
        if (cells.size() <= 45)
            out << "<text x=\"" << kLeft - 6 << "\" y=\"" << fmt(y + height / 2 + 4) << "\" text-anchor=\"end\">"
                << escape(row_labels[r]) << "</text>\n";
    }
    axes(out, f, spec.x, ylabel, false);
    colour_bar(out, lo, hi, value_label);
    out << "</svg>\n";
    return out.str();
}

}  // namespace

std::string render_svg(const ResultTable& table, const PlotSpec& spec) {
    switch (spec.kind) {
        case PlotSpec::Kind::Lines: return lines(table, spec);
        case PlotSpec::Kind::HeatmapWide: {
            const auto xs = table.column(spec.x);
            std::vector<std::vector<double>> cells;
            for (const auto& name : spec.series) cells.push_back(table.column(name));
            return heatmap(spec, xs, spec.series, cells, "", "");
        }
        case PlotSpec::Kind::HeatmapLong: {
            const auto xcol = table.column(spec.x);
            const auto ycol = table.column(spec.y);
            const auto vcol = table.column(spec.value);
            std::map<double, std::size_t> xi;
            std::map<double, std::size_t> yi;
            for (double x : xcol) xi.emplace(x, 0);
            for (double y : ycol) yi.emplace(y, 0);
            std::vector<double> xs;
            std::vector<std::string> labels;
            for (auto& [x, i] : xi) {
                i = xs.size();
                xs.push_back(x);
            }
            for (auto& [y, i] : yi) {
                i = labels.size();
                labels.push_back(fmt(y));
            }
            std::vector<std::vector<double>> cells(labels.size(), std::vector<double>(xs.size(), NAN));
            for (std::size_t k = 0; k < vcol.size(); ++k) cells[yi[ycol[k]]][xi[xcol[k]]] = vcol[k];
            return heatmap(spec, xs, labels, cells, spec.y, spec.value);
        }
    }
    return {};
}

}  // namespace topopass
