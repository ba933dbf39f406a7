#include "biocell/io/svg.hpp"

#include "biocell/io/csv.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace biocell::io {

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 80, kRight = 30, kTop = 40, kBottom = 60;
constexpr std::array<const char*, 6> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// Coordinates in the drawing only; fixed 2 decimals keeps files small.
std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void finish() {
        if (!std::isfinite(lo)) lo = 0, hi = 1;
        if (hi <= lo) hi = lo + 1;
    }
};

class Frame {
public:
    Frame(Range x, Range y) : x_(x), y_(y) {}

    double sx(double v) const { return kLeft + (v - x_.lo) / (x_.hi - x_.lo) * (kWidth - kLeft - kRight); }
    double sy(double v) const { return kHeight - kBottom - (v - y_.lo) / (y_.hi - y_.lo) * (kHeight - kTop - kBottom); }

    void axes(std::ostringstream& os, const ChartLabels& labels) const {
        os << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << kWidth - kRight
           << "\" y2=\"" << kHeight - kBottom << "\" stroke=\"black\"/>\n";
        os << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kHeight - kBottom
           << "\" stroke=\"black\"/>\n";
        for (int i = 0; i <= 4; ++i) {
            const double xv = x_.lo + (x_.hi - x_.lo) * i / 4.0;
            const double yv = y_.lo + (y_.hi - y_.lo) * i / 4.0;
            os << "<text x=\"" << px(sx(xv)) << "\" y=\"" << kHeight - kBottom + 18
               << "\" font-size=\"11\" text-anchor=\"middle\">" << tick(xv) << "</text>\n";
            os << "<text x=\"" << kLeft - 6 << "\" y=\"" << px(sy(yv) + 4)
               << "\" font-size=\"11\" text-anchor=\"end\">" << tick(yv) << "</text>\n";
        }
        os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 15 << "\" font-size=\"13\" text-anchor=\"middle\">"
           << escape(labels.x_axis) << "</text>\n";
        os << "<text x=\"18\" y=\"" << kHeight / 2 << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
           << kHeight / 2 << ")\">" << escape(labels.y_axis) << "</text>\n";
        os << "<text x=\"" << kWidth / 2 << "\" y=\"24\" font-size=\"15\" text-anchor=\"middle\">" << escape(labels.title)
           << "</text>\n";
    }

private:
    Range x_, y_;
};

void open_svg(std::ostringstream& os) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void legend(std::ostringstream& os, const std::vector<Series>& series) {
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double y = kTop + 10 + 16.0 * static_cast<double>(i);
        os << "<rect x=\"" << kWidth - kRight - 150 << "\" y=\"" << y - 8 << "\" width=\"10\" height=\"10\" fill=\""
           << kPalette[i % kPalette.size()] << "\"/>\n";
        os << "<text x=\"" << kWidth - kRight - 135 << "\" y=\"" << y + 1 << "\" font-size=\"11\">"
           << escape(series[i].label) << "</text>\n";
    }
}

Frame frame_for(const std::vector<Series>& series, bool from_zero) {
    Range xr, yr;
    if (from_zero) xr.add(0), yr.add(0);
    for (const auto& s : series) {
        for (double v : s.x) xr.add(v);
        for (double v : s.y) yr.add(v);
    }
    xr.finish();
    yr.finish();
    return Frame(xr, yr);
}

}  // namespace

std::string line_chart_svg(const std::vector<Series>& series, const ChartLabels& labels) {
    std::ostringstream os;
    open_svg(os);
    const Frame frame = frame_for(series, false);
    frame.axes(os, labels);
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        os << "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"" << kPalette[i % kPalette.size()] << "\" points=\"";
        // long trajectories: thin to ~2000 vertices, always keeping the last point
        const std::size_t n = std::min(s.x.size(), s.y.size());
        const std::size_t stride = std::max<std::size_t>(1, n / 2000);
        for (std::size_t k = 0; k < n; k += stride) os << px(frame.sx(s.x[k])) << ',' << px(frame.sy(s.y[k])) << ' ';
        if (n > 0 && (n - 1) % stride != 0) os << px(frame.sx(s.x[n - 1])) << ',' << px(frame.sy(s.y[n - 1]));
        os << "\"/>\n";
    }
    if (series.size() > 1) legend(os, series);
    os << "</svg>\n";
    return os.str();
}

std::string scatter_svg(const std::vector<Series>& series, const ChartLabels& labels) {
    std::ostringstream os;
    open_svg(os);
    const Frame frame = frame_for(series, true);
    frame.axes(os, labels);
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k) {
            os << "<circle cx=\"" << px(frame.sx(s.x[k])) << "\" cy=\"" << px(frame.sy(s.y[k]))
               << "\" r=\"5\" fill=\"" << kPalette[i % kPalette.size()] << "\"><title>" << escape(s.label) << ": "
               << format_double(s.x[k]) << ", " << format_double(s.y[k]) << "</title></circle>\n";
        }
    }
    legend(os, series);
    os << "</svg>\n";
    return os.str();
}

std::string heatmap_svg(const std::vector<double>& x_values, const std::vector<double>& y_values,
                        const std::vector<double>& cells, double max_value, const ChartLabels& labels) {
    std::ostringstream os;
    open_svg(os);
    const double plot_w = kWidth - kLeft - kRight - 60;
    const double plot_h = kHeight - kTop - kBottom;
    const double cw = plot_w / static_cast<double>(std::max<std::size_t>(1, x_values.size()));
    const double ch = plot_h / static_cast<double>(std::max<std::size_t>(1, y_values.size()));
    const double scale = max_value > 0 ? max_value : 1.0;

    auto colour = [](double f) {
        f = std::clamp(f, 0.0, 1.0);
        // dark blue -> yellow
        const int r = static_cast<int>(std::lround(30 + 225 * f));
        const int g = static_cast<int>(std::lround(30 + 200 * f));
        const int b = static_cast<int>(std::lround(120 * (1 - f)));
        char buf[16];
        std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
        return std::string(buf);
    };

    for (std::size_t r = 0; r < y_values.size(); ++r) {
        for (std::size_t c = 0; c < x_values.size(); ++c) {
            const double v = cells[r * x_values.size() + c];
            const double x = kLeft + cw * static_cast<double>(c);
            const double y = kHeight - kBottom - ch * static_cast<double>(r + 1);
            os << "<rect x=\"" << px(x) << "\" y=\"" << px(y) << "\" width=\"" << px(cw) << "\" height=\"" << px(ch)
               << "\" fill=\"" << colour(v / scale) << "\"><title>" << format_double(y_values[r]) << ','
               << format_double(x_values[c]) << ',' << format_double(v) << "</title></rect>\n";
        }
    }
    const std::size_t xstep = std::max<std::size_t>(1, x_values.size() / 5);
    for (std::size_t c = 0; c < x_values.size(); c += xstep) {
        os << "<text x=\"" << px(kLeft + cw * (static_cast<double>(c) + 0.5)) << "\" y=\"" << kHeight - kBottom + 16
           << "\" font-size=\"11\" text-anchor=\"middle\">" << tick(x_values[c]) << "</text>\n";
    }
    const std::size_t ystep = std::max<std::size_t>(1, y_values.size() / 8);
    for (std::size_t r = 0; r < y_values.size(); r += ystep) {
        os << "<text x=\"" << kLeft - 6 << "\" y=\"" << px(kHeight - kBottom - ch * (static_cast<double>(r) + 0.5) + 4)
           << "\" font-size=\"11\" text-anchor=\"end\">" << tick(y_values[r]) << "</text>\n";
    }
    for (int i = 0; i <= 10; ++i) {
        const double f = i / 10.0;
        os << "<rect x=\"" << kWidth - kRight - 40 << "\" y=\"" << px(kHeight - kBottom - plot_h * (i + 1) / 11.0)
           << "\" width=\"14\" height=\"" << px(plot_h / 11.0) << "\" fill=\"" << colour(f) << "\"/>\n";
    }
    os << "<text x=\"" << kWidth - kRight - 33 << "\" y=\"" << kTop - 6 << "\" font-size=\"11\" text-anchor=\"middle\">"
       << tick(scale) << "</text>\n";
    os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 15 << "\" font-size=\"13\" text-anchor=\"middle\">"
       << escape(labels.x_axis) << "</text>\n";
    os << "<text x=\"18\" y=\"" << kHeight / 2 << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
       << kHeight / 2 << ")\">" << escape(labels.y_axis) << "</text>\n";
    os << "<text x=\"" << kWidth / 2 << "\" y=\"24\" font-size=\"15\" text-anchor=\"middle\">" << escape(labels.title)
       << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace biocell::io
