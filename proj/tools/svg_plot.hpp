#pragma once

// Minimal static SVG plotter for the two shapes the CLI emits: grouped bars
// (capacity vs element count) and multi-series lines (capacity vs link gain).
// No dependencies; writes a fixed-size canvas with linear axes.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace svgplot {

struct Series {
    std::string label;
    std::vector<double> x; // ignored by the bar chart (categorical axis)
    std::vector<double> y;
};

namespace detail {

constexpr double kWidth = 760, kHeight = 480;
constexpr double kLeft = 70, kRight = 20, kTop = 42, kBottom = 56;
constexpr double kPlotW = kWidth - kLeft - kRight;
constexpr double kPlotH = kHeight - kTop - kBottom;

inline const char* color(size_t i) {
    static const char* kPalette[] = {"#0072b2", "#d55e00", "#009e73",
                                     "#cc79a7", "#e69f00", "#56b4e9"};
    return kPalette[i % 6];
}

inline std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// largest {1,2,2.5,5}*10^k not above `raw`
inline double nice_step(double raw) {
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {5.0, 2.5, 2.0, 1.0})
        if (m * mag <= raw) return m * mag;
    return mag;
}

struct Axis {
    double lo, hi, step;
};

inline Axis fit_axis(double lo, double hi, bool include_zero) {
    if (include_zero) lo = std::min(lo, 0.0);
    if (!(hi > lo)) hi = lo + 1.0;
    const double step = nice_step((hi - lo) / 5.0);
    return {std::floor(lo / step) * step, std::ceil(hi / step) * step, step};
}

class Canvas {
  public:
    explicit Canvas(const std::string& path) : out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("svgplot: cannot open " + path);
        out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
             << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth
             << " " << kHeight << "\">\n"
             << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
             << "<g font-family=\"sans-serif\" font-size=\"13\">\n";
    }
    ~Canvas() { out_ << "</g>\n</svg>\n"; }

    void frame(const std::string& title, const std::string& xlabel,
               const std::string& ylabel, const Axis& ya) {
        text(kLeft + kPlotW / 2, 24, title, "middle", 15);
        text(kLeft + kPlotW / 2, kHeight - 12, xlabel, "middle");
        out_ << "<text x=\"18\" y=\"" << kTop + kPlotH / 2
             << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
             << kTop + kPlotH / 2 << ")\">" << ylabel << "</text>\n";
        for (double v = ya.lo; v <= ya.hi + 1e-9 * ya.step; v += ya.step) {
            const double py = y_px(v, ya);
            line(kLeft, py, kLeft + kPlotW, py, "#dddddd", 1);
            text(kLeft - 8, py + 4, num(v), "end");
        }
        line(kLeft, kTop, kLeft, kTop + kPlotH, "#000000", 1);
        line(kLeft, kTop + kPlotH, kLeft + kPlotW, kTop + kPlotH, "#000000", 1);
    }

    void legend(const std::vector<std::string>& labels) {
        const double x0 = kLeft + kPlotW - 150, y0 = kTop + 8;
        for (size_t i = 0; i < labels.size(); ++i) {
            const double y = y0 + 18.0 * static_cast<double>(i);
            out_ << "<rect x=\"" << x0 << "\" y=\"" << y
                 << "\" width=\"12\" height=\"12\" fill=\"" << color(i)
                 << "\"/>\n";
            text(x0 + 18, y + 10, labels[i], "start");
        }
    }

    void line(double x1, double y1, double x2, double y2, const char* stroke,
              double w) {
        out_ << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2
             << "\" y2=\"" << y2 << "\" stroke=\"" << stroke
             << "\" stroke-width=\"" << w << "\"/>\n";
    }

    void rect(double x, double y, double w, double h, const char* fill) {
        out_ << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w
             << "\" height=\"" << h << "\" fill=\"" << fill << "\"/>\n";
    }

    void polyline(const std::vector<double>& xs, const std::vector<double>& ys,
                  const char* stroke) {
        out_ << "<polyline fill=\"none\" stroke=\"" << stroke
             << "\" stroke-width=\"2\" points=\"";
        for (size_t i = 0; i < xs.size(); ++i)
            out_ << xs[i] << "," << ys[i] << (i + 1 < xs.size() ? " " : "");
        out_ << "\"/>\n";
        for (size_t i = 0; i < xs.size(); ++i)
            out_ << "<circle cx=\"" << xs[i] << "\" cy=\"" << ys[i]
                 << "\" r=\"2.5\" fill=\"" << stroke << "\"/>\n";
    }

    void text(double x, double y, const std::string& s, const char* anchor,
              int size = 13) {
        out_ << "<text x=\"" << x << "\" y=\"" << y << "\" text-anchor=\""
             << anchor << "\" font-size=\"" << size << "\">" << s
             << "</text>\n";
    }

    static double y_px(double v, const Axis& a) {
        return kTop + kPlotH * (1.0 - (v - a.lo) / (a.hi - a.lo));
    }
    static double x_px(double v, const Axis& a) {
        return kLeft + kPlotW * (v - a.lo) / (a.hi - a.lo);
    }

  private:
    std::ofstream out_;
};

inline Axis y_axis_of(const std::vector<Series>& series, bool include_zero) {
    double lo = 1e300, hi = -1e300;
    for (const Series& s : series)
        for (double v : s.y) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    return fit_axis(lo, hi, include_zero);
}

} // namespace detail

// Grouped bar chart: one cluster per category, one bar per series.
inline void write_bar_svg(const std::string& path, const std::string& title,
                          const std::string& xlabel, const std::string& ylabel,
                          const std::vector<std::string>& categories,
                          const std::vector<Series>& series) {
    using namespace detail;
    const Axis ya = y_axis_of(series, /*include_zero=*/true);
    Canvas c(path);
    c.frame(title, xlabel, ylabel, ya);
    const size_t ncat = categories.size(), nser = series.size();
    const double slot = kPlotW / static_cast<double>(ncat);
    const double bar = 0.8 * slot / static_cast<double>(nser);
    for (size_t j = 0; j < nser; ++j) {
        if (series[j].y.size() != ncat)
            throw std::runtime_error("svgplot: bar series length mismatch");
        for (size_t i = 0; i < ncat; ++i) {
            const double x = kLeft + slot * (static_cast<double>(i) + 0.1) +
                             bar * static_cast<double>(j);
            const double y = Canvas::y_px(series[j].y[i], ya);
            const double y0 = Canvas::y_px(std::max(0.0, ya.lo), ya);
            c.rect(x, std::min(y, y0), bar, std::fabs(y0 - y), color(j));
        }
    }
    for (size_t i = 0; i < ncat; ++i)
        c.text(kLeft + slot * (static_cast<double>(i) + 0.5),
               kTop + kPlotH + 18, categories[i], "middle");
    std::vector<std::string> labels;
    for (const Series& s : series) labels.push_back(s.label);
    c.legend(labels);
}

// Multi-series line chart on a shared linear x axis.
inline void write_line_svg(const std::string& path, const std::string& title,
                           const std::string& xlabel, const std::string& ylabel,
                           const std::vector<Series>& series) {
    using namespace detail;
    double xlo = 1e300, xhi = -1e300;
    for (const Series& s : series)
        for (double v : s.x) {
            xlo = std::min(xlo, v);
            xhi = std::max(xhi, v);
        }
    const Axis xa = fit_axis(xlo, xhi, /*include_zero=*/false);
    const Axis ya = y_axis_of(series, /*include_zero=*/false);
    Canvas c(path);
    c.frame(title, xlabel, ylabel, ya);
    for (double v = xa.lo; v <= xa.hi + 1e-9 * xa.step; v += xa.step)
        c.text(Canvas::x_px(v, xa), kTop + kPlotH + 18, num(v), "middle");
    for (size_t j = 0; j < series.size(); ++j) {
        std::vector<double> xs, ys;
        for (size_t i = 0; i < series[j].x.size(); ++i) {
            xs.push_back(Canvas::x_px(series[j].x[i], xa));
            ys.push_back(Canvas::y_px(series[j].y[i], ya));
        }
        c.polyline(xs, ys, color(j));
    }
    std::vector<std::string> labels;
    for (const Series& s : series) labels.push_back(s.label);
    c.legend(labels);
}

} // namespace svgplot
