#include "torusmix/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace torusmix {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

double nice_step(double span) {
    if (!(span > 0.0)) return 1.0;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    double step;
    if (frac <= 1.5)
        step = 1.0;
    else if (frac <= 3.5)
        step = 2.0;
    else if (frac <= 7.5)
        step = 5.0;
    else
        step = 10.0;
    return step * mag;
}

}  // namespace

void SvgPlot::add_series(std::string name, std::vector<double> x, std::vector<double> y,
                         std::string color, bool dashed) {
    if (x.size() != y.size()) throw std::invalid_argument("SvgPlot: x/y size mismatch");
    if (x.empty()) return;
    series_.push_back({std::move(name), std::move(x), std::move(y), std::move(color), dashed});
}

std::string SvgPlot::render(double width, double height) const {
    const double ml = 72.0, mr = 18.0, mt = 34.0, mb = 48.0;
    const double pw = width - ml - mr;
    const double ph = height - mt - mb;

    double xmin = std::numeric_limits<double>::max(), xmax = std::numeric_limits<double>::lowest();
    double ymin = xmin, ymax = xmax;
    for (const auto& s : series_) {
        for (double v : s.x) { xmin = std::min(xmin, v); xmax = std::max(xmax, v); }
        for (double v : s.y) { ymin = std::min(ymin, v); ymax = std::max(ymax, v); }
    }
    if (series_.empty()) { xmin = 0.0; xmax = 1.0; ymin = 0.0; ymax = 1.0; }
    if (xmax <= xmin) { xmax = xmin + 1.0; xmin -= 1.0; }
    if (ymax <= ymin) { ymax = ymin + 1.0; ymin -= 1.0; }
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    auto px = [&](double v) { return ml + (v - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double v) { return mt + ph - (v - ymin) / (ymax - ymin) * ph; };

    std::ostringstream svg;
    svg << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"white\" stroke=\"#444\"/>\n";
    svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << mt - 12
        << "\" text-anchor=\"middle\" font-size=\"14\">" << title_ << "</text>\n";

    const double xstep = nice_step(xmax - xmin);
    for (double tx = std::ceil(xmin / xstep) * xstep; tx <= xmax + 1e-9 * xstep; tx += xstep) {
        svg << "<line x1=\"" << px(tx) << "\" y1=\"" << mt << "\" x2=\"" << px(tx) << "\" y2=\""
            << mt + ph << "\" stroke=\"#ddd\"/>\n";
        svg << "<text x=\"" << px(tx) << "\" y=\"" << mt + ph + 16 << "\" text-anchor=\"middle\">"
            << fmt(tx) << "</text>\n";
    }
    const double ystep = nice_step(ymax - ymin);
    for (double ty = std::ceil(ymin / ystep) * ystep; ty <= ymax + 1e-9 * ystep; ty += ystep) {
        svg << "<line x1=\"" << ml << "\" y1=\"" << py(ty) << "\" x2=\"" << ml + pw << "\" y2=\""
            << py(ty) << "\" stroke=\"#ddd\"/>\n";
        svg << "<text x=\"" << ml - 6 << "\" y=\"" << py(ty) + 4 << "\" text-anchor=\"end\">"
            << fmt(ty) << "</text>\n";
    }
    svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << mt + ph + 36
        << "\" text-anchor=\"middle\">" << x_label_ << "</text>\n";
    svg << "<text x=\"16\" y=\"" << mt + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << mt + ph / 2 << ")\">" << y_label_ << "</text>\n";

    double legend_y = mt + 14.0;
    for (const auto& s : series_) {
        if (s.x.size() == 1) {
            svg << "<circle cx=\"" << px(s.x[0]) << "\" cy=\"" << py(s.y[0])
                << "\" r=\"3.5\" fill=\"" << s.color << "\"/>\n";
        } else {
            svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.6\"";
            if (s.dashed) svg << " stroke-dasharray=\"6 4\"";
            svg << " points=\"";
            for (std::size_t i = 0; i < s.x.size(); ++i)
                svg << px(s.x[i]) << "," << py(s.y[i]) << " ";
            svg << "\"/>\n";
        }
        svg << "<line x1=\"" << ml + pw - 150 << "\" y1=\"" << legend_y << "\" x2=\""
            << ml + pw - 126 << "\" y2=\"" << legend_y << "\" stroke=\"" << s.color
            << "\" stroke-width=\"2\"" << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
        svg << "<text x=\"" << ml + pw - 120 << "\" y=\"" << legend_y + 4 << "\">" << s.name
            << "</text>\n";
        legend_y += 16.0;
    }
    svg << "</g>\n";
    return svg.str();
}

void write_svg_document(const std::string& path, const std::vector<std::string>& charts,
                        double width, double chart_height) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    const double total = chart_height * static_cast<double>(charts.size());
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << total
        << "\" viewBox=\"0 0 " << width << " " << total << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    double offset = 0.0;
    for (const auto& chart : charts) {
        out << "<g transform=\"translate(0 " << offset << ")\">\n" << chart << "</g>\n";
        offset += chart_height;
    }
    out << "</svg>\n";
    if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace torusmix
