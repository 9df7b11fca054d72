#pragma once

#include <string>
#include <vector>

namespace torusmix {

// Minimal static SVG line chart: linear axes, ticks, legend. Series with a
// single point are drawn as markers.
class SvgPlot {
  public:
    SvgPlot(std::string title, std::string x_label, std::string y_label)
        : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

    void add_series(std::string name, std::vector<double> x, std::vector<double> y,
                    std::string color, bool dashed = false);

    // Rendered <svg> element (one chart); charts are stacked by the caller.
    std::string render(double width = 640.0, double height = 420.0) const;

  private:
    struct Series {
        std::string name;
        std::vector<double> x, y;
        std::string color;
        bool dashed;
    };
    std::string title_, x_label_, y_label_;
    std::vector<Series> series_;
};

// Wraps rendered charts in a single SVG document and writes it.
void write_svg_document(const std::string& path, const std::vector<std::string>& charts,
                        double width, double chart_height);

}  // namespace torusmix
