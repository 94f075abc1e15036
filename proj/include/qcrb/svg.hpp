#pragma once

// Minimal dependency-free SVG line plots: fixed 800x600 viewBox, axes with
// tick labels, and a legend distinguishing solid/dashed/dotted series.

#include <array>
#include <string>
#include <vector>

namespace qcrb {
namespace svg {

enum class LineStyle { Solid, Dashed, Dotted };

struct Series {
    std::string label;
    LineStyle style = LineStyle::Solid;
    std::string color = "#1f6fb2";
    std::vector<std::array<double, 2>> points;
};

struct Figure {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
};

// Complete SVG document. Axis ranges are fitted to the data with a small
// margin and round tick steps.
std::string render(const Figure& figure);

}  // namespace svg
}  // namespace qcrb
