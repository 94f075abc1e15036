#include "qcrb/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qcrb {
namespace svg {

namespace {

constexpr double kWidth = 800.0, kHeight = 600.0;
constexpr double kLeft = 80.0, kRight = 770.0, kTop = 50.0, kBottom = 540.0;

struct Range {
    double lo = 0.0, hi = 1.0;
};

Range fit(double lo, double hi) {
    if (!(hi > lo)) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    return {lo - pad, hi + pad};
}

// Largest round step (1/2/5 x 10^k) giving at most ~6 ticks.
double tick_step(const Range& r) {
    const double span = r.hi - r.lo;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (raw <= m * mag) return m * mag;
    return 10.0 * mag;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

const char* dash_of(LineStyle s) {
    switch (s) {
        case LineStyle::Dashed: return "10,6";
        case LineStyle::Dotted: return "2,5";
        default: return "";
    }
}

}  // namespace

std::string render(const Figure& figure) {
    double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
    double ylo = xlo, yhi = -xlo;
    for (const auto& s : figure.series)
        for (const auto& p : s.points) {
            xlo = std::min(xlo, p[0]);
            xhi = std::max(xhi, p[0]);
            ylo = std::min(ylo, p[1]);
            yhi = std::max(yhi, p[1]);
        }
    if (!std::isfinite(xlo)) xlo = 0.0, xhi = 1.0, ylo = 0.0, yhi = 1.0;
    const Range xr = fit(xlo, xhi), yr = fit(ylo, yhi);

    auto sx = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * (kRight - kLeft); };
    auto sy = [&](double y) { return kBottom - (y - yr.lo) / (yr.hi - yr.lo) * (kBottom - kTop); };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\" "
           "font-family=\"sans-serif\" font-size=\"14\">\n"
        << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";

    // Axes frame.
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kRight - kLeft
        << "\" height=\"" << kBottom - kTop
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // Ticks and grid.
    const double xstep = tick_step(xr), ystep = tick_step(yr);
    for (double x = std::ceil(xr.lo / xstep) * xstep; x <= xr.hi + 1e-12 * xstep; x += xstep) {
        const double px = sx(x);
        out << "<line x1=\"" << px << "\" y1=\"" << kBottom << "\" x2=\"" << px << "\" y2=\""
            << kBottom + 6 << "\" stroke=\"black\"/>\n"
            << "<line x1=\"" << px << "\" y1=\"" << kTop << "\" x2=\"" << px << "\" y2=\""
            << kBottom << "\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n"
            << "<text x=\"" << px << "\" y=\"" << kBottom + 22
            << "\" text-anchor=\"middle\">" << fmt(x) << "</text>\n";
    }
    for (double y = std::ceil(yr.lo / ystep) * ystep; y <= yr.hi + 1e-12 * ystep; y += ystep) {
        const double py = sy(y);
        out << "<line x1=\"" << kLeft - 6 << "\" y1=\"" << py << "\" x2=\"" << kLeft
            << "\" y2=\"" << py << "\" stroke=\"black\"/>\n"
            << "<line x1=\"" << kLeft << "\" y1=\"" << py << "\" x2=\"" << kRight << "\" y2=\""
            << py << "\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n"
            << "<text x=\"" << kLeft - 10 << "\" y=\"" << py + 5
            << "\" text-anchor=\"end\">" << fmt(y) << "</text>\n";
    }

    // Labels and title.
    out << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"28\" text-anchor=\"middle\" "
           "font-size=\"18\">" << figure.title << "</text>\n"
        << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"578\" text-anchor=\"middle\">"
        << figure.x_label << "</text>\n"
        << "<text x=\"22\" y=\"" << (kTop + kBottom) / 2
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 22 " << (kTop + kBottom) / 2
        << ")\">" << figure.y_label << "</text>\n";

    // Series.
    for (const auto& s : figure.series) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\"";
        const char* dash = dash_of(s.style);
        if (*dash) out << " stroke-dasharray=\"" << dash << "\"";
        out << " points=\"";
        for (const auto& p : s.points) out << sx(p[0]) << "," << sy(p[1]) << " ";
        out << "\"/>\n";
    }

    // Legend in the upper-right corner of the plot area.
    double ly = kTop + 18;
    for (const auto& s : figure.series) {
        const double lx = kRight - 180;
        out << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 36 << "\" y2=\""
            << ly << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"";
        const char* dash = dash_of(s.style);
        if (*dash) out << " stroke-dasharray=\"" << dash << "\"";
        out << "/>\n"
            << "<text x=\"" << lx + 44 << "\" y=\"" << ly + 5 << "\">" << s.label
            << "</text>\n";
        ly += 22;
    }

    out << "</svg>\n";
    return out.str();
}

}  // namespace svg
}  // namespace qcrb
