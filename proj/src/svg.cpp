#include "cellshape/svg.hpp"

#include "cellshape/error.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <sstream>

namespace cellshape::svg {

namespace {

constexpr double kCell = 120.0;   // px per panel
constexpr double kMargin = 10.0;
constexpr double kCaption = 36.0;

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
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

struct Box {
    double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
    double x1 = -x0, y1 = -x0;
};

void path(std::ostringstream& s, const Polyline& pts, const Point2& center, double scale, double ox, double oy,
          const char* color, double width) {
    s << "<path fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width << "\" d=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double x = ox + scale * (pts[i].x - center.x);
        const double y = oy - scale * (pts[i].y - center.y);  // SVG y points down
        s << (i == 0 ? 'M' : 'L') << x << ' ' << y << ' ';
    }
    s << "Z\"/>\n";
}

}  // namespace

std::string render_geodesic(const GeodesicFigure& fig) {
    if (fig.frames.size() < 2) {
        throw Error("render_geodesic: need at least the two endpoints");
    }
    // Each frame is centered on its own vertex mean; one scale for all.
    std::vector<Point2> centers;
    double half_extent = 0.0;
    for (const auto& f : fig.frames) {
        if (f.empty()) throw Error("render_geodesic: empty frame");
        const Point2 c = vertex_centroid(f);
        centers.push_back(c);
        for (const auto& p : f) {
            half_extent = std::max({half_extent, std::abs(p.x - c.x), std::abs(p.y - c.y)});
        }
    }
    const double scale = half_extent > 0.0 ? 0.5 * (kCell - 2.0 * kMargin) / half_extent : 1.0;
    const std::size_t panels = fig.frames.size() + 1;
    const double width = kCell * static_cast<double>(panels);
    const double height = kCell + kCaption;

    std::ostringstream s;
    s << std::fixed << std::setprecision(3);
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    const double cy = 0.5 * kCell;
    s << "<g id=\"endpoints\">\n";
    path(s, fig.frames.front(), centers.front(), scale, 0.5 * kCell, cy, "#1f77b4", 1.5);
    path(s, fig.frames.back(), centers.back(), scale, 0.5 * kCell, cy, "#d62728", 1.5);
    s << "</g>\n<g id=\"frames\">\n";
    for (std::size_t k = 0; k < fig.frames.size(); ++k) {
        const double cx = kCell * (static_cast<double>(k) + 1.5);
        const char* color = k == 0 ? "#1f77b4" : (k + 1 == fig.frames.size() ? "#d62728" : "#444444");
        path(s, fig.frames[k], centers[k], scale, cx, cy, color, 1.0);
    }
    s << "</g>\n";
    s << "<line x1=\"" << kCell << "\" y1=\"0\" x2=\"" << kCell << "\" y2=\"" << kCell
      << "\" stroke=\"#cccccc\"/>\n";
    s << "<text x=\"" << kMargin << "\" y=\"" << kCell + 0.6 * kCaption
      << "\" font-family=\"sans-serif\" font-size=\"13\">" << escape(fig.label_a) << " (blue) to "
      << escape(fig.label_b) << " (red), " << escape(fig.space) << " distance d = " << std::setprecision(6)
      << fig.distance << "</text>\n";
    s << "</svg>\n";
    return s.str();
}

}  // namespace cellshape::svg
