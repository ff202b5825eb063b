#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "qmaxent/report.hpp"

namespace qmaxent {

namespace {

constexpr double kSize = 480.0;
constexpr double kMargin = 40.0;

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

struct Frame {
  double x0, y0, span;
  [[nodiscard]] double x(double v) const { return kMargin + (v - x0) / span * (kSize - 2 * kMargin); }
  [[nodiscard]] double y(double v) const { return kSize - kMargin - (v - y0) / span * (kSize - 2 * kMargin); }
};

void header(std::ostringstream& out, const std::string& title) {
  out << std::fixed << std::setprecision(3);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
      << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" style=\"fill:#ffffff\"/>\n";
  if (!title.empty()) {
    out << "<text x=\"" << kMargin << "\" y=\"24\" style=\"font:14px sans-serif;fill:#222\">" << escape(title)
        << "</text>\n";
  }
}

}  // namespace

std::string atlas_svg(const BoundaryAtlas& atlas, const CandidateScan* scan, const std::string& title) {
  const auto poly = atlas.polygon();
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto& z : poly) {
    xmin = std::min(xmin, z.real());
    xmax = std::max(xmax, z.real());
    ymin = std::min(ymin, z.imag());
    ymax = std::max(ymax, z.imag());
  }
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-9}) * 1.1;
  const Frame f{0.5 * (xmin + xmax) - span / 2, 0.5 * (ymin + ymax) - span / 2, span};

  std::ostringstream out;
  header(out, title);
  // axes through the origin when visible
  if (f.x(0) > kMargin && f.x(0) < kSize - kMargin) {
    out << "<line x1=\"" << f.x(0) << "\" y1=\"" << kMargin << "\" x2=\"" << f.x(0) << "\" y2=\""
        << kSize - kMargin << "\" style=\"stroke:#ccc;stroke-width:1\"/>\n";
  }
  if (f.y(0) > kMargin && f.y(0) < kSize - kMargin) {
    out << "<line x1=\"" << kMargin << "\" y1=\"" << f.y(0) << "\" x2=\"" << kSize - kMargin << "\" y2=\""
        << f.y(0) << "\" style=\"stroke:#ccc;stroke-width:1\"/>\n";
  }
  out << "<polygon points=\"";
  for (const auto& z : poly) out << f.x(z.real()) << ',' << f.y(z.imag()) << ' ';
  out << "\" style=\"fill:#e8f0fb;stroke:#1f4e9c;stroke-width:1.5\"/>\n";
  for (const auto& s : atlas.flat_segments) {
    out << "<line x1=\"" << f.x(s.first.real()) << "\" y1=\"" << f.y(s.first.imag()) << "\" x2=\""
        << f.x(s.second.real()) << "\" y2=\"" << f.y(s.second.imag())
        << "\" style=\"stroke:#e08a00;stroke-width:4\"/>\n";
  }
  const auto classes = atlas_point_classes(atlas);
  for (std::size_t k = 0; k < classes.size(); ++k) {
    if (classes[k] != "corner") continue;
    const Complex z = atlas.points[k].first;
    out << "<circle cx=\"" << f.x(z.real()) << "\" cy=\"" << f.y(z.imag())
        << "\" r=\"4\" style=\"fill:#c0392b\"/>\n";
  }
  if (scan) {
    for (const auto& c : scan->points) {
      out << "<circle cx=\"" << f.x(c.point.real()) << "\" cy=\"" << f.y(c.point.imag())
          << "\" r=\"7\" style=\"fill:none;stroke:#7d3c98;stroke-width:2.5\"/>\n";
    }
    for (const auto& a : scan->arcs) {
      // highlight the boundary points exposed by angles inside the arc
      out << "<polyline points=\"";
      for (std::size_t k = 0; k < atlas.angles.size(); ++k) {
        const double t = atlas.angles[k];
        if (a.whole_boundary || (t >= a.theta_begin && t <= a.theta_end)) {
          out << f.x(atlas.points[k].first.real()) << ',' << f.y(atlas.points[k].first.imag()) << ' ';
        }
      }
      if (a.whole_boundary && !atlas.points.empty()) {
        out << f.x(atlas.points[0].first.real()) << ',' << f.y(atlas.points[0].first.imag());
      }
      out << "\" style=\"fill:none;stroke:#7d3c98;stroke-width:3;stroke-dasharray:6 4\"/>\n";
    }
    if (!scan->arcs.empty()) {
      out << "<text x=\"" << kMargin << "\" y=\"" << kSize - 12
          << "\" style=\"font:12px sans-serif;fill:#7d3c98\">dashed: multiply generated round points</text>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

std::string probe_trace_svg(const ContinuityReport& r, const std::string& title) {
  std::ostringstream out;
  header(out, title);
  const auto n = r.entropies.size();
  if (n == 0) {
    out << "</svg>\n";
    return out.str();
  }
  // top half: log10 of successive trace distances; bottom half: entropies
  const double w = kSize - 2 * kMargin;
  const double half = (kSize - 3 * kMargin) / 2;
  auto px = [&](std::size_t i) { return kMargin + (n > 1 ? w * static_cast<double>(i) / static_cast<double>(n - 1) : 0.0); };

  std::vector<double> logs;
  for (double d : r.step_distances) logs.push_back(std::log10(std::max(d, 1e-17)));
  if (!logs.empty()) {
    const double lo = *std::min_element(logs.begin(), logs.end());
    const double hi = std::max(*std::max_element(logs.begin(), logs.end()), lo + 1.0);
    out << "<polyline points=\"";
    for (std::size_t i = 0; i < logs.size(); ++i) {
      out << px(i + 1) << ',' << kMargin + half * (hi - logs[i]) / (hi - lo) << ' ';
    }
    out << "\" style=\"fill:none;stroke:#1f4e9c;stroke-width:2\"/>\n";
    out << "<text x=\"" << kMargin << "\" y=\"" << kMargin - 4
        << "\" style=\"font:12px sans-serif;fill:#1f4e9c\">log10 successive trace distance</text>\n";
  }
  const double emax = std::max(*std::max_element(r.entropies.begin(), r.entropies.end()), 1e-12);
  const double top = 2 * kMargin + half;
  out << "<polyline points=\"";
  for (std::size_t i = 0; i < n; ++i) out << px(i) << ',' << top + half * (1.0 - r.entropies[i] / emax) << ' ';
  out << "\" style=\"fill:none;stroke:#c0392b;stroke-width:2\"/>\n";
  out << "<text x=\"" << kMargin << "\" y=\"" << top - 4
      << "\" style=\"font:12px sans-serif;fill:#c0392b\">entropy along the schedule</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace qmaxent
