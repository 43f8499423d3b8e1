#include "cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "cli/source.hpp"

namespace mulgeo::cli {

Projection parse_projection(const std::string& name) {
  if (name == "xy") return Projection::XY;
  if (name == "xz") return Projection::XZ;
  if (name == "yz") return Projection::YZ;
  if (name == "iso") return Projection::Iso;
  throw UsageError("unknown projection '" + name + "' (xy, xz, yz, iso)");
}

PlotObject curve_object(std::string label, const std::vector<Point3>& logs) {
  PlotObject o;
  o.label = std::move(label);
  o.lines.push_back(logs);
  return o;
}

PlotObject vector_object(std::string label, const MVec3& v) {
  PlotObject o;
  o.label = std::move(label);
  o.arrow = true;
  const auto l = v.logs();
  std::vector<Point3> line;
  constexpr int kSteps = 32;
  for (int i = 0; i <= kSteps; ++i) {
    const double t = static_cast<double>(i) / kSteps;
    line.push_back({t * l[0], t * l[1], t * l[2]});
  }
  o.lines.push_back(std::move(line));
  return o;
}

PlotObject plane_object(std::string label, const MPlane& plane) {
  PlotObject o;
  o.label = std::move(label);
  const auto n = plane.normal.logs();
  const double nn = n[0] * n[0] + n[1] * n[1] + n[2] * n[2];
  const double d = plane.offset.log();
  const Point3 p0{d * n[0] / nn, d * n[1] / nn, d * n[2] / nn};

  // In-plane orthonormal pair from the axis least aligned with the normal.
  std::size_t k = 0;
  for (std::size_t i = 1; i < 3; ++i) {
    if (std::abs(n[i]) < std::abs(n[k])) k = i;
  }
  Point3 e{0.0, 0.0, 0.0};
  e[k] = 1.0;
  auto cross = [](const Point3& a, const Point3& b) {
    return Point3{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
  };
  auto unit = [](Point3 a) {
    const double len = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
    for (double& c : a) c /= len;
    return a;
  };
  const Point3 u = unit(cross(n, e));
  const Point3 w = unit(cross(n, u));

  constexpr double kHalf = 2.0;
  constexpr int kLines = 9;
  constexpr int kSteps = 16;
  for (int dir = 0; dir < 2; ++dir) {
    const Point3& a = dir == 0 ? u : w;
    const Point3& b = dir == 0 ? w : u;
    for (int i = 0; i < kLines; ++i) {
      const double across = -kHalf + 2.0 * kHalf * i / (kLines - 1);
      std::vector<Point3> line;
      for (int j = 0; j <= kSteps; ++j) {
        const double along = -kHalf + 2.0 * kHalf * j / kSteps;
        line.push_back({p0[0] + across * a[0] + along * b[0], p0[1] + across * a[1] + along * b[1],
                        p0[2] + across * a[2] + along * b[2]});
      }
      o.lines.push_back(std::move(line));
    }
  }
  return o;
}

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

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

struct Point2 {
  double x;
  double y;
};

Point2 project(const Point3& p, Projection proj) {
  switch (proj) {
    case Projection::XY: return {p[0], p[1]};
    case Projection::XZ: return {p[0], p[2]};
    case Projection::YZ: return {p[1], p[2]};
    case Projection::Iso: break;
  }
  const double c30 = std::sqrt(3.0) / 2.0;
  return {(p[0] - p[1]) * c30, p[2] - 0.5 * (p[0] + p[1])};
}

}  // namespace

std::string render_svg(const std::vector<PlotObject>& objects, const PlotOptions& options) {
  // Coordinates as drawn: logs, or the values themselves on raw axes.
  std::vector<std::vector<std::vector<Point3>>> drawn;
  double extent = 0.0;
  for (const PlotObject& o : objects) {
    auto& lines = drawn.emplace_back();
    for (const auto& line : o.lines) {
      auto& out = lines.emplace_back();
      for (Point3 p : line) {
        for (double& c : p) {
          if (options.raw_axes) c = std::exp(c);
          if (!std::isfinite(c)) throw DomainError("plot: '" + o.label + "' has a coordinate that cannot be drawn");
          extent = std::max(extent, std::abs(c));
        }
        out.push_back(p);
      }
    }
  }
  extent = std::max(1.0, 1.15 * extent);
  const double axis_lo = options.raw_axes ? 0.0 : -extent;

  std::vector<std::pair<Point2, Point2>> axes;
  std::vector<std::string> axis_names;
  for (std::size_t i = 0; i < 3; ++i) {
    Point3 a{0.0, 0.0, 0.0};
    Point3 b{0.0, 0.0, 0.0};
    a[i] = axis_lo;
    b[i] = extent;
    const Point2 pa = project(a, options.projection);
    const Point2 pb = project(b, options.projection);
    if (std::hypot(pb.x - pa.x, pb.y - pa.y) < 1e-9) continue;
    axes.push_back({pa, pb});
    axis_names.push_back((options.raw_axes ? "x" : "log x") + std::to_string(i + 1));
  }

  double minx = std::numeric_limits<double>::infinity();
  double maxx = -minx;
  double miny = minx;
  double maxy = -minx;
  auto grow = [&](Point2 p) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  };
  for (const auto& [a, b] : axes) {
    grow(a);
    grow(b);
  }
  for (const auto& lines : drawn) {
    for (const auto& line : lines) {
      for (const Point3& p : line) grow(project(p, options.projection));
    }
  }

  const double margin = 48.0;
  const double legend = 24.0 + 18.0 * static_cast<double>(objects.size());
  const double w = options.width;
  const double h = options.height;
  const double scale =
      std::min((w - 2 * margin) / std::max(maxx - minx, 1e-9), (h - 2 * margin - legend) / std::max(maxy - miny, 1e-9));
  const double ox = margin + 0.5 * ((w - 2 * margin) - scale * (maxx - minx));
  const double oy = margin + legend + 0.5 * ((h - 2 * margin - legend) - scale * (maxy - miny));
  auto sx = [&](double x) { return num(ox + scale * (x - minx)); };
  auto sy = [&](double y) { return num(oy + scale * (maxy - y)); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\"" << options.height
      << "\" viewBox=\"0 0 " << options.width << ' ' << options.height << "\">\n";
  svg << "  <defs>\n";
  for (std::size_t i = 0; i < std::size(kPalette); ++i) {
    svg << "    <marker id=\"arrow" << i
        << "\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"8\" markerHeight=\"8\" orient=\"auto\">"
        << "<path d=\"M0,0 L10,5 L0,10 z\" fill=\"" << kPalette[i] << "\"/></marker>\n";
  }
  svg << "  </defs>\n";
  svg << "  <rect x=\"0\" y=\"0\" width=\"" << options.width << "\" height=\"" << options.height
      << "\" fill=\"white\"/>\n";

  svg << "  <g id=\"axes\" stroke=\"#888888\" stroke-width=\"1\">\n";
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const auto& [a, b] = axes[i];
    svg << "    <line x1=\"" << sx(a.x) << "\" y1=\"" << sy(a.y) << "\" x2=\"" << sx(b.x) << "\" y2=\"" << sy(b.y)
        << "\"/>\n";
    svg << "    <text x=\"" << sx(b.x) << "\" y=\"" << sy(b.y) << "\" dx=\"4\" dy=\"-4\" font-size=\"12\" "
        << "font-family=\"sans-serif\" fill=\"#444444\" stroke=\"none\">" << axis_names[i] << "</text>\n";
  }
  svg << "  </g>\n";

  for (std::size_t k = 0; k < objects.size(); ++k) {
    const std::size_t colour = k % std::size(kPalette);
    svg << "  <g id=\"object" << k << "\" fill=\"none\" stroke=\"" << kPalette[colour] << "\" stroke-width=\""
        << (objects[k].lines.size() > 1 ? "0.8" : "1.6") << "\">\n";
    for (const auto& line : drawn[k]) {
      svg << "    <polyline points=\"";
      for (std::size_t j = 0; j < line.size(); ++j) {
        const Point2 p = project(line[j], options.projection);
        if (j) svg << ' ';
        svg << sx(p.x) << ',' << sy(p.y);
      }
      svg << '"';
      if (objects[k].arrow) svg << " marker-end=\"url(#arrow" << colour << ")\"";
      svg << "/>\n";
    }
    svg << "  </g>\n";
  }

  svg << "  <g id=\"legend\" font-size=\"12\" font-family=\"sans-serif\">\n";
  svg << "    <text x=\"12\" y=\"18\" fill=\"#444444\">"
      << (options.raw_axes ? "positive orthant: coordinates x1, x2, x3"
                           : "log axes: log x1, log x2, log x3; origin 0* = (1, 1, 1)")
      << "</text>\n";
  for (std::size_t k = 0; k < objects.size(); ++k) {
    const double y = 36.0 + 18.0 * static_cast<double>(k);
    svg << "    <rect x=\"12\" y=\"" << num(y - 9) << "\" width=\"10\" height=\"10\" fill=\""
        << kPalette[k % std::size(kPalette)] << "\"/>\n";
    svg << "    <text x=\"28\" y=\"" << num(y) << "\">" << escape(objects[k].label) << "</text>\n";
  }
  svg << "  </g>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace mulgeo::cli
