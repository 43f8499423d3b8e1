#pragma once

// Planar projections of curves, vectors and planes, written as SVG.

#include <array>
#include <string>
#include <vector>

#include "mulgeo/mvec.hpp"

namespace mulgeo::cli {

enum class Projection { XY, XZ, YZ, Iso };

Projection parse_projection(const std::string& name);

using Point3 = std::array<double, 3>;

struct PlotObject {
  std::string label;
  /// Polylines in bridge (log) coordinates.
  std::vector<std::vector<Point3>> lines;
  bool arrow = false;
};

PlotObject curve_object(std::string label, const std::vector<Point3>& logs);
/// Segment from 0* to v.
PlotObject vector_object(std::string label, const MVec3& v);
/// Wireframe patch of the plane around its point nearest to 0*.
PlotObject plane_object(std::string label, const MPlane& plane);

struct PlotOptions {
  Projection projection = Projection::Iso;
  /// Plot the values themselves (positive orthant) instead of their logs.
  bool raw_axes = false;
  int width = 640;
  int height = 640;
};

/// Throws DomainError when a coordinate cannot be drawn (non-finite).
std::string render_svg(const std::vector<PlotObject>& objects, const PlotOptions& options);

}  // namespace mulgeo::cli
