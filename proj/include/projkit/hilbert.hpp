#pragma once

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace projkit {

using Vec2 = Eigen::Vector2d;

struct Box {
  Vec2 lo;
  Vec2 hi;
};

// A properly convex region of an affine chart: either a strictly convex
// polygon (counterclockwise vertices) or the bounded interior of a conic
// a·x² + b·xy + c·y² + d·x + e·y + f = 0.
class ConvexDomain {
 public:
  enum class Shape { polygon, conic };

  // Throws InvalidDomain unless the vertices are counterclockwise and
  // strictly convex.
  [[nodiscard]] static ConvexDomain polygon(std::vector<Vec2> vertices);

  // Throws InvalidDomain unless the quadratic part is definite and the
  // locus bounds a nonempty region.
  [[nodiscard]] static ConvexDomain conic(const std::array<double, 6>& coeffs);

  // Euclidean disk, as a conic.
  [[nodiscard]] static ConvexDomain disk(const Vec2& center, double radius);

  [[nodiscard]] Shape shape() const noexcept { return shape_; }
  [[nodiscard]] const std::vector<Vec2>& vertices() const noexcept { return vertices_; }
  [[nodiscard]] const std::array<double, 6>& coefficients() const noexcept {
    return coeffs_;
  }

  [[nodiscard]] bool contains(const Vec2& z) const;
  [[nodiscard]] Box bounding_box() const;

  // Parameters t₋ < 0 < t₊ where the line x + t·dir leaves the domain.
  // Requires x strictly interior and dir ≠ 0.
  [[nodiscard]] std::pair<double, double> exit_parameters(const Vec2& x,
                                                          const Vec2& dir) const;

  // Image under z ↦ a·z + b (a invertible).
  [[nodiscard]] ConvexDomain transformed(const Eigen::Matrix2d& a, const Vec2& b) const;

 private:
  ConvexDomain() = default;

  Shape shape_ = Shape::polygon;
  std::vector<Vec2> vertices_;
  std::vector<Vec2> normals_;   // outward edge normals
  std::vector<double> offsets_; // interior: normal·z < offset
  std::array<double, 6> coeffs_{};
  Eigen::Matrix2d quad_ = Eigen::Matrix2d::Zero();  // positive definite
  Vec2 lin_ = Vec2::Zero();
  double constant_ = 0.0;
};

// Boundary points p, q with p, x, y, q in this order along the line.
struct Chord {
  Vec2 p;
  Vec2 q;
};

// Throws PointOutsideDomain or CoincidentPoints.
[[nodiscard]] Chord chord(const ConvexDomain& dom, const Vec2& x, const Vec2& y);

// ½·log(|p−y|·|q−x| / (|p−x|·|q−y|)); 0 when x = y.
[[nodiscard]] double hilbert_distance(const ConvexDomain& dom, const Vec2& x,
                                      const Vec2& y);

// ½·(1/t₊ + 1/t₋) with t± the line parameters to the boundary along ±dir.
[[nodiscard]] double finsler_norm(const ConvexDomain& dom, const Vec2& x, const Vec2& dir);

struct AreaOptions {
  double cellsize = 0.005;
  int directions = 256;  // samples of the unit-ball boundary
  bool parallel = false;
};

// Euclidean area of {v : finsler_norm(x, v) ≤ 1}, from `directions` radial
// samples summed as triangle sectors.
[[nodiscard]] double unit_ball_area(const ConvexDomain& dom, const Vec2& x,
                                    int directions = 256);

// Busemann area: midpoint grid sum of π / unit_ball_area over the cells
// whose centers satisfy `inside`. The grid is anchored at box.lo; rows are
// reduced in a fixed order, so the result does not depend on `parallel`.
// Throws RegionNotContained if a counted cell center lies outside dom.
[[nodiscard]] double busemann_area(const ConvexDomain& dom,
                                   const std::function<bool(const Vec2&)>& inside,
                                   const Box& box, const AreaOptions& opts);

[[nodiscard]] double busemann_area(const ConvexDomain& dom, const ConvexDomain& region,
                                   const AreaOptions& opts);

// Standard position of an ideal triangle inside its tangent triangle:
// T has vertices (0,1), (0,0), (1,0); the inscribed triangle has vertices
// (0,½), (½,½), (α,0).
struct TriangleExperiment {
  ConvexDomain outer;
  ConvexDomain inscribed;
  Vec2 barycenter;
};

[[nodiscard]] TriangleExperiment triangle_experiment(double alpha);

// Busemann area, in the Hilbert metric of T, of the inscribed triangle
// intersected with the Hilbert ball of radius `truncation` about its
// barycenter. Requires 0 < alpha ≤ ½ and truncation, cellsize > 0.
[[nodiscard]] double triangle_area_experiment(double alpha, double truncation,
                                              double cellsize, bool parallel = false);

}  // namespace projkit
