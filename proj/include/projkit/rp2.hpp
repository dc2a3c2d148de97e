#pragma once

#include <Eigen/Dense>

namespace projkit {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Incidence residuals are accepted up to this fraction of |p|·|u|·|v|.
inline constexpr double kIncidenceTol = 1e-9;

// A point of RP², stored as a nonzero homogeneous representative.
class ProjPoint {
 public:
  explicit ProjPoint(const Vec3& coords);
  ProjPoint(double a, double b, double c) : ProjPoint(Vec3(a, b, c)) {}

  [[nodiscard]] const Vec3& coords() const noexcept { return coords_; }
  [[nodiscard]] Vec3 unit() const { return coords_.normalized(); }

  // Equality up to a nonzero scalar: |p × q| ≤ tol·|p|·|q|.
  [[nodiscard]] bool same_as(const ProjPoint& other, double tol = 1e-12) const;

 private:
  Vec3 coords_;
};

// A projective line, stored as an ordered pair of spanning vectors of the
// corresponding plane in R³. The bivector representative is first ∧ second.
class ProjLine {
 public:
  ProjLine(const Vec3& first, const Vec3& second);

  [[nodiscard]] const Vec3& first() const noexcept { return first_; }
  [[nodiscard]] const Vec3& second() const noexcept { return second_; }

  // first × second; pairing with a point is a dot product against this.
  [[nodiscard]] Vec3 normal() const { return first_.cross(second_); }

 private:
  Vec3 first_;
  Vec3 second_;
};

// A full flag F⁰ ⊂ F¹ ⊂ F² of R³: a point together with a line through it.
class Flag {
 public:
  Flag(const ProjPoint& point, const ProjLine& line, double tol = kIncidenceTol);

  [[nodiscard]] const ProjPoint& point() const noexcept { return point_; }
  [[nodiscard]] const ProjLine& line() const noexcept { return line_; }

  // Image under an invertible linear map applied to every representative.
  [[nodiscard]] Flag transformed(const Mat3& g) const;

  // Same flag with representatives rescaled independently.
  [[nodiscard]] Flag rescaled(double point_scale, double first_scale,
                              double second_scale) const;

 private:
  ProjPoint point_;
  ProjLine line_;
};

// det[p | u | v] for the spanning pair (u, v) of l.
[[nodiscard]] double pairing13(const ProjPoint& p, const ProjLine& l);

// det[a | b | c].
[[nodiscard]] double triple_det(const ProjPoint& a, const ProjPoint& b,
                                const ProjPoint& c);

// Transversality of every point against every other flag's line and of
// every triple of points, measured on unit-normalized representatives.
[[nodiscard]] bool is_generic_triple(const Flag& e, const Flag& f, const Flag& g,
                                     double tol);
[[nodiscard]] bool is_generic_quadruple(const Flag& e, const Flag& f,
                                        const Flag& g, const Flag& l, double tol);

}  // namespace projkit
