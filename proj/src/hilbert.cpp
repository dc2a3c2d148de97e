#include "projkit/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <thread>

#include "projkit/error.hpp"

namespace projkit {
namespace {

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

void require_interior(const ConvexDomain& dom, const Vec2& z) {
  if (!z.allFinite() || !dom.contains(z)) {
    throw Error(ErrorCode::PointOutsideDomain, "point is not strictly inside the domain");
  }
}

}  // namespace

ConvexDomain ConvexDomain::polygon(std::vector<Vec2> vertices) {
  const std::size_t n = vertices.size();
  if (n < 3) {
    throw Error(ErrorCode::InvalidDomain, "polygon needs at least three vertices");
  }
  double turning = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!vertices[i].allFinite()) {
      throw Error(ErrorCode::InvalidDomain, "polygon vertex is not finite");
    }
    const Vec2 e0 = vertices[(i + 1) % n] - vertices[i];
    const Vec2 e1 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
    if (!(cross2(e0, e1) > 0.0)) {
      throw Error(ErrorCode::InvalidDomain,
                  "polygon vertices are not strictly convex in counterclockwise order");
    }
    turning += std::atan2(cross2(e0, e1), e0.dot(e1));
  }
  // All left turns with total turning 2π rules out self-overlapping stars.
  if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-6) {
    throw Error(ErrorCode::InvalidDomain, "polygon winds more than once");
  }

  ConvexDomain dom;
  dom.shape_ = Shape::polygon;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e = vertices[(i + 1) % n] - vertices[i];
    const Vec2 normal = Vec2(e.y(), -e.x()).normalized();
    dom.normals_.push_back(normal);
    dom.offsets_.push_back(normal.dot(vertices[i]));
  }
  dom.vertices_ = std::move(vertices);
  return dom;
}

ConvexDomain ConvexDomain::conic(const std::array<double, 6>& coeffs) {
  for (double c : coeffs) {
    if (!std::isfinite(c)) throw Error(ErrorCode::InvalidDomain, "conic coefficient is not finite");
  }
  std::array<double, 6> k = coeffs;
  Eigen::Matrix2d quad;
  quad << k[0], 0.5 * k[1], 0.5 * k[1], k[2];
  if (!(quad.determinant() > 0.0)) {
    throw Error(ErrorCode::InvalidDomain, "conic is not an ellipse");
  }
  if (quad(0, 0) < 0.0) {
    for (double& c : k) c = -c;
    quad = -quad;
  }
  ConvexDomain dom;
  dom.shape_ = Shape::conic;
  dom.coeffs_ = k;
  dom.quad_ = quad;
  dom.lin_ = Vec2(k[3], k[4]);
  dom.constant_ = k[5];
  const Vec2 center = -0.5 * quad.inverse() * dom.lin_;
  if (!(center.dot(quad * center) + dom.lin_.dot(center) + dom.constant_ < 0.0)) {
    throw Error(ErrorCode::InvalidDomain, "conic has no real interior");
  }
  return dom;
}

ConvexDomain ConvexDomain::disk(const Vec2& center, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidDomain, "disk radius must be positive");
  return conic({1.0, 0.0, 1.0, -2.0 * center.x(), -2.0 * center.y(),
                center.squaredNorm() - radius * radius});
}

bool ConvexDomain::contains(const Vec2& z) const {
  if (shape_ == Shape::conic) {
    return z.dot(quad_ * z) + lin_.dot(z) + constant_ < 0.0;
  }
  for (std::size_t i = 0; i < normals_.size(); ++i) {
    if (!(normals_[i].dot(z) < offsets_[i])) return false;
  }
  return true;
}

Box ConvexDomain::bounding_box() const {
  if (shape_ == Shape::polygon) {
    Box box{vertices_.front(), vertices_.front()};
    for (const Vec2& v : vertices_) {
      box.lo = box.lo.cwiseMin(v);
      box.hi = box.hi.cwiseMax(v);
    }
    return box;
  }
  const Eigen::Matrix2d inv = quad_.inverse();
  const Vec2 center = -0.5 * inv * lin_;
  const double r2 = -(center.dot(quad_ * center) + lin_.dot(center) + constant_);
  const Vec2 half(std::sqrt(r2 * inv(0, 0)), std::sqrt(r2 * inv(1, 1)));
  return Box{center - half, center + half};
}

std::pair<double, double> ConvexDomain::exit_parameters(const Vec2& x,
                                                        const Vec2& dir) const {
  require_interior(*this, x);
  if (!dir.allFinite() || dir.isZero(0.0)) {
    throw Error(ErrorCode::InvalidArgument, "direction must be a finite nonzero vector");
  }
  if (shape_ == Shape::conic) {
    const double a = dir.dot(quad_ * dir);
    const double b = 2.0 * x.dot(quad_ * dir) + lin_.dot(dir);
    const double c = x.dot(quad_ * x) + lin_.dot(x) + constant_;
    const double disc = b * b - 4.0 * a * c;
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    const double r1 = q / a;
    const double r2 = c / q;
    return {std::min(r1, r2), std::max(r1, r2)};
  }
  double t_minus = -std::numeric_limits<double>::infinity();
  double t_plus = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < normals_.size(); ++i) {
    const double rate = normals_[i].dot(dir);
    const double slack = offsets_[i] - normals_[i].dot(x);
    if (rate > 0.0) {
      t_plus = std::min(t_plus, slack / rate);
    } else if (rate < 0.0) {
      t_minus = std::max(t_minus, slack / rate);
    }
  }
  return {t_minus, t_plus};
}

ConvexDomain ConvexDomain::transformed(const Eigen::Matrix2d& a, const Vec2& b) const {
  const double det = a.determinant();
  if (det == 0.0 || !std::isfinite(det)) {
    throw Error(ErrorCode::InvalidArgument, "affine map is not invertible");
  }
  if (shape_ == Shape::polygon) {
    std::vector<Vec2> image;
    for (const Vec2& v : vertices_) image.push_back(a * v + b);
    if (det < 0.0) std::reverse(image.begin(), image.end());
    return polygon(std::move(image));
  }
  // Pull back: z = P·w + s.
  const Eigen::Matrix2d p = a.inverse();
  const Vec2 s = -p * b;
  const Eigen::Matrix2d quad = p.transpose() * quad_ * p;
  const Vec2 lin = 2.0 * p.transpose() * quad_ * s + p.transpose() * lin_;
  const double constant = s.dot(quad_ * s) + lin_.dot(s) + constant_;
  return conic({quad(0, 0), 2.0 * quad(0, 1), quad(1, 1), lin.x(), lin.y(), constant});
}

Chord chord(const ConvexDomain& dom, const Vec2& x, const Vec2& y) {
  require_interior(dom, x);
  require_interior(dom, y);
  if (x == y) throw Error(ErrorCode::CoincidentPoints, "chord needs two distinct points");
  const Vec2 dir = y - x;
  const auto [t_minus, t_plus] = dom.exit_parameters(x, dir);
  return Chord{x + t_minus * dir, x + t_plus * dir};
}

double hilbert_distance(const ConvexDomain& dom, const Vec2& x, const Vec2& y) {
  require_interior(dom, x);
  require_interior(dom, y);
  if (x == y) return 0.0;
  // With x at t = 0 and y at t = 1: |p−y|/|p−x| = 1 + 1/(−t₋) and
  // |q−x|/|q−y| = 1 + 1/(t₊ − 1).
  const auto [t_minus, t_plus] = dom.exit_parameters(x, y - x);
  return 0.5 * (std::log1p(1.0 / -t_minus) + std::log1p(1.0 / (t_plus - 1.0)));
}

double finsler_norm(const ConvexDomain& dom, const Vec2& x, const Vec2& dir) {
  const auto [t_minus, t_plus] = dom.exit_parameters(x, dir);
  return 0.5 * (1.0 / t_plus + 1.0 / -t_minus);
}

double unit_ball_area(const ConvexDomain& dom, const Vec2& x, int directions) {
  if (directions < 4 || directions % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument, "direction count must be even and at least 4");
  }
  // The norm is symmetric, so half the directions determine all radii.
  const int half = directions / 2;
  const double step = 2.0 * std::numbers::pi / directions;
  std::vector<double> radius(half + 1);
  for (int k = 0; k < half; ++k) {
    const Vec2 u(std::cos(k * step), std::sin(k * step));
    radius[k] = 1.0 / finsler_norm(dom, x, u);
  }
  radius[half] = radius[0];
  double sum = 0.0;
  for (int k = 0; k < half; ++k) sum += radius[k] * radius[k + 1];
  return std::sin(step) * sum;  // 2 halves × ½ r_k r_{k+1} sin(step)
}

double busemann_area(const ConvexDomain& dom, const std::function<bool(const Vec2&)>& inside,
                     const Box& box, const AreaOptions& opts) {
  const double h = opts.cellsize;
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw Error(ErrorCode::InvalidArgument, "cellsize must be positive");
  }
  const Vec2 extent = box.hi - box.lo;
  if (!(extent.x() > 0.0) || !(extent.y() > 0.0)) return 0.0;
  const auto nx = static_cast<long>(std::ceil(extent.x() / h));
  const auto ny = static_cast<long>(std::ceil(extent.y() / h));

  std::vector<double> row_sums(static_cast<std::size_t>(ny), 0.0);
  auto integrate_row = [&](long j) {
    double sum = 0.0;
    const double y = box.lo.y() + (static_cast<double>(j) + 0.5) * h;
    for (long i = 0; i < nx; ++i) {
      const Vec2 z(box.lo.x() + (static_cast<double>(i) + 0.5) * h, y);
      if (!inside(z)) continue;
      if (!dom.contains(z)) {
        throw Error(ErrorCode::RegionNotContained, "region leaves the domain");
      }
      sum += std::numbers::pi / unit_ball_area(dom, z, opts.directions);
    }
    row_sums[static_cast<std::size_t>(j)] = sum;
  };

  const unsigned workers =
      opts.parallel ? std::max(1u, std::thread::hardware_concurrency()) : 1u;
  if (workers == 1) {
    for (long j = 0; j < ny; ++j) integrate_row(j);
  } else {
    std::vector<std::exception_ptr> failures(workers);
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (long j = w; j < ny; j += workers) integrate_row(j);
          } catch (...) {
            failures[w] = std::current_exception();
          }
        });
      }
    }
    for (const auto& failure : failures) {
      if (failure) std::rethrow_exception(failure);
    }
  }

  double total = 0.0;
  for (double s : row_sums) total += s;
  return total * h * h;
}

double busemann_area(const ConvexDomain& dom, const ConvexDomain& region,
                     const AreaOptions& opts) {
  return busemann_area(
      dom, [&region](const Vec2& z) { return region.contains(z); }, region.bounding_box(),
      opts);
}

TriangleExperiment triangle_experiment(double alpha) {
  if (!(alpha > 0.0 && alpha <= 0.5)) {
    throw Error(ErrorCode::InvalidArgument, "alpha must lie in (0, 1/2]");
  }
  const Vec2 a(alpha, 0.0), b(0.5, 0.5), c(0.0, 0.5);
  return TriangleExperiment{
      ConvexDomain::polygon({Vec2(0.0, 0.0), Vec2(1.0, 0.0), Vec2(0.0, 1.0)}),
      ConvexDomain::polygon({a, b, c}), (a + b + c) / 3.0};
}

double triangle_area_experiment(double alpha, double truncation, double cellsize,
                                bool parallel) {
  if (!(truncation > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "truncation must be positive");
  }
  const TriangleExperiment ex = triangle_experiment(alpha);
  auto inside = [&ex, truncation](const Vec2& z) {
    return ex.inscribed.contains(z) &&
           hilbert_distance(ex.outer, z, ex.barycenter) <= truncation;
  };
  AreaOptions opts;
  opts.cellsize = cellsize;
  opts.parallel = parallel;
  return busemann_area(ex.outer, inside, ex.inscribed.bounding_box(), opts);
}

}  // namespace projkit
