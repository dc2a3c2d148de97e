#pragma once

// Shared fixtures, generators and independent oracles for the test suites.
// Nothing here calls into the code paths it is used to check.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "projkit/coords.hpp"
#include "projkit/rp2.hpp"

namespace projkit::testing {

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({1e-300, std::abs(a), std::abs(b)});
}

// Flags E, F, G of an ideal triangle with vertices (0,½,1), (½,½,1), (α,0,1)
// inscribed in the tangent triangle (0,1,1), (0,0,1), (1,0,1).
inline std::array<Flag, 3> inscribed_triangle_flags(double alpha) {
  return {Flag(ProjPoint(0.0, 0.5, 1.0), ProjLine(Vec3(0, 0, 1), Vec3(0, 1, 1))),
          Flag(ProjPoint(0.5, 0.5, 1.0), ProjLine(Vec3(0, 1, 1), Vec3(1, 0, 1))),
          Flag(ProjPoint(alpha, 0.0, 1.0), ProjLine(Vec3(0, 0, 1), Vec3(1, 0, 1)))};
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  double nonzero_scale() {
    const double magnitude = std::exp(uniform(-3.0, 3.0));
    return uniform(0.0, 1.0) < 0.5 ? -magnitude : magnitude;
  }
  Vec3 vec3() { return Vec3(normal(), normal(), normal()); }

  // Random flag: a random point and a line through it and a second random point.
  Flag flag() {
    const Vec3 p = vec3();
    return Flag(ProjPoint(p), ProjLine(p, vec3()));
  }

  Mat3 orthogonal() {
    Mat3 a;
    for (int i = 0; i < 9; ++i) a(i / 3, i % 3) = normal();
    Eigen::HouseholderQR<Mat3> qr(a);
    return qr.householderQ();
  }

  // Random matrix with singular values log-uniform in [1, cond], det > 0.
  Mat3 conjugator(double cond) {
    Eigen::Vector3d sv(1.0, std::exp(uniform(0.0, std::log(cond))), cond);
    Mat3 g = orthogonal() * sv.asDiagonal() * orthogonal().transpose();
    if (g.determinant() < 0.0) g.col(0) = -g.col(0);
    return g;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// Hyperbolic boundary data with λ < μ < 1/(λμ), i.e. log λ < log μ < −½ log λ.
inline BoundaryData random_hyperbolic_boundary(Rng& rng) {
  const double log_lambda = rng.uniform(-2.5, -0.05);
  const double lo = log_lambda, hi = -0.5 * log_lambda;
  const double log_mu = lo + (hi - lo) * rng.uniform(0.05, 0.95);
  return BoundaryData::from_eigenvalues(std::exp(log_lambda), std::exp(log_mu));
}

inline BoundaryData random_quasi_boundary(Rng& rng) {
  return BoundaryData::quasi_hyperbolic(std::exp(rng.uniform(0.05, 1.2)));
}

// Smallest unit-normalized transversality determinant of a flag tuple.
inline double min_transversality(const std::vector<Flag>& flags) {
  double smallest = 1e300;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    for (std::size_t j = 0; j < flags.size(); ++j) {
      if (i == j) continue;
      const Vec3 n = flags[j].line().first().cross(flags[j].line().second()).normalized();
      smallest = std::min(smallest, std::abs(flags[i].point().coords().normalized().dot(n)));
    }
  }
  for (std::size_t i = 0; i < flags.size(); ++i)
    for (std::size_t j = i + 1; j < flags.size(); ++j)
      for (std::size_t k = j + 1; k < flags.size(); ++k) {
        Mat3 m;
        m << flags[i].point().coords().normalized(), flags[j].point().coords().normalized(),
            flags[k].point().coords().normalized();
        smallest = std::min(smallest, std::abs(m.determinant()));
      }
  return smallest;
}

// ---------------------------------------------------------------------------
// Eigenstructure oracle: roots of the characteristic polynomial
// x³ − c₂x² + c₁x − c₀ by the trigonometric/Cardano formulas, refined by
// Newton steps, followed by a rank test on M − λI.
// ---------------------------------------------------------------------------

enum class OracleKind { hyperbolic, quasi_hyperbolic, parabolic, other };

inline std::array<std::complex<double>, 3> cubic_roots(double c2, double c1, double c0) {
  // Depressed cubic y³ + p·y + q with x = y + c2/3.
  const double shift = c2 / 3.0;
  const double p = c1 - c2 * c2 / 3.0;
  const double q = -2.0 * c2 * c2 * c2 / 27.0 + c2 * c1 / 3.0 - c0;
  const double disc = q * q / 4.0 + p * p * p / 27.0;
  std::array<std::complex<double>, 3> roots;
  if (disc <= 0.0) {
    const double r = std::sqrt(std::max(0.0, -p / 3.0));
    const double arg = r > 0.0 ? std::clamp(-q / (2.0 * r * r * r), -1.0, 1.0) : 0.0;
    const double phi = std::acos(arg);
    for (int k = 0; k < 3; ++k) {
      roots[k] = 2.0 * r * std::cos((phi - 2.0 * M_PI * k) / 3.0) + shift;
    }
  } else {
    const double sq = std::sqrt(disc);
    const double u = std::cbrt(-q / 2.0 + sq);
    const double v = std::cbrt(-q / 2.0 - sq);
    const double real = u + v;
    roots[0] = real + shift;
    const std::complex<double> w(-0.5 * real, 0.5 * std::sqrt(3.0) * (u - v));
    roots[1] = w + shift;
    roots[2] = std::conj(w) + shift;
  }
  for (auto& z : roots) {
    for (int it = 0; it < 3; ++it) {
      const auto f = ((z - c2) * z + c1) * z - c0;
      const auto df = (3.0 * z - 2.0 * c2) * z + c1;
      if (std::abs(df) < 1e-8) break;
      z -= f / df;
    }
  }
  return roots;
}

struct OracleResult {
  OracleKind kind;
  std::array<double, 3> values{};  // sorted descending; (μ, ν, ·) for quasi
};

inline OracleResult eigen_oracle(const Mat3& m, double cluster_tol = 1e-2,
                                 double rank_tol = 1e-6) {
  const double c2 = m.trace();
  const double c1 = 0.5 * (c2 * c2 - (m * m).trace());
  const double c0 = m.determinant();
  auto roots = cubic_roots(c2, c1, c0);
  for (const auto& z : roots) {
    if (std::abs(z.imag()) > cluster_tol) return {OracleKind::other, {}};
  }
  std::array<double, 3> r{roots[0].real(), roots[1].real(), roots[2].real()};
  std::sort(r.begin(), r.end(), std::greater<>());
  auto rank = [&](double shift) {
    const Eigen::Vector3d sv =
        Eigen::JacobiSVD<Mat3>(m - shift * Mat3::Identity()).singularValues();
    return static_cast<int>((sv.array() > rank_tol * m.norm()).count());
  };
  const bool close01 = std::abs(r[0] - r[1]) <= cluster_tol * std::max(1.0, std::abs(r[0]));
  const bool close12 = std::abs(r[1] - r[2]) <= cluster_tol * std::max(1.0, std::abs(r[1]));
  if (!close01 && !close12) {
    if (r[2] > 0.0) return {OracleKind::hyperbolic, r};
    return {OracleKind::other, r};
  }
  if (close01 && close12) {
    const double mean = (r[0] + r[1] + r[2]) / 3.0;
    return {rank(mean) == 2 && mean > 0.0 ? OracleKind::parabolic : OracleKind::other, r};
  }
  const double mu = close01 ? 0.5 * (r[0] + r[1]) : 0.5 * (r[1] + r[2]);
  const double nu = close01 ? r[2] : r[0];
  if (rank(mu) == 2 && mu > 0.0 && nu > 0.0) {
    return {OracleKind::quasi_hyperbolic, {mu, nu, 0.0}};
  }
  return {OracleKind::other, r};
}

}  // namespace projkit::testing
