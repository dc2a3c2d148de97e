#pragma once

#include <array>
#include <complex>
#include <string_view>
#include <utility>
#include <variant>

#include "projkit/rp2.hpp"

namespace projkit {

// Default relative threshold for classify(). Singular values of M − λI below
// tol·‖M‖_F count as zero; eigenvalues closer than cbrt(tol)·max(1, |λ|) are
// candidates for a repeated eigenvalue (a relative perturbation of size ε
// splits a k-fold Jordan block by about ε^(1/k)).
inline constexpr double kClassifyTol = 1e-6;

class SL3Matrix {
 public:
  static constexpr double kDetTol = 1e-9;

  // Throws NotUnimodular unless |det − 1| ≤ kDetTol.
  explicit SL3Matrix(const Mat3& entries);

  // Rescales a matrix with nonzero determinant onto det = 1.
  [[nodiscard]] static SL3Matrix normalized(const Mat3& entries);

  [[nodiscard]] const Mat3& matrix() const noexcept { return entries_; }

 private:
  struct Unchecked {};
  SL3Matrix(const Mat3& entries, Unchecked) : entries_(entries) {}

  Mat3 entries_;
};

class Hyperbolic {
 public:
  // Requires l1 > l2 > l3 > 0 and l1·l2·l3 = 1 to 1e-9.
  Hyperbolic(double l1, double l2, double l3);

  [[nodiscard]] double l1() const noexcept { return l1_; }
  [[nodiscard]] double l2() const noexcept { return l2_; }
  [[nodiscard]] double l3() const noexcept { return l3_; }

 private:
  double l1_, l2_, l3_;
};

// Which eigenvalue carries the 2×2 Jordan block. The standard normal form
// has the block on the larger eigenvalue (μ > ν).
enum class JordanPlacement { at_larger, at_smaller };

class QuasiHyperbolic {
 public:
  // mu carries the Jordan block; requires mu, nu > 0, mu ≠ nu, mu²·nu = 1 to 1e-9.
  QuasiHyperbolic(double mu, double nu);

  [[nodiscard]] double mu() const noexcept { return mu_; }
  [[nodiscard]] double nu() const noexcept { return nu_; }
  [[nodiscard]] JordanPlacement placement() const noexcept {
    return mu_ > nu_ ? JordanPlacement::at_larger : JordanPlacement::at_smaller;
  }

 private:
  double mu_, nu_;
};

struct Parabolic {};

// Everything outside the trichotomy: complex or negative eigenvalues,
// diagonalizable repeated eigenvalues, the identity.
struct OtherIsometry {
  std::array<std::complex<double>, 3> eigenvalues;
};

using IsometryClass = std::variant<Hyperbolic, QuasiHyperbolic, Parabolic, OtherIsometry>;

[[nodiscard]] std::string_view kind_name(const IsometryClass& c) noexcept;

[[nodiscard]] IsometryClass classify(const SL3Matrix& m, double tol = kClassifyTol);

struct GoldmanLengths {
  double l1;
  double l2;
  double hilbert_length;
};

// Throws WrongClass unless c is Hyperbolic.
[[nodiscard]] GoldmanLengths goldman_lengths(const IsometryClass& c);

// diag(e^{−v}, e^{2v}, e^{−v}) in the basis l(−∞) = e₁, l^⊥ = e₂, l(∞) = e₃.
[[nodiscard]] SL3Matrix bulging_matrix(double v);

// Image (1, e^{3v}·y, x) of the right-side vertex (1, y, x).
[[nodiscard]] Vec3 bulge_vertex(double y, double x, double v);

// (σ₁ − 3v, σ₂ + 3v).
[[nodiscard]] std::pair<double, double> shear_shift(double s1, double s2, double v);

// Applies bulging_matrix(v) to every representative of the flag.
[[nodiscard]] Flag bulge_flag(const Flag& flag, double v);

// Flags {E, F, G, L} on the conic k·X·Z = Y² (k = y²/x) in the normalized
// basis: E at l(−∞) = (1,0,0), F at l(∞) = (0,0,1), G at the left vertex
// (1, −y, x), L at the right vertex (1, y, x). Lines are the conic's tangents.
// Requires y ≠ 0 and x > 0.
[[nodiscard]] std::array<Flag, 4> bulging_configuration(double y, double x);

}  // namespace projkit
