#pragma once

#include <array>
#include <cstddef>
#include <span>

namespace projkit {

enum class BoundaryKind { hyperbolic, quasi_hyperbolic, parabolic };

// Goldman boundary invariants of a boundary holonomy: lambda is the smallest
// eigenvalue, tau the sum of the other two.
struct BoundaryData {
  double lambda = 1.0;
  double tau = 2.0;
  BoundaryKind kind = BoundaryKind::parabolic;

  [[nodiscard]] static BoundaryData hyperbolic(double lambda, double tau);
  // Eigenvalues lambda < mu < 1/(lambda·mu).
  [[nodiscard]] static BoundaryData from_eigenvalues(double lambda, double mu);
  // Jordan block at mu > 1, simple eigenvalue 1/mu².
  [[nodiscard]] static BoundaryData quasi_hyperbolic(double mu);
  [[nodiscard]] static BoundaryData parabolic();
};

// Throws ComplexEigenvalues when τ² < 4/λ, InconsistentStratum when the
// record does not satisfy the constraints of its kind.
void validate(const BoundaryData& b);

// μ = (τ − √(τ² − 4/λ))/2; 1 for parabolic and τ/2 for quasi-hyperbolic data.
// Only needs τ² ≥ 4/λ; the stricter stratum checks live in validate().
[[nodiscard]] double middle_eigenvalue(const BoundaryData& b);

struct PantsGoldman {
  std::array<BoundaryData, 3> boundaries;
  double s = 1.0;
  double t = 1.0;
};

// B = boundary curve, C = meridian (hyperbolic); (u, v) normalized so that
// the base point is (0, 0).
struct TorusGoldman {
  BoundaryData b;
  BoundaryData c;
  double s = 1.0;
  double t = 1.0;
  double u = 0.0;
  double v = 0.0;
};

struct PantsBD {
  static constexpr std::size_t arity = 8;

  std::array<double, 3> sigma1{};  // σ₁(B₁), σ₁(B₂), σ₁(B₃)
  std::array<double, 3> sigma2{};  // σ₂(B₁), σ₂(B₂), σ₂(B₃)
  double tplus = 0.0;              // τ₁₁₁(T₊)
  double tminus = 0.0;             // τ₁₁₁(T₋)

  [[nodiscard]] std::array<double, arity> values() const;
  [[nodiscard]] static PantsBD from_values(const std::array<double, arity>& v);
};

struct TorusBD {
  PantsBD pants;
  double sigma_c1 = 0.0;  // σ₁(C)
  double sigma_c2 = 0.0;  // σ₂(C)
};

// Boundaries A₁, A₂, A₃ with Bᵢ opposite Aᵢ, indices mod 3:
//   σ₁(Bᵢ) = log(s·μᵢ₋₁·√(λᵢ₋₁λᵢ₊₁/λᵢ))
//   σ₂(Bᵢ) = log((μᵢ₊₁/s)·√(λᵢ₋₁λᵢ₊₁/λᵢ))
//   τ₁₁₁(T₊) = log((e^{−σ₂(B₂)}+1)(e^{−σ₂(B₃)}+1) / (t·(e^{σ₁(B₃)}+1)))
//   τ₁₁₁(T₋) = log(t·μ₁μ₂μ₃·(e^{σ₁(B₃)}+1) / ((e^{−σ₂(B₂)}+1)(e^{−σ₂(B₃)}+1)))
[[nodiscard]] PantsBD pants_goldman_to_bd(const PantsGoldman& g);

// Pants with B = A₁ and C = A₂ = A₃; σ₁(C) = u − 3v, σ₂(C) = u + 3v.
[[nodiscard]] TorusBD torus_goldman_to_bd(const TorusGoldman& g);

// ---------------------------------------------------------------------------
// Degenerate strata. Each coordinate record lists exactly the free
// Bonahon-Dreyer coordinates of its stratum; `arity` is the stratum dimension.
// ---------------------------------------------------------------------------

struct AllParabolicCoords {
  static constexpr std::size_t arity = 2;
  double sigma1_b1 = 0.0;
  double tplus = 0.0;
};

struct AllParabolicParams {
  double s = 1.0;
  double t = 1.0;
};

// (log s, log((s+1)/t)); throws NonPositiveParameter unless s, t > 0.
[[nodiscard]] AllParabolicCoords all_parabolic_coords(double s, double t);
// s = e^{σ₁(B₁)}, t = (s+1)·e^{−τ₁₁₁(T₊)}.
[[nodiscard]] AllParabolicParams all_parabolic_recover(const AllParabolicCoords& c);

struct OneParabolicPantsCoords {
  static constexpr std::size_t arity = 6;
  double sigma1_b1 = 0.0, sigma2_b1 = 0.0, sigma1_b2 = 0.0, sigma1_b3 = 0.0;
  double tplus = 0.0, tminus = 0.0;

  [[nodiscard]] static OneParabolicPantsCoords from(const PantsBD& bd);
};

struct OneQuasiHyperbolicPantsCoords {
  static constexpr std::size_t arity = 7;
  double sigma1_b1 = 0.0, sigma2_b1 = 0.0, sigma1_b2 = 0.0, sigma2_b2 = 0.0;
  double sigma1_b3 = 0.0;
  double tplus = 0.0, tminus = 0.0;

  [[nodiscard]] static OneQuasiHyperbolicPantsCoords from(const PantsBD& bd);
};

struct TorusInteriorCoords {
  static constexpr std::size_t arity = 8;
  double sigma1_b1 = 0.0, sigma2_b1 = 0.0, sigma1_b2 = 0.0, sigma1_b3 = 0.0;
  double tplus = 0.0, tminus = 0.0;
  double sigma_c1 = 0.0, sigma_c2 = 0.0;

  [[nodiscard]] static TorusInteriorCoords from(const TorusBD& bd);
};

struct TorusQuasiHyperbolicCoords {
  static constexpr std::size_t arity = 7;
  double sigma1_b1 = 0.0, sigma1_b2 = 0.0, sigma1_b3 = 0.0;
  double tplus = 0.0, tminus = 0.0;
  double sigma_c1 = 0.0, sigma_c2 = 0.0;

  [[nodiscard]] static TorusQuasiHyperbolicCoords from(const TorusBD& bd);
};

struct TorusParabolicCoords {
  static constexpr std::size_t arity = 6;
  double sigma1_b1 = 0.0, sigma1_b2 = 0.0, sigma1_b3 = 0.0;
  double tplus = 0.0;
  double sigma_c1 = 0.0, sigma_c2 = 0.0;

  [[nodiscard]] static TorusParabolicCoords from(const TorusBD& bd);
};

struct PantsRecovery {
  PantsGoldman goldman;
  PantsBD full;
};

struct TorusRecovery {
  TorusGoldman goldman;
  TorusBD full;
};

// Inverse of pants_goldman_to_bd on each stratum. All of them throw
// InconsistentStratum when the recovered eigenvalues violate the stratum
// (e.g. λ ≥ μ for a hyperbolic boundary).
[[nodiscard]] PantsRecovery recover_pants_interior(const PantsBD& bd);
[[nodiscard]] PantsRecovery recover_pants_one_quasi_hyperbolic(
    const OneQuasiHyperbolicPantsCoords& c);
[[nodiscard]] PantsRecovery recover_pants_one_parabolic(const OneParabolicPantsCoords& c);

[[nodiscard]] TorusRecovery recover_torus_interior(const TorusInteriorCoords& c);
[[nodiscard]] TorusRecovery recover_torus_quasi_hyperbolic(
    const TorusQuasiHyperbolicCoords& c);
[[nodiscard]] TorusRecovery recover_torus_parabolic(const TorusParabolicCoords& c);

// Residuals of the one-parabolic relations:
//   r1 = σ₁(B₂) + σ₂(B₃)
//   r2 = σ₁(B₁) − σ₂(B₁) + σ₁(B₃) − σ₂(B₂) − 4·log s
// Note: with the σ formulas above, r2 evaluates to log(λ₂/λ₃) on the
// one-parabolic stratum, so it vanishes only when λ₂ = λ₃.
struct OneParabolicResiduals {
  double r1;
  double r2;
};
[[nodiscard]] OneParabolicResiduals one_parabolic_residuals(const PantsBD& bd, double s);

// σ₁(B₂) + σ₂(B₃) = 2·log(μ₁√λ₁); zero when A₁ is quasi-hyperbolic or parabolic.
[[nodiscard]] double quasi_hyperbolic_residual(const PantsBD& bd);

// Closed-form recovery on the parabolic-boundary torus from σ₁(B₁..₃), τ₁₁₁(T₊).
struct TorusParabolicRecovery {
  double s;
  double lambda2;
  double mu2;
  double t;
  PantsBD full;
};
[[nodiscard]] TorusParabolicRecovery torus_parabolic_recover(
    const std::array<double, 3>& sigma1, double tplus);

// Σ {hyperbolic → 0, quasi-hyperbolic → 1, parabolic → 2}; takes 3 (pants)
// or 1 (torus) boundary kinds.
[[nodiscard]] int stratum_codimension(std::span<const BoundaryKind> kinds);

// Boundary data at fraction `s` ∈ [0, 1] of the pinching path that scales
// every log-eigenvalue by (1 − s); s = 1 is the parabolic limit (1, 2).
[[nodiscard]] BoundaryData pinch(const BoundaryData& b, double s);

}  // namespace projkit
