#pragma once

#include "projkit/rp2.hpp"

namespace projkit {

// Default transversality threshold on unit-normalized determinants.
inline constexpr double kGenericTol = 1e-12;

struct TripleRatio {
  double value;
};

struct DoubleRatios {
  double d1;
  double d2;
};

enum class ShearIndex { first = 1, second = 2 };

// Triangle invariant of a generic flag triple:
//   T = (e²∧f¹)/(f¹∧g²) · (e¹∧g²)/(e¹∧f²) · (f²∧g¹)/(e²∧g¹).
// Throws NonGenericFlags when the triple is not transverse at `tol`.
[[nodiscard]] TripleRatio triple_ratio(const Flag& e, const Flag& f, const Flag& g,
                                       double tol = kGenericTol);

// log T; throws NonPositiveRatio when T ≤ 0 (the flags are not in the cyclic
// order induced by a convex domain).
[[nodiscard]] double tau111(const Flag& e, const Flag& f, const Flag& g,
                            double tol = kGenericTol);

// The two double ratios of a generic quadruple, leading minus signs included:
//   D₁ = −(e¹∧f¹∧g¹)/(e¹∧f¹∧l¹) · (f²∧l¹)/(f²∧g¹)
//   D₂ = −(e²∧g¹)/(e²∧l¹) · (e¹∧f¹∧l¹)/(e¹∧f¹∧g¹)
[[nodiscard]] DoubleRatios double_ratios(const Flag& e, const Flag& f, const Flag& g,
                                         const Flag& l, double tol = kGenericTol);

// log Dᵢ along the oriented edge from f to e with z = g on the left and
// z' = l on the right; throws NonPositiveRatio when Dᵢ ≤ 0.
[[nodiscard]] double shear(const Flag& e, const Flag& f, const Flag& g, const Flag& l,
                           ShearIndex i, double tol = kGenericTol);

// log of an already computed ratio, with the same error contract as above.
[[nodiscard]] double checked_log(double ratio);

}  // namespace projkit
