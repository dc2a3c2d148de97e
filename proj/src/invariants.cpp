#include "projkit/invariants.hpp"

#include <cmath>

#include "projkit/error.hpp"

namespace projkit {

double checked_log(double ratio) {
  if (!(ratio > 0.0) || !std::isfinite(ratio)) {
    throw Error(ErrorCode::NonPositiveRatio,
                "ratio " + std::to_string(ratio) + " has no real logarithm");
  }
  return std::log(ratio);
}

TripleRatio triple_ratio(const Flag& e, const Flag& f, const Flag& g, double tol) {
  if (!is_generic_triple(e, f, g, tol)) {
    throw Error(ErrorCode::NonGenericFlags, "flag triple is not generic");
  }
  const double e2f1 = pairing13(f.point(), e.line());
  const double f1g2 = pairing13(f.point(), g.line());
  const double e1g2 = pairing13(e.point(), g.line());
  const double e1f2 = pairing13(e.point(), f.line());
  const double f2g1 = pairing13(g.point(), f.line());
  const double e2g1 = pairing13(g.point(), e.line());

  // Alternate multiply/divide to keep intermediates near unit scale.
  double t = e2f1 / f1g2;
  t *= e1g2;
  t /= e1f2;
  t *= f2g1;
  t /= e2g1;
  return TripleRatio{t};
}

double tau111(const Flag& e, const Flag& f, const Flag& g, double tol) {
  return checked_log(triple_ratio(e, f, g, tol).value);
}

DoubleRatios double_ratios(const Flag& e, const Flag& f, const Flag& g, const Flag& l,
                           double tol) {
  if (!is_generic_quadruple(e, f, g, l, tol)) {
    throw Error(ErrorCode::NonGenericFlags, "flag quadruple is not generic");
  }
  const double efg = triple_det(e.point(), f.point(), g.point());
  const double efl = triple_det(e.point(), f.point(), l.point());
  const double f2l1 = pairing13(l.point(), f.line());
  const double f2g1 = pairing13(g.point(), f.line());
  const double e2g1 = pairing13(g.point(), e.line());
  const double e2l1 = pairing13(l.point(), e.line());

  double d1 = -(efg / efl);
  d1 *= f2l1;
  d1 /= f2g1;

  double d2 = -(e2g1 / e2l1);
  d2 *= efl;
  d2 /= efg;
  return DoubleRatios{d1, d2};
}

double shear(const Flag& e, const Flag& f, const Flag& g, const Flag& l, ShearIndex i,
             double tol) {
  const DoubleRatios d = double_ratios(e, f, g, l, tol);
  return checked_log(i == ShearIndex::first ? d.d1 : d.d2);
}

}  // namespace projkit
