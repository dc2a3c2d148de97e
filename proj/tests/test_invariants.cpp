#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "projkit/error.hpp"
#include "projkit/invariants.hpp"
#include "projkit/isometry.hpp"
#include "test_support.hpp"

using namespace projkit;
using projkit::testing::rel_diff;
using projkit::testing::Rng;
using projkit::testing::inscribed_triangle_flags;

TEST_CASE("triple ratio of inscribed-triangle flags is (1-a)/a") {
  for (double alpha : {0.5, 0.25, 0.1, 0.01}) {
    const auto f = inscribed_triangle_flags(alpha);
    CHECK(rel_diff(triple_ratio(f[0], f[1], f[2]).value, (1.0 - alpha) / alpha) < 1e-12);
  }
  const auto f = inscribed_triangle_flags(0.25);
  CHECK(triple_ratio(f[0], f[1], f[2]).value == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("tau111 examples") {
  const auto q = inscribed_triangle_flags(0.25);
  CHECK(tau111(q[0], q[1], q[2]) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
  CHECK(tau111(q[1], q[0], q[2]) == doctest::Approx(-std::log(3.0)).epsilon(1e-14));
  const auto h = inscribed_triangle_flags(0.5);
  CHECK(std::abs(tau111(h[0], h[1], h[2])) < 1e-15);
}

TEST_CASE("triple ratio is independent of representatives") {
  Rng rng(17);
  const auto f = inscribed_triangle_flags(0.25);
  for (int trial = 0; trial < 100; ++trial) {
    auto r = [&](const Flag& x) {
      return x.rescaled(rng.nonzero_scale(), rng.nonzero_scale(), rng.nonzero_scale());
    };
    CHECK(rel_diff(triple_ratio(r(f[0]), r(f[1]), r(f[2])).value, 3.0) < 1e-12);
  }
}

TEST_CASE("non-generic and non-positive inputs raise") {
  const auto f = inscribed_triangle_flags(0.25);
  try {
    (void)triple_ratio(f[0], f[0], f[2]);
    FAIL("expected NonGenericFlags");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonGenericFlags);
  }
  CHECK(checked_log(std::exp(1.0)) == doctest::Approx(1.0));
  CHECK(checked_log(1.0) == 0.0);
  try {
    (void)checked_log(-2.0);
    FAIL("expected NonPositiveRatio");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPositiveRatio);
  }
}

TEST_CASE("cyclic and inversion identities on random triples") {
  Rng rng(2024);
  int checked = 0;
  while (checked < 500) {
    const Flag e = rng.flag(), f = rng.flag(), g = rng.flag();
    if (!is_generic_triple(e, f, g, 1e-3)) continue;
    const double t = triple_ratio(e, f, g).value;
    CHECK(rel_diff(t, triple_ratio(f, g, e).value) < 1e-9);
    CHECK(rel_diff(t * triple_ratio(f, e, g).value, 1.0) < 1e-9);
    ++checked;
  }
}

TEST_CASE("double ratios are projective invariants") {
  Rng rng(99);
  int checked = 0;
  while (checked < 300) {
    const Flag e = rng.flag(), f = rng.flag(), g = rng.flag(), l = rng.flag();
    if (!is_generic_quadruple(e, f, g, l, 1e-3)) continue;
    const DoubleRatios d = double_ratios(e, f, g, l);
    const Mat3 m = rng.conjugator(100.0);
    const DoubleRatios dm =
        double_ratios(e.transformed(m), f.transformed(m), g.transformed(m), l.transformed(m));
    CHECK(rel_diff(d.d1, dm.d1) < 1e-9);
    CHECK(rel_diff(d.d2, dm.d2) < 1e-9);
    auto r = [&](const Flag& x) {
      return x.rescaled(rng.nonzero_scale(), rng.nonzero_scale(), rng.nonzero_scale());
    };
    const DoubleRatios ds = double_ratios(r(e), r(f), r(g), r(l));
    CHECK(rel_diff(d.d1, ds.d1) < 1e-12);
    CHECK(rel_diff(d.d2, ds.d2) < 1e-12);
    ++checked;
  }
}

TEST_CASE("symmetric bulging configuration has unit double ratios") {
  const auto q = bulging_configuration(1.0, 1.0);
  const DoubleRatios d = double_ratios(q[0], q[1], q[2], q[3]);
  // Direct evaluation: e∧f∧g = 1, e∧f∧l = −1, f²∧l = f²∧g = −1, e²∧g = e²∧l = 1.
  CHECK(d.d1 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(d.d2 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(shear(q[0], q[1], q[2], q[3], ShearIndex::first)) < 1e-14);
}

TEST_CASE("bulging shifts the two shears by -3v and +3v") {
  const auto q = bulging_configuration(1.0, 1.0);
  const double s1 = shear(q[0], q[1], q[2], q[3], ShearIndex::first);
  const double s2 = shear(q[0], q[1], q[2], q[3], ShearIndex::second);
  const Flag bulged = bulge_flag(q[3], 0.1);
  CHECK(shear(q[0], q[1], q[2], bulged, ShearIndex::first) - s1 ==
        doctest::Approx(-0.3).epsilon(1e-12));
  CHECK(shear(q[0], q[1], q[2], bulged, ShearIndex::second) - s2 ==
        doctest::Approx(0.3).epsilon(1e-12));
  const DoubleRatios before = double_ratios(q[0], q[1], q[2], q[3]);
  const DoubleRatios after = double_ratios(q[0], q[1], q[2], bulged);
  CHECK(std::log(after.d1) - std::log(before.d1) == doctest::Approx(-0.3).epsilon(1e-12));
  CHECK(std::log(after.d2) - std::log(before.d2) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("bulging every flag at once changes nothing") {
  // E and F are fixed by the bulging matrix, so moving all four flags is a
  // global projective change of frame.
  const auto q = bulging_configuration(0.7, 1.3);
  const DoubleRatios before = double_ratios(q[0], q[1], q[2], q[3]);
  const double v = 0.4;
  const DoubleRatios after = double_ratios(bulge_flag(q[0], v), bulge_flag(q[1], v),
                                           bulge_flag(q[2], v), bulge_flag(q[3], v));
  CHECK(rel_diff(before.d1, after.d1) < 1e-12);
  CHECK(rel_diff(before.d2, after.d2) < 1e-12);
}
