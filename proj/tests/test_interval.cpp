#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "heightcert/interval.hpp"

using namespace hc;

static bool contains(const RealInterval& I, double v) {
  return I.lo_d() <= v && v <= I.hi_d();
}

TEST_CASE("construction and arithmetic") {
  RealInterval two = RealInterval::exact(2);
  RealInterval three = RealInterval::exact(3);
  CHECK((two + three).mid_d() == doctest::Approx(5.0));
  CHECK((two * three).mid_d() == doctest::Approx(6.0));
  CHECK((two - three).mid_d() == doctest::Approx(-1.0));
  CHECK((two / three).mid_d() == doctest::Approx(2.0 / 3.0));

  RealInterval third = RealInterval::from_rat(Rat(1, 3), 128);
  CHECK(contains(third, 1.0 / 3));
  CHECK(third.width_d() < 1e-30);
  CHECK(third.is_positive());
  CHECK(!third.contains_zero());
}

TEST_CASE("enclosures of transcendental values") {
  RealInterval pi = RealInterval::pi(128);
  CHECK(contains(pi, 3.141592653589793));
  CHECK(pi.width_d() < 1e-30);

  RealInterval one = RealInterval::exact(1);
  RealInterval e = one.exp();
  CHECK(contains(e, 2.718281828459045));
  CHECK(contains(e.log(), 1.0));

  RealInterval x = RealInterval::from_rat(Rat(7, 2), 128);
  CHECK(contains(x.log().exp(), 3.5));
  CHECK(contains(RealInterval::exact(2).sqrt(), 1.4142135623730951));
}

TEST_CASE("trigonometric enclosures") {
  CHECK(contains(RealInterval::cos2pi(1, 4, 128), 0.0));
  CHECK(contains(RealInterval::sin2pi(1, 4, 128), 1.0));
  CHECK(contains(RealInterval::cos2pi(1, 3, 128), -0.5));
  CHECK(contains(RealInterval::cos2pi(0, 1, 128), 1.0));
  CHECK(contains(RealInterval::sin2pi(1, 6, 128), 0.8660254037844386));
  CHECK(RealInterval::cos2pi(1, 7, 128).width_d() < 1e-25);
}

TEST_CASE("outward rounding preserves containment under iteration") {
  // Repeatedly squaring sqrt(2) intervals must always contain 2^(2^k / 2).
  RealInterval s = RealInterval::exact(2).sqrt();
  RealInterval acc = s;
  double expect[] = {2, 4, 16, 256, 65536};  // exact values of (sqrt 2)^(2^(k+1))
  for (int i = 0; i < 5; ++i) {
    acc = acc * acc;
    CHECK(acc.lo_d() <= expect[i]);
    CHECK(acc.hi_d() >= expect[i]);
  }
}

TEST_CASE("certified comparisons") {
  RealInterval a = RealInterval::from_rat(Rat(1, 3), 128);
  RealInterval b = RealInterval::from_rat(Rat(1, 2), 128);
  auto lt = a.certified_lt(b);
  REQUIRE(lt.has_value());
  CHECK(*lt);
  auto gt = b.certified_lt(a);
  REQUIRE(gt.has_value());
  CHECK(!*gt);
  // Point intervals at the same value: < is decidably false, <= decidably true.
  RealInterval one = RealInterval::exact(1);
  auto eq_lt = one.certified_lt(one);
  REQUIRE(eq_lt.has_value());
  CHECK(!*eq_lt);
  auto eq_le = one.certified_le(one);
  REQUIRE(eq_le.has_value());
  CHECK(*eq_le);
}

TEST_CASE("min max abs") {
  RealInterval a = RealInterval::exact(-3);
  RealInterval b = RealInterval::exact(2);
  CHECK(RealInterval::max(a, b).mid_d() == doctest::Approx(2.0));
  CHECK(RealInterval::min(a, b).mid_d() == doctest::Approx(-3.0));
  CHECK(a.abs().mid_d() == doctest::Approx(3.0));
  CHECK(a.pow_ui(3).mid_d() == doctest::Approx(-27.0));
}

TEST_CASE("complex enclosures") {
  ComplexInterval z(RealInterval::exact(3), RealInterval::exact(4));
  CHECK(z.abs().mid_d() == doctest::Approx(5.0));
  ComplexInterval w = z * z;
  CHECK(w.re.mid_d() == doctest::Approx(-7.0));
  CHECK(w.im.mid_d() == doctest::Approx(24.0));
}
