#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "heightcert/canonical.hpp"

using namespace hc;

static EllipticCurve E_x3x1() { return make_curve_q(0, 0, 0, 1, 1); }
static EllipticCurve E_m2() { return make_curve_q(0, 0, 0, 0, -2, true, -3); }
static EllipticCurve E_37a() { return make_curve_q(0, 0, 1, -1, 0); }
static EllipticCurve E_cm4() { return make_curve_q(0, 0, 0, -1, 0, true, -4); }

static ECPoint ptq(const EllipticCurve& E, long xn, long xd, long yn, long yd) {
  auto Q = make_rationals();
  return ec_affine(E, fe_from_rat(Q, Rat(xn, xd)), fe_from_rat(Q, Rat(yn, yd)));
}

TEST_CASE("psi embedding") {
  auto E = E_37a();
  ECPoint G = ptq(E, 0, 1, 0, 1);
  ProjPoint p = psi_embed(G);
  CHECK(p.x.size() == 3);
  auto Q = make_rationals();
  ProjPoint o = psi_embed(ec_infinity(Q));
  CHECK(std::abs(weil_height(o, 128).mid_d()) < 1e-30);
  CHECK(x_embed(G).x.size() == 2);
}

TEST_CASE("height comparison constants: shape") {
  for (const auto& E : {E_x3x1(), E_m2(), E_37a(), E_cm4()}) {
    auto hb = height_comparison_bound(E);
    CHECK(hb.c_dup_x.lo_d() >= 0.0);
    CHECK(hb.c_psi.lo_d() >= 0.0);
    CHECK(hb.bconst.lo_d() >= std::log(2.0) - 1e-12);
    // c_dup = (3/2) c_dup_x + 5 c_xy.
    double expect = 1.5 * hb.c_dup_x.mid_d() + 5 * hb.c_xy.mid_d();
    CHECK(hb.c_dup.mid_d() == doctest::Approx(expect).epsilon(1e-10));
    CHECK(hb.bconst.mid_d() ==
          doctest::Approx(2 * hb.c_psi.mid_d() + std::log(2.0)).epsilon(1e-10));
  }
}

TEST_CASE("canonical height oracle on 37a") {
  auto E = E_37a();
  ECPoint G = ptq(E, 0, 1, 0, 1);
  // Frozen oracle: exact rational doubling to 2^12 P, then 4^{-12} h(...).
  // h_x = 0.05111140815..., h_psi = (3/2) h_x = 0.07666711222...
  auto hx = canonical_height(E, G, HeightNorm::XMap, 1e-6);
  CHECK(hx.error <= 1e-6);
  CHECK(std::abs(hx.value - 0.0511114) < 1.2e-6);
  CHECK(!hx.torsion_zero);
  CHECK(hx.steps > 0);

  auto hpsi = canonical_height(E, G, HeightNorm::PsiMap, 1e-5);
  CHECK(hpsi.error <= 1e-5);
  CHECK(std::abs(hpsi.value - 0.0766671) < 1.2e-5);
  // Normalization consistency.
  CHECK(std::abs(hpsi.value - 1.5 * hx.value) < 1.5e-5);
}

TEST_CASE("torsion gives exact zero") {
  auto E = E_cm4();
  ECPoint T = ptq(E, 0, 1, 0, 1);
  auto h = canonical_height(E, T, HeightNorm::PsiMap, 1e-6);
  CHECK(h.torsion_zero);
  CHECK(h.value == 0.0);
  CHECK(h.error == 0.0);
  auto Q = make_rationals();
  CHECK(canonical_height(E, ec_infinity(Q), HeightNorm::XMap, 1e-6).torsion_zero);
  CHECK(is_torsion_point(E, T));
  CHECK(!is_torsion_point(E_37a(), ptq(E_37a(), 0, 1, 0, 1)));
}

TEST_CASE("quadraticity and evenness") {
  auto E = E_37a();
  ECPoint G = ptq(E, 0, 1, 0, 1);
  double tol = 1e-4;
  auto h1 = canonical_height(E, G, HeightNorm::XMap, tol);
  for (long m : {2L, 3L}) {
    auto hm = canonical_height(E, ec_mul_int(E, Int(m), G), HeightNorm::XMap, tol);
    CHECK(std::abs(hm.value - m * m * h1.value) <= (m * m + 1) * tol);
  }
  auto hneg = canonical_height(E, ec_neg(E, G), HeightNorm::XMap, tol);
  CHECK(std::abs(hneg.value - h1.value) <= 2 * tol);
}

TEST_CASE("|h(psi P) - hhat_psi(P)| <= C_psi on multiples") {
  auto E = E_37a();
  auto hb = height_comparison_bound(E);
  ECPoint G = ptq(E, 0, 1, 0, 1);
  // C_psi is of order 5-10, so a 1e-2 tolerance resolves the inequality.
  for (long k = 1; k <= 8; ++k) {
    ECPoint P = ec_mul_int(E, Int(k), G);
    double h = weil_height(psi_embed(P), 192).mid_d();
    auto hh = canonical_height(E, P, HeightNorm::PsiMap, 1e-2);
    CHECK(std::abs(h - hh.value) <= hb.c_psi.hi_d() + 3e-2);
  }
}

TEST_CASE("convergence rate matches the geometric tail") {
  auto E = E_37a();
  auto hb = height_comparison_bound(E);
  ECPoint P = ptq(E, 0, 1, 0, 1);
  double prev = 0.0;
  for (long n = 0; n <= 6; ++n) {
    double Rn = weil_height(x_embed(P), 192).mid_d() / std::pow(4.0, (double)n);
    if (n > 0)
      CHECK(std::abs(Rn - prev) <= hb.c_dup_x.hi_d() / std::pow(4.0, (double)(n - 1)) + 1e-9);
    prev = Rn;
    P = ec_add(E, P, P);
  }
}

TEST_CASE("galois invariance") {
  // Rational point: trivially invariant.
  CHECK(galois_invariance_check(E_37a(), ptq(E_37a(), 0, 1, 0, 1), 1e-3));
  // (theta, theta) over Q(sqrt 5) on y^2 = x^3 - x.
  auto E = E_cm4();
  auto L = make_quadratic(5);
  ECPoint P = ec_affine(E, fe_theta(L), fe_theta(L));
  CHECK(galois_invariance_check(E, P, 1e-3));
  // (-1, i) over Q(i) on y^2 = x^3 + x + 1: conjugation gives -P.
  auto Ki = make_cyclotomic(4);
  ECPoint Pi = ec_affine(E_x3x1(), fe_from_rat(Ki, Rat(-1)), fe_theta(Ki));
  CHECK(galois_invariance_check(E_x3x1(), Pi, 1e-3));
}

TEST_CASE("parallelogram law") {
  auto E = E_37a();
  ECPoint G = ptq(E, 0, 1, 0, 1);
  CHECK(parallelogram_check(E, {G}, 1e-4));
  CHECK(parallelogram_check(E, {G, ec_neg(E, G)}, 1e-4));
  std::vector<ECPoint> five;
  for (long k = 1; k <= 5; ++k) five.push_back(ec_mul_int(E, Int(k % 3 + 1), G));
  CHECK(parallelogram_check(E, five, 1e-3));
}

TEST_CASE("positivity gap for nontorsion corpus points") {
  double tol = 1e-4;
  auto h1 = canonical_height(E_37a(), ptq(E_37a(), 0, 1, 0, 1), HeightNorm::XMap, tol);
  CHECK(h1.value > 10 * tol);
  auto h2 = canonical_height(E_m2(), ptq(E_m2(), 3, 1, 5, 1), HeightNorm::XMap, tol);
  CHECK(h2.value > 10 * tol);
  auto L = make_quadratic(5);
  ECPoint P = ec_affine(E_cm4(), fe_theta(L), fe_theta(L));
  auto h3 = canonical_height(E_cm4(), P, HeightNorm::XMap, tol);
  CHECK(h3.value > 10 * tol);
}
