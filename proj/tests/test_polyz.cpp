#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "heightcert/polyz.hpp"

using namespace hc;

static ZPoly Z(std::initializer_list<long> cs) {
  ZPoly f;
  for (long c : cs) f.emplace_back(c);
  zp_trim(f);
  return f;
}

static QPoly Q(std::initializer_list<long> cs) { return qp_from_z(Z(cs)); }

TEST_CASE("basic integer polynomial arithmetic") {
  ZPoly a = Z({1, 2, 3});        // 3x^2+2x+1
  ZPoly b = Z({-1, 1});          // x-1
  CHECK(zp_mul(a, b) == Z({-1, -1, -1, 3}));
  CHECK(zp_add(a, b) == Z({0, 3, 3}));
  CHECK(zp_eval(a, Int(2)) == 17);
  CHECK(zp_derivative(a) == Z({2, 6}));
  CHECK(zp_content(Z({4, -6, 10})) == 2);
  CHECK(zp_primitive_part(Z({4, -6, -10})) == Z({-2, 3, 5}));
}

TEST_CASE("rational division and gcd") {
  QPoly a = Q({-1, 0, 0, 0, 1});  // x^4-1
  QPoly b = Q({-1, 0, 1});        // x^2-1
  QPoly q, r;
  qp_divrem(a, b, q, r);
  CHECK(r.empty());
  CHECK(q == Q({1, 0, 1}));
  CHECK(qp_gcd(a, Q({1, 1})) == Q({1, 1}));
  CHECK(qp_gcd(Q({-2, 0, 2}), Q({-3, 3})) == Q({-1, 1}));

  QPoly g, u, v;
  qp_extended_gcd(Q({-1, 0, 1}), Q({-4, 0, 1}), g, u, v);
  CHECK(qp_degree(g) == 0);
  CHECK(qp_add(qp_mul(u, Q({-1, 0, 1})), qp_mul(v, Q({-4, 0, 1}))) == g);
}

TEST_CASE("resultants") {
  // Res(x^2-1, x^2-4) = (1-2)(1+2)(-1-2)(-1+2) = 9
  CHECK(qp_resultant(Q({-1, 0, 1}), Q({-4, 0, 1})) == Rat(9));
  // Duplication polynomials of y^2+y=x^3: F=x^4-2x, G=4x^3+1, Res=3^6.
  CHECK(qp_resultant(Q({0, -2, 0, 0, 1}), Q({1, 0, 0, 4})) == Rat(729));
  CHECK(qp_resultant(Q({1, 1}), Q({1, 1, 1})) == Rat(1));
  // Common root => 0.
  CHECK(qp_resultant(Q({-1, 1}), Q({-1, 0, 1})) == Rat(0));
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_poly(1) == Z({-1, 1}));
  CHECK(cyclotomic_poly(4) == Z({1, 0, 1}));
  CHECK(cyclotomic_poly(8) == Z({1, 0, 0, 0, 1}));
  CHECK(cyclotomic_poly(12) == Z({1, 0, -1, 0, 1}));
  CHECK(cyclotomic_poly(15) == Z({1, -1, 0, 1, -1, 1, 0, -1, 1}));
  CHECK(zp_degree(cyclotomic_poly(105)) == 48);
  // First cyclotomic with a coefficient outside {-1,0,1}.
  CHECK(cyclotomic_poly(105)[7] == -2);
}

TEST_CASE("hensel lifting") {
  ZPoly f = Z({-1, 0, 1});  // x^2-1
  auto lifted = hensel_lift_factors(f, 7, {Z({-1, 1}), Z({1, 1})}, 5);
  REQUIRE(lifted.size() == 2);
  Int p5 = pow_int(Int(7), 5);
  REQUIRE(lifted[0].size() == 2);
  CHECK(lifted[0][0] == p5 - 1);
  CHECK(lifted[0][1] == 1);
  CHECK(lifted[1] == Z({1, 1}));

  // x^4+1 mod 5^4 from its two quadratic factors mod 5.
  ZPoly g = Z({1, 0, 0, 0, 1});
  // x^4+1 = (x^2+3)(x^2+2) mod 5.
  auto l2 = hensel_lift_factors(g, 5, {Z({3, 0, 1}), Z({2, 0, 1})}, 4);
  REQUIRE(l2.size() == 2);
  ZPoly prod = zp_mul(l2[0], l2[1]);
  Int m = pow_int(Int(5), 4);
  for (size_t i = 0; i < prod.size(); ++i) {
    Int d = prod[i] - (i < g.size() ? g[i] : Int(0));
    CHECK(mpz_divisible_p(d.get_mpz_t(), m.get_mpz_t()) != 0);
  }
}

TEST_CASE("integer factorization") {
  auto f1 = zp_factor(Z({0, -1, 0, 0, 0, 1}));  // x^5-x = x(x-1)(x+1)(x^2+1)
  REQUIRE(f1.size() == 4);
  CHECK(f1[0].first == Z({-1, 1}));
  CHECK(f1[1].first == Z({0, 1}));
  CHECK(f1[2].first == Z({1, 1}));
  CHECK(f1[3].first == Z({1, 0, 1}));
  for (auto& [p, m] : f1) CHECK(m == 1);

  // (2x+3)^2 (x-1), content 5 dropped.
  ZPoly g = zp_scale(zp_mul(zp_mul(Z({3, 2}), Z({3, 2})), Z({-1, 1})), Int(5));
  auto f2 = zp_factor(g);
  REQUIRE(f2.size() == 2);
  bool seen_lin = false, seen_sq = false;
  for (auto& [p, m] : f2) {
    if (p == Z({-1, 1})) { CHECK(m == 1); seen_lin = true; }
    if (p == Z({3, 2})) { CHECK(m == 2); seen_sq = true; }
  }
  CHECK(seen_lin);
  CHECK(seen_sq);

  // Irreducible stays whole.
  auto f3 = zp_factor(Z({1, 1, 1, 1, 1}));  // Phi_5
  REQUIRE(f3.size() == 1);
  CHECK(f3[0].first == Z({1, 1, 1, 1, 1}));

  // Swinnerton-Dyer-flavored: minimal polynomial of sqrt2+sqrt3,
  // irreducible but splits into quadratics mod every prime.
  auto f4 = zp_factor(Z({1, 0, -10, 0, 1}));
  REQUIRE(f4.size() == 1);
  CHECK(f4[0].first == Z({1, 0, -10, 0, 1}));
}

TEST_CASE("rational roots") {
  auto r = zp_rational_roots(Z({1, -5, 6}));  // 6x^2-5x+1
  REQUIRE(r.size() == 2);
  CHECK(r[0] == Rat(1, 3));
  CHECK(r[1] == Rat(1, 2));
  CHECK(zp_rational_roots(Z({1, 0, 1})).empty());
}

TEST_CASE("squarefree part") {
  ZPoly f = zp_mul(zp_mul(Z({-1, 1}), Z({-1, 1})), Z({1, 1}));
  CHECK(zp_squarefree_part(f) == Z({-1, 0, 1}));
}

TEST_CASE("exact linear algebra") {
  QMatrix M = {{Rat(2), Rat(1)}, {Rat(1), Rat(3)}};
  CHECK(qmat_det(M) == Rat(5));
  auto x = qmat_solve(M, {Rat(5), Rat(10)});
  CHECK(x[0] == Rat(1));
  CHECK(x[1] == Rat(3));

  // Overdetermined but consistent.
  QMatrix M2 = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(1)}};
  auto y = qmat_solve(M2, {Rat(2), Rat(3), Rat(5)});
  CHECK(y[0] == Rat(2));
  CHECK(y[1] == Rat(3));
  CHECK_THROWS(qmat_solve(M2, {Rat(2), Rat(3), Rat(6)}));
}

TEST_CASE("hermite normal form and lattice index") {
  std::vector<std::vector<Int>> rows = {{Int(2), Int(0)}, {Int(0), Int(3)}};
  CHECK(zmat_lattice_index(rows) == 6);
  CHECK(zmat_lattice_index({{Int(1), Int(1)}, {Int(0), Int(2)}}) == 2);
  CHECK_THROWS(zmat_lattice_index({{Int(1), Int(1)}, {Int(2), Int(2)}}));

  // Minimal constant in the lattice spanned by u*f+v*g with deg u,v <= 1,
  // f = x^2-1, g = x^2-4 (coefficient of x^j in column j): expect 3.
  std::vector<std::vector<Int>> bez = {
      {Int(-1), Int(0), Int(1), Int(0)},   // f
      {Int(0), Int(-1), Int(0), Int(1)},   // x f
      {Int(-4), Int(0), Int(1), Int(0)},   // g
      {Int(0), Int(-4), Int(0), Int(1)},   // x g
  };
  std::vector<std::vector<Int>> U;
  auto H = zmat_hnf(bez, &U);
  REQUIRE(H.size() == 4);
  // Last nonzero row must be the minimal positive constant.
  CHECK(H[3][0] == 3);
  CHECK(H[3][1] == 0);
  CHECK(H[3][2] == 0);
  CHECK(H[3][3] == 0);
  // Transform rows reproduce the HNF rows from the input.
  for (size_t i = 0; i < 4; ++i) {
    for (size_t j = 0; j < 4; ++j) {
      Int s(0);
      for (size_t k = 0; k < 4; ++k) s += U[i][k] * bez[k][j];
      CHECK(s == H[i][j]);
    }
  }
}
