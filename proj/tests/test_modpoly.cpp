#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "heightcert/modpoly.hpp"

using namespace hc;

static ModPoly P(long p, std::initializer_list<long> cs) {
  std::vector<long> v(cs);
  for (auto& c : v) { c %= p; if (c < 0) c += p; }
  return ModPoly(p, std::move(v));
}

TEST_CASE("mod-p polynomial arithmetic") {
  ModPoly a = P(5, {1, 2, 3});
  ModPoly b = P(5, {4, 1});
  CHECK(mp_mul(a, b).c == P(5, {4, 4, 4, 3}).c);
  CHECK(mp_add(a, b).c == P(5, {0, 3, 3}).c);
  ModPoly q, r;
  mp_divrem(P(7, {1, 0, 0, 1}), P(7, {1, 1}), q, r);  // x^3+1 = (x+1)(x^2-x+1)
  CHECK(r.is_zero());
  CHECK(q.c == P(7, {1, 6, 1}).c);
  CHECK(mp_eval(P(11, {3, 0, 1}), 5) == (25 + 3) % 11);
  CHECK(mod_inv(3, 7) == 5);
}

TEST_CASE("gcd and powmod") {
  ModPoly f = mp_mul(P(13, {1, 1}), P(13, {2, 1}));
  ModPoly g = mp_mul(P(13, {1, 1}), P(13, {3, 1}));
  CHECK(mp_gcd(f, g).c == P(13, {1, 1}).c);
  // x^13 == x (mod x^2-2) iff 2 is a QR mod 13; 6^2=36=10, not 2... check directly.
  ModPoly m = P(13, {11, 0, 1});
  ModPoly xp = mp_powmod(ModPoly::x(13), Int(13), m);
  // Frobenius fixes the roots iff x^2-2 splits mod 13 (it does: 2 = 15^2? 15^2=225=4).
  // 2 is a QR mod 13? squares: 1,4,9,3,12,10. 2 is not => x^13 != x mod m.
  CHECK(xp.c != ModPoly::x(13).c);
}

TEST_CASE("squarefree decomposition") {
  // (x+1)^2 (x+2) mod 7
  ModPoly f = mp_mul(mp_mul(P(7, {1, 1}), P(7, {1, 1})), P(7, {2, 1}));
  auto parts = mp_squarefree_decomposition(f);
  REQUIRE(parts.size() == 2);
  bool got1 = false, got2 = false;
  for (auto& pt : parts) {
    if (pt.mult == 1 && pt.poly.c == P(7, {2, 1}).c) got1 = true;
    if (pt.mult == 2 && pt.poly.c == P(7, {1, 1}).c) got2 = true;
  }
  CHECK(got1);
  CHECK(got2);

  // p-th power: x^5+1 = (x+1)^5 mod 5.
  auto parts2 = mp_squarefree_decomposition(P(5, {1, 0, 0, 0, 0, 1}));
  REQUIRE(parts2.size() == 1);
  CHECK(parts2[0].mult == 5);
  CHECK(parts2[0].poly.c == P(5, {1, 1}).c);
}

TEST_CASE("factorization over F_p") {
  // x^8 - 1 mod 17 splits into 8 linear factors.
  ModPoly f(17, {});
  f.c.assign(9, 0);
  f.c[0] = 16;
  f.c[8] = 1;
  auto facs = mp_factor_squarefree(f);
  REQUIRE(facs.size() == 8);
  for (auto& g : facs) CHECK(g.degree() == 1);
  // Deterministic ordering: repeated runs agree.
  auto facs2 = mp_factor_squarefree(f);
  for (size_t i = 0; i < 8; ++i) CHECK(facs[i].c == facs2[i].c);

  // x^4+1 mod 7: two quadratic factors.
  auto facs3 = mp_factor_squarefree(P(7, {1, 0, 0, 0, 1}));
  REQUIRE(facs3.size() == 2);
  CHECK(facs3[0].degree() == 2);
  CHECK(facs3[1].degree() == 2);
  CHECK(mp_mul(facs3[0], facs3[1]).c == P(7, {1, 0, 0, 0, 1}).c);

  // Irreducible cubic stays whole: x^3+x+1 mod 2... use p=2 path.
  auto facs4 = mp_factor_squarefree(P(2, {1, 1, 0, 1}));
  REQUIRE(facs4.size() == 1);

  // Full factorization with multiplicities: x^2(x+1)^3 mod 3.
  ModPoly g = mp_mul(mp_mul(P(3, {0, 1}), P(3, {0, 1})),
                     mp_mul(mp_mul(P(3, {1, 1}), P(3, {1, 1})), P(3, {1, 1})));
  auto full = mp_factor(g);
  REQUIRE(full.size() == 2);
  bool gx = false, gx1 = false;
  for (auto& [h, m] : full) {
    if (h.c == P(3, {0, 1}).c && m == 2) gx = true;
    if (h.c == P(3, {1, 1}).c && m == 3) gx1 = true;
  }
  CHECK(gx);
  CHECK(gx1);
}

TEST_CASE("cyclotomic splitting mod p matches orders") {
  // Phi_5 mod p factors into phi(5)/f irreducibles of degree f = ord_5(p).
  // p=11: 11 = 1 mod 5 -> 4 linear factors. p=7: ord_5(7)=4 -> irreducible.
  ModPoly phi5_11 = P(11, {1, 1, 1, 1, 1});
  CHECK(mp_factor_squarefree(phi5_11).size() == 4);
  ModPoly phi5_7 = P(7, {1, 1, 1, 1, 1});
  CHECK(mp_factor_squarefree(phi5_7).size() == 1);
}

TEST_CASE("finite field arithmetic") {
  // F_9 = F_3[x]/(x^2+1).
  FqField F(3, P(3, {1, 0, 1}));
  CHECK(F.f == 2);
  CHECK(F.order() == 9);
  FqElem a = fq_from_poly(F, P(3, {1, 1}));  // 1 + x
  FqElem sq = fq_mul(F, a, a);               // (1+x)^2 = 1+2x+x^2 = 2x
  CHECK(sq.rep.c == P(3, {0, 2}).c);
  FqElem inv = fq_inv(F, a);
  CHECK(fq_mul(F, a, inv).rep.c == P(3, {1}).c);
  // Frobenius: (1+x)^3 = 1 + x^3 = 1 - x.
  FqElem fr = fq_frobenius(F, a);
  CHECK(fr.rep.c == P(3, {1, 2}).c);
  // a^(q-1) = 1.
  CHECK(fq_pow(F, a, Int(8)).rep.c == P(3, {1}).c);
}
