#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "heightcert/numfield.hpp"

using namespace hc;

TEST_CASE("field construction") {
  auto Q = make_rationals();
  CHECK(Q->degree == 1);

  auto K5 = make_quadratic(5);
  CHECK(K5->degree == 2);
  CHECK(K5->theta_half);  // theta = (1+sqrt 5)/2
  CHECK(K5->minpoly == ZPoly{Int(-1), Int(-1), Int(1)});  // x^2-x-1
  CHECK(K5->discriminant == 5);

  auto Ki = make_cyclotomic(4);
  CHECK(Ki->degree == 2);
  CHECK(Ki->minpoly == ZPoly{Int(1), Int(0), Int(1)});  // x^2+1
  CHECK(Ki->discriminant == -4);

  CHECK(make_cyclotomic(1)->degree == 1);
  CHECK(make_cyclotomic(2)->degree == 1);
  // Q(zeta_10) = Q(zeta_5)
  CHECK(same_field(make_cyclotomic(10), make_cyclotomic(5)));
  CHECK(make_cyclotomic(5)->degree == 4);
  CHECK(make_cyclotomic(9)->degree == 6);
  CHECK(make_cyclotomic(9)->discriminant == -19683);  // -3^9

  CHECK_THROWS(make_quadratic(0));
  CHECK_THROWS(make_quadratic(1));
  CHECK_THROWS(make_quadratic(12));
}

TEST_CASE("element arithmetic, norm, trace") {
  auto Ki = make_cyclotomic(4);
  FieldElement i = fe_theta(Ki);
  FieldElement one = fe_one(Ki);
  CHECK(fe_equal(fe_mul(i, i), fe_neg(one)));
  FieldElement z = fe_add(one, i);  // 1+i
  CHECK(fe_norm(z) == Rat(2));
  CHECK(fe_trace(z) == Rat(2));
  CHECK(fe_equal(fe_mul(z, fe_inv(z)), one));

  auto K5 = make_quadratic(5);
  FieldElement th = fe_theta(K5);  // (1+sqrt5)/2
  CHECK(fe_norm(th) == Rat(-1));   // unit
  CHECK(fe_trace(th) == Rat(1));
  CHECK(fe_equal(fe_mul(th, th), fe_add(th, fe_one(K5))));  // th^2 = th+1

  auto K9 = make_cyclotomic(9);
  FieldElement t9 = fe_theta(K9);
  CHECK(fe_equal(fe_pow(t9, 9), fe_one(K9)));
  CHECK(fe_norm(t9) == Rat(1));
  // N(1 - zeta_9) = Phi_9(1) = 3.
  CHECK(fe_norm(fe_sub(fe_one(K9), t9)) == Rat(3));
}

TEST_CASE("galois group and action") {
  auto Ki = make_cyclotomic(4);
  auto g = galois_group(Ki);
  REQUIRE(g.size() == 2);
  FieldElement i = fe_theta(Ki);
  CHECK(fe_equal(galois_apply(g[1], i), fe_neg(i)));  // conj(i) = -i

  auto K5 = make_cyclotomic(5);
  GaloisElement s{K5, 2};
  FieldElement z = fe_theta(K5);
  FieldElement z4 = galois_apply(s, galois_apply(s, z));
  CHECK(fe_equal(z4, fe_pow(z, 4)));
  CHECK(galois_order(s) == 4);
  // Commutativity.
  GaloisElement t{K5, 3};
  CHECK(galois_compose(s, t).c == galois_compose(t, s).c);

  auto Kq = make_quadratic(5);
  auto gq = galois_group(Kq);
  FieldElement th = fe_theta(Kq);
  FieldElement conj = galois_apply(gq[1], th);
  // theta + conj(theta) = trace = 1
  CHECK(fe_equal(fe_add(th, conj), fe_one(Kq)));
}

TEST_CASE("primes above p in Q(i)") {
  auto Ki = make_cyclotomic(4);
  auto p5 = primes_above(Ki, 5);
  REQUIRE(p5.size() == 2);
  CHECK(p5[0].e == 1);
  CHECK(p5[0].f == 1);
  auto p3 = primes_above(Ki, 3);
  REQUIRE(p3.size() == 1);
  CHECK(p3[0].e == 1);
  CHECK(p3[0].f == 2);
  auto p2 = primes_above(Ki, 2);
  REQUIRE(p2.size() == 1);
  CHECK(p2[0].e == 2);
  CHECK(p2[0].f == 1);
}

TEST_CASE("degree partition for all corpus fields, p <= 100") {
  std::vector<FieldRef> fields = {make_rationals(), make_cyclotomic(4),
                                  make_quadratic(5), make_quadratic(-5),
                                  make_cyclotomic(5), make_cyclotomic(9),
                                  make_cyclotomic(24)};
  for (const auto& K : fields) {
    for (long p = 2; p <= 100; ++p) {
      if (!is_prime(Int(p))) continue;
      long s = 0;
      for (const auto& P : primes_above(K, p)) s += P.e * P.f;
      CHECK(s == K->degree);
    }
  }
}

TEST_CASE("valuations in Q(i)") {
  auto Ki = make_cyclotomic(4);
  auto P2 = primes_above(Ki, 2)[0];
  FieldElement two = fe_from_rat(Ki, Rat(2));
  CHECK(valuation(two, P2) == 2);  // 2 = -i(1+i)^2
  FieldElement onei = fe_add(fe_one(Ki), fe_theta(Ki));
  CHECK(valuation(onei, P2) == 1);
  CHECK(valuation(fe_zero(Ki), P2) == VAL_INFINITY);
  CHECK(valuation(fe_div(fe_one(Ki), two), P2) == -2);

  // Split prime: v(2+i) = 1 at exactly one of the primes above 5.
  auto P5 = primes_above(Ki, 5);
  FieldElement a = fe_add(fe_from_rat(Ki, Rat(2)), fe_theta(Ki));
  long v0 = valuation(a, P5[0]), v1 = valuation(a, P5[1]);
  CHECK(((v0 == 1 && v1 == 0) || (v0 == 0 && v1 == 1)));
  FieldElement five = fe_from_rat(Ki, Rat(5));
  CHECK(valuation(five, P5[0]) == 1);
  CHECK(valuation(five, P5[1]) == 1);

  // v(p) = e at every prime above p, several fields.
  for (const auto& K : {make_cyclotomic(9), make_cyclotomic(24)}) {
    for (long p : {2L, 3L, 5L, 7L}) {
      FieldElement pe = fe_from_rat(K, Rat(p));
      for (const auto& P : primes_above(K, p)) CHECK(valuation(pe, P) == P.e);
    }
  }
}

TEST_CASE("ramified-split valuations in Q(zeta_24) at p=3") {
  auto K = make_cyclotomic(24);
  auto ps = primes_above(K, 3);
  REQUIRE(ps.size() == 2);
  CHECK(ps[0].e == 2);
  CHECK(ps[0].f == 2);
  FieldElement z = fe_theta(K);
  // 1 - zeta_24^8 = 1 - zeta_3 has valuation 1 at each prime above 3.
  FieldElement u = fe_sub(fe_one(K), fe_pow(z, 8));
  long s = 0;
  for (const auto& P : ps) {
    long v = valuation(u, P);
    CHECK(v >= 1);
    s += v * P.f;
  }
  // N(1-zeta_3) as computed in Q(zeta_24) is 3^4; sum f_i v_i = v_3(norm).
  CHECK(s == valuation_int(rat_num(fe_norm(u)), Int(3)));
}

TEST_CASE("abs_value oracles") {
  auto Ki = make_cyclotomic(4);
  auto v2 = places_above(Ki, 2)[0];
  FieldElement two = fe_from_rat(Ki, Rat(2));
  RealInterval a = abs_value(two, v2, 128);
  CHECK(a.lo_d() <= 0.5);
  CHECK(a.hi_d() >= 0.5);
  // |1+i| = 2^{-1/2} = q^{-1/[K_v:Q_v]} (the Remark-1.1 extremal value).
  FieldElement onei = fe_add(fe_one(Ki), fe_theta(Ki));
  CHECK(log_abs_finite_coeff(onei, v2) == Rat(-1, 2));

  auto Q = make_rationals();
  auto vinf = archimedean_places(Q)[0];
  FieldElement five = fe_from_rat(Q, Rat(5));
  RealInterval a5 = abs_value(five, vinf, 128);
  CHECK(a5.lo_d() <= 5.0);
  CHECK(a5.hi_d() >= 5.0);
  CHECK(a5.width_d() < 1e-30);
}

TEST_CASE("extremal value of Remark 1.1 at 20 finite places") {
  // max over generators {p, g(theta)} of |.|_v equals q^{-1/(ef)} exactly,
  // i.e. the minimum valuation among the generators is 1.
  std::vector<FieldRef> fields = {make_cyclotomic(4), make_quadratic(5),
                                  make_cyclotomic(5), make_cyclotomic(9)};
  int checked = 0;
  for (const auto& K : fields) {
    for (long p : {2L, 3L, 5L, 7L, 11L}) {
      for (const auto& P : primes_above(K, p)) {
        ZPoly g(P.factor.c.size());
        for (size_t i = 0; i < g.size(); ++i) g[i] = Int(P.factor.c[i]);
        FieldElement gen = fe_zero(K);
        {
          QPoly gp = qp_rem(qp_from_z(g), qp_from_z(K->minpoly));
          for (size_t i = 0; i < gp.size(); ++i) gen.c[i] = gp[i];
        }
        long vmin = P.e;  // valuation of p
        if (!gen.is_zero()) vmin = std::min(vmin, valuation(gen, P));
        CHECK(vmin == 1);
        ++checked;
      }
    }
  }
  CHECK(checked >= 20);
}

TEST_CASE("reduction to residue fields") {
  auto Ki = make_cyclotomic(4);
  auto P5 = primes_above(Ki, 5)[0];
  FieldElement th = fe_theta(Ki);
  FqElem r = reduce_element(th, P5);
  // Image is a root of x^2+1 mod 5, i.e. 2 or 3.
  const FqField& F = P5.resfield;
  FqElem sq = fq_mul(F, r, r);
  CHECK(fq_add(F, sq, fq_from_int(F, Int(1))).is_zero());
  CHECK(reduce_element(fe_one(Ki), P5).rep.c == std::vector<long>{1});
  CHECK(reduce_element(fe_from_rat(Ki, Rat(5)), P5).is_zero());
  // Ring homomorphism on a denominator-bearing integral element: 1/2 mod 5.
  FqElem half = reduce_element(fe_from_rat(Ki, Rat(1, 2)), P5);
  CHECK(fq_mul(F, half, fq_from_int(F, Int(2))).rep.c == std::vector<long>{1});
  // p-divisible denominator with positive valuation at the other prime:
  // (2+i)/5 * (2-i) = (2+i)(2-i)/5 = 1, so (2+i)/5 has valuation -1 at one
  // prime and +... at the other; reduction must reject the pole.
  FieldElement a = fe_add(fe_from_rat(Ki, Rat(2)), th);
  FieldElement pole = fe_mul_rat(a, Rat(1, 5));
  bool threw = false;
  long vp0 = valuation(pole, P5);
  try {
    reduce_element(pole, P5);
  } catch (const Error& e) {
    threw = true;
    CHECK(e.kind() == ErrorKind::Hypothesis);
  }
  CHECK(threw == (vp0 < 0));
}

TEST_CASE("frobenius acts as q-power map on residues") {
  auto K5 = make_cyclotomic(5);
  for (long p : {2L, 3L, 7L}) {
    GaloisElement s = frobenius_element(K5, p);
    CHECK(s.c == p % 5);
    FieldElement a = fe_add(fe_theta(K5), fe_from_rat(K5, Rat(2)));
    for (const auto& P : primes_above(K5, p)) {
      FqElem lhs = reduce_element(galois_apply(s, a), P);
      FqElem rhs = fq_pow(P.resfield, reduce_element(a, P), Int(p));
      CHECK(lhs == rhs);
    }
  }
  // Q(zeta_5), p=2 has order 4.
  CHECK(galois_order(frobenius_element(K5, 2)) == 4);
  // Q(sqrt 5), p=11 splits: identity.
  CHECK(frobenius_element(make_quadratic(5), 11).is_identity());
  CHECK(!frobenius_element(make_quadratic(5), 2).is_identity());
  CHECK_THROWS(frobenius_element(K5, 5));
}

TEST_CASE("inertia elements") {
  auto K9 = make_cyclotomic(9);
  GaloisElement t = inertia_tau(K9, 3);
  CHECK(t.c == 4);  // fixes zeta_3 (4 = 1 mod 3), order 3
  CHECK(galois_order(t) == 3);
  CHECK(same_field(fixed_field(t), make_cyclotomic(3)));

  auto K3 = make_cyclotomic(3);
  GaloisElement t3 = inertia_tau(K3, 3);
  CHECK(t3.c == 2);
  CHECK(same_field(fixed_field(t3), make_rationals()));

  auto Kq = make_quadratic(5);
  GaloisElement tq = inertia_tau(Kq, 5);
  CHECK(tq.c == -1);
  CHECK(same_field(fixed_field(tq), make_rationals()));

  CHECK_THROWS(inertia_tau(K9, 2));
  CHECK_THROWS(inertia_tau(Kq, 3));
}

TEST_CASE("ideal norms via lattice indices") {
  auto Ki = make_cyclotomic(4);
  CHECK(ideal_norm_of_generators({fe_one(Ki)}) == 1);
  CHECK(ideal_norm_of_generators({fe_from_rat(Ki, Rat(2))}) == 4);
  FieldElement onei = fe_add(fe_one(Ki), fe_theta(Ki));
  CHECK(ideal_norm_of_generators({onei}) == 2);
  // (2, 1+i) = (1+i): norm 2.
  CHECK(ideal_norm_of_generators({fe_from_rat(Ki, Rat(2)), onei}) == 2);
  // Coprime generators give the unit ideal.
  FieldElement a = fe_add(fe_from_rat(Ki, Rat(2)), fe_theta(Ki));
  FieldElement b = fe_sub(fe_from_rat(Ki, Rat(2)), fe_theta(Ki));
  CHECK(ideal_norm_of_generators({a, b}) == 1);
}

TEST_CASE("extension info") {
  auto e1 = extension_info(make_cyclotomic(9), 3);
  CHECK(e1.e == 6);
  CHECK(e1.k == 2);
  auto e2 = extension_info(make_quadratic(5), 5);
  CHECK(e2.e == 2);
  CHECK(e2.k == 1);
  auto e3 = extension_info(make_cyclotomic(5), 2);
  CHECK(e3.e == 1);
  CHECK(e3.k == 0);
  auto e4 = extension_info(make_quadratic(-1), 2);
  CHECK(e4.e == 2);
  CHECK(e4.k == 2);  // conductor 4
  auto e5 = extension_info(make_quadratic(2), 2);
  CHECK(e5.e == 2);
  CHECK(e5.k == 3);  // conductor 8
}

TEST_CASE("subfield lift and restrict round-trip") {
  auto K15 = make_cyclotomic(15);
  auto K5 = make_cyclotomic(5);
  FieldElement a = fe_add(fe_theta(K5), fe_from_rat(K5, Rat(3, 7)));
  FieldElement lifted = lift_from_subfield(K15, a);
  FieldElement back = restrict_to_subfield(lifted, K5);
  CHECK(fe_equal(back, a));
  // N_{K15/Q}(a) = N_{K5/Q}(a)^{[K15:K5]} = N(a)^2.
  CHECK(fe_norm(lifted) == fe_norm(a) * fe_norm(a));
  // An element not in the subfield is rejected.
  CHECK_THROWS(restrict_to_subfield(fe_theta(K15), K5));
}

static double interval_mid(const RealInterval& r) { return r.mid_d(); }

TEST_CASE("product formula on random elements") {
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<long> coef(-9, 9);
  std::vector<FieldRef> fields = {make_rationals(), make_cyclotomic(4),
                                  make_quadratic(5), make_cyclotomic(5),
                                  make_cyclotomic(9)};
  for (const auto& K : fields) {
    for (int trial = 0; trial < 10; ++trial) {
      FieldElement a = fe_zero(K);
      bool nz = false;
      for (long i = 0; i < K->degree; ++i) {
        long num = coef(rng);
        long den = 1 + std::abs(coef(rng));
        a.c[(size_t)i] = Rat(num, den);
        a.c[(size_t)i].canonicalize();
        if (num != 0) nz = true;
      }
      if (!nz) a = fe_one(K);
      RealInterval sum = RealInterval::exact(0, 192);
      for (const auto& v : archimedean_places(K)) {
        RealInterval term = abs_value(a, v, 192).log();
        sum = sum + RealInterval::from_rat(v.nv(), 192) * term;
      }
      for (long p : finite_support(a)) {
        for (const auto& v : places_above(K, p)) {
          Rat coeff = log_abs_finite_coeff(a, v) * v.nv();
          RealInterval lp = RealInterval::from_int(Int(p), 192).log();
          sum = sum + RealInterval::from_rat(coeff, 192) * lp;
        }
      }
      CHECK(std::abs(interval_mid(sum)) < 1e-9);
      CHECK(sum.lo_d() <= 1e-12);
      CHECK(sum.hi_d() >= -1e-12);
    }
  }
}

TEST_CASE("archimedean galois invariance of the absolute-value multiset") {
  auto K = make_cyclotomic(5);
  FieldElement a = fe_add(fe_mul_rat(fe_theta(K), Rat(2)), fe_from_rat(K, Rat(1, 3)));
  for (const auto& s : galois_group(K)) {
    // Product over archimedean places of |.|^{d_v} is |Norm|; invariant.
    FieldElement sa = galois_apply(s, a);
    bool norm_invariant = fe_norm(sa) == fe_norm(a) || fe_norm(sa) == -fe_norm(a);
    CHECK(norm_invariant);
    std::vector<double> m1, m2;
    for (const auto& v : archimedean_places(K)) {
      m1.push_back(interval_mid(abs_value(a, v, 128)));
      m2.push_back(interval_mid(abs_value(sa, v, 128)));
    }
    std::sort(m1.begin(), m1.end());
    std::sort(m2.begin(), m2.end());
    for (size_t i = 0; i < m1.size(); ++i)
      CHECK(m1[i] == doctest::Approx(m2[i]).epsilon(1e-20));
  }
}

TEST_CASE("factor_int") {
  auto f = factor_int(Int(2) * 3 * 3 * 2099);
  REQUIRE(f.size() == 3);
  CHECK(f[0].first == 2);
  CHECK(f[0].second == 1);
  CHECK(f[1].first == 3);
  CHECK(f[1].second == 2);
  CHECK(f[2].first == 2099);
  // A product of two 11-digit primes exercises the rho path.
  Int a("10000000019"), b("10000000033");
  auto g = factor_int(a * b);
  REQUIRE(g.size() == 2);
  CHECK(g[0].first == a);
  CHECK(g[1].first == b);
}
