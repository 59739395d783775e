#include "heightcert/ellcurve.hpp"

#include <algorithm>

namespace hc {

namespace {

FieldElement in_field(const FieldElement& c, const FieldRef& L) {
  if (same_field(c.K, L)) return c;
  if (c.is_rational()) return fe_from_rat(L, c.as_rat());
  return lift_from_subfield(L, c);
}

// Coefficients as rational integers; rejects non-rational curves where a
// degree-one computation is required.
std::array<Int, 5> int_coeffs(const EllipticCurve& E) {
  std::array<const FieldElement*, 5> cs = {&E.a1, &E.a2, &E.a3, &E.a4, &E.a6};
  std::array<Int, 5> out;
  for (size_t i = 0; i < 5; ++i) {
    if (!cs[i]->is_rational())
      throw hypothesis_error("curve is not defined over Q (degree-one data required)");
    Rat r = cs[i]->as_rat();
    if (r.get_den() != 1)
      throw hypothesis_error("curve coefficients are not integral");
    out[i] = r.get_num();
  }
  return out;
}

std::array<Rat, 5> rat_coeffs_in(const EllipticCurve& E) {
  std::array<const FieldElement*, 5> cs = {&E.a1, &E.a2, &E.a3, &E.a4, &E.a6};
  std::array<Rat, 5> out;
  for (size_t i = 0; i < 5; ++i) {
    if (!cs[i]->is_rational())
      throw hypothesis_error("operation requires a curve defined over Q");
    out[i] = cs[i]->as_rat();
  }
  return out;
}

long legendre(long a, long p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  long s = powmod_long(a, (p - 1) / 2, p);
  return s == 1 ? 1 : -1;
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction.

EllipticCurve make_curve(const FieldRef& K, const FieldElement& a1,
                         const FieldElement& a2, const FieldElement& a3,
                         const FieldElement& a4, const FieldElement& a6,
                         bool cm, long cm_disc) {
  for (const FieldElement* c : {&a1, &a2, &a3, &a4, &a6}) {
    if (!same_field(c->K, K)) throw internal_error("make_curve: field mismatch");
    if (!fe_is_integral(*c))
      throw hypothesis_error("curve coefficients must be integral");
  }
  EllipticCurve E;
  E.K = K;
  E.a1 = a1; E.a2 = a2; E.a3 = a3; E.a4 = a4; E.a6 = a6;
  auto mul = fe_mul;
  E.b2 = fe_add(mul(a1, a1), fe_mul_rat(a2, Rat(4)));
  E.b4 = fe_add(fe_mul_rat(a4, Rat(2)), mul(a1, a3));
  E.b6 = fe_add(mul(a3, a3), fe_mul_rat(a6, Rat(4)));
  E.b8 = fe_add(fe_add(mul(mul(a1, a1), a6), fe_mul_rat(mul(a2, a6), Rat(4))),
                fe_sub(mul(a2, mul(a3, a3)),
                       fe_add(mul(mul(a1, a3), a4), mul(a4, a4))));
  E.c4 = fe_sub(mul(E.b2, E.b2), fe_mul_rat(E.b4, Rat(24)));
  E.c6 = fe_add(fe_sub(fe_mul_rat(mul(E.b2, mul(E.b2, E.b2)), Rat(-1)),
                       fe_mul_rat(E.b6, Rat(216))),
                fe_mul_rat(mul(E.b2, E.b4), Rat(36)));
  E.delta = fe_add(
      fe_sub(fe_mul_rat(mul(mul(E.b2, E.b2), E.b8), Rat(-1)),
             fe_add(fe_mul_rat(mul(E.b4, mul(E.b4, E.b4)), Rat(8)),
                    fe_mul_rat(mul(E.b6, E.b6), Rat(27)))),
      fe_mul_rat(mul(E.b2, mul(E.b4, E.b6)), Rat(9)));
  if (E.delta.is_zero()) throw hypothesis_error("singular curve: discriminant is zero");
  E.j = fe_div(mul(E.c4, mul(E.c4, E.c4)), E.delta);
  E.bad_primes = finite_support(E.delta);
  std::sort(E.bad_primes.begin(), E.bad_primes.end());
  E.cm = cm;
  E.cm_disc = cm_disc;
  return E;
}

EllipticCurve make_curve_q(long a1, long a2, long a3, long a4, long a6,
                           bool cm, long cm_disc) {
  auto Q = make_rationals();
  auto f = [&](long v) { return fe_from_rat(Q, Rat(v)); };
  return make_curve(Q, f(a1), f(a2), f(a3), f(a4), f(a6), cm, cm_disc);
}

// ---------------------------------------------------------------------------
// Points and group law.

ECPoint ec_infinity(const FieldRef& L) {
  ECPoint P;
  P.L = L;
  P.inf = true;
  P.x = fe_zero(L);
  P.y = fe_zero(L);
  return P;
}

bool ec_on_curve(const EllipticCurve& E, const ECPoint& P) {
  if (P.inf) return true;
  const FieldRef& L = P.L;
  FieldElement a1 = in_field(E.a1, L), a2 = in_field(E.a2, L),
               a3 = in_field(E.a3, L), a4 = in_field(E.a4, L),
               a6 = in_field(E.a6, L);
  FieldElement lhs = fe_add(fe_mul(P.y, P.y),
                            fe_add(fe_mul(fe_mul(a1, P.x), P.y), fe_mul(a3, P.y)));
  FieldElement rhs = fe_add(
      fe_mul(P.x, fe_mul(P.x, P.x)),
      fe_add(fe_mul(a2, fe_mul(P.x, P.x)), fe_add(fe_mul(a4, P.x), a6)));
  return fe_equal(lhs, rhs);
}

ECPoint ec_affine(const EllipticCurve& E, const FieldElement& x,
                  const FieldElement& y) {
  if (!same_field(x.K, y.K)) throw internal_error("ec_affine: field mismatch");
  ECPoint P;
  P.L = x.K;
  P.inf = false;
  P.x = x;
  P.y = y;
  if (!ec_on_curve(E, P))
    throw hypothesis_error("point does not satisfy the Weierstrass equation");
  return P;
}

bool ec_equal(const ECPoint& P, const ECPoint& Q) {
  if (!same_field(P.L, Q.L)) throw internal_error("ec_equal: field mismatch");
  if (P.inf || Q.inf) return P.inf == Q.inf;
  return fe_equal(P.x, Q.x) && fe_equal(P.y, Q.y);
}

ECPoint ec_neg(const EllipticCurve& E, const ECPoint& P) {
  if (P.inf) return P;
  const FieldRef& L = P.L;
  FieldElement a1 = in_field(E.a1, L), a3 = in_field(E.a3, L);
  ECPoint R = P;
  R.y = fe_neg(fe_add(P.y, fe_add(fe_mul(a1, P.x), a3)));
  return R;
}

ECPoint ec_add(const EllipticCurve& E, const ECPoint& P, const ECPoint& Q) {
  if (!same_field(P.L, Q.L)) throw internal_error("ec_add: field mismatch");
  if (P.inf) return Q;
  if (Q.inf) return P;
  const FieldRef& L = P.L;
  FieldElement a1 = in_field(E.a1, L), a2 = in_field(E.a2, L),
               a3 = in_field(E.a3, L), a4 = in_field(E.a4, L);
  FieldElement lam, nu;
  if (!fe_equal(P.x, Q.x)) {
    lam = fe_div(fe_sub(Q.y, P.y), fe_sub(Q.x, P.x));
    nu = fe_sub(P.y, fe_mul(lam, P.x));
  } else {
    // Same x: either inverses or doubling.
    FieldElement negy = fe_neg(fe_add(P.y, fe_add(fe_mul(a1, P.x), a3)));
    if (fe_equal(Q.y, negy)) return ec_infinity(L);
    FieldElement num = fe_add(
        fe_mul_rat(fe_mul(P.x, P.x), Rat(3)),
        fe_add(fe_mul_rat(fe_mul(a2, P.x), Rat(2)),
               fe_sub(a4, fe_mul(a1, P.y))));
    FieldElement den = fe_add(fe_mul_rat(P.y, Rat(2)),
                              fe_add(fe_mul(a1, P.x), a3));
    lam = fe_div(num, den);
    nu = fe_sub(P.y, fe_mul(lam, P.x));
  }
  ECPoint R;
  R.L = L;
  R.inf = false;
  R.x = fe_sub(fe_add(fe_mul(lam, lam), fe_mul(a1, lam)),
               fe_add(a2, fe_add(P.x, Q.x)));
  R.y = fe_neg(fe_add(fe_mul(fe_add(lam, a1), R.x), fe_add(nu, a3)));
  return R;
}

ECPoint ec_sub(const EllipticCurve& E, const ECPoint& P, const ECPoint& Q) {
  return ec_add(E, P, ec_neg(E, Q));
}

ECPoint ec_mul_int(const EllipticCurve& E, const Int& n, const ECPoint& P) {
  Int m = n;
  ECPoint base = P;
  if (m < 0) {
    m = -m;
    base = ec_neg(E, P);
  }
  ECPoint acc = ec_infinity(P.L);
  size_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
  if (m == 0) return acc;
  for (size_t i = bits; i-- > 0;) {
    acc = ec_add(E, acc, acc);
    if (mpz_tstbit(m.get_mpz_t(), i)) acc = ec_add(E, acc, base);
  }
  return acc;
}

ECPoint ec_galois(const EllipticCurve& E, const GaloisElement& s, const ECPoint& P) {
  (void)E;
  if (P.inf) return P;
  ECPoint R = P;
  R.x = galois_apply(s, P.x);
  R.y = galois_apply(s, P.y);
  return R;
}

ECPoint ec_apply_poly(const EllipticCurve& E, const GaloisElement& s,
                      const std::vector<Int>& coeffs, const ECPoint& P) {
  ECPoint acc = ec_infinity(P.L);
  ECPoint sp = P;
  for (size_t j = 0; j < coeffs.size(); ++j) {
    acc = ec_add(E, acc, ec_mul_int(E, coeffs[j], sp));
    if (j + 1 < coeffs.size()) sp = ec_galois(E, s, sp);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Reduction.

RedCurve reduce_curve(const EllipticCurve& E, const PrimeIdeal& P) {
  if (std::find(E.bad_primes.begin(), E.bad_primes.end(), P.p) != E.bad_primes.end())
    throw hypothesis_error("bad-reduction prime " + std::to_string(P.p) + " rejected");
  RedCurve out;
  out.pr = P;
  out.a1 = reduce_element(in_field(E.a1, P.K), P);
  out.a2 = reduce_element(in_field(E.a2, P.K), P);
  out.a3 = reduce_element(in_field(E.a3, P.K), P);
  out.a4 = reduce_element(in_field(E.a4, P.K), P);
  out.a6 = reduce_element(in_field(E.a6, P.K), P);
  return out;
}

RedPoint reduce_point(const EllipticCurve& E, const ECPoint& P,
                      const PrimeIdeal& pr) {
  if (std::find(E.bad_primes.begin(), E.bad_primes.end(), pr.p) != E.bad_primes.end())
    throw hypothesis_error("bad-reduction prime " + std::to_string(pr.p) + " rejected");
  RedPoint out;
  if (P.inf) return out;
  if (!same_field(P.L, pr.K)) throw internal_error("reduce_point: field mismatch");
  long vx = valuation(P.x, pr), vy = valuation(P.y, pr);
  if (vx >= 0 && vy >= 0) {
    out.inf = false;
    out.x = reduce_element(P.x, pr);
    out.y = reduce_element(P.y, pr);
    return out;
  }
  // Kernel of reduction: projectively [x : y : 1] ~ [x/y : 1 : 1/y] -> O-tilde.
  if (!(vx < 0 && vy < vx && 3 * vx == 2 * vy))
    throw internal_error("reduce_point: unexpected pole pattern at good prime");
  return out;  // O-tilde
}

bool red_equal(const RedPoint& a, const RedPoint& b) {
  if (a.inf || b.inf) return a.inf == b.inf;
  return a.x == b.x && a.y == b.y;
}

bool red_on_curve(const RedCurve& Et, const RedPoint& a) {
  if (a.inf) return true;
  const FqField& F = Et.pr.resfield;
  FqElem lhs = fq_add(F, fq_mul(F, a.y, a.y),
                      fq_add(F, fq_mul(F, fq_mul(F, Et.a1, a.x), a.y),
                             fq_mul(F, Et.a3, a.y)));
  FqElem rhs = fq_add(
      F, fq_mul(F, a.x, fq_mul(F, a.x, a.x)),
      fq_add(F, fq_mul(F, Et.a2, fq_mul(F, a.x, a.x)),
             fq_add(F, fq_mul(F, Et.a4, a.x), Et.a6)));
  return lhs == rhs;
}

RedPoint red_neg(const RedCurve& Et, const RedPoint& a) {
  if (a.inf) return a;
  const FqField& F = Et.pr.resfield;
  RedPoint r = a;
  r.y = fq_neg(F, fq_add(F, a.y, fq_add(F, fq_mul(F, Et.a1, a.x), Et.a3)));
  return r;
}

RedPoint red_add(const RedCurve& Et, const RedPoint& a, const RedPoint& b) {
  if (a.inf) return b;
  if (b.inf) return a;
  const FqField& F = Et.pr.resfield;
  FqElem lam, nu;
  FqElem two = fq_from_int(F, Int(2)), three = fq_from_int(F, Int(3));
  if (a.x != b.x) {
    lam = fq_mul(F, fq_sub(F, b.y, a.y), fq_inv(F, fq_sub(F, b.x, a.x)));
    nu = fq_sub(F, a.y, fq_mul(F, lam, a.x));
  } else {
    FqElem negy = fq_neg(F, fq_add(F, a.y, fq_add(F, fq_mul(F, Et.a1, a.x), Et.a3)));
    if (b.y == negy) return RedPoint{};
    FqElem num = fq_add(
        F, fq_mul(F, three, fq_mul(F, a.x, a.x)),
        fq_add(F, fq_mul(F, two, fq_mul(F, Et.a2, a.x)),
               fq_sub(F, Et.a4, fq_mul(F, Et.a1, a.y))));
    FqElem den = fq_add(F, fq_mul(F, two, a.y),
                        fq_add(F, fq_mul(F, Et.a1, a.x), Et.a3));
    lam = fq_mul(F, num, fq_inv(F, den));
    nu = fq_sub(F, a.y, fq_mul(F, lam, a.x));
  }
  RedPoint r;
  r.inf = false;
  r.x = fq_sub(F, fq_add(F, fq_mul(F, lam, lam), fq_mul(F, Et.a1, lam)),
               fq_add(F, Et.a2, fq_add(F, a.x, b.x)));
  r.y = fq_neg(F, fq_add(F, fq_mul(F, fq_add(F, lam, Et.a1), r.x),
                         fq_add(F, nu, Et.a3)));
  return r;
}

RedPoint red_mul_int(const RedCurve& Et, const Int& n, const RedPoint& a) {
  Int m = n;
  RedPoint base = a;
  if (m < 0) {
    m = -m;
    base = red_neg(Et, a);
  }
  RedPoint acc;
  if (m == 0) return acc;
  size_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    acc = red_add(Et, acc, acc);
    if (mpz_tstbit(m.get_mpz_t(), i)) acc = red_add(Et, acc, base);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Counting and Frobenius data.

std::pair<Int, long> count_points(const EllipticCurve& E, long p, long budget) {
  auto a = int_coeffs(E);
  if (std::find(E.bad_primes.begin(), E.bad_primes.end(), p) != E.bad_primes.end())
    throw hypothesis_error("bad-reduction prime " + std::to_string(p) + " rejected");
  if (p > budget)
    throw hypothesis_error("prime " + std::to_string(p) +
                           " above enumeration budget; use diagnostic mode");
  Int N(1);  // the point at infinity
  if (p == 2) {
    for (long x = 0; x < 2; ++x)
      for (long y = 0; y < 2; ++y) {
        Int lhs = y * y + a[0] * x * y + a[2] * y;
        Int rhs = x * Int(x) * x + a[1] * x * x + a[3] * x + a[4];
        if (((lhs - rhs) % 2) == 0) N += 1;
      }
  } else {
    // Complete the square: (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6.
    Int B2 = a[0] * a[0] + 4 * a[1];
    Int B4 = 2 * a[3] + a[0] * a[2];
    Int B6 = a[2] * a[2] + 4 * a[4];
    long b2 = mpz_fdiv_ui(B2.get_mpz_t(), (unsigned long)p);
    long b4 = mpz_fdiv_ui(B4.get_mpz_t(), (unsigned long)p);
    long b6 = mpz_fdiv_ui(B6.get_mpz_t(), (unsigned long)p);
    for (long x = 0; x < p; ++x) {
      long u = ((4 * x) % p + b2) % p;  // horner: ((4x + b2)x + 2b4)x + b6
      u = (u * x + (2 * b4) % p) % p;
      u = (u * x + b6) % p;
      N += 1 + legendre(u, p);
    }
  }
  Int ap_big = Int(p) + 1 - N;
  if (ap_big * ap_big > 4 * Int(p))
    throw internal_error("Hasse bound violated by point count");
  long a_p = (long)ap_big.get_si();
  return {N, a_p};
}

Int count_points_ext(const EllipticCurve& E, long p, long f, long budget) {
  long a_p = count_points(E, p, budget).second;
  // #E(F_{p^f}) = p^f + 1 - s_f, s_k = a_p s_{k-1} - p s_{k-2}.
  Int s0(2), s1(a_p);
  if (f == 0) throw internal_error("count_points_ext: f must be >= 1");
  Int s = (f == 1) ? s1 : Int(0);
  for (long k = 2; k <= f; ++k) {
    s = a_p * s1 - Int(p) * s0;
    s0 = s1;
    s1 = s;
  }
  if (f == 1) s = Int(a_p);
  return pow_int(Int(p), (unsigned long)f) + 1 - s;
}

FrobeniusData frobenius_poly(const EllipticCurve& E, long p, long budget) {
  FrobeniusData out;
  out.p = p;
  out.a_p = count_points(E, p, budget).second;
  out.coeffs = {Int(p), Int(-out.a_p), Int(1)};
  if (Int(out.a_p) * out.a_p > 4 * Int(p))
    throw internal_error("Frobenius trace violates the Riemann hypothesis bound");
  for (const Int& c : out.coeffs)
    if (abs(c) > 4 * Int(p))
      throw internal_error("Frobenius coefficient bound |a_i| <= 4q violated");
  return out;
}

Int resultant_with_cyclotomic(const FrobeniusData& phi, long m) {
  if (m < 1) throw hypothesis_error("resultant_with_cyclotomic: m must be >= 1");
  QPoly f = {Rat(phi.coeffs[0]), Rat(phi.coeffs[1]), Rat(phi.coeffs[2])};
  QPoly g((size_t)m + 1, Rat(0));
  g[0] = Rat(-1);
  g[(size_t)m] = Rat(1);
  Rat r = qp_resultant(f, g);
  if (r.get_den() != 1) throw internal_error("non-integral integer resultant");
  if (sgn(r) == 0)
    throw internal_error("Res(Phi_p, X^m - 1) vanished; contradicts |alpha| = sqrt(p)");
  return r.get_num();
}

bool is_ordinary(const EllipticCurve& E, long p, long budget) {
  long a_p = count_points(E, p, budget).second;
  return a_p % p != 0;
}

bool frobenius_annihilates(const EllipticCurve& E, const ECPoint& P, long p,
                           const PrimeIdeal& pr) {
  const FieldRef& L = P.L;
  if (extension_info(L, p).e != 1)
    throw hypothesis_error("prime " + std::to_string(p) + " is ramified in " + L->name());
  if (pr.p != p) throw hypothesis_error("prime ideal does not lie above p");
  FrobeniusData phi = frobenius_poly(E, p);
  GaloisElement sigma = frobenius_element(L, p);
  ECPoint Q = ec_apply_poly(E, sigma, {phi.coeffs[0], phi.coeffs[1], phi.coeffs[2]}, P);
  return reduce_point(E, Q, pr).inf;
}

TorsionResult torsion_test(const EllipticCurve& E, const ECPoint& P, long p) {
  const FieldRef& L = P.L;
  if (extension_info(L, p).e != 1)
    throw hypothesis_error("prime " + std::to_string(p) + " is ramified in " + L->name());
  FrobeniusData phi = frobenius_poly(E, p);
  GaloisElement sigma = frobenius_element(L, p);
  TorsionResult out;
  out.Q = ec_apply_poly(E, sigma, {phi.coeffs[0], phi.coeffs[1], phi.coeffs[2]}, P);
  if (!out.Q.inf) {
    out.is_torsion = false;
    out.witness_r = 0;
    return out;
  }
  long m = galois_order(sigma);
  out.witness_r = resultant_with_cyclotomic(phi, m);
  if (!ec_mul_int(E, abs(out.witness_r), P).inf)
    throw internal_error("torsion witness failed: [r]P != O despite Phi_p(sigma)P = O");
  out.is_torsion = true;
  return out;
}

// ---------------------------------------------------------------------------
// Division polynomials.

QPoly division_poly_x(const EllipticCurve& E, long n) {
  if (n < 0) throw internal_error("division_poly_x: n must be >= 0");
  auto a = rat_coeffs_in(E);
  Rat b2 = a[0] * a[0] + 4 * a[1];
  Rat b4 = 2 * a[3] + a[0] * a[2];
  Rat b6 = a[2] * a[2] + 4 * a[4];
  Rat b8 = a[0] * a[0] * a[4] + 4 * a[1] * a[4] - a[0] * a[2] * a[3] +
           a[1] * a[2] * a[2] - a[3] * a[3];
  QPoly T = {b6, 2 * b4, b2, Rat(4)};  // psi_2^2
  QPoly T2 = qp_mul(T, T);
  std::vector<QPoly> P((size_t)std::max<long>(n + 1, 5));
  P[0] = {};
  P[1] = {Rat(1)};
  P[2] = {Rat(1)};
  P[3] = {b8, 3 * b6, 3 * b4, b2, Rat(3)};
  P[4] = {b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, 10 * b8, 10 * b6,
          5 * b4, b2, Rat(2)};
  for (long k = 5; k <= n; ++k) {
    if (k % 2 == 1) {
      long m = (k - 1) / 2;
      QPoly t1 = qp_mul(P[(size_t)(m + 2)],
                        qp_mul(P[(size_t)m], qp_mul(P[(size_t)m], P[(size_t)m])));
      QPoly t2 = qp_mul(P[(size_t)(m - 1)],
                        qp_mul(P[(size_t)(m + 1)],
                               qp_mul(P[(size_t)(m + 1)], P[(size_t)(m + 1)])));
      if (m % 2 == 0)
        P[(size_t)k] = qp_sub(qp_mul(t1, T2), t2);
      else
        P[(size_t)k] = qp_sub(t1, qp_mul(t2, T2));
    } else {
      long m = k / 2;
      QPoly t1 = qp_mul(P[(size_t)(m + 2)],
                        qp_mul(P[(size_t)(m - 1)], P[(size_t)(m - 1)]));
      QPoly t2 = qp_mul(P[(size_t)(m - 2)],
                        qp_mul(P[(size_t)(m + 1)], P[(size_t)(m + 1)]));
      P[(size_t)k] = qp_mul(P[(size_t)m], qp_sub(t1, t2));
    }
  }
  return P[(size_t)n];
}

QPoly division_poly_sq(const EllipticCurve& E, long n) {
  auto a = rat_coeffs_in(E);
  QPoly Pn = division_poly_x(E, n);
  QPoly sq = qp_mul(Pn, Pn);
  if (n % 2 == 0) {
    Rat b2 = a[0] * a[0] + 4 * a[1];
    Rat b4 = 2 * a[3] + a[0] * a[2];
    Rat b6 = a[2] * a[2] + 4 * a[4];
    sq = qp_mul(sq, QPoly{b6, 2 * b4, b2, Rat(4)});
  }
  return sq;
}

std::vector<ECPoint> torsion_points_over(const EllipticCurve& E,
                                         const FieldRef& L, long n) {
  if (n < 1) throw internal_error("torsion_points_over: n must be >= 1");
  std::vector<ECPoint> out = {ec_infinity(L)};
  if (n == 1) return out;
  auto a = rat_coeffs_in(E);
  QPoly sq = division_poly_sq(E, n);
  if (qp_degree(sq) != n * n - 1)
    throw internal_error("division polynomial degree mismatch");
  ZPoly f = zp_from_q_primitive(sq);
  for (const FieldElement& x0 : roots_in_field(f, L)) {
    // y^2 + (a1 x0 + a3) y - (x0^3 + a2 x0^2 + a4 x0 + a6) = 0 over L.
    FieldElement a1x = fe_add(fe_mul_rat(x0, a[0]), fe_from_rat(L, a[2]));
    FieldElement rhs = fe_add(
        fe_mul(x0, fe_mul(x0, x0)),
        fe_add(fe_mul_rat(fe_mul(x0, x0), a[1]),
               fe_add(fe_mul_rat(x0, a[3]), fe_from_rat(L, a[4]))));
    LPoly quad = {fe_neg(rhs), a1x, fe_one(L)};
    for (const FieldElement& y0 : lp_quadratic_roots(quad)) {
      ECPoint P = ec_affine(E, x0, y0);
      if (!ec_mul_int(E, Int(n), P).inf)
        throw internal_error("division polynomial root is not n-torsion");
      out.push_back(P);
    }
  }
  return out;
}

PTorsionCheck p_torsion_check(const EllipticCurve& E, const FieldRef& L, long p,
                              long division_poly_cap) {
  PTorsionCheck out;
  out.witness = ec_infinity(L);
  if (p <= division_poly_cap) {
    out.method = "division-poly";
    auto pts = torsion_points_over(E, L, p);
    out.trivial = pts.size() == 1;
    if (!out.trivial) out.witness = pts[1];
    return out;
  }
  // Torsion prime to the residue characteristic injects into the reduction
  // at any good prime, so p not dividing #E~(k_Q) proves E(L)[p] = 0.
  out.method = "reduction-injection";
  for (long q = 2; q <= 1000; ++q) {
    if (!is_prime(Int(q)) || q == p) continue;
    if (std::find(E.bad_primes.begin(), E.bad_primes.end(), q) != E.bad_primes.end())
      continue;
    for (const PrimeIdeal& Q : primes_above(L, q)) {
      Int N = count_points_ext(E, q, Q.f);
      if (N % p != 0) {
        out.trivial = true;
        out.aux_prime = q;
        return out;
      }
      break;  // all primes above q share f in an abelian field
    }
  }
  throw hypothesis_error(
      "unable to decide E(L)[p] = 0 within the auxiliary-prime budget");
}

GoodPrimeReport select_good_prime(const EllipticCurve& E, const FieldRef& L,
                                  CertMode mode, long start,
                                  double theorem_threshold, long search_bound) {
  GoodPrimeReport rep;
  for (long p = std::max(start, 2L); p <= search_bound; ++p) {
    if (!is_prime(Int(p))) continue;
    if (std::find(E.bad_primes.begin(), E.bad_primes.end(), p) != E.bad_primes.end()) {
      rep.rejected.push_back({p, "bad reduction"});
      continue;
    }
    if (extension_info(L, p).e != 1) {
      rep.rejected.push_back({p, "ramified in " + L->name()});
      continue;
    }
    if (mode == CertMode::Theorem && (double)p <= theorem_threshold) {
      rep.rejected.push_back({p, "below theorem-mode threshold exp(B+1)"});
      continue;
    }
    if (E.cm) {
      if (!is_ordinary(E, p)) {
        rep.rejected.push_back({p, "supersingular (CM route needs ordinary)"});
        continue;
      }
      rep.p = p;
      rep.used_cm_route = true;
      return rep;
    }
    PTorsionCheck chk = p_torsion_check(E, L, p);
    if (!chk.trivial) {
      rep.rejected.push_back({p, "nontrivial p-torsion in E(L)"});
      continue;
    }
    rep.p = p;
    rep.torsion_method = chk.method;
    rep.aux_prime = chk.aux_prime;
    return rep;
  }
  throw hypothesis_error(
      "good-prime search budget exceeded; use diagnostic mode or raise the bound");
}

// ---------------------------------------------------------------------------
// Formal group.

namespace {

using Ser = std::vector<Rat>;  // truncated power series, index = exponent

Ser ser_mul(const Ser& a, const Ser& b, size_t M) {
  Ser out(M + 1, Rat(0));
  for (size_t i = 0; i < a.size() && i <= M; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (size_t j = 0; j < b.size() && i + j <= M; ++j)
      out[i + j] += a[i] * b[j];
  }
  return out;
}

Ser ser_add(const Ser& a, const Ser& b, size_t M) {
  Ser out(M + 1, Rat(0));
  for (size_t i = 0; i < a.size() && i <= M; ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size() && i <= M; ++i) out[i] += b[i];
  return out;
}

Ser ser_shift(const Ser& a, size_t k, size_t M) {
  Ser out(M + 1, Rat(0));
  for (size_t i = 0; i + k <= M && i < a.size(); ++i) out[i + k] = a[i];
  return out;
}

Ser ser_scale(const Ser& a, const Rat& s, size_t M) {
  Ser out(M + 1, Rat(0));
  for (size_t i = 0; i < a.size() && i <= M; ++i) out[i] = a[i] * s;
  return out;
}

// a / b with b[0] != 0.
Ser ser_div(const Ser& a, const Ser& b, size_t M) {
  if (sgn(b[0]) == 0) throw internal_error("series division by non-unit");
  Ser out(M + 1, Rat(0));
  Rat inv0 = Rat(1) / b[0];
  for (size_t k = 0; k <= M; ++k) {
    Rat acc = (k < a.size()) ? a[k] : Rat(0);
    for (size_t j = 1; j <= k && j < b.size(); ++j) acc -= b[j] * out[k - j];
    out[k] = acc * inv0;
  }
  return out;
}

// f(g) with g[0] = 0.
Ser ser_compose(const Ser& f, const Ser& g, size_t M) {
  if (sgn(g[0]) != 0) throw internal_error("series composition needs g(0) = 0");
  Ser out(M + 1, Rat(0));
  for (size_t i = f.size(); i-- > 0;) {
    out = ser_mul(out, g, M);
    out[0] += f[i];
  }
  return out;
}

}  // namespace

FormalPSeries formal_p_series(const EllipticCurve& E, long p, long order) {
  auto a = rat_coeffs_in(E);
  if (std::find(E.bad_primes.begin(), E.bad_primes.end(), p) != E.bad_primes.end())
    throw hypothesis_error("bad-reduction prime " + std::to_string(p) + " rejected");
  if (order == 0) order = 2 * p + 1;
  if (order < p + 1)
    throw hypothesis_error("truncation order too small to certify the T^p pattern");
  size_t M = (size_t)order + 6;
  // w(t) = t^3 + a1 t w + a2 t^2 w + a3 w^2 + a4 t w^2 + a6 w^3 (w = -1/y).
  Ser w(M + 1, Rat(0));
  w[3] = Rat(1);
  for (size_t it = 0; it <= M; ++it) {
    Ser w2 = ser_mul(w, w, M);
    Ser w3 = ser_mul(w2, w, M);
    Ser next(M + 1, Rat(0));
    next[3] = Rat(1);
    next = ser_add(next, ser_scale(ser_shift(w, 1, M), a[0], M), M);
    next = ser_add(next, ser_scale(ser_shift(w, 2, M), a[1], M), M);
    next = ser_add(next, ser_scale(w2, a[2], M), M);
    next = ser_add(next, ser_scale(ser_shift(w2, 1, M), a[3], M), M);
    next = ser_add(next, ser_scale(w3, a[4], M), M);
    if (next == w) break;
    w = next;
  }
  // Invariant differential: omega = (w - t w') / (w (-2 + a1 t + a3 w)) dt.
  Ser wp(M + 1, Rat(0));
  for (size_t i = 1; i <= M; ++i) wp[i - 1] = w[i] * Rat((long)i);
  Ser num = ser_add(w, ser_scale(ser_shift(wp, 1, M), Rat(-1), M), M);
  Ser den_in(M + 1, Rat(0));
  den_in[0] = Rat(-2);
  den_in[1] = a[0];
  den_in = ser_add(den_in, ser_scale(w, a[2], M), M);
  Ser den = ser_mul(w, den_in, M);
  for (size_t i = 0; i < 3; ++i)
    if (sgn(num[i]) != 0 || sgn(den[i]) != 0)
      throw internal_error("formal differential: unexpected low-order terms");
  size_t M3 = M - 3;
  Ser num3(num.begin() + 3, num.end()), den3(den.begin() + 3, den.end());
  Ser P = ser_div(num3, den3, M3);
  // log(t) = integral of P.
  Ser L((size_t)order + 1, Rat(0));
  for (size_t k = 0; k + 1 <= (size_t)order && k <= M3; ++k)
    L[k + 1] = P[k] / Rat((long)(k + 1));
  // exp = functional inverse of log.
  Ser Ex((size_t)order + 1, Rat(0));
  Ex[1] = Rat(1);
  for (long k = 2; k <= order; ++k) {
    Ser comp = ser_compose(L, Ex, (size_t)order);
    Ex[(size_t)k] -= comp[(size_t)k];
  }
  // [p](t) = exp(p log t).
  Ser pl = ser_scale(L, Rat(p), (size_t)order);
  Ser mp = ser_compose(Ex, pl, (size_t)order);
  FormalPSeries out;
  out.p = p;
  out.order = order;
  out.coeffs.assign((size_t)order + 1, 0);
  for (long i = 1; i <= order; ++i) {
    Rat c = mp[(size_t)i];
    if (c.get_den() != 1)
      throw internal_error("[p]-series coefficient not integral");
    long r = (long)mpz_fdiv_ui(c.get_num().get_mpz_t(), (unsigned long)p);
    out.coeffs[(size_t)i] = r;
    if (r != 0 && i % p != 0)
      throw internal_error(
          "[p]-series has a nonzero coefficient at an index not divisible by p");
  }
  return out;
}

}  // namespace hc
