#include "heightcert/canonical.hpp"

#include <algorithm>
#include <cmath>

namespace hc {

namespace {

// Symmetric interval [-hi(t), hi(t)] for a nonnegative bound t.
RealInterval sym_radius(const RealInterval& t) {
  mpfr_t lo;
  mpfr_init2(lo, t.prec());
  mpfr_neg(lo, t.hi_raw(), MPFR_RNDD);
  RealInterval out(t.prec());
  out.set_endpoints_raw(lo, t.hi_raw());
  mpfr_clear(lo);
  return out;
}

Rat rat_abs(const Rat& v) { return sgn(v) < 0 ? Rat(-v) : v; }

Int int_coeff(const FieldElement& c, const char* what) {
  if (!c.is_rational()) throw hypothesis_error(std::string(what) + ": curve must be over Q");
  Rat r = c.as_rat();
  if (r.get_den() != 1) throw hypothesis_error(std::string(what) + ": non-integral model");
  return r.get_num();
}

// Minimal positive constant R in the lattice {u*f + v*g : deg u, deg v <= 3}
// together with the l1 norm of the cofactor coefficients.
void bezout_constant(const std::vector<Int>& f, const std::vector<Int>& g,
                     Int& R, Int& cofactor_l1) {
  size_t n = 8;  // degrees up to 7
  std::vector<std::vector<Int>> rows;
  for (int shift = 0; shift < 4; ++shift) {
    for (const std::vector<Int>* h : {&f, &g}) {
      std::vector<Int> row(n, Int(0));
      for (size_t i = 0; i < h->size(); ++i) row[i + (size_t)shift] = (*h)[i];
      rows.push_back(std::move(row));
    }
  }
  std::vector<std::vector<Int>> U;
  auto hnf = zmat_hnf(rows, &U);
  if (hnf.size() != n) throw internal_error("bezout_constant: lattice not full rank");
  const auto& last = hnf.back();
  for (size_t i = 1; i < n; ++i)
    if (last[i] != 0) throw internal_error("bezout_constant: last row not constant");
  R = last[0];
  if (R == 0) throw internal_error("bezout_constant: zero constant");
  cofactor_l1 = 0;
  for (const Int& c : U.back()) cofactor_l1 += abs(c);
}

RealInterval log_rat(const Rat& v, mpfr_prec_t prec) {
  return RealInterval::from_rat(v, prec).log();
}

}  // namespace

ProjPoint psi_embed(const ECPoint& P) {
  if (P.inf)
    return pp_make({fe_zero(P.L), fe_zero(P.L), fe_one(P.L)});
  return pp_make({fe_one(P.L), P.x, P.y});
}

ProjPoint x_embed(const ECPoint& P) {
  if (P.inf) throw internal_error("x_embed: point at infinity");
  return pp_make({fe_one(P.L), P.x});
}

HeightComparisonBound height_comparison_bound(const EllipticCurve& E,
                                              mpfr_prec_t prec) {
  Int b2 = int_coeff(E.b2, "height_comparison_bound");
  Int b4 = int_coeff(E.b4, "height_comparison_bound");
  Int b6 = int_coeff(E.b6, "height_comparison_bound");
  Int b8 = int_coeff(E.b8, "height_comparison_bound");
  Rat a1 = rat_abs(E.a1.as_rat()), a3 = rat_abs(E.a3.as_rat());

  // Duplication on the x-line: x(2P) = F(x)/G(x).
  std::vector<Int> F = {-b8, -2 * b6, -b4, Int(0), Int(1)};
  std::vector<Int> G = {b6, 2 * b4, b2, Int(4)};
  Rat sumF(0), sumG(0);
  for (const Int& c : F) sumF += rat_abs(Rat(c));
  for (const Int& c : G) sumG += rat_abs(Rat(c));
  RealInterval upper = log_rat(std::max(sumF, sumG), prec);

  // Bezout identities u F + v G = R0 (Z-side) and for the reversed
  // polynomials (X-side); they certify the lower defect bound.
  std::vector<Int> Fr = {Int(1), Int(0), -b4, -2 * b6, -b8};
  std::vector<Int> Gr = {Int(0), Int(4), b2, 2 * b4, b6};
  Int R0, M0, R1, M1;
  bezout_constant(F, G, R0, M0);
  bezout_constant(Fr, Gr, R1, M1);
  Int M = std::max(M0, M1);
  Int Rmin = std::min(abs(R0), abs(R1));
  // Finite-place contribution: sum over p of max(v_p(R0), v_p(R1)) log p.
  std::vector<std::pair<Int, long>> f0 = factor_int(abs(R0)), f1 = factor_int(abs(R1));
  RealInterval finite = RealInterval::exact(0, prec);
  size_t i = 0, j = 0;
  while (i < f0.size() || j < f1.size()) {
    Int p;
    long e0 = 0, e1 = 0;
    if (i < f0.size() && (j >= f1.size() || f0[i].first <= f1[j].first)) p = f0[i].first;
    else p = f1[j].first;
    if (i < f0.size() && f0[i].first == p) e0 = f0[i++].second;
    if (j < f1.size() && f1[j].first == p) e1 = f1[j++].second;
    finite = finite + RealInterval::exact(std::max(e0, e1), prec) *
                          RealInterval::from_int(p, prec).log();
  }
  RealInterval lower =
      log_rat(Rat(M), prec) - log_rat(Rat(Rmin), prec) + finite;

  HeightComparisonBound out;
  RealInterval zero = RealInterval::exact(0, prec);
  out.c_dup_x = RealInterval::max(zero, RealInterval::max(upper, lower));

  // | h([1:x:y]) - (3/2) h([1:x]) |: exact at finite places for the integral
  // model; archimedean bounds from y^2-completion eta^2 = x^3 + (b2/4)x^2 +
  // (b4/2)x + b6/4 with |y - eta| <= c max(1,|x|), c = (|a1|+|a3|)/2.
  Rat S = rat_abs(Rat(b2)) / 4 + rat_abs(Rat(b4)) / 2 + rat_abs(Rat(b6)) / 4;
  Rat c = (a1 + a3) / 2;
  RealInterval one = RealInterval::exact(1, prec);
  RealInterval up_xy =
      (one + RealInterval::from_rat(c, prec) +
       (one + RealInterval::from_rat(S, prec)).sqrt())
          .log();
  // Beyond R = max(1, 4S, 15c^2/2) the y-coordinate satisfies
  // |y| >= |x|^{3/2}/2 (defect <= log 2); on 1 <= |x| <= R the defect is at
  // most (3/2)log|x| - log|x| = (1/2)log R.
  Rat Rbound = std::max(Rat(1), std::max(Rat(4 * S), Rat(Rat(15, 2) * c * c)));
  RealInterval low_xy = RealInterval::max(
      RealInterval::exact(2, prec).log(),
      RealInterval::from_rat(Rat(1, 2), prec) * log_rat(Rbound, prec));
  out.c_xy = RealInterval::max(up_xy, low_xy);

  out.c_dup = RealInterval::from_rat(Rat(3, 2), prec) * out.c_dup_x +
              RealInterval::exact(5, prec) * out.c_xy;
  // |h(psi P) - hhat_psi(P)| is bounded both by the geometric series of
  // C_dup and by routing through the x-line: C_xy + C_dup_x/2.
  out.c_psi = RealInterval::min(
      out.c_dup / RealInterval::exact(3, prec),
      out.c_xy + out.c_dup_x / RealInterval::exact(2, prec));
  out.bconst = RealInterval::exact(2, prec) * out.c_psi +
               RealInterval::exact(2, prec).log();
  return out;
}

bool is_torsion_point(const EllipticCurve& E, const ECPoint& P) {
  if (P.inf) return true;
  int tried = 0;
  for (long p = 2; p <= 50 && tried < 3; ++p) {
    if (!is_prime(Int(p))) continue;
    if (std::find(E.bad_primes.begin(), E.bad_primes.end(), p) != E.bad_primes.end())
      continue;
    if (extension_info(P.L, p).e != 1) continue;
    ++tried;
    if (torsion_test(E, P, p).is_torsion) return true;
  }
  return false;
}

CanonicalHeightResult canonical_height(const EllipticCurve& E, const ECPoint& P,
                                       HeightNorm norm, double tolerance,
                                       mpfr_prec_t prec, long max_steps) {
  if (!(tolerance > 0)) throw hypothesis_error("canonical_height: tolerance must be positive");
  CanonicalHeightResult out;
  out.norm = norm;
  out.enclosure = RealInterval::exact(0, prec);
  if (P.inf) {
    out.torsion_zero = true;
    return out;
  }
  HeightComparisonBound hb = height_comparison_bound(E, 128);
  // Torsion forces h(psi P) <= C_psi, so the (comparatively expensive)
  // torsion certificate search only runs for points of small Weil height;
  // applying Frobenius annihilators to a huge point would square its size.
  bool maybe_torsion =
      weil_height(psi_embed(P), 64).lo_d() <= hb.c_psi.hi_d() + 1.0;
  if (maybe_torsion && is_torsion_point(E, P)) {
    out.torsion_zero = true;
    return out;
  }
  // |4^{-n} h(embed(2^n P)) - hhat(P)| <= Ctail * 4^{-n}.
  RealInterval Ctail = (norm == HeightNorm::XMap)
                           ? hb.c_dup_x / RealInterval::exact(3, 128)
                           : hb.c_psi;
  long N = 0;
  double tail = Ctail.hi_d();
  while (tail > tolerance / 2) {
    tail /= 4.0;
    if (++N > max_steps)
      throw precision_error("canonical_height: tolerance unreachable within doubling budget");
  }
  ECPoint Pn = P;
  for (long k = 0; k < N; ++k) {
    Pn = ec_add(E, Pn, Pn);
    if (Pn.inf) {  // torsion slipped past the certificate search
      out.torsion_zero = true;
      return out;
    }
  }
  Rat scale(1, pow_int(Int(4), (unsigned long)N));
  scale.canonicalize();
  for (mpfr_prec_t pr = prec; pr <= prec * 16; pr *= 2) {
    ProjPoint pp = (norm == HeightNorm::XMap) ? x_embed(Pn) : psi_embed(Pn);
    RealInterval h = weil_height(pp, pr);
    RealInterval base = h * RealInterval::from_rat(scale, pr);
    RealInterval tail_iv = Ctail * RealInterval::from_rat(scale, 128);
    RealInterval enc = base + sym_radius(tail_iv);
    double err = enc.width_d() / 2;
    if (err <= tolerance || pr * 2 > prec * 16) {
      if (err > tolerance)
        throw precision_error("canonical_height: interval width exceeds tolerance at precision cap");
      out.value = enc.mid_d();
      out.error = err;
      out.enclosure = enc;
      out.steps = N;
      return out;
    }
  }
  throw precision_error("canonical_height: precision escalation failed");
}

bool parallelogram_check(const EllipticCurve& E, const std::vector<ECPoint>& pts,
                         double tolerance) {
  if (pts.empty()) throw hypothesis_error("parallelogram_check: need at least one point");
  ECPoint sum = ec_infinity(pts[0].L);
  double rhs = 0.0;
  for (const auto& P : pts) {
    sum = ec_add(E, sum, P);
    auto h = canonical_height(E, P, HeightNorm::PsiMap, tolerance);
    rhs += h.value + h.error;
  }
  rhs *= (double)pts.size();
  auto hl = canonical_height(E, sum, HeightNorm::PsiMap, tolerance);
  double lhs = hl.value - hl.error;
  return lhs <= rhs + (double)(pts.size() + 1) * tolerance;
}

bool galois_invariance_check(const EllipticCurve& E, const ECPoint& P,
                             double tolerance) {
  auto base = canonical_height(E, P, HeightNorm::PsiMap, tolerance);
  for (const auto& s : galois_group(P.L)) {
    ECPoint Ps = ec_galois(E, s, P);
    auto hs = canonical_height(E, Ps, HeightNorm::PsiMap, tolerance);
    if (std::abs(hs.value - base.value) >
        2 * tolerance + hs.error + base.error)
      return false;
  }
  return true;
}

}  // namespace hc
