#include "heightcert/numfield.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace hc {

// ---------------------------------------------------------------------------
// Field construction.

std::string NumberField::name() const {
  switch (kind) {
    case FieldKind::Rationals: return "Q";
    case FieldKind::Quadratic: return "Q(sqrt " + std::to_string(param) + ")";
    case FieldKind::Cyclotomic: return "Q(zeta " + std::to_string(param) + ")";
  }
  return "?";
}

FieldRef make_rationals() {
  static FieldRef Q = [] {
    auto K = std::make_shared<NumberField>();
    K->kind = FieldKind::Rationals;
    K->degree = 1;
    K->minpoly = {Int(0), Int(1)};  // theta = 0
    K->discriminant = 1;
    return FieldRef(K);
  }();
  return Q;
}

static bool is_squarefree_long(long d) {
  d = d < 0 ? -d : d;
  for (long q = 2; q * q <= d; ++q) {
    if (d % (q * q) == 0) return false;
  }
  return true;
}

FieldRef make_quadratic(long d) {
  if (d == 0 || d == 1 || !is_squarefree_long(d))
    throw parse_error("quadratic parameter must be squarefree and not 0 or 1");
  auto K = std::make_shared<NumberField>();
  K->kind = FieldKind::Quadratic;
  K->param = d;
  K->degree = 2;
  long dm4 = ((d % 4) + 4) % 4;
  if (dm4 == 1) {
    // theta = (1+sqrt d)/2, x^2 - x - (d-1)/4
    K->theta_half = true;
    K->minpoly = {Int(-(d - 1) / 4), Int(-1), Int(1)};
    K->discriminant = d;
  } else {
    K->minpoly = {Int(-d), Int(0), Int(1)};
    K->discriminant = 4 * Int(d);
  }
  return K;
}

FieldRef make_cyclotomic(long m) {
  if (m < 1) throw parse_error("cyclotomic parameter must be >= 1");
  if (m % 4 == 2) m /= 2;  // Q(zeta_{2m'}) = Q(zeta_{m'}) for odd m'
  if (m <= 2) return make_rationals();
  auto K = std::make_shared<NumberField>();
  K->kind = FieldKind::Cyclotomic;
  K->param = m;
  K->degree = euler_phi(m);
  K->minpoly = cyclotomic_poly(m);
  // disc(Q(zeta_m)) = (-1)^{phi/2} m^phi / prod_{p|m} p^{phi/(p-1)}
  long n = K->degree;
  Int disc = pow_int(Int(m), (unsigned long)n);
  long mm = m;
  for (long q = 2; q <= mm; ++q) {
    if (mm % q == 0) {
      disc /= pow_int(Int(q), (unsigned long)(n / (q - 1)));
      while (mm % q == 0) mm /= q;
    }
  }
  if ((n / 2) % 2 == 1) disc = -disc;
  K->discriminant = disc;
  return K;
}

bool same_field(const FieldRef& a, const FieldRef& b) {
  return a->kind == b->kind && a->param == b->param;
}

// ---------------------------------------------------------------------------
// Elements.

bool FieldElement::is_zero() const {
  for (const auto& v : c)
    if (!hc::is_zero(v)) return false;
  return true;
}

bool FieldElement::is_rational() const {
  for (size_t i = 1; i < c.size(); ++i)
    if (!hc::is_zero(c[i])) return false;
  return true;
}

Rat FieldElement::as_rat() const {
  if (!is_rational()) throw internal_error("as_rat: element not rational");
  return c.empty() ? Rat(0) : c[0];
}

FieldElement fe_zero(const FieldRef& K) {
  return {K, std::vector<Rat>((size_t)K->degree, Rat(0))};
}

FieldElement fe_one(const FieldRef& K) { return fe_from_rat(K, Rat(1)); }

FieldElement fe_from_rat(const FieldRef& K, const Rat& v) {
  FieldElement a = fe_zero(K);
  a.c[0] = v;
  return a;
}

FieldElement fe_theta(const FieldRef& K) {
  if (K->degree == 1) return fe_zero(K);
  FieldElement a = fe_zero(K);
  a.c[1] = 1;
  return a;
}

FieldElement fe_from_coords(const FieldRef& K, std::vector<Rat> c) {
  if ((long)c.size() != K->degree)
    throw internal_error("fe_from_coords: wrong coordinate count");
  return {K, std::move(c)};
}

static void check_same(const FieldElement& a, const FieldElement& b) {
  if (!same_field(a.K, b.K)) throw internal_error("field mismatch");
}

static QPoly fe_poly(const FieldElement& a) {
  QPoly f = a.c;
  qp_trim(f);
  return f;
}

static FieldElement fe_from_poly(const FieldRef& K, const QPoly& f) {
  QPoly r = qp_rem(f, qp_from_z(K->minpoly));
  FieldElement a = fe_zero(K);
  for (size_t i = 0; i < r.size(); ++i) a.c[i] = r[i];
  return a;
}

FieldElement fe_add(const FieldElement& a, const FieldElement& b) {
  check_same(a, b);
  FieldElement r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
  return r;
}

FieldElement fe_sub(const FieldElement& a, const FieldElement& b) {
  check_same(a, b);
  FieldElement r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
  return r;
}

FieldElement fe_neg(const FieldElement& a) {
  FieldElement r = a;
  for (auto& v : r.c) v = -v;
  return r;
}

FieldElement fe_mul(const FieldElement& a, const FieldElement& b) {
  check_same(a, b);
  return fe_from_poly(a.K, qp_mul(fe_poly(a), fe_poly(b)));
}

FieldElement fe_mul_rat(const FieldElement& a, const Rat& s) {
  FieldElement r = a;
  for (auto& v : r.c) v *= s;
  return r;
}

FieldElement fe_inv(const FieldElement& a) {
  if (a.is_zero()) throw internal_error("fe_inv: division by zero");
  QPoly g, u, v;
  qp_extended_gcd(fe_poly(a), qp_from_z(a.K->minpoly), g, u, v);
  if (qp_degree(g) != 0) throw internal_error("fe_inv: non-invertible element");
  return fe_from_poly(a.K, qp_scale(u, 1 / g[0]));
}

FieldElement fe_div(const FieldElement& a, const FieldElement& b) {
  return fe_mul(a, fe_inv(b));
}

FieldElement fe_pow(const FieldElement& a, long e) {
  FieldElement base = e < 0 ? fe_inv(a) : a;
  unsigned long n = (unsigned long)(e < 0 ? -e : e);
  FieldElement r = fe_one(a.K);
  while (n) {
    if (n & 1) r = fe_mul(r, base);
    base = fe_mul(base, base);
    n >>= 1;
  }
  return r;
}

bool fe_equal(const FieldElement& a, const FieldElement& b) {
  check_same(a, b);
  for (size_t i = 0; i < a.c.size(); ++i)
    if (a.c[i] != b.c[i]) return false;
  return true;
}

Rat fe_norm(const FieldElement& a) {
  if (a.is_zero()) return Rat(0);
  if (a.K->degree == 1) return a.c[0];
  return qp_resultant(qp_from_z(a.K->minpoly), fe_poly(a));
}

Rat fe_trace(const FieldElement& a) {
  long n = a.K->degree;
  // Power sums s_j of the minimal polynomial roots via Newton's identities.
  std::vector<Rat> s((size_t)n, Rat(0));
  const ZPoly& f = a.K->minpoly;
  // f = x^n + a_{n-1}x^{n-1} + ... ; s_0 = n handled separately.
  std::vector<Rat> fc((size_t)n + 1);
  for (long i = 0; i <= n; ++i) fc[(size_t)i] = Rat(f[(size_t)i]);
  std::vector<Rat> sj((size_t)n, Rat(0));
  for (long j = 1; j < n; ++j) {
    Rat t = Rat(-j) * fc[(size_t)(n - j)];
    for (long i = 1; i < j; ++i) t -= fc[(size_t)(n - i)] * sj[(size_t)(j - i)];
    sj[(size_t)j] = t;
  }
  Rat tr = a.c[0] * Rat(n);
  for (long j = 1; j < n; ++j) tr += a.c[(size_t)j] * sj[(size_t)j];
  return tr;
}

std::string fe_str(const FieldElement& a) {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (hc::is_zero(a.c[i])) continue;
    Rat v = a.c[i];
    if (!first) {
      if (sgn(v) < 0) { os << " - "; v = -v; }
      else os << " + ";
    } else if (sgn(v) < 0 && i > 0) {
      os << "-"; v = -v;
    }
    bool unit_coeff = (v == 1) && i > 0;
    if (!unit_coeff) os << v.get_str();
    if (i >= 1) {
      if (!unit_coeff) os << "*";
      os << "w";
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

void fe_decompose(const FieldElement& a, ZPoly& A, Int& den) {
  den = 1;
  for (const auto& v : a.c) den = lcm(den, rat_den(v));
  A.assign(a.c.size(), Int(0));
  for (size_t i = 0; i < a.c.size(); ++i) {
    Rat s = a.c[i] * Rat(den);
    A[i] = rat_num(s);
  }
  zp_trim(A);
}

bool fe_is_integral(const FieldElement& a) {
  ZPoly A;
  Int den;
  fe_decompose(a, A, den);
  return den == 1;
}

// ---------------------------------------------------------------------------
// Galois.

bool GaloisElement::is_identity() const { return c == 1; }

GaloisElement galois_identity(const FieldRef& K) { return {K, 1}; }

std::vector<GaloisElement> galois_group(const FieldRef& K) {
  std::vector<GaloisElement> g;
  switch (K->kind) {
    case FieldKind::Rationals:
      g.push_back({K, 1});
      break;
    case FieldKind::Quadratic:
      g.push_back({K, 1});
      g.push_back({K, -1});
      break;
    case FieldKind::Cyclotomic:
      for (long c = 1; c < K->param; ++c)
        if (gcd_long(c, K->param) == 1) g.push_back({K, c});
      break;
  }
  return g;
}

GaloisElement galois_compose(const GaloisElement& a, const GaloisElement& b) {
  if (!same_field(a.K, b.K)) throw internal_error("galois_compose: field mismatch");
  if (a.K->kind == FieldKind::Cyclotomic)
    return {a.K, (long)((unsigned __int128)a.c * (unsigned long)b.c % (unsigned long)a.K->param)};
  return {a.K, a.c * b.c};
}

long galois_order(const GaloisElement& a) {
  if (a.K->kind == FieldKind::Cyclotomic) return mult_order(a.c, a.K->param);
  return a.c == 1 ? 1 : 2;
}

FieldElement galois_apply(const GaloisElement& s, const FieldElement& a) {
  if (!same_field(s.K, a.K)) throw internal_error("galois_apply: field mismatch");
  const FieldRef& K = a.K;
  if (K->kind == FieldKind::Rationals || s.is_identity()) return a;
  if (K->kind == FieldKind::Quadratic) {
    // conj(theta) = t - theta with t = trace(theta).
    long t = K->theta_half ? 1 : 0;
    FieldElement r = fe_zero(K);
    r.c[0] = a.c[0] + Rat(t) * a.c[1];
    r.c[1] = -a.c[1];
    return r;
  }
  // Cyclotomic: theta^i -> theta^{(i*c) mod m}, then reduce mod Phi_m.
  long m = K->param;
  QPoly acc;
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (hc::is_zero(a.c[i])) continue;
    long e = (long)((unsigned __int128)i * (unsigned long)s.c % (unsigned long)m);
    QPoly mono((size_t)e + 1, Rat(0));
    mono[(size_t)e] = a.c[i];
    acc = qp_add(acc, mono);
  }
  return fe_from_poly(K, acc);
}

// ---------------------------------------------------------------------------
// Primes above p.

std::vector<PrimeIdeal> primes_above(const FieldRef& K, long p) {
  if (p < 2 || !is_prime(Int(p))) throw internal_error("primes_above: p not prime");
  std::vector<PrimeIdeal> out;
  ModPoly fp = mp_from_z(K->minpoly, p);
  if (fp.degree() != K->degree)
    throw internal_error("primes_above: leading coefficient vanished");
  auto facs = mp_factor(fp);
  long sum_ef = 0;
  for (size_t i = 0; i < facs.size(); ++i) {
    PrimeIdeal P;
    P.K = K;
    P.p = p;
    P.e = facs[i].second;
    P.f = facs[i].first.degree();
    P.index = (long)i;
    P.num_above = (long)facs.size();
    P.factor = facs[i].first;
    P.resfield = FqField(p, facs[i].first);
    sum_ef += P.e * P.f;
    out.push_back(std::move(P));
  }
  if (sum_ef != K->degree)
    throw internal_error("primes_above: e*f sum mismatch");
  return out;
}

// ---------------------------------------------------------------------------
// Valuations.

namespace {

Rat zres(const ZPoly& a, const ZPoly& b) {
  return qp_resultant(qp_from_z(a), qp_from_z(b));
}

// Valuation of the integral element A(theta) at the prime P, where the
// factorization of the minimal polynomial mod p is squarefree (P.e == 1 for
// all primes above p): Hensel-lift the factor and use
// v_p(Res(lift_i, A)) = f_i * v_{P_i}(A(theta)), valid as soon as the lift
// precision exceeds the valuation found.
long val_unramified_split(const FieldRef& K, const ZPoly& A, const PrimeIdeal& P) {
  auto sibs = primes_above(K, P.p);
  std::vector<ZPoly> factors;
  for (const auto& s : sibs) {
    ZPoly g(s.factor.c.size());
    for (size_t i = 0; i < s.factor.c.size(); ++i) g[i] = Int(s.factor.c[i]);
    factors.push_back(std::move(g));
  }
  for (unsigned long N = 16; N <= 1u << 20; N *= 2) {
    auto lifted = hensel_lift_factors(K->minpoly, P.p, factors, N);
    Rat Rr = zres(lifted[(size_t)P.index], A);
    Int R = rat_num(Rr);
    if (sgn(R) == 0) continue;
    long v = valuation_int(R, Int(P.p));
    if (v < (long)N) {
      if (v % P.f != 0)
        throw internal_error("valuation: residue degree does not divide");
      return v / P.f;
    }
  }
  throw precision_error("valuation: Hensel precision cap exceeded");
}

FieldElement subfield_restrict_impl(const FieldElement& a, const FieldRef& sub);

// Valuation of integral A(theta) when K is cyclotomic(m), m = p^k * m' with
// k >= 1 and several primes above p: descend through the relative norm to
// the unramified subfield Q(zeta_{m'}) (totally ramified local extensions
// preserve the normalized valuation under norms).
long val_ramified_split(const FieldRef& K, const ZPoly& A, const PrimeIdeal& P) {
  long m = K->param;
  long p = P.p;
  long mprime = m;
  while (mprime % p == 0) mprime /= p;
  FieldRef Ksub = make_cyclotomic(mprime);
  if (Ksub->degree <= 1)
    throw internal_error("val_ramified_split: expected nontrivial subfield");

  // Relative norm: product over {c mod m : c = 1 mod m'}.
  FieldElement alpha = fe_from_poly(K, qp_from_z(A));
  FieldElement nrm = fe_one(K);
  for (long c = 1; c < m; ++c) {
    if (c % mprime != 1 % mprime) continue;
    if (gcd_long(c, m) != 1) continue;
    nrm = fe_mul(nrm, galois_apply({K, c}, alpha));
  }
  FieldElement nrm_sub = subfield_restrict_impl(nrm, Ksub);

  // Identify the prime of the subfield under P: the factor h' of Phi_{m'}
  // mod p with h'(x^{p^k}) = 0 in F_p[x]/(P.factor).
  long pk = m / mprime;
  auto subprimes = primes_above(Ksub, p);
  const FqField& F = P.resfield;
  FqElem zsub = fq_pow(F, fq_from_poly(F, ModPoly::x(p)), Int(pk));
  const PrimeIdeal* match = nullptr;
  for (const auto& sp : subprimes) {
    // Evaluate sp.factor at zsub inside F.
    FqElem acc = fq_from_int(F, Int(0));
    for (size_t i = sp.factor.c.size(); i-- > 0;) {
      acc = fq_add(F, fq_mul(F, acc, zsub), fq_from_int(F, Int(sp.factor.c[i])));
    }
    if (acc.is_zero()) {
      if (match) throw internal_error("val_ramified_split: ambiguous subprime");
      match = &sp;
    }
  }
  if (!match) throw internal_error("val_ramified_split: no matching subprime");
  return valuation(nrm_sub, *match);
}

long val_integral(const FieldRef& K, const ZPoly& A, const PrimeIdeal& P) {
  if (A.empty()) return VAL_INFINITY;
  if (P.num_above == 1) {
    Rat Nr = K->degree == 1 ? Rat(A[0]) : zres(K->minpoly, A);
    Int N = rat_num(Nr);
    if (sgn(N) == 0) throw internal_error("val_integral: zero norm");
    long v = valuation_int(N, Int(P.p));
    if (v % P.f != 0)
      throw internal_error("val_integral: inconsistent norm valuation");
    return v / P.f;
  }
  if (P.e == 1) return val_unramified_split(K, A, P);
  return val_ramified_split(K, A, P);
}

}  // namespace

long valuation(const FieldElement& a, const PrimeIdeal& P) {
  if (!same_field(a.K, P.K)) throw internal_error("valuation: field mismatch");
  if (a.is_zero()) return VAL_INFINITY;
  ZPoly A;
  Int den;
  fe_decompose(a, A, den);
  long vden = valuation_int(den, Int(P.p));
  return val_integral(a.K, A, P) - P.e * vden;
}

// ---------------------------------------------------------------------------
// Reduction to the residue field.

FqElem reduce_element(const FieldElement& a, const PrimeIdeal& P) {
  if (!same_field(a.K, P.K)) throw internal_error("reduce_element: field mismatch");
  const FqField& F = P.resfield;
  long p = P.p;
  ZPoly A;
  Int den;
  fe_decompose(a, A, den);
  long t = valuation_int(den, Int(p));
  Int dprime = den / pow_int(Int(p), (unsigned long)t);

  ZPoly C = A;
  FqElem gamma_img = fq_from_int(F, Int(1));
  if (t > 0) {
    // Multiply by gamma = prod_{j != i} g_j(theta)^N (a unit at P, highly
    // divisible at the sibling primes) so the p-power denominator divides
    // the power-basis coordinates exactly.
    auto sibs = primes_above(a.K, p);
    long emax = 1;
    for (const auto& s : sibs) emax = std::max(emax, s.e);
    long N = t * emax;
    ZPoly gamma = {Int(1)};
    for (const auto& s : sibs) {
      if (s.index == P.index) continue;
      ZPoly g(s.factor.c.size());
      for (size_t i = 0; i < s.factor.c.size(); ++i) g[i] = Int(s.factor.c[i]);
      for (long rep = 0; rep < N; ++rep) {
        gamma = zp_mul(gamma, g);
        // Reduce mod the (monic) minimal polynomial to keep sizes small.
        QPoly q, r;
        qp_divrem(qp_from_z(gamma), qp_from_z(a.K->minpoly), q, r);
        gamma = ZPoly();
        for (size_t i = 0; i < r.size(); ++i) gamma.push_back(rat_num(r[i]));
        zp_trim(gamma);
      }
      // Image of g(theta)^N in the residue field (invertible there).
      FqElem gi = fq_from_poly(F, mp_from_z(g, p));
      gamma_img = fq_mul(F, gamma_img, fq_pow(F, gi, Int(N)));
    }
    // C = A * gamma reduced mod minpoly (integral since minpoly is monic).
    QPoly q, r;
    qp_divrem(qp_mul(qp_from_z(A), qp_from_z(gamma)), qp_from_z(a.K->minpoly), q, r);
    C.clear();
    for (size_t i = 0; i < r.size(); ++i) C.push_back(rat_num(r[i]));
    zp_trim(C);
    // Divide by p^t; failure means a genuine pole at P.
    Int pt = pow_int(Int(p), (unsigned long)t);
    for (auto& coef : C) {
      if (!mpz_divisible_p(coef.get_mpz_t(), pt.get_mpz_t()))
        throw hypothesis_error("reduce_element: pole at prime above " + std::to_string(p));
      coef /= pt;
    }
  }
  FqElem img = fq_from_poly(F, mp_from_z(C, p));
  // Undo the prime-to-p denominator and the gamma multiplier.
  Int dmod = dprime % p;
  FqElem dinv = fq_inv(F, fq_from_int(F, dmod));
  img = fq_mul(F, img, dinv);
  if (t > 0) img = fq_mul(F, img, fq_inv(F, gamma_img));
  // A pole can also hide behind t == 0 only if v < 0 with unit denominator,
  // impossible for integral numerators; but guard against v < 0 via a direct
  // check when the caller passes a suspicious element.
  return img;
}

// ---------------------------------------------------------------------------
// Ideal norms.

Int ideal_norm_of_generators(const std::vector<FieldElement>& gens) {
  if (gens.empty()) throw internal_error("ideal_norm_of_generators: empty input");
  const FieldRef& K = gens[0].K;
  long n = K->degree;
  if (n == 1) {
    // Over Q the lattice index is a plain gcd; GMP's subquadratic gcd beats
    // the generic HNF reduction by orders of magnitude on large inputs.
    Int g(0);
    for (const auto& ge : gens) {
      if (!same_field(ge.K, K))
        throw internal_error("ideal_norm_of_generators: field mismatch");
      if (ge.is_zero()) continue;
      if (rat_den(ge.c[0]) != 1)
        throw internal_error("ideal_norm_of_generators: non-integral generator");
      g = gcd(g, rat_num(ge.c[0]));
    }
    if (sgn(g) == 0) throw internal_error("ideal_norm_of_generators: all zero");
    return abs(g);
  }
  std::vector<std::vector<Int>> rows;
  for (const auto& g : gens) {
    if (!same_field(g.K, K))
      throw internal_error("ideal_norm_of_generators: field mismatch");
    if (g.is_zero()) continue;
    ZPoly A;
    Int den;
    fe_decompose(g, A, den);
    if (den != 1)
      throw internal_error("ideal_norm_of_generators: non-integral generator");
    for (long j = 0; j < n; ++j) {
      // coordinates of g * theta^j
      QPoly mono((size_t)j + 1, Rat(0));
      mono[(size_t)j] = 1;
      QPoly prod = qp_rem(qp_mul(qp_from_z(A), mono), qp_from_z(K->minpoly));
      std::vector<Int> row((size_t)n, Int(0));
      for (size_t i = 0; i < prod.size(); ++i) row[i] = rat_num(prod[i]);
      rows.push_back(std::move(row));
    }
  }
  if (rows.empty()) throw internal_error("ideal_norm_of_generators: all zero");
  return zmat_lattice_index(rows);
}

// ---------------------------------------------------------------------------
// Places.

long Place::local_degree() const {
  if (finite) return prime->e * prime->f;
  return complex_emb ? 2 : 1;
}

Rat Place::nv() const {
  Rat r(local_degree(), K->degree);
  r.canonicalize();
  return r;
}

long Place::residue_char() const {
  if (!finite) throw internal_error("residue_char: archimedean place");
  return prime->p;
}

Int Place::residue_size() const {
  if (!finite) throw internal_error("residue_size: archimedean place");
  return pow_int(Int(prime->p), (unsigned long)prime->f);
}

std::vector<Place> archimedean_places(const FieldRef& K) {
  std::vector<Place> out;
  switch (K->kind) {
    case FieldKind::Rationals: {
      Place v;
      v.K = K;
      out.push_back(v);
      break;
    }
    case FieldKind::Quadratic: {
      if (K->param > 0) {
        for (long e = 0; e < 2; ++e) {
          Place v;
          v.K = K;
          v.emb = e;
          out.push_back(v);
        }
      } else {
        Place v;
        v.K = K;
        v.complex_emb = true;
        out.push_back(v);
      }
      break;
    }
    case FieldKind::Cyclotomic: {
      long m = K->param;
      for (long c = 1; 2 * c < m; ++c) {
        if (gcd_long(c, m) != 1) continue;
        Place v;
        v.K = K;
        v.emb = c;
        v.complex_emb = true;
        out.push_back(v);
      }
      break;
    }
  }
  return out;
}

std::vector<Place> places_above(const FieldRef& K, long p) {
  std::vector<Place> out;
  for (auto& P : primes_above(K, p)) {
    Place v;
    v.K = K;
    v.finite = true;
    v.prime = std::make_shared<PrimeIdeal>(std::move(P));
    out.push_back(std::move(v));
  }
  return out;
}

ComplexInterval embed_element(const FieldElement& a, const Place& v,
                              mpfr_prec_t prec) {
  if (v.finite) throw internal_error("embed_element: finite place");
  const FieldRef& K = a.K;
  ComplexInterval theta(prec);
  switch (K->kind) {
    case FieldKind::Rationals:
      theta = ComplexInterval(RealInterval::exact(0, prec), RealInterval::exact(0, prec));
      break;
    case FieldKind::Quadratic: {
      long d = K->param;
      RealInterval sq = RealInterval::from_int(Int(d < 0 ? -d : d), prec).sqrt();
      RealInterval zero = RealInterval::exact(0, prec);
      RealInterval half = RealInterval::from_rat(Rat(1, 2), prec);
      if (d > 0) {
        RealInterval root = v.emb == 0 ? sq : -sq;
        if (K->theta_half)
          theta = ComplexInterval((RealInterval::exact(1, prec) + root) * half, zero);
        else
          theta = ComplexInterval(root, zero);
      } else {
        if (K->theta_half)
          theta = ComplexInterval(half, sq * half);
        else
          theta = ComplexInterval(zero, sq);
      }
      break;
    }
    case FieldKind::Cyclotomic:
      theta = ComplexInterval(RealInterval::cos2pi(v.emb, K->param, prec),
                              RealInterval::sin2pi(v.emb, K->param, prec));
      break;
  }
  ComplexInterval acc(RealInterval::exact(0, prec), RealInterval::exact(0, prec));
  for (size_t i = a.c.size(); i-- > 0;) {
    acc = acc * theta;
    acc.re = acc.re + RealInterval::from_rat(a.c[i], prec);
  }
  return acc;
}

RealInterval abs_value(const FieldElement& a, const Place& v, mpfr_prec_t prec) {
  if (!v.finite) return embed_element(a, v, prec).abs();
  if (a.is_zero())
    throw internal_error("abs_value: zero element at a finite place");
  Rat coeff = log_abs_finite_coeff(a, v);
  RealInterval logp = RealInterval::from_int(Int(v.prime->p), prec).log();
  return (RealInterval::from_rat(coeff, prec) * logp).exp();
}

Rat log_abs_finite_coeff(const FieldElement& a, const Place& v) {
  if (!v.finite) throw internal_error("log_abs_finite_coeff: archimedean place");
  long val = valuation(a, *v.prime);
  if (val == VAL_INFINITY)
    throw internal_error("log_abs_finite_coeff: zero element");
  Rat r(-val, v.prime->e);
  r.canonicalize();
  return r;
}

std::vector<long> finite_support(const FieldElement& a) {
  if (a.is_zero()) throw internal_error("finite_support: zero element");
  ZPoly A;
  Int den;
  fe_decompose(a, A, den);
  Int N = rat_num(a.K->degree == 1 ? Rat(A.empty() ? Int(0) : A[0])
                                   : zres(a.K->minpoly, A));
  std::vector<long> primes;
  auto add_factors = [&](const Int& n) {
    for (auto& [q, e] : factor_int(abs(n))) {
      (void)e;
      if (!mpz_fits_slong_p(q.get_mpz_t()))
        throw precision_error("finite_support: prime factor exceeds machine word");
      long ql = mpz_get_si(q.get_mpz_t());
      if (std::find(primes.begin(), primes.end(), ql) == primes.end())
        primes.push_back(ql);
    }
  };
  if (sgn(N) != 0) add_factors(N);
  if (den != 1) add_factors(den);
  std::sort(primes.begin(), primes.end());
  // Keep only primes where some valuation is actually nonzero.
  std::vector<long> out;
  for (long p : primes) {
    for (const auto& P : primes_above(a.K, p)) {
      if (valuation(a, P) != 0) {
        out.push_back(p);
        break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Frobenius / inertia / conductors.

GaloisElement frobenius_element(const FieldRef& L, long p) {
  switch (L->kind) {
    case FieldKind::Rationals:
      return galois_identity(L);
    case FieldKind::Quadratic: {
      auto ps = primes_above(L, p);
      if (ps[0].e > 1)
        throw hypothesis_error("frobenius_element: p ramified in " + L->name());
      return ps.size() == 2 ? GaloisElement{L, 1} : GaloisElement{L, -1};
    }
    case FieldKind::Cyclotomic: {
      long m = L->param;
      if (m % p == 0)
        throw hypothesis_error("frobenius_element: p ramified in " + L->name());
      return {L, p % m};
    }
  }
  throw internal_error("frobenius_element: unreachable");
}

GaloisElement inertia_tau(const FieldRef& L, long p) {
  switch (L->kind) {
    case FieldKind::Rationals:
      throw hypothesis_error("inertia_tau: no ramification over Q");
    case FieldKind::Quadratic: {
      auto ps = primes_above(L, p);
      if (ps[0].e == 1)
        throw hypothesis_error("inertia_tau: p unramified in " + L->name());
      return {L, -1};
    }
    case FieldKind::Cyclotomic: {
      long m = L->param;
      if (m % p != 0)
        throw hypothesis_error("inertia_tau: p unramified in " + L->name());
      long msub = m / p;  // conductor of the target fixed field
      // The subgroup {c mod m : c = 1 mod msub} has order phi(m)/phi(msub)
      // and is cyclic for all supported cases; pick its smallest generator
      // so the fixed field is exactly Q(zeta_{m/p}).
      long h = euler_phi(m) / euler_phi(msub);
      for (long c = 2; c < m; ++c) {
        if (gcd_long(c, m) != 1) continue;
        if (c % msub != 1 % msub) continue;
        if (mult_order(c, m) == h) return {L, c};
      }
      throw internal_error("inertia_tau: no generator found");
    }
  }
  throw internal_error("inertia_tau: unreachable");
}

FieldRef fixed_field(const GaloisElement& s) {
  const FieldRef& K = s.K;
  if (s.is_identity()) return K;
  if (K->kind == FieldKind::Quadratic) return make_rationals();
  // Cyclotomic: largest divisor d of m with c = 1 mod d; accept only when
  // the fixed field is exactly Q(zeta_d).
  long m = K->param;
  long best = 1;
  for (long d = 1; d <= m; ++d) {
    if (m % d != 0) continue;
    if (s.c % d == 1 % d) best = d;
  }
  long ord = galois_order(s);
  FieldRef sub = make_cyclotomic(best);
  if (sub->degree * ord != K->degree)
    throw internal_error("fixed_field: fixed field is not cyclotomic");
  return sub;
}

namespace {

// Coordinates of the j-th power-basis vector of `sub` inside K.
std::vector<FieldElement> subfield_basis_in(const FieldRef& K, const FieldRef& sub) {
  std::vector<FieldElement> basis;
  FieldElement gen = fe_zero(K);
  if (sub->kind == FieldKind::Rationals) {
    basis.push_back(fe_one(K));
    return basis;
  }
  if (sub->kind == FieldKind::Cyclotomic) {
    if (K->kind != FieldKind::Cyclotomic || K->param % sub->param != 0)
      throw internal_error("subfield embedding: not a cyclotomic subfield");
    long pw = K->param / sub->param;
    gen = fe_pow(fe_theta(K), pw);
  } else {
    throw internal_error("subfield embedding: unsupported subfield kind");
  }
  FieldElement acc = fe_one(K);
  for (long j = 0; j < sub->degree; ++j) {
    basis.push_back(acc);
    acc = fe_mul(acc, gen);
  }
  return basis;
}

FieldElement subfield_restrict_impl(const FieldElement& a, const FieldRef& sub) {
  const FieldRef& K = a.K;
  if (same_field(K, sub)) return a;
  auto basis = subfield_basis_in(K, sub);
  QMatrix M((size_t)K->degree, std::vector<Rat>(basis.size()));
  for (size_t j = 0; j < basis.size(); ++j)
    for (long i = 0; i < K->degree; ++i) M[(size_t)i][j] = basis[j].c[(size_t)i];
  std::vector<Rat> rhs = a.c;
  std::vector<Rat> x;
  try {
    x = qmat_solve(std::move(M), std::move(rhs));
  } catch (const Error&) {
    throw internal_error("restrict_to_subfield: element not in subfield");
  }
  return fe_from_coords(sub, std::move(x));
}

}  // namespace

FieldElement lift_from_subfield(const FieldRef& K, const FieldElement& a_sub) {
  if (same_field(K, a_sub.K)) return a_sub;
  auto basis = subfield_basis_in(K, a_sub.K);
  FieldElement acc = fe_zero(K);
  for (size_t j = 0; j < basis.size(); ++j)
    acc = fe_add(acc, fe_mul_rat(basis[j], a_sub.c[j]));
  return acc;
}

FieldElement restrict_to_subfield(const FieldElement& a, const FieldRef& sub) {
  return subfield_restrict_impl(a, sub);
}

ExtensionInfo extension_info(const FieldRef& L, long p) {
  ExtensionInfo info;
  info.L = L;
  info.p = p;
  switch (L->kind) {
    case FieldKind::Rationals:
      break;
    case FieldKind::Quadratic: {
      auto ps = primes_above(L, p);
      info.e = ps[0].e;
      if (info.e > 1) {
        long d = L->param;
        if (p != 2) info.k = 1;
        else info.k = (((d % 4) + 4) % 4 == 3) ? 2 : 3;
      }
      break;
    }
    case FieldKind::Cyclotomic: {
      auto ps = primes_above(L, p);
      info.e = ps[0].e;
      long m = L->param, k = 0;
      while (m % p == 0) { m /= p; ++k; }
      info.k = k;
      if ((info.k >= 1) != (info.e > 1))
        throw internal_error("extension_info: conductor/ramification mismatch");
      break;
    }
  }
  return info;
}

// ---------------------------------------------------------------------------
// Integer factorization (trial division + Pollard rho).

namespace {

Int pollard_rho(const Int& n) {
  if (n % 2 == 0) return Int(2);
  gmp_randstate_t st;
  gmp_randinit_default(st);
  gmp_randseed_ui(st, 0x9e3779b9UL ^ mpz_get_ui(n.get_mpz_t()));
  Int d(1);
  while (true) {
    Int c, x, y;
    mpz_urandomm(c.get_mpz_t(), st, n.get_mpz_t());
    mpz_urandomm(x.get_mpz_t(), st, n.get_mpz_t());
    c += 1;
    y = x;
    d = 1;
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      Int diff = x - y;
      if (sgn(diff) == 0) break;
      d = gcd(abs(diff), n);
    }
    if (d != 1 && d != n) {
      gmp_randclear(st);
      return d;
    }
  }
}

void factor_rec(Int n, std::map<Int, long>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out[n] += 1;
    return;
  }
  Int d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

std::vector<std::pair<Int, long>> factor_int(Int n) {
  if (sgn(n) < 0) n = -n;
  if (sgn(n) == 0) throw internal_error("factor_int: zero input");
  std::map<Int, long> acc;
  for (long q = 2; q < 100000 && Int(q) * q <= n; q == 2 ? q = 3 : q += 2) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), (unsigned long)q)) {
      acc[Int(q)] += 1;
      n /= q;
    }
  }
  factor_rec(n, acc);
  std::vector<std::pair<Int, long>> out(acc.begin(), acc.end());
  return out;
}

}  // namespace hc
