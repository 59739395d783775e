#include "heightcert/lpoly.hpp"

#include <algorithm>

namespace hc {

void lp_trim(LPoly& f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
}

long lp_degree(const LPoly& f) { return (long)f.size() - 1; }

LPoly lp_from_q(const FieldRef& L, const QPoly& f) {
  LPoly out;
  out.reserve(f.size());
  for (const Rat& c : f) out.push_back(fe_from_rat(L, c));
  lp_trim(out);
  return out;
}

LPoly lp_add(const LPoly& a, const LPoly& b) {
  LPoly out(std::max(a.size(), b.size()),
            fe_zero(a.empty() ? b[0].K : a[0].K));
  for (size_t i = 0; i < a.size(); ++i) out[i] = fe_add(out[i], a[i]);
  for (size_t i = 0; i < b.size(); ++i) out[i] = fe_add(out[i], b[i]);
  lp_trim(out);
  return out;
}

LPoly lp_sub(const LPoly& a, const LPoly& b) {
  LPoly out(std::max(a.size(), b.size()),
            fe_zero(a.empty() ? b[0].K : a[0].K));
  for (size_t i = 0; i < a.size(); ++i) out[i] = fe_add(out[i], a[i]);
  for (size_t i = 0; i < b.size(); ++i) out[i] = fe_sub(out[i], b[i]);
  lp_trim(out);
  return out;
}

LPoly lp_mul(const LPoly& a, const LPoly& b) {
  if (a.empty() || b.empty()) return {};
  LPoly out(a.size() + b.size() - 1, fe_zero(a[0].K));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      out[i + j] = fe_add(out[i + j], fe_mul(a[i], b[j]));
  lp_trim(out);
  return out;
}

FieldElement lp_eval(const LPoly& f, const FieldElement& x) {
  FieldElement acc = fe_zero(x.K);
  for (size_t i = f.size(); i-- > 0;) acc = fe_add(fe_mul(acc, x), f[i]);
  return acc;
}

void lp_divrem(const LPoly& a, const LPoly& b, LPoly& q, LPoly& r) {
  if (b.empty()) throw internal_error("lp_divrem: division by zero polynomial");
  const FieldRef& K = b[0].K;
  r = a;
  lp_trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, fe_zero(K));
  FieldElement lead_inv = fe_inv(b.back());
  while (r.size() >= b.size()) {
    FieldElement c = fe_mul(r.back(), lead_inv);
    size_t shift = r.size() - b.size();
    q[shift] = fe_add(q[shift], c);
    for (size_t i = 0; i < b.size(); ++i)
      r[shift + i] = fe_sub(r[shift + i], fe_mul(c, b[i]));
    lp_trim(r);
    if (r.size() > shift + b.size() - 1)
      throw internal_error("lp_divrem: degree did not drop");
  }
  lp_trim(q);
}

LPoly lp_gcd(LPoly a, LPoly b) {
  lp_trim(a);
  lp_trim(b);
  while (!b.empty()) {
    LPoly q, r;
    lp_divrem(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    FieldElement inv = fe_inv(a.back());
    for (auto& c : a) c = fe_mul(c, inv);
  }
  return a;
}

namespace {

FieldElement fe_eval_zp(const ZPoly& f, const FieldElement& x) {
  FieldElement acc = fe_zero(x.K);
  for (size_t i = f.size(); i-- > 0;)
    acc = fe_add(fe_mul(acc, x), fe_from_rat(x.K, Rat(f[i])));
  return acc;
}

// Newton interpolation through (0, vals[0]), ..., (N, vals[N]).
QPoly qp_interpolate(const std::vector<Rat>& vals) {
  size_t n = vals.size();
  std::vector<Rat> dd = vals;  // divided differences, in place
  for (size_t level = 1; level < n; ++level)
    for (size_t i = n - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / Rat((long)level);
      if (i == level) break;
    }
  QPoly poly;  // horner on the newton form, nodes 0..n-1
  for (size_t i = n; i-- > 0;) {
    // poly = poly * (x - i) + dd[i]
    QPoly shifted(poly.size() + 1, Rat(0));
    for (size_t j = 0; j < poly.size(); ++j) {
      shifted[j + 1] += poly[j];
      shifted[j] -= poly[j] * Rat((long)i);
    }
    if (shifted.empty()) shifted.push_back(Rat(0));
    shifted[0] += dd[i];
    poly = shifted;
    qp_trim(poly);
  }
  return poly;
}

QPoly qp_derivative(const QPoly& f) {
  QPoly out;
  for (size_t i = 1; i < f.size(); ++i) out.push_back(f[i] * Rat((long)i));
  qp_trim(out);
  return out;
}

bool fe_coord_less(const FieldElement& a, const FieldElement& b) {
  for (size_t i = 0; i < a.c.size(); ++i) {
    int c = cmp(a.c[i], b.c[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

}  // namespace

ZPoly fe_min_poly(const FieldElement& a) {
  long n = a.K->degree;
  // Power coordinates of 1, a, a^2, ... as columns; the first linear
  // dependence (d running over divisors of n) gives the minimal polynomial.
  std::vector<FieldElement> pows;
  FieldElement cur = fe_one(a.K);
  for (long i = 0; i <= n; ++i) {
    pows.push_back(cur);
    cur = fe_mul(cur, a);
  }
  for (long d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    QMatrix M((size_t)n, std::vector<Rat>((size_t)d, Rat(0)));
    std::vector<Rat> rhs((size_t)n, Rat(0));
    for (long i = 0; i < d; ++i)
      for (long r = 0; r < n; ++r) M[(size_t)r][(size_t)i] = pows[(size_t)i].c[(size_t)r];
    for (long r = 0; r < n; ++r) rhs[(size_t)r] = -pows[(size_t)d].c[(size_t)r];
    try {
      std::vector<Rat> sol = qmat_solve(M, rhs);
      QPoly m(sol.begin(), sol.end());
      m.push_back(Rat(1));
      return zp_from_q_primitive(m);
    } catch (const Error&) {
      continue;  // no dependence at this degree
    }
  }
  throw internal_error("fe_min_poly: no minimal polynomial found");
}

std::vector<FieldElement> roots_in_field(const ZPoly& f, const FieldRef& L) {
  if (zp_degree(f) < 1) throw internal_error("roots_in_field: degree < 1");
  long n = L->degree;
  std::vector<FieldElement> roots;
  for (const auto& [g, mult] : zp_factor(f)) {
    (void)mult;
    long dg = zp_degree(g);
    if (dg == 1) {
      roots.push_back(fe_from_rat(L, Rat(-g[0]) / Rat(g[1])));
      continue;
    }
    if (n == 1 || dg > n || n % dg != 0) continue;  // no root of degree dg in L
    // Trager norm: D(x) = Res_y(minpoly_L(y), g(x - s*y)) for a shift s
    // making D squarefree; degree-n factors of D locate roots of g in L.
    QPoly fq = qp_from_z(L->minpoly);
    QPoly gq = qp_from_z(g);
    long N = n * dg;
    for (long s = 1;; ++s) {
      std::vector<Rat> vals;
      vals.reserve((size_t)N + 1);
      for (long t = 0; t <= N; ++t) {
        // g(t - s*y) as a polynomial in y.
        QPoly base = {Rat(t), Rat(-s)};
        QPoly acc = {gq[0]}, pw = {Rat(1)};
        for (long k = 1; k <= dg; ++k) {
          pw = qp_mul(pw, base);
          acc = qp_add(acc, qp_scale(pw, gq[(size_t)k]));
        }
        vals.push_back(qp_resultant(fq, acc));
      }
      QPoly D = qp_interpolate(vals);
      if (qp_degree(D) != N) throw internal_error("roots_in_field: bad norm degree");
      if (qp_degree(qp_gcd(D, qp_derivative(D))) != 0) continue;  // retry shift
      ZPoly Dz = zp_from_q_primitive(D);
      FieldElement stheta = fe_mul_rat(fe_theta(L), Rat(s));
      LPoly gL = lp_from_q(L, gq);
      for (const auto& [Di, dm] : zp_factor(Dz)) {
        (void)dm;
        if (zp_degree(Di) != n) continue;
        // h = gcd(g(x), Di(x + s*theta)) in L[x]; a linear h yields a root.
        LPoly shifted_base = {stheta, fe_one(L)};
        LPoly acc = {fe_from_rat(L, Rat(Di[0]))}, pw = {fe_one(L)};
        for (long k = 1; k <= n; ++k) {
          pw = lp_mul(pw, shifted_base);
          LPoly term = pw;
          for (auto& c : term) c = fe_mul_rat(c, Rat(Di[(size_t)k]));
          acc = lp_add(acc, term);
        }
        LPoly h = lp_gcd(gL, acc);
        if (lp_degree(h) == 1) {
          FieldElement r = fe_neg(h[0]);  // h monic
          if (!fe_eval_zp(g, r).is_zero())
            throw internal_error("roots_in_field: candidate fails evaluation");
          roots.push_back(r);
        }
      }
      break;
    }
  }
  std::sort(roots.begin(), roots.end(), fe_coord_less);
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](const FieldElement& a, const FieldElement& b) {
                            return fe_equal(a, b);
                          }),
              roots.end());
  return roots;
}

std::vector<FieldElement> sqrt_in_field(const FieldElement& a) {
  if (a.is_zero()) return {fe_zero(a.K)};
  ZPoly m = fe_min_poly(a);
  ZPoly m2((size_t)(2 * zp_degree(m)) + 1, Int(0));
  for (size_t i = 0; i < m.size(); ++i) m2[2 * i] = m[i];
  std::vector<FieldElement> out;
  for (const auto& z : roots_in_field(m2, a.K))
    if (fe_equal(fe_mul(z, z), a)) out.push_back(z);
  return out;
}

std::vector<FieldElement> lp_quadratic_roots(const LPoly& f) {
  LPoly g = f;
  lp_trim(g);
  long d = lp_degree(g);
  if (d < 1 || d > 2) throw internal_error("lp_quadratic_roots: degree not 1 or 2");
  if (d == 1) return {fe_neg(fe_div(g[0], g[1]))};
  FieldElement a = g[2], b = g[1], c = g[0];
  FieldElement disc = fe_sub(fe_mul(b, b), fe_mul_rat(fe_mul(a, c), Rat(4)));
  std::vector<FieldElement> out;
  for (const auto& s : sqrt_in_field(disc)) {
    FieldElement r = fe_div(fe_sub(s, b), fe_mul_rat(a, Rat(2)));
    bool dup = false;
    for (const auto& o : out) dup = dup || fe_equal(o, r);
    if (!dup) out.push_back(r);
  }
  std::sort(out.begin(), out.end(), [](const FieldElement& x, const FieldElement& y) {
    for (size_t i = 0; i < x.c.size(); ++i) {
      int cc = cmp(x.c[i], y.c[i]);
      if (cc != 0) return cc < 0;
    }
    return false;
  });
  return out;
}

}  // namespace hc
