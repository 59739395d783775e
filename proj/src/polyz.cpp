#include "heightcert/polyz.hpp"

#include <algorithm>
#include <map>

#include "heightcert/modpoly.hpp"

namespace hc {

void zp_trim(ZPoly& f) {
  while (!f.empty() && sgn(f.back()) == 0) f.pop_back();
}

void qp_trim(QPoly& f) {
  while (!f.empty() && sgn(f.back()) == 0) f.pop_back();
}

long zp_degree(const ZPoly& f) { return (long)f.size() - 1; }
long qp_degree(const QPoly& f) { return (long)f.size() - 1; }

ZPoly zp_add(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  zp_trim(r);
  return r;
}

ZPoly zp_sub(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  zp_trim(r);
  return r;
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  zp_trim(r);
  return r;
}

ZPoly zp_neg(const ZPoly& a) {
  ZPoly r = a;
  for (auto& c : r) c = -c;
  return r;
}

Int zp_eval(const ZPoly& f, const Int& x) {
  Int r(0);
  for (size_t i = f.size(); i-- > 0;) r = r * x + f[i];
  return r;
}

ZPoly zp_derivative(const ZPoly& f) {
  if (f.size() <= 1) return {};
  ZPoly r(f.size() - 1);
  for (size_t i = 1; i < f.size(); ++i) r[i - 1] = f[i] * Int((long)i);
  zp_trim(r);
  return r;
}

Int zp_content(const ZPoly& f) {
  Int g(0);
  for (const auto& c : f) g = gcd(g, c);
  return g;
}

ZPoly zp_primitive_part(const ZPoly& f) {
  Int c = zp_content(f);
  if (sgn(c) == 0) return {};
  if (sgn(f.back()) < 0) c = -c;
  ZPoly r(f.size());
  for (size_t i = 0; i < f.size(); ++i) r[i] = f[i] / c;
  return r;
}

ZPoly zp_scale(const ZPoly& f, const Int& s) {
  if (sgn(s) == 0) return {};
  ZPoly r(f.size());
  for (size_t i = 0; i < f.size(); ++i) r[i] = f[i] * s;
  return r;
}

QPoly qp_from_z(const ZPoly& f) {
  QPoly r(f.size());
  for (size_t i = 0; i < f.size(); ++i) r[i] = Rat(f[i]);
  return r;
}

ZPoly zp_from_q_primitive(const QPoly& f) {
  Int den(1);
  for (const auto& c : f) den = lcm(den, rat_den(c));
  ZPoly r(f.size());
  for (size_t i = 0; i < f.size(); ++i) {
    Rat s = f[i] * Rat(den);
    r[i] = rat_num(s);
  }
  zp_trim(r);
  return zp_primitive_part(r);
}

QPoly qp_add(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  qp_trim(r);
  return r;
}

QPoly qp_sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  qp_trim(r);
  return r;
}

QPoly qp_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  qp_trim(r);
  return r;
}

QPoly qp_scale(const QPoly& a, const Rat& s) {
  if (is_zero(s)) return {};
  QPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

Rat qp_eval(const QPoly& f, const Rat& x) {
  Rat r(0);
  for (size_t i = f.size(); i-- > 0;) r = r * x + f[i];
  return r;
}

void qp_divrem(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  if (b.empty()) throw internal_error("qp_divrem: division by zero polynomial");
  r = a;
  long db = qp_degree(b);
  if (qp_degree(a) < db) {
    q.clear();
    return;
  }
  q.assign(a.size() - b.size() + 1, Rat(0));
  Rat inv_lead = 1 / b.back();
  for (long i = qp_degree(r); i >= db; --i) {
    if ((size_t)i >= r.size() || is_zero(r[i])) continue;
    Rat coef = r[i] * inv_lead;
    q[i - db] = coef;
    for (long j = 0; j <= db; ++j) r[i - db + j] -= coef * b[j];
  }
  qp_trim(r);
  qp_trim(q);
}

QPoly qp_rem(const QPoly& a, const QPoly& b) {
  QPoly q, r;
  qp_divrem(a, b, q, r);
  return r;
}

QPoly qp_monic(const QPoly& a) {
  if (a.empty()) return a;
  return qp_scale(a, 1 / a.back());
}

QPoly qp_gcd(QPoly a, QPoly b) {
  while (!b.empty()) {
    QPoly r = qp_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return qp_monic(a);
}

void qp_extended_gcd(const QPoly& a, const QPoly& b, QPoly& g, QPoly& u, QPoly& v) {
  QPoly r0 = a, r1 = b;
  QPoly u0 = {Rat(1)}, u1 = {};
  QPoly v0 = {}, v1 = {Rat(1)};
  while (!r1.empty()) {
    QPoly q, r;
    qp_divrem(r0, r1, q, r);
    QPoly u2 = qp_sub(u0, qp_mul(q, u1));
    QPoly v2 = qp_sub(v0, qp_mul(q, v1));
    r0 = std::move(r1); r1 = std::move(r);
    u0 = std::move(u1); u1 = std::move(u2);
    v0 = std::move(v1); v1 = std::move(v2);
  }
  if (r0.empty()) {
    g.clear(); u.clear(); v.clear();
    return;
  }
  Rat s = 1 / r0.back();
  g = qp_scale(r0, s);
  u = qp_scale(u0, s);
  v = qp_scale(v0, s);
}

Rat qp_resultant(const QPoly& a, const QPoly& b) {
  long da = qp_degree(a), db = qp_degree(b);
  if (da < 0 || db < 0) return Rat(0);
  if (da == 0) {
    Rat r(1);
    for (long i = 0; i < db; ++i) r *= a[0];
    return r;
  }
  if (db == 0) {
    Rat r(1);
    for (long i = 0; i < da; ++i) r *= b[0];
    return r;
  }
  QPoly r = qp_rem(a, b);
  long dr = qp_degree(r);
  if (dr < 0) return Rat(0);
  Rat lead(1);
  for (long i = 0; i < da - dr; ++i) lead *= b.back();
  Rat sign = ((da * db) % 2 == 0) ? Rat(1) : Rat(-1);
  return sign * lead * qp_resultant(b, r);
}

namespace {

// Exact division by a monic integer polynomial.
ZPoly zp_divexact_monic(const ZPoly& a, const ZPoly& b) {
  if (b.empty() || b.back() != 1)
    throw internal_error("zp_divexact_monic: divisor not monic");
  ZPoly r = a, q;
  long db = zp_degree(b);
  if (zp_degree(a) < db) {
    if (!a.empty()) throw internal_error("zp_divexact_monic: not divisible");
    return {};
  }
  q.assign(a.size() - b.size() + 1, Int(0));
  for (long i = zp_degree(r); i >= db; --i) {
    if ((size_t)i >= r.size() || sgn(r[i]) == 0) continue;
    Int coef = r[i];
    q[i - db] = coef;
    for (long j = 0; j <= db; ++j) r[i - db + j] -= coef * b[j];
    zp_trim(r);
  }
  zp_trim(r);
  if (!r.empty()) throw internal_error("zp_divexact_monic: not divisible");
  zp_trim(q);
  return q;
}

}  // namespace

ZPoly cyclotomic_poly(long m) {
  static std::map<long, ZPoly> cache;
  if (m < 1) throw internal_error("cyclotomic_poly: m < 1");
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  ZPoly num((size_t)m + 1, Int(0));
  num[0] = -1;
  num[(size_t)m] = 1;  // x^m - 1
  for (long d = 1; d < m; ++d) {
    if (m % d == 0) num = zp_divexact_monic(num, cyclotomic_poly(d));
  }
  cache[m] = num;
  return num;
}

ZPoly zp_squarefree_part(const ZPoly& f) {
  if (f.empty()) throw internal_error("zp_squarefree_part: zero polynomial");
  QPoly qf = qp_from_z(f);
  QPoly g = qp_gcd(qf, qp_from_z(zp_derivative(f)));
  QPoly q, r;
  qp_divrem(qf, g, q, r);
  return zp_from_q_primitive(q);
}

namespace {

Int mod_reduce(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

ZPoly zp_mod(const ZPoly& f, const Int& m) {
  ZPoly r(f.size());
  for (size_t i = 0; i < f.size(); ++i) r[i] = mod_reduce(f[i], m);
  zp_trim(r);
  return r;
}

// Symmetric representative in (-m/2, m/2].
ZPoly zp_mod_symmetric(const ZPoly& f, const Int& m) {
  ZPoly r(f.size());
  Int half = m / 2;
  for (size_t i = 0; i < f.size(); ++i) {
    r[i] = mod_reduce(f[i], m);
    if (r[i] > half) r[i] -= m;
  }
  zp_trim(r);
  return r;
}

ZPoly zp_from_mp(const ModPoly& f) {
  ZPoly r(f.c.size());
  for (size_t i = 0; i < f.c.size(); ++i) r[i] = Int(f.c[i]);
  return r;
}

}  // namespace

std::vector<ZPoly> hensel_lift_factors(const ZPoly& f, long p,
                                       const std::vector<ZPoly>& factors_mod_p,
                                       unsigned long N) {
  if (f.empty() || f.back() != 1)
    throw internal_error("hensel_lift_factors: f must be monic");
  size_t n = factors_mod_p.size();
  std::vector<ZPoly> g = factors_mod_p;
  Int pz(p);
  for (auto& gi : g) gi = zp_mod(gi, pz);

  // Per-factor CRT inverses mod p: u_i * prod_{j != i} g_j == 1 (mod g_i, p).
  std::vector<ModPoly> gi_p(n), u(n);
  for (size_t i = 0; i < n; ++i) gi_p[i] = mp_from_z(g[i], p);
  for (size_t i = 0; i < n; ++i) {
    ModPoly prod = ModPoly::one(p);
    for (size_t j = 0; j < n; ++j)
      if (j != i) prod = mp_rem(mp_mul(prod, gi_p[j]), gi_p[i]);
    // Extended gcd of prod and g_i in F_p[x].
    ModPoly r0 = gi_p[i], r1 = prod;
    ModPoly t0 = ModPoly::zero(p), t1 = ModPoly::one(p);
    while (!r1.is_zero()) {
      ModPoly q, r;
      mp_divrem(r0, r1, q, r);
      ModPoly t2 = mp_sub(t0, mp_mul(q, t1));
      r0 = std::move(r1); r1 = std::move(r);
      t0 = std::move(t1); t1 = std::move(t2);
    }
    if (r0.degree() != 0)
      throw internal_error("hensel_lift_factors: factors not coprime mod p");
    u[i] = mp_rem(mp_scale(t0, mod_inv(r0.c[0], p)), gi_p[i]);
  }

  Int pk(p);  // current modulus p^k
  for (unsigned long k = 1; k < N; ++k) {
    ZPoly prod = {Int(1)};
    for (const auto& gi : g) prod = zp_mul(prod, gi);
    ZPoly e = zp_sub(f, prod);
    // e == 0 mod p^k; divide through and reduce mod p.
    ModPoly ek(p, {});
    {
      std::vector<long> ec(e.size());
      for (size_t i = 0; i < e.size(); ++i) {
        Int q = e[i] / pk;
        ec[i] = (long)mpz_fdiv_ui(q.get_mpz_t(), (unsigned long)p);
      }
      ek = ModPoly(p, std::move(ec));
    }
    for (size_t i = 0; i < n; ++i) {
      ModPoly delta = mp_rem(mp_mul(ek, u[i]), gi_p[i]);
      for (size_t j = 0; j < delta.c.size(); ++j) {
        if (g[i].size() <= j) g[i].resize(j + 1, Int(0));
        g[i][j] += pk * Int(delta.c[j]);
      }
    }
    pk *= p;
    for (auto& gi : g) gi = zp_mod(gi, pk);
  }
  return g;
}

namespace {

bool zp_less(const ZPoly& a, const ZPoly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

// Factor a primitive squarefree integer polynomial of degree >= 1 into
// irreducible primitive factors (Zassenhaus).
std::vector<ZPoly> zp_factor_squarefree_primitive(ZPoly f) {
  std::vector<ZPoly> out;
  if (zp_degree(f) == 1) {
    out.push_back(f);
    return out;
  }

  // Pick a prime keeping f squarefree with small lead, preferring few
  // modular factors.
  long best_p = 0;
  std::vector<ModPoly> best_factors;
  long tried = 0;
  for (long p = 3; tried < 6; p += 2) {
    Int pz(p);
    if (!is_prime(pz)) continue;
    if (mpz_divisible_ui_p(f.back().get_mpz_t(), (unsigned long)p)) continue;
    ModPoly fp = mp_from_z(f, p);
    if (mp_gcd(fp, mp_derivative(fp)).degree() != 0) continue;
    ++tried;
    auto facs = mp_factor_squarefree(mp_monic(fp));
    if (best_p == 0 || facs.size() < best_factors.size()) {
      best_p = p;
      best_factors = std::move(facs);
    }
    if (best_factors.size() == 1) break;
  }
  if (best_p == 0) throw internal_error("zp_factor: no usable prime found");
  if (best_factors.size() == 1) {
    out.push_back(f);
    return out;
  }
  long p = best_p;

  // Landau-Mignotte bound on the coefficients of any factor of lc(f)*f.
  Int norm2(0);
  for (const auto& c : f) norm2 += c * c;
  Int l2 = sqrt(norm2) + 1;
  Int bound = l2 * abs(f.back());
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(),
               (unsigned long)zp_degree(f) + 1);
  unsigned long N = 1;
  Int pN(p);
  while (pN <= 2 * bound) { pN *= p; ++N; }

  // Lift the modular factorization of the monic-ized f. We lift factors of
  // monic(f) and recombine against lc(f)*f.
  ZPoly fm = f;
  {
    // monic(f) mod p^N = f * lc(f)^{-1} mod p^N
    Int lc_inv;
    if (mpz_invert(lc_inv.get_mpz_t(), f.back().get_mpz_t(), pN.get_mpz_t()) == 0)
      throw internal_error("zp_factor: leading coefficient not invertible");
    for (auto& c : fm) c = mod_reduce(c * lc_inv, pN);
  }
  std::vector<ZPoly> lift_in;
  for (const auto& g : best_factors) lift_in.push_back(zp_from_mp(g));
  std::vector<ZPoly> lifted = hensel_lift_factors(fm, p, lift_in, N);

  // Subset recombination.
  std::vector<size_t> live(lifted.size());
  for (size_t i = 0; i < live.size(); ++i) live[i] = i;
  ZPoly rem = f;

  for (size_t d = 1; 2 * d <= live.size();) {
    bool found = false;
    std::vector<size_t> idx(d);
    for (size_t i = 0; i < d; ++i) idx[i] = i;
    for (;;) {
      ZPoly cand = {rem.back()};
      for (size_t i = 0; i < d; ++i)
        cand = zp_mod(zp_mul(cand, lifted[live[idx[i]]]), pN);
      cand = zp_mod_symmetric(cand, pN);
      cand = zp_primitive_part(cand);
      // Trial division over Q.
      QPoly q, r;
      qp_divrem(qp_from_z(rem), qp_from_z(cand), q, r);
      if (r.empty()) {
        out.push_back(cand);
        rem = zp_from_q_primitive(q);
        std::vector<size_t> next_live;
        for (size_t i = 0, j = 0; i < live.size(); ++i) {
          if (j < d && idx[j] == i) { ++j; continue; }
          next_live.push_back(live[i]);
        }
        live = std::move(next_live);
        found = true;
        break;
      }
      // Next combination of size d.
      long i = (long)d - 1;
      while (i >= 0 && idx[(size_t)i] == live.size() - d + (size_t)i) --i;
      if (i < 0) break;
      ++idx[(size_t)i];
      for (size_t j = (size_t)i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++d;
  }
  if (zp_degree(rem) >= 1) out.push_back(zp_primitive_part(rem));
  return out;
}

}  // namespace

std::vector<std::pair<ZPoly, long>> zp_factor(const ZPoly& f) {
  if (f.empty()) throw internal_error("zp_factor: zero polynomial");
  std::vector<std::pair<ZPoly, long>> out;
  ZPoly g = zp_primitive_part(f);
  if (zp_degree(g) == 0) return out;

  // Squarefree part via gcd with the derivative; each irreducible factor's
  // multiplicity is 1 plus its multiplicity in the cofactor g / squarefree.
  QPoly qg = qp_from_z(g);
  QPoly d = qp_gcd(qg, qp_from_z(zp_derivative(g)));
  QPoly q, r;
  qp_divrem(qg, d, q, r);
  ZPoly sq = zp_from_q_primitive(q);
  ZPoly rest = zp_from_q_primitive(d);
  for (auto& irr : zp_factor_squarefree_primitive(sq)) {
    long extra = 0;
    ZPoly h = rest;
    while (zp_degree(h) >= zp_degree(irr)) {
      QPoly q3, r3;
      qp_divrem(qp_from_z(h), qp_from_z(irr), q3, r3);
      if (!r3.empty()) break;
      ++extra;
      h = zp_from_q_primitive(q3);
    }
    out.emplace_back(std::move(irr), 1 + extra);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return zp_less(a.first, b.first); });
  return out;
}

std::vector<Rat> zp_rational_roots(const ZPoly& f) {
  std::vector<Rat> roots;
  for (const auto& [irr, mult] : zp_factor(f)) {
    (void)mult;
    if (zp_degree(irr) == 1) {
      Rat r(-irr[0], irr[1]);
      r.canonicalize();
      roots.push_back(r);
    }
  }
  std::sort(roots.begin(), roots.end(), [](const Rat& a, const Rat& b) {
    return cmp(a, b) < 0;
  });
  return roots;
}

// ---------------------------------------------------------------------------

std::vector<Rat> qmat_solve(QMatrix M, std::vector<Rat> rhs) {
  size_t rows = M.size();
  if (rows == 0 || rows != rhs.size())
    throw internal_error("qmat_solve: shape mismatch");
  size_t cols = M[0].size();
  if (rows < cols) throw internal_error("qmat_solve: underdetermined");

  size_t pr = 0;
  std::vector<size_t> pivot_row(cols);
  for (size_t c = 0; c < cols; ++c) {
    size_t sel = pr;
    while (sel < rows && is_zero(M[sel][c])) ++sel;
    if (sel == rows) throw internal_error("qmat_solve: rank deficient");
    std::swap(M[sel], M[pr]);
    std::swap(rhs[sel], rhs[pr]);
    Rat inv = 1 / M[pr][c];
    for (size_t j = c; j < cols; ++j) M[pr][j] *= inv;
    rhs[pr] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == pr || is_zero(M[i][c])) continue;
      Rat fct = M[i][c];
      for (size_t j = c; j < cols; ++j) M[i][j] -= fct * M[pr][j];
      rhs[i] -= fct * rhs[pr];
    }
    pivot_row[c] = pr;
    ++pr;
  }
  for (size_t i = pr; i < rows; ++i)
    if (!is_zero(rhs[i])) throw internal_error("qmat_solve: inconsistent system");
  std::vector<Rat> x(cols);
  for (size_t c = 0; c < cols; ++c) x[c] = rhs[pivot_row[c]];
  return x;
}

Rat qmat_det(QMatrix M) {
  size_t n = M.size();
  Rat det(1);
  for (size_t c = 0; c < n; ++c) {
    size_t sel = c;
    while (sel < n && is_zero(M[sel][c])) ++sel;
    if (sel == n) return Rat(0);
    if (sel != c) {
      std::swap(M[sel], M[c]);
      det = -det;
    }
    det *= M[c][c];
    Rat inv = 1 / M[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      if (is_zero(M[i][c])) continue;
      Rat fct = M[i][c] * inv;
      for (size_t j = c; j < n; ++j) M[i][j] -= fct * M[c][j];
    }
  }
  return det;
}

std::vector<std::vector<Int>> zmat_hnf(std::vector<std::vector<Int>> rows,
                                       std::vector<std::vector<Int>>* transform) {
  size_t m = rows.size();
  if (m == 0) return rows;
  size_t n = rows[0].size();
  std::vector<std::vector<Int>> U;
  if (transform) {
    U.assign(m, std::vector<Int>(m, Int(0)));
    for (size_t i = 0; i < m; ++i) U[i][i] = 1;
  }
  auto row_sub = [&](size_t i, size_t k, const Int& q) {
    for (size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[k][j];
    if (transform)
      for (size_t j = 0; j < m; ++j) U[i][j] -= q * U[k][j];
  };
  auto row_negate = [&](size_t i) {
    for (auto& v : rows[i]) v = -v;
    if (transform)
      for (auto& v : U[i]) v = -v;
  };

  // Unimodular pair combination: replaces (row r, row i) by
  // (u r + v i, (a/g) i - (b/g) r) where g = gcd(a, b) = u a + v b for the
  // pivot-column entries a, b.  One subquadratic gcdext call per pair instead
  // of a full Euclid chain of quotient subtractions.
  auto row_combine = [&](size_t r, size_t i, size_t col) {
    Int a = rows[r][col], b = rows[i][col];
    Int g, u, v;
    mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(),
               b.get_mpz_t());
    Int s = a / g, t = b / g;
    for (size_t j = 0; j < n; ++j) {
      Int nr = u * rows[r][j] + v * rows[i][j];
      Int ni = s * rows[i][j] - t * rows[r][j];
      rows[r][j] = std::move(nr);
      rows[i][j] = std::move(ni);
    }
    if (transform)
      for (size_t j = 0; j < m; ++j) {
        Int nr = u * U[r][j] + v * U[i][j];
        Int ni = s * U[i][j] - t * U[r][j];
        U[r][j] = std::move(nr);
        U[i][j] = std::move(ni);
      }
  };

  size_t r = 0;
  for (size_t col = n; col-- > 0 && r < m;) {
    size_t pivot = m;
    for (size_t i = r; i < m; ++i)
      if (sgn(rows[i][col]) != 0) {
        pivot = i;
        break;
      }
    if (pivot == m) continue;  // no pivot in this column
    if (pivot != r) {
      std::swap(rows[pivot], rows[r]);
      if (transform) std::swap(U[pivot], U[r]);
    }
    for (size_t i = r + 1; i < m; ++i)
      if (sgn(rows[i][col]) != 0) row_combine(r, i, col);
    if (sgn(rows[r][col]) < 0) row_negate(r);
    for (size_t i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(),
                 rows[r][col].get_mpz_t());
      if (sgn(q) != 0) row_sub(i, r, q);
    }
    ++r;
  }
  if (transform) *transform = std::move(U);
  return rows;
}

Int zmat_lattice_index(const std::vector<std::vector<Int>>& rows) {
  if (rows.empty()) throw internal_error("zmat_lattice_index: empty input");
  size_t n = rows[0].size();
  auto H = zmat_hnf(rows, nullptr);
  Int idx(1);
  for (size_t i = 0; i < n; ++i) {
    if (i >= H.size() || sgn(H[i][n - 1 - i]) == 0)
      throw internal_error("zmat_lattice_index: lattice not of full rank");
    idx *= H[i][n - 1 - i];
  }
  for (size_t i = n; i < H.size(); ++i)
    for (const auto& v : H[i])
      if (sgn(v) != 0) throw internal_error("zmat_lattice_index: bad HNF");
  return idx;
}

}  // namespace hc
