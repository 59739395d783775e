#include "heightcert/modpoly.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace hc {

namespace {
inline long mulmod(long a, long b, long p) {
  return (long)((unsigned __int128)a * (unsigned long)b % (unsigned long)p);
}
inline long addmod(long a, long b, long p) {
  long s = a + b;
  if (s >= p) s -= p;
  return s;
}
inline long submod(long a, long b, long p) {
  long s = a - b;
  if (s < 0) s += p;
  return s;
}
}  // namespace

void ModPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

ModPoly ModPoly::constant(long p, long v) {
  v %= p;
  if (v < 0) v += p;
  return ModPoly(p, {v});
}

long mod_inv(long a, long p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) throw internal_error("mod_inv of zero");
  long t = 0, newt = 1, r = p, newr = a;
  while (newr != 0) {
    long q = r / newr;
    long tmp = t - q * newt; t = newt; newt = tmp;
    tmp = r - q * newr; r = newr; newr = tmp;
  }
  if (t < 0) t += p;
  return t;
}

ModPoly mp_add(const ModPoly& a, const ModPoly& b) {
  long p = a.p ? a.p : b.p;
  std::vector<long> c(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < c.size(); ++i)
    c[i] = addmod(a.coeff((long)i), b.coeff((long)i), p);
  return ModPoly(p, std::move(c));
}

ModPoly mp_sub(const ModPoly& a, const ModPoly& b) {
  long p = a.p ? a.p : b.p;
  std::vector<long> c(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < c.size(); ++i)
    c[i] = submod(a.coeff((long)i), b.coeff((long)i), p);
  return ModPoly(p, std::move(c));
}

ModPoly mp_mul(const ModPoly& a, const ModPoly& b) {
  long p = a.p ? a.p : b.p;
  if (a.is_zero() || b.is_zero()) return ModPoly::zero(p);
  std::vector<long> c(a.c.size() + b.c.size() - 1, 0);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size(); ++j) {
      c[i + j] = addmod(c[i + j], mulmod(a.c[i], b.c[j], p), p);
    }
  }
  return ModPoly(p, std::move(c));
}

ModPoly mp_scale(const ModPoly& a, long s) {
  s %= a.p;
  if (s < 0) s += a.p;
  std::vector<long> c(a.c.size());
  for (size_t i = 0; i < a.c.size(); ++i) c[i] = mulmod(a.c[i], s, a.p);
  return ModPoly(a.p, std::move(c));
}

ModPoly mp_monic(const ModPoly& a) {
  if (a.is_zero() || a.lead() == 1) return a;
  return mp_scale(a, mod_inv(a.lead(), a.p));
}

void mp_divrem(const ModPoly& a, const ModPoly& b, ModPoly& q, ModPoly& r) {
  if (b.is_zero()) throw internal_error("mp_divrem: division by zero");
  long p = b.p;
  r = a;
  q = ModPoly::zero(p);
  if (a.degree() < b.degree()) return;
  long binv = mod_inv(b.lead(), p);
  std::vector<long> qc(a.degree() - b.degree() + 1, 0);
  std::vector<long> rc = r.c;
  for (long i = (long)rc.size() - 1; i >= b.degree(); --i) {
    if (rc[i] == 0) continue;
    long f = mulmod(rc[i], binv, p);
    qc[i - b.degree()] = f;
    for (long j = 0; j <= b.degree(); ++j) {
      rc[i - b.degree() + j] =
          submod(rc[i - b.degree() + j], mulmod(f, b.c[j], p), p);
    }
  }
  q = ModPoly(p, std::move(qc));
  r = ModPoly(p, std::move(rc));
}

ModPoly mp_rem(const ModPoly& a, const ModPoly& b) {
  ModPoly q, r;
  mp_divrem(a, b, q, r);
  return r;
}

ModPoly mp_gcd(ModPoly a, ModPoly b) {
  while (!b.is_zero()) {
    ModPoly r = mp_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return mp_monic(a);
}

ModPoly mp_derivative(const ModPoly& a) {
  if (a.degree() <= 0) return ModPoly::zero(a.p);
  std::vector<long> c(a.c.size() - 1);
  for (size_t i = 1; i < a.c.size(); ++i)
    c[i - 1] = mulmod(a.c[i], (long)(i % (size_t)a.p), a.p);
  return ModPoly(a.p, std::move(c));
}

ModPoly mp_powmod(const ModPoly& base, const Int& e, const ModPoly& mod) {
  ModPoly result = ModPoly::one(mod.p);
  ModPoly b = mp_rem(base, mod);
  Int k = e;
  while (sgn(k) > 0) {
    if (mpz_odd_p(k.get_mpz_t())) result = mp_rem(mp_mul(result, b), mod);
    b = mp_rem(mp_mul(b, b), mod);
    k >>= 1;
  }
  return result;
}

long mp_eval(const ModPoly& a, long x) {
  long v = 0;
  for (long i = a.degree(); i >= 0; --i) v = addmod(mulmod(v, x, a.p), a.c[i], a.p);
  return v;
}

ModPoly mp_from_z(const std::vector<Int>& f, long p) {
  std::vector<long> c(f.size());
  Int r;
  Int P(p);
  for (size_t i = 0; i < f.size(); ++i) {
    mpz_fdiv_r(r.get_mpz_t(), f[i].get_mpz_t(), P.get_mpz_t());
    c[i] = r.get_si();
  }
  return ModPoly(p, std::move(c));
}

namespace {

// f monic with f' == 0, i.e. f(x) = g(x^p); returns g with g(x)^? ...
// Over F_p, f(x) = g(x^p) = g(x)^p when g has coefficients in F_p,
// so the p-th root of f is g with g[i] = f[i*p].
ModPoly mp_pth_root(const ModPoly& f) {
  long p = f.p;
  std::vector<long> g(f.degree() / p + 1, 0);
  for (size_t i = 0; i < g.size(); ++i) g[i] = f.coeff((long)i * p);
  return ModPoly(p, std::move(g));
}

}  // namespace

std::vector<SquarefreePart> mp_squarefree_decomposition(const ModPoly& f_in) {
  ModPoly f = mp_monic(f_in);
  std::vector<SquarefreePart> out;
  if (f.degree() <= 0) return out;

  // Yun-style decomposition, recursing on the p-th power part.
  std::function<void(const ModPoly&, long)> rec = [&](const ModPoly& g, long mult_scale) {
    ModPoly gp = mp_derivative(g);
    if (gp.is_zero()) {
      rec(mp_pth_root(g), mult_scale * g.p);
      return;
    }
    ModPoly c = mp_gcd(g, gp);
    ModPoly w;
    {
      ModPoly q, r;
      mp_divrem(g, c, q, r);
      w = q;
    }
    long i = 1;
    while (w.degree() > 0) {
      ModPoly y = mp_gcd(w, c);
      ModPoly fac;
      {
        ModPoly q, r;
        mp_divrem(w, y, q, r);
        fac = q;
      }
      if (fac.degree() > 0) out.push_back({mp_monic(fac), i * mult_scale});
      {
        ModPoly q, r;
        mp_divrem(c, y, q, r);
        c = q;
      }
      w = std::move(y);
      ++i;
    }
    if (c.degree() > 0) rec(mp_pth_root(c), mult_scale * g.p);
  };
  rec(f, 1);

  std::sort(out.begin(), out.end(), [](const SquarefreePart& a, const SquarefreePart& b) {
    if (a.mult != b.mult) return a.mult < b.mult;
    return a.poly.c < b.poly.c;
  });
  return out;
}

namespace {

void equal_degree_split(const ModPoly& f, long d, std::mt19937_64& rng,
                        std::vector<ModPoly>& out) {
  long p = f.p;
  if (f.degree() == d) {
    out.push_back(mp_monic(f));
    return;
  }
  Int q = pow_int(Int(p), (unsigned long)d);
  for (;;) {
    // Random polynomial of degree < deg(f).
    std::vector<long> ac((size_t)f.degree(), 0);
    for (auto& v : ac) v = (long)(rng() % (unsigned long)p);
    ModPoly a(p, std::move(ac));
    if (a.degree() < 1 && f.degree() > 1) continue;
    ModPoly g = mp_gcd(a, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree_split(g, d, rng, out);
      ModPoly quo, rem;
      mp_divrem(f, g, quo, rem);
      equal_degree_split(quo, d, rng, out);
      return;
    }
    ModPoly h;
    if (p == 2) {
      // Trace map T(a) = a + a^2 + ... + a^{2^{d-1}} over F_2.
      ModPoly t = mp_rem(a, f), acc = t;
      for (long i = 1; i < d; ++i) {
        t = mp_rem(mp_mul(t, t), f);
        acc = mp_add(acc, t);
      }
      h = acc;
    } else {
      Int e = (q - 1) / 2;
      h = mp_sub(mp_powmod(a, e, f), ModPoly::one(p));
    }
    g = mp_gcd(h, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree_split(g, d, rng, out);
      ModPoly quo, rem;
      mp_divrem(f, g, quo, rem);
      equal_degree_split(quo, d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<ModPoly> mp_factor_squarefree(const ModPoly& f_in) {
  ModPoly f = mp_monic(f_in);
  std::vector<ModPoly> out;
  if (f.degree() <= 0) return out;
  long p = f.p;

  // Deterministic seed from the polynomial itself.
  uint64_t seed = 0x9e3779b97f4a7c15ull ^ (uint64_t)p;
  for (long v : f.c) seed = seed * 0x100000001b3ull + (uint64_t)v;
  std::mt19937_64 rng(seed);

  // Distinct-degree factorization.
  ModPoly x = ModPoly::x(p);
  ModPoly h = x;  // x^{p^d} mod f
  ModPoly rest = f;
  for (long d = 1; rest.degree() > 0 && 2 * d <= rest.degree(); ++d) {
    h = mp_powmod(h, Int(p), rest);
    ModPoly g = mp_gcd(mp_sub(h, x), rest);
    if (g.degree() > 0) {
      equal_degree_split(g, d, rng, out);
      ModPoly quo, rem;
      mp_divrem(rest, g, quo, rem);
      rest = quo;
      h = mp_rem(h, rest);
    }
  }
  if (rest.degree() > 0) out.push_back(mp_monic(rest));

  std::sort(out.begin(), out.end(), [](const ModPoly& a, const ModPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.c < b.c;
  });
  return out;
}

std::vector<std::pair<ModPoly, long>> mp_factor(const ModPoly& f) {
  std::vector<std::pair<ModPoly, long>> out;
  for (const auto& part : mp_squarefree_decomposition(f)) {
    for (const auto& irr : mp_factor_squarefree(part.poly)) {
      out.push_back({irr, part.mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree())
      return a.first.degree() < b.first.degree();
    if (a.first.c != b.first.c) return a.first.c < b.first.c;
    return a.second < b.second;
  });
  return out;
}

// ---------------------------------------------------------------------------

FqField FqField::prime_field(long p) {
  return FqField(p, ModPoly::x(p));
}

FqElem fq_from_int(const FqField& F, const Int& v) {
  Int r;
  Int P(F.p);
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), P.get_mpz_t());
  return FqElem{ModPoly::constant(F.p, r.get_si())};
}

FqElem fq_from_poly(const FqField& F, const ModPoly& a) {
  return FqElem{mp_rem(a, F.modulus)};
}

FqElem fq_add(const FqField&, const FqElem& a, const FqElem& b) {
  return FqElem{mp_add(a.rep, b.rep)};
}

FqElem fq_sub(const FqField&, const FqElem& a, const FqElem& b) {
  return FqElem{mp_sub(a.rep, b.rep)};
}

FqElem fq_neg(const FqField& F, const FqElem& a) {
  return FqElem{mp_sub(ModPoly::zero(F.p), a.rep)};
}

FqElem fq_mul(const FqField& F, const FqElem& a, const FqElem& b) {
  return FqElem{mp_rem(mp_mul(a.rep, b.rep), F.modulus)};
}

FqElem fq_inv(const FqField& F, const FqElem& a) {
  if (a.is_zero()) throw internal_error("fq_inv of zero");
  // Extended Euclid in F_p[x].
  ModPoly r0 = F.modulus, r1 = a.rep;
  ModPoly t0 = ModPoly::zero(F.p), t1 = ModPoly::one(F.p);
  while (!r1.is_zero()) {
    ModPoly q, r;
    mp_divrem(r0, r1, q, r);
    ModPoly t2 = mp_sub(t0, mp_mul(q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  // r0 = gcd (a nonzero constant since modulus is irreducible).
  long inv = mod_inv(r0.c[0], F.p);
  return FqElem{mp_rem(mp_scale(t0, inv), F.modulus)};
}

FqElem fq_pow(const FqField& F, const FqElem& a, const Int& e) {
  if (sgn(e) < 0) return fq_pow(F, fq_inv(F, a), -e);
  return FqElem{mp_powmod(a.rep, e, F.modulus)};
}

FqElem fq_frobenius(const FqField& F, const FqElem& a) {
  return fq_pow(F, a, Int(F.p));
}

}  // namespace hc
