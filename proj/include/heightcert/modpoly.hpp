#ifndef HEIGHTCERT_MODPOLY_HPP
#define HEIGHTCERT_MODPOLY_HPP

#include <cstdint>
#include <vector>

#include "heightcert/common.hpp"

namespace hc {

// Dense polynomials over F_p, p an odd-or-even prime < 2^31.
// Coefficients normalized to [0, p).
struct ModPoly {
  long p = 0;
  std::vector<long> c;  // c[i] = coefficient of x^i; no trailing zeros

  ModPoly() = default;
  ModPoly(long p_, std::vector<long> c_) : p(p_), c(std::move(c_)) { trim(); }

  void trim();
  long degree() const { return (long)c.size() - 1; }  // -1 for zero
  bool is_zero() const { return c.empty(); }
  long lead() const { return c.back(); }
  long coeff(long i) const { return (i >= 0 && i < (long)c.size()) ? c[i] : 0; }

  static ModPoly zero(long p) { return ModPoly(p, {}); }
  static ModPoly one(long p) { return ModPoly(p, {1 % p}); }
  static ModPoly x(long p) { return ModPoly(p, {0, 1}); }
  static ModPoly constant(long p, long v);
};

long mod_inv(long a, long p);

ModPoly mp_add(const ModPoly& a, const ModPoly& b);
ModPoly mp_sub(const ModPoly& a, const ModPoly& b);
ModPoly mp_mul(const ModPoly& a, const ModPoly& b);
ModPoly mp_scale(const ModPoly& a, long s);
ModPoly mp_monic(const ModPoly& a);
// Division with remainder; b nonzero.
void mp_divrem(const ModPoly& a, const ModPoly& b, ModPoly& q, ModPoly& r);
ModPoly mp_rem(const ModPoly& a, const ModPoly& b);
ModPoly mp_gcd(ModPoly a, ModPoly b);  // monic gcd
ModPoly mp_derivative(const ModPoly& a);
ModPoly mp_powmod(const ModPoly& base, const Int& e, const ModPoly& mod);
long mp_eval(const ModPoly& a, long x);

// Reduce an integer polynomial mod p.
ModPoly mp_from_z(const std::vector<Int>& f, long p);

// Squarefree decomposition: f = prod parts[i].poly ^ parts[i].mult
// (up to the leading coefficient, which is returned separately).
struct SquarefreePart {
  ModPoly poly;  // monic squarefree
  long mult;
};
std::vector<SquarefreePart> mp_squarefree_decomposition(const ModPoly& f);

// Factor a monic squarefree polynomial into monic irreducibles,
// deterministically ordered (lexicographic by coefficient vector).
// Internally randomized (Cantor-Zassenhaus) with a seed derived from f.
std::vector<ModPoly> mp_factor_squarefree(const ModPoly& f);

// Full factorization of arbitrary nonzero f: (factor, multiplicity) pairs,
// deterministically ordered.
std::vector<std::pair<ModPoly, long>> mp_factor(const ModPoly& f);

// ---------------------------------------------------------------------------
// F_{p^f} as F_p[x]/(modulus), modulus monic irreducible.

struct FqField {
  long p = 0;
  long f = 1;
  ModPoly modulus;  // degree f

  FqField() = default;
  FqField(long p_, ModPoly mod_) : p(p_), f(mod_.degree()), modulus(std::move(mod_)) {}
  static FqField prime_field(long p);

  Int order() const { return pow_int(Int(p), (unsigned long)f); }
  bool operator==(const FqField& o) const {
    return p == o.p && f == o.f && modulus.c == o.modulus.c;
  }
};

struct FqElem {
  ModPoly rep;  // degree < f

  bool is_zero() const { return rep.is_zero(); }
  bool operator==(const FqElem& o) const { return rep.c == o.rep.c && rep.p == o.rep.p; }
  bool operator!=(const FqElem& o) const { return !(*this == o); }
};

FqElem fq_from_int(const FqField& F, const Int& v);
FqElem fq_from_poly(const FqField& F, const ModPoly& a);
FqElem fq_add(const FqField& F, const FqElem& a, const FqElem& b);
FqElem fq_sub(const FqField& F, const FqElem& a, const FqElem& b);
FqElem fq_neg(const FqField& F, const FqElem& a);
FqElem fq_mul(const FqField& F, const FqElem& a, const FqElem& b);
FqElem fq_inv(const FqField& F, const FqElem& a);
FqElem fq_pow(const FqField& F, const FqElem& a, const Int& e);
// x^p (the Frobenius) applied to a.
FqElem fq_frobenius(const FqField& F, const FqElem& a);

}  // namespace hc

#endif  // HEIGHTCERT_MODPOLY_HPP
