#ifndef HEIGHTCERT_COMMON_HPP
#define HEIGHTCERT_COMMON_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hc {

using Int = mpz_class;
using Rat = mpq_class;

// Error classes map onto the CLI exit codes.
enum class ErrorKind {
  Parse = 2,
  Hypothesis = 3,
  PrecisionCap = 4,
  RefutedStep = 5,
  Internal = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error parse_error(const std::string& m) { return Error(ErrorKind::Parse, m); }
inline Error hypothesis_error(const std::string& m) { return Error(ErrorKind::Hypothesis, m); }
inline Error precision_error(const std::string& m) { return Error(ErrorKind::PrecisionCap, m); }
inline Error refuted_step_error(const std::string& m) { return Error(ErrorKind::RefutedStep, m); }
inline Error internal_error(const std::string& m) { return Error(ErrorKind::Internal, m); }

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }

inline Int rat_num(const Rat& q) { return Int(q.get_num()); }
inline Int rat_den(const Rat& q) { return Int(q.get_den()); }

// p-adic valuation of a nonzero integer.
inline long valuation_int(const Int& n, const Int& p) {
  if (sgn(n) == 0) throw internal_error("valuation_int: zero input");
  Int m = abs(n), q, r;
  long v = 0;
  for (;;) {
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    if (sgn(r) != 0) return v;
    m = q;
    ++v;
  }
}

inline long valuation_rat(const Rat& x, const Int& p) {
  if (is_zero(x)) throw internal_error("valuation_rat: zero input");
  return valuation_int(rat_num(x), p) - valuation_int(rat_den(x), p);
}

inline Int pow_int(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

inline bool is_prime(const Int& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

inline long euler_phi(long m) {
  long result = m, n = m;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

inline long gcd_long(long a, long b) {
  while (b) { long t = a % b; a = b; b = t; }
  return a < 0 ? -a : a;
}

// a^e mod m for long arguments, m > 0.
inline long powmod_long(long a, long e, long m) {
  a %= m; if (a < 0) a += m;
  unsigned __int128 r = 1, base = (unsigned long)a;
  while (e > 0) {
    if (e & 1) r = r * base % (unsigned long)m;
    base = base * base % (unsigned long)m;
    e >>= 1;
  }
  return (long)r;
}

// Multiplicative order of a modulo m; requires gcd(a,m)=1.
inline long mult_order(long a, long m) {
  if (m == 1) return 1;
  long x = a % m; if (x < 0) x += m;
  if (gcd_long(x, m) != 1) throw internal_error("mult_order: not a unit");
  long ord = 1, y = x;
  while (y != 1 % m) { y = (long)((unsigned __int128)y * x % (unsigned long)m); ++ord; }
  return ord;
}

}  // namespace hc

#endif  // HEIGHTCERT_COMMON_HPP
