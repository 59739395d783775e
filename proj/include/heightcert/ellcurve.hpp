#ifndef HEIGHTCERT_ELLCURVE_HPP
#define HEIGHTCERT_ELLCURVE_HPP

#include <array>
#include <string>
#include <vector>

#include "heightcert/lpoly.hpp"
#include "heightcert/numfield.hpp"

namespace hc {

// ---------------------------------------------------------------------------
// Curves and points.

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with integral coefficients.
struct EllipticCurve {
  FieldRef K;
  FieldElement a1, a2, a3, a4, a6;
  FieldElement b2, b4, b6, b8, c4, c6, delta;
  FieldElement j;
  std::vector<long> bad_primes;  // rational primes under primes with v(delta) > 0
  bool cm = false;               // declared complex multiplication
  long cm_disc = 0;              // CM discriminant when known (0 = unknown)
};

EllipticCurve make_curve(const FieldRef& K, const FieldElement& a1,
                         const FieldElement& a2, const FieldElement& a3,
                         const FieldElement& a4, const FieldElement& a6,
                         bool cm = false, long cm_disc = 0);
EllipticCurve make_curve_q(long a1, long a2, long a3, long a4, long a6,
                           bool cm = false, long cm_disc = 0);

// Affine point over a coordinate field L (containing the curve's field), or O.
struct ECPoint {
  FieldRef L;
  bool inf = true;
  FieldElement x, y;
};

ECPoint ec_infinity(const FieldRef& L);
// Checks the Weierstrass equation exactly.
ECPoint ec_affine(const EllipticCurve& E, const FieldElement& x,
                  const FieldElement& y);
bool ec_on_curve(const EllipticCurve& E, const ECPoint& P);
bool ec_equal(const ECPoint& P, const ECPoint& Q);

ECPoint ec_neg(const EllipticCurve& E, const ECPoint& P);
ECPoint ec_add(const EllipticCurve& E, const ECPoint& P, const ECPoint& Q);
ECPoint ec_sub(const EllipticCurve& E, const ECPoint& P, const ECPoint& Q);
ECPoint ec_mul_int(const EllipticCurve& E, const Int& n, const ECPoint& P);
// Coordinatewise Galois action (curve coefficients must be rational).
ECPoint ec_galois(const EllipticCurve& E, const GaloisElement& s, const ECPoint& P);
// Group-ring application: sum_j coeffs[j] * sigma^j P.
ECPoint ec_apply_poly(const EllipticCurve& E, const GaloisElement& s,
                      const std::vector<Int>& coeffs, const ECPoint& P);

// ---------------------------------------------------------------------------
// Reduction.

struct RedCurve {
  PrimeIdeal pr;
  FqElem a1, a2, a3, a4, a6;
};
RedCurve reduce_curve(const EllipticCurve& E, const PrimeIdeal& P);

struct RedPoint {
  bool inf = true;
  FqElem x, y;
};

// Reduction modulo a good prime; coordinate poles (kernel of reduction)
// rescale projectively to O-tilde.
RedPoint reduce_point(const EllipticCurve& E, const ECPoint& P,
                      const PrimeIdeal& pr);

bool red_equal(const RedPoint& a, const RedPoint& b);
bool red_on_curve(const RedCurve& Et, const RedPoint& a);
RedPoint red_neg(const RedCurve& Et, const RedPoint& a);
RedPoint red_add(const RedCurve& Et, const RedPoint& a, const RedPoint& b);
RedPoint red_mul_int(const RedCurve& Et, const Int& n, const RedPoint& a);

// ---------------------------------------------------------------------------
// Point counts and Frobenius data.

struct FrobeniusData {
  long p = 0;
  long a_p = 0;
  std::array<Int, 3> coeffs;  // [p, -a_p, 1]: Phi_p(X) = X^2 - a_p X + p
};

// Naive count of #E~(F_p); returns (N, a_p = p + 1 - N).  p must be good and
// within the enumeration budget.
std::pair<Int, long> count_points(const EllipticCurve& E, long p,
                                  long budget = 1000000);
// #E~(F_{p^f}) from a_p via the Frobenius eigenvalue power sums.
Int count_points_ext(const EllipticCurve& E, long p, long f,
                     long budget = 1000000);
FrobeniusData frobenius_poly(const EllipticCurve& E, long p,
                             long budget = 1000000);
// r = Res(Phi_p(X), X^m - 1) != 0, exactly.
Int resultant_with_cyclotomic(const FrobeniusData& phi, long m);
bool is_ordinary(const EllipticCurve& E, long p, long budget = 1000000);

// Phi_p(sigma) P reduces to O-tilde at pr (must hold; checked exactly).
bool frobenius_annihilates(const EllipticCurve& E, const ECPoint& P, long p,
                           const PrimeIdeal& pr);

struct TorsionResult {
  bool is_torsion = false;
  Int witness_r;  // resultant witness when torsion
  ECPoint Q;      // Phi_p(sigma) P (O when torsion)
};
TorsionResult torsion_test(const EllipticCurve& E, const ECPoint& P, long p);

// ---------------------------------------------------------------------------
// Division polynomials and torsion over a field.

// x-part P_n of the n-th division polynomial: psi_n = P_n(x) * psi_2^(n+1 mod 2).
QPoly division_poly_x(const EllipticCurve& E, long n);
// psi_n^2 as a polynomial in x alone (degree n^2 - 1); vanishes exactly at
// x-coordinates of nonzero n-torsion.
QPoly division_poly_sq(const EllipticCurve& E, long n);

// All P in E(L) with [n]P = O, including O; exact search via division
// polynomial roots in L.
std::vector<ECPoint> torsion_points_over(const EllipticCurve& E,
                                         const FieldRef& L, long n);

struct PTorsionCheck {
  bool trivial = false;       // E(L)[p] = 0 proven
  std::string method;         // "division-poly" or "reduction-injection"
  long aux_prime = 0;         // auxiliary prime for the injection argument
  ECPoint witness;            // a nonzero p-torsion point when not trivial
};
// Decide E(L)[p] = 0.  Small p: direct division-polynomial root search
// over L.  Larger p: torsion injects into E~(k_Q) for a good auxiliary
// prime Q of residue characteristic != p, so p not dividing #E~(k_Q)
// certifies triviality exactly.
PTorsionCheck p_torsion_check(const EllipticCurve& E, const FieldRef& L, long p,
                              long division_poly_cap = 17);

// ---------------------------------------------------------------------------
// Good-prime selection.

enum class CertMode { Theorem, Diagnostic };

struct GoodPrimeReport {
  long p = 0;
  bool used_cm_route = false;   // accepted via CM + ordinary
  std::string torsion_method;   // how E(L)[p] = 0 was established (non-CM)
  long aux_prime = 0;
  bool unramified = true;
  std::vector<std::pair<long, std::string>> rejected;  // (p, reason)
};

// Smallest good prime p >= start: p outside the bad set, unramified in L,
// p > theorem_threshold in theorem mode (pass exp(B+1) as an upper bound),
// and either E(L)[p] = 0 or (declared CM and ordinary at p).
GoodPrimeReport select_good_prime(const EllipticCurve& E, const FieldRef& L,
                                  CertMode mode, long start,
                                  double theorem_threshold = 0.0,
                                  long search_bound = 100000);

// ---------------------------------------------------------------------------
// Formal group.

struct FormalPSeries {
  long p = 0;
  long order = 0;
  std::vector<long> coeffs;  // [p]-series coefficients over F_p, index 1..order
};

// The multiplication-by-p series of the formal group of E~/F_p in t = -x/y,
// truncated at the given order (default 2p+1; must be >= p+1).  Asserts all
// nonzero coefficients sit at indices divisible by p.
FormalPSeries formal_p_series(const EllipticCurve& E, long p, long order = 0);

}  // namespace hc

#endif  // HEIGHTCERT_ELLCURVE_HPP
