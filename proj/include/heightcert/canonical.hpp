#ifndef HEIGHTCERT_CANONICAL_HPP
#define HEIGHTCERT_CANONICAL_HPP

#include "heightcert/ellcurve.hpp"
#include "heightcert/heights.hpp"

namespace hc {

// The very ample embedding psi(P) = [1 : x : y], psi(O) = [0 : 0 : 1].
ProjPoint psi_embed(const ECPoint& P);
// The x-map companion [1 : x]; P must be affine.
ProjPoint x_embed(const ECPoint& P);

enum class HeightNorm { XMap, PsiMap };

struct CanonicalHeightResult {
  double value = 0.0;        // midpoint of the enclosure
  double error = 0.0;        // rigorous radius (tail bound + interval width)
  RealInterval enclosure;    // [value - error, value + error] as an interval
  long steps = 0;            // doubling steps used
  HeightNorm norm = HeightNorm::PsiMap;
  bool torsion_zero = false; // exactly zero via a torsion certificate
};

// Explicit height-comparison constants for the integral model.
struct HeightComparisonBound {
  // Upper bound on sup |h([1 : x(2P)]) - 4 h([1 : x(P)])| over all P.
  RealInterval c_dup_x;
  // Upper bound on sup |h(psi P) - (3/2) h([1 : x(P)])|.
  RealInterval c_xy;
  // Upper bound on sup |h(psi 2P) - 4 h(psi P)|.
  RealInterval c_dup;
  RealInterval c_psi;   // |h(psi P) - hhat_psi(P)| <= C_psi
                        // (min of C_dup/3 and C_xy + C_dup_x/2)
  RealInterval bconst;  // B = 2 C_psi + log 2
};

HeightComparisonBound height_comparison_bound(const EllipticCurve& E,
                                              mpfr_prec_t prec = 128);

// Torsion certificate via Frobenius annihilators at a few good unramified
// primes (exact); false only means no certificate was found.
bool is_torsion_point(const EllipticCurve& E, const ECPoint& P);

// Canonical height by the doubling limit 4^{-n} h(embed(2^n P)) with the
// certified geometric tail C/3 * 4^{-n}; exact 0 for certified torsion.
CanonicalHeightResult canonical_height(const EllipticCurve& E, const ECPoint& P,
                                       HeightNorm norm, double tolerance,
                                       mpfr_prec_t prec = 192,
                                       long max_steps = 30);

// hhat(sum x_i) <= t * sum hhat(x_i), up to the combined tolerances.
bool parallelogram_check(const EllipticCurve& E, const std::vector<ECPoint>& pts,
                         double tolerance);

// |hhat(sigma P) - hhat(P)| <= 2*tolerance + combined errors for every sigma.
bool galois_invariance_check(const EllipticCurve& E, const ECPoint& P,
                             double tolerance);

}  // namespace hc

#endif  // HEIGHTCERT_CANONICAL_HPP
