#ifndef HEIGHTCERT_HEIGHTS_HPP
#define HEIGHTCERT_HEIGHTS_HPP

#include <optional>
#include <vector>

#include "heightcert/numfield.hpp"

namespace hc {

// A point of P^n(K): homogeneous coordinates, not all zero.
struct ProjPoint {
  FieldRef K;
  std::vector<FieldElement> x;
};

ProjPoint pp_make(std::vector<FieldElement> coords);
// Projective equality: all 2x2 minors vanish (exact).
bool pp_equal(const ProjPoint& a, const ProjPoint& b);
ProjPoint pp_scale(const ProjPoint& a, const FieldElement& s);

// A copy with integral coordinates (multiplied through by a common
// denominator); projectively equal to the input.
ProjPoint pp_integral(const ProjPoint& a);

// Absolute logarithmic Weil height
//   h(x) = sum_v n_v log max_k |x_k|_v,
// computed after clearing denominators as
//   (1/n) [ sum over archimedean embeddings (with multiplicity) of
//           log max_k |x_k| ]  -  (1/n) log N((x_0,...,x_n)).
RealInterval weil_height(const ProjPoint& a, mpfr_prec_t prec);

// Logarithmic v-adic distance
//   delta_v(x,y) = -log( max|x_i y_j - x_j y_i|_v / (max|x_k|_v max|y_k|_v) );
// nullopt encodes +infinity (x = y projectively).
std::optional<RealInterval> delta_v(const ProjPoint& a, const ProjPoint& b,
                                    const Place& v, mpfr_prec_t prec);

// Exact finite-place variant: delta_v = r * log p with r rational; nullopt
// is +infinity.  Nonnegative at finite places.
std::optional<Rat> delta_v_finite_coeff(const ProjPoint& a, const ProjPoint& b,
                                        const Place& v);

// Congruence at a finite place: the reductions coincide, detected as
// delta_v > 0 for unit-content coordinates; implemented via the exact
// delta coefficient against the content contribution.
bool congruent_at(const ProjPoint& a, const ProjPoint& b, const Place& v);

struct LocalGlobalCheck {
  RealInterval lhs;  // h(x) + h(y)
  RealInterval rhs;  // sum_{v in T} n_v delta_v(x,y) - log 2
  bool holds = false;
};

// h(x) + h(y) >= sum_{v in T} n_v delta_v(x,y) - log 2 for distinct points.
LocalGlobalCheck check_local_global(const ProjPoint& a, const ProjPoint& b,
                                    const std::vector<Place>& T,
                                    mpfr_prec_t prec);

struct CongruenceBoundCheck {
  RealInterval lhs;  // h(P) + h(Q)
  RealInterval rhs;  // (1/[L:Q]) sum log N(P_i) - log 2
  bool holds = false;
};

// The Weil-height half of the congruence lower bound: P = Q mod each listed
// prime forces h(P) + h(Q) >= (1/[L:Q]) sum log N(P_i) - log 2.
CongruenceBoundCheck congruence_height_bound(const ProjPoint& P,
                                             const ProjPoint& Q,
                                             const std::vector<Place>& primes,
                                             mpfr_prec_t prec);

}  // namespace hc

#endif  // HEIGHTCERT_HEIGHTS_HPP
