#ifndef HEIGHTCERT_LPOLY_HPP
#define HEIGHTCERT_LPOLY_HPP

#include <vector>

#include "heightcert/numfield.hpp"

namespace hc {

// Dense polynomials with coefficients in a number field L.
using LPoly = std::vector<FieldElement>;

void lp_trim(LPoly& f);
long lp_degree(const LPoly& f);
LPoly lp_from_q(const FieldRef& L, const QPoly& f);
LPoly lp_add(const LPoly& a, const LPoly& b);
LPoly lp_sub(const LPoly& a, const LPoly& b);
LPoly lp_mul(const LPoly& a, const LPoly& b);
FieldElement lp_eval(const LPoly& f, const FieldElement& x);
void lp_divrem(const LPoly& a, const LPoly& b, LPoly& q, LPoly& r);
LPoly lp_gcd(LPoly a, LPoly b);  // monic gcd

// Minimal polynomial of a over Q, primitive integer coefficients,
// positive leading coefficient.
ZPoly fe_min_poly(const FieldElement& a);

// All roots in L of an integer polynomial (degree >= 1), exactly
// (Trager norm method), deterministically ordered.
std::vector<FieldElement> roots_in_field(const ZPoly& f, const FieldRef& L);

// Square roots of a in L (0, 1, or 2 values; negatives paired).
std::vector<FieldElement> sqrt_in_field(const FieldElement& a);

// Roots in L of a quadratic (or linear) polynomial with L coefficients.
std::vector<FieldElement> lp_quadratic_roots(const LPoly& f);

}  // namespace hc

#endif  // HEIGHTCERT_LPOLY_HPP
