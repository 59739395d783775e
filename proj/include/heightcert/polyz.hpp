#ifndef HEIGHTCERT_POLYZ_HPP
#define HEIGHTCERT_POLYZ_HPP

#include <utility>
#include <vector>

#include "heightcert/common.hpp"

namespace hc {

// Dense polynomials: c[i] is the coefficient of x^i, no trailing zeros.
using ZPoly = std::vector<Int>;
using QPoly = std::vector<Rat>;

void zp_trim(ZPoly& f);
void qp_trim(QPoly& f);
long zp_degree(const ZPoly& f);
long qp_degree(const QPoly& f);

ZPoly zp_add(const ZPoly& a, const ZPoly& b);
ZPoly zp_sub(const ZPoly& a, const ZPoly& b);
ZPoly zp_mul(const ZPoly& a, const ZPoly& b);
ZPoly zp_neg(const ZPoly& a);
Int zp_eval(const ZPoly& f, const Int& x);
ZPoly zp_derivative(const ZPoly& f);
Int zp_content(const ZPoly& f);
ZPoly zp_primitive_part(const ZPoly& f);
ZPoly zp_scale(const ZPoly& f, const Int& s);

QPoly qp_from_z(const ZPoly& f);
// Clears denominators; returns primitive integer polynomial with the same roots.
ZPoly zp_from_q_primitive(const QPoly& f);

QPoly qp_add(const QPoly& a, const QPoly& b);
QPoly qp_sub(const QPoly& a, const QPoly& b);
QPoly qp_mul(const QPoly& a, const QPoly& b);
QPoly qp_scale(const QPoly& a, const Rat& s);
Rat qp_eval(const QPoly& f, const Rat& x);
void qp_divrem(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
QPoly qp_rem(const QPoly& a, const QPoly& b);
QPoly qp_monic(const QPoly& a);
QPoly qp_gcd(QPoly a, QPoly b);  // monic gcd
// g = gcd = u*a + v*b (g monic unless zero).
void qp_extended_gcd(const QPoly& a, const QPoly& b, QPoly& g, QPoly& u, QPoly& v);

// Resultant Res_x(a, b) over Q.
Rat qp_resultant(const QPoly& a, const QPoly& b);

// The m-th cyclotomic polynomial, integer coefficients.
ZPoly cyclotomic_poly(long m);

// Squarefree part of a nonzero integer polynomial (primitive output).
ZPoly zp_squarefree_part(const ZPoly& f);

// Hensel lifting: f monic mod-p-squarefree with given monic irreducible
// factors mod p; lifts them to monic factors of f modulo p^N (N >= 1).
// Returns lifted factors with coefficients reduced into [0, p^N).
std::vector<ZPoly> hensel_lift_factors(const ZPoly& f, long p,
                                       const std::vector<ZPoly>& factors_mod_p,
                                       unsigned long N);

// Factor a nonzero integer polynomial into irreducible primitive integer
// polynomials over Q (content dropped); returns (factor, multiplicity),
// factors with positive leading coefficient, deterministically ordered.
std::vector<std::pair<ZPoly, long>> zp_factor(const ZPoly& f);

// Rational roots of a nonzero integer polynomial.
std::vector<Rat> zp_rational_roots(const ZPoly& f);

// ---------------------------------------------------------------------------
// Exact linear algebra.

using QMatrix = std::vector<std::vector<Rat>>;

// Solve M * x = rhs exactly; M is r x c with r >= c and the system consistent
// of full column rank. Returns x of length c; throws if inconsistent/deficient.
std::vector<Rat> qmat_solve(QMatrix M, std::vector<Rat> rhs);

Rat qmat_det(QMatrix M);

// Row-style Hermite normal form over Z.
// Input: rows spanning a sublattice of Z^n. Columns are eliminated from
// index n-1 down to 0. Returns the echelon rows (pivots positive); if
// `transform` is non-null it receives U with U * input = output (rows of U
// correspond to output rows).
std::vector<std::vector<Int>> zmat_hnf(std::vector<std::vector<Int>> rows,
                                       std::vector<std::vector<Int>>* transform);

// Index [Z^n : L] of the full-rank lattice spanned by the given rows.
// Throws if the rows do not span a finite-index sublattice.
Int zmat_lattice_index(const std::vector<std::vector<Int>>& rows);

}  // namespace hc

#endif  // HEIGHTCERT_POLYZ_HPP
