#ifndef HEIGHTCERT_NUMFIELD_HPP
#define HEIGHTCERT_NUMFIELD_HPP

#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "heightcert/common.hpp"
#include "heightcert/interval.hpp"
#include "heightcert/modpoly.hpp"
#include "heightcert/polyz.hpp"

namespace hc {

enum class FieldKind { Rationals, Quadratic, Cyclotomic };

// Q, Q(sqrt d) with d squarefree, or Q(zeta_m).  All three families are
// monogenic: the ring of integers is Z[theta] for the stored generator theta
// (theta = (1+sqrt d)/2 when d = 1 mod 4), so lattice indices in the power
// basis compute ideal norms exactly.
struct NumberField {
  FieldKind kind = FieldKind::Rationals;
  long param = 0;      // d (quadratic) or m (cyclotomic, canonicalized)
  long degree = 1;
  ZPoly minpoly;       // monic minimal polynomial of theta over Z
  Int discriminant{1};
  bool theta_half = false;  // quadratic: theta = (1+sqrt d)/2

  std::string name() const;
};

using FieldRef = std::shared_ptr<const NumberField>;

FieldRef make_rationals();
FieldRef make_quadratic(long d);
// m >= 1; m and 2m give the same field for odd m (canonicalized to odd m);
// m <= 2 gives the rationals.
FieldRef make_cyclotomic(long m);

bool same_field(const FieldRef& a, const FieldRef& b);

// ---------------------------------------------------------------------------
// Elements: rational coefficient vectors in the power basis 1, theta, ...,
// theta^(n-1).

struct FieldElement {
  FieldRef K;
  std::vector<Rat> c;

  bool is_zero() const;
  bool is_rational() const;
  Rat as_rat() const;  // requires is_rational()
};

FieldElement fe_zero(const FieldRef& K);
FieldElement fe_one(const FieldRef& K);
FieldElement fe_from_rat(const FieldRef& K, const Rat& v);
FieldElement fe_theta(const FieldRef& K);
FieldElement fe_from_coords(const FieldRef& K, std::vector<Rat> c);

FieldElement fe_add(const FieldElement& a, const FieldElement& b);
FieldElement fe_sub(const FieldElement& a, const FieldElement& b);
FieldElement fe_neg(const FieldElement& a);
FieldElement fe_mul(const FieldElement& a, const FieldElement& b);
FieldElement fe_mul_rat(const FieldElement& a, const Rat& s);
FieldElement fe_inv(const FieldElement& a);
FieldElement fe_div(const FieldElement& a, const FieldElement& b);
FieldElement fe_pow(const FieldElement& a, long e);  // e may be negative
bool fe_equal(const FieldElement& a, const FieldElement& b);

Rat fe_norm(const FieldElement& a);
Rat fe_trace(const FieldElement& a);
std::string fe_str(const FieldElement& a);

// Writes a = A(theta)/den with A integral and den > 0 minimal.
void fe_decompose(const FieldElement& a, ZPoly& A, Int& den);
bool fe_is_integral(const FieldElement& a);  // den == 1

// ---------------------------------------------------------------------------
// Galois group (all supported fields are abelian over Q).

struct GaloisElement {
  FieldRef K;
  // Cyclotomic(m): theta = zeta ↦ zeta^c with gcd(c,m)=1.
  // Quadratic: c = 1 identity, c = -1 conjugation.  Rationals: c = 1.
  long c = 1;

  bool is_identity() const;
};

std::vector<GaloisElement> galois_group(const FieldRef& K);
GaloisElement galois_identity(const FieldRef& K);
GaloisElement galois_compose(const GaloisElement& a, const GaloisElement& b);
long galois_order(const GaloisElement& a);
FieldElement galois_apply(const GaloisElement& s, const FieldElement& a);

// ---------------------------------------------------------------------------
// Primes and places.

constexpr long VAL_INFINITY = std::numeric_limits<long>::max();

struct PrimeIdeal {
  FieldRef K;
  long p = 0;
  long e = 1;       // ramification index
  long f = 1;       // residue degree
  long index = 0;   // position in the canonical ordering of primes above p
  long num_above = 1;  // number of primes above p in K
  ModPoly factor;   // monic irreducible factor of minpoly mod p (degree f);
                    // the prime is (p, factor(theta))
  FqField resfield; // F_{p^f} = F_p[x]/(factor)
};

std::vector<PrimeIdeal> primes_above(const FieldRef& K, long p);

// Valuation normalized so a uniformizer has valuation 1 (so valuation(p) = e);
// VAL_INFINITY for zero.
long valuation(const FieldElement& a, const PrimeIdeal& P);

// Image in the residue field; requires valuation(a, P) >= 0, else a pole
// error is raised.
FqElem reduce_element(const FieldElement& a, const PrimeIdeal& P);

// Norm of the ideal generated by integral elements, as the index of the
// lattice they span over the power basis.
Int ideal_norm_of_generators(const std::vector<FieldElement>& gens);

struct Place {
  FieldRef K;
  bool finite = false;
  // Archimedean: embedding datum.  Quadratic real: emb = 0 (+sqrt d) or 1
  // (-sqrt d).  Quadratic imaginary: emb = 0.  Cyclotomic: emb = c with
  // zeta ↦ exp(2 pi i c / m), representatives c < m/2.
  long emb = 0;
  bool complex_emb = false;
  // Finite: the prime.
  std::shared_ptr<const PrimeIdeal> prime;

  long local_degree() const;       // [K_v : Q_v]
  Rat nv() const;                  // local_degree / [K:Q]
  long residue_char() const;       // finite only
  Int residue_size() const;        // q = p^f, finite only
};

std::vector<Place> archimedean_places(const FieldRef& K);
std::vector<Place> places_above(const FieldRef& K, long p);

// Complex-interval enclosure of the embedding of a at an archimedean place.
ComplexInterval embed_element(const FieldElement& a, const Place& v,
                              mpfr_prec_t prec);

// |a|_v as an enclosure; finite places use p^(-valuation/e).  Zero at a
// finite place is rejected (log-form callers must special-case it).
RealInterval abs_value(const FieldElement& a, const Place& v, mpfr_prec_t prec);

// log|a|_v at a finite place, exactly, as the rational coefficient r in
// log|a|_v = r * log p (i.e. r = -valuation/e); requires a != 0.
Rat log_abs_finite_coeff(const FieldElement& a, const Place& v);

// Rational primes p with some nonzero valuation of a (a != 0).
std::vector<long> finite_support(const FieldElement& a);

// ---------------------------------------------------------------------------
// Frobenius, inertia, conductors.

// p unramified in L: the Frobenius (cyclotomic: c = p mod m).
GaloisElement frobenius_element(const FieldRef& L, long p);

// p ramified in L: a canonical nontrivial inertia element.  Chosen as the
// smallest generator of Gal(L / L') where L' is the subfield of conductor
// m/p (cyclotomic) resp. Q (quadratic), so that fixed_field stays within
// the supported families.
GaloisElement inertia_tau(const FieldRef& L, long p);

// The fixed field of the cyclic group generated by s.
FieldRef fixed_field(const GaloisElement& s);

// Exact change of basis for subfield elements.  lift: view an element of
// sub inside K.  restrict: express an element of K known to lie in sub in
// sub's power basis (error if it does not lie there).
FieldElement lift_from_subfield(const FieldRef& K, const FieldElement& a_sub);
FieldElement restrict_to_subfield(const FieldElement& a, const FieldRef& sub);

struct ExtensionInfo {
  FieldRef L;
  long p = 0;
  long e = 1;  // ramification index e_p(L/Q)
  long k = 0;  // local conductor valuation ord_p(f_p(L/Q))
};

ExtensionInfo extension_info(const FieldRef& L, long p);

// Small-integer factorization helper (trial division + Pollard rho),
// returns (prime, exponent) pairs sorted by prime.
std::vector<std::pair<Int, long>> factor_int(Int n);

}  // namespace hc

#endif  // HEIGHTCERT_NUMFIELD_HPP
