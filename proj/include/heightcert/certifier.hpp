#ifndef HEIGHTCERT_CERTIFIER_HPP
#define HEIGHTCERT_CERTIFIER_HPP

#include <string>
#include <vector>

#include "heightcert/canonical.hpp"

namespace hc {

// One recorded verification step inside a certificate: a named exact or
// interval check together with its evidence, re-checkable from the inputs.
struct StepCheck {
  std::string name;
  std::string data;  // the exact numbers/valuations the check saw
  bool holds = false;
};

// Machine-checkable certificate for a canonical-height lower bound instance.
// Carries its full inputs (as exact strings) so `verify` can rebuild the run
// from scratch, every intermediate check, the constants used, and (for
// descent branches) the nested certificates over the fixed fields.
struct BoundCertificate {
  // Inputs.
  std::string field;                 // name of L
  std::vector<std::string> a_inv;    // a1, a2, a3, a4, a6 over Q
  bool cm = false;
  long cm_disc = 0;
  bool point_inf = false;
  std::string point_x, point_y;      // power-basis expressions over L
  long p = 0;
  std::string mode;                  // "theorem" | "diagnostic"
  double tolerance = 1e-4;

  // Branch data.
  std::string branch;  // unramified | ramified-noncm | cm-ramified | torsion
  long galois_c = 0;   // the sigma/tau used (power-basis action parameter)
  long a_p = 0;
  std::string witness_r;  // torsion branch: resultant witness with [r]P = O

  // Constants ([K:Q] = 1, g = 1 throughout).
  double c_psi = 0.0;   // certified upper bound
  double bconst = 0.0;  // B = 2 C_psi + log 2 (upper bound)

  // Measurements (psi-normalized canonical heights with rigorous radii).
  double hhat_p = 0.0, hhat_p_err = 0.0;
  double hhat_q = 0.0, hhat_q_err = 0.0;  // derived point(s); branch-specific

  // Bounds.
  double intermediate_lower = 0.0;  // log p - B (resp. weighted variant)
  double claimed_lower = 0.0;       // final certified lower bound for hhat(P)
  double theorem_bound = 0.0;       // 1/(12p)^2
  bool theorem_certified = false;

  std::vector<StepCheck> checks;
  std::vector<BoundCertificate> chain;  // descent certificates (L^tau, ...)
  std::string verdict;  // certified | torsion | refuted-step | descent-incomplete
  std::string notes;    // recorded narrowings (e.g. the E(L)[p] = 0 method)
};

struct CertConfig {
  CertMode mode = CertMode::Diagnostic;
  double tolerance = 1e-4;
  long prime = 0;        // 0 = choose via select_good_prime
  long prime_start = 2;
  long prime_budget = 100000;
  bool remark_variant = false;  // ramification-weighted unramified-style chain
  long torsion_budget = 16;     // CM descent searches E(L)[p^k] for p^k <= this
};

// Unramified branch: Q = Phi_p(sigma)P, per-prime congruences, the
// intermediate bound hhat(Q) >= log p - B, the upper chain
// hhat(Q) <= 144 p^2 hhat(P), conclusion hhat(P) >= (log p - B)/(144 p^2);
// theorem mode additionally certifies hhat(P) >= 1/(12p)^2.
BoundCertificate certify_unramified(const EllipticCurve& E, const FieldRef& L,
                                    const ECPoint& P, long p,
                                    const CertConfig& cfg);

// Ramified non-CM branch: tau = inertia, Q1 = [p](tau P), Q2 = [p]P,
// per-prime delta lower bounds, weighted sum, hhat(P) >= (log p - B)/(2 p^2);
// tau-fixed points descend to L^tau.
BoundCertificate certify_ramified_noncm(const EllipticCurve& E, const FieldRef& L,
                                        const ECPoint& P, long p,
                                        const CertConfig& cfg);

// Lemma-style inertia congruence: v_P(tau(alpha)^p - alpha^p) >= e at every
// prime above p; returns the minimum observed valuation.
struct AdCongruence {
  long observed = 0;  // min over primes above p (VAL_INFINITY when the
                      // difference vanishes identically)
  long e = 1;         // required threshold v_P(p)
  bool holds = false;
};
AdCongruence ad_congruence_check(const FieldElement& alpha, long p);

// CM ramified descent step: Q = (tau - 1)P in the kernel of reduction,
// torsion translate search in E(L)[p^k] (budgeted), descent of P - T to the
// fixed field; degrades to "descent-incomplete" when the search fails.
BoundCertificate cm_ramified_step(const EllipticCurve& E, const FieldRef& L,
                                  const ECPoint& P, long p,
                                  const CertConfig& cfg);

// Dispatcher: torsion short-circuit, prime selection, branch dispatch on
// ramification and the CM flag, final cross-check against canonical_height.
BoundCertificate certify(const EllipticCurve& E, const FieldRef& L,
                         const ECPoint& P, const CertConfig& cfg);

// Re-runs the whole certification from the certificate's recorded inputs and
// checks the reproduced verdict, branch, and claimed bound.
struct VerifyResult {
  bool ok = false;
  std::string message;
  BoundCertificate reproduced;
};
VerifyResult verify_certificate(const BoundCertificate& cert);

// JSON serialization (round-trips through verify).
std::string certificate_to_json(const BoundCertificate& cert);
BoundCertificate certificate_from_json(const std::string& text);

}  // namespace hc

#endif  // HEIGHTCERT_CERTIFIER_HPP
