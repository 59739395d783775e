#include "heightcert/heights.hpp"

#include <algorithm>
#include <functional>

namespace hc {

ProjPoint pp_make(std::vector<FieldElement> coords) {
  if (coords.empty()) throw internal_error("pp_make: no coordinates");
  const FieldRef& K = coords[0].K;
  bool nz = false;
  for (const auto& c : coords) {
    if (!same_field(c.K, K)) throw internal_error("pp_make: field mismatch");
    if (!c.is_zero()) nz = true;
  }
  if (!nz) throw internal_error("pp_make: all coordinates zero");
  return {K, std::move(coords)};
}

bool pp_equal(const ProjPoint& a, const ProjPoint& b) {
  if (!same_field(a.K, b.K) || a.x.size() != b.x.size())
    throw internal_error("pp_equal: incompatible points");
  for (size_t i = 0; i < a.x.size(); ++i)
    for (size_t j = i + 1; j < a.x.size(); ++j) {
      FieldElement m = fe_sub(fe_mul(a.x[i], b.x[j]), fe_mul(a.x[j], b.x[i]));
      if (!m.is_zero()) return false;
    }
  return true;
}

ProjPoint pp_scale(const ProjPoint& a, const FieldElement& s) {
  if (s.is_zero()) throw internal_error("pp_scale: zero scalar");
  ProjPoint r = a;
  for (auto& c : r.x) c = fe_mul(c, s);
  return r;
}

ProjPoint pp_integral(const ProjPoint& a) {
  Int den(1);
  for (const auto& c : a.x) {
    ZPoly A;
    Int d;
    fe_decompose(c, A, d);
    den = lcm(den, d);
  }
  if (den == 1) return a;
  return pp_scale(a, fe_from_rat(a.K, Rat(den)));
}

RealInterval weil_height(const ProjPoint& a, mpfr_prec_t prec) {
  ProjPoint b = pp_integral(a);
  const FieldRef& K = b.K;
  long n = K->degree;
  RealInterval sum = RealInterval::exact(0, prec);
  for (const auto& v : archimedean_places(K)) {
    RealInterval mx(prec);  // max_k |x_k|, at least one coordinate nonzero
    bool first = true;
    for (const auto& c : b.x) {
      RealInterval av = embed_element(c, v, prec).abs();
      mx = first ? av : RealInterval::max(mx, av);
      first = false;
    }
    sum = sum + RealInterval::from_rat(Rat(v.local_degree()), prec) * mx.log();
  }
  Int norm = ideal_norm_of_generators(b.x);
  sum = sum - RealInterval::from_int(norm, prec).log();
  return sum * RealInterval::from_rat(Rat(1, n), prec);
}

std::optional<Rat> delta_v_finite_coeff(const ProjPoint& a, const ProjPoint& b,
                                        const Place& v) {
  if (!v.finite) throw internal_error("delta_v_finite_coeff: archimedean place");
  const PrimeIdeal& P = *v.prime;
  auto min_val = [&](const std::vector<FieldElement>& xs) {
    long best = VAL_INFINITY;
    for (const auto& c : xs)
      if (!c.is_zero()) best = std::min(best, valuation(c, P));
    return best;
  };
  long mx = min_val(a.x), my = min_val(b.x);
  long mm = VAL_INFINITY;
  for (size_t i = 0; i < a.x.size(); ++i)
    for (size_t j = i + 1; j < a.x.size(); ++j) {
      FieldElement m = fe_sub(fe_mul(a.x[i], b.x[j]), fe_mul(a.x[j], b.x[i]));
      if (!m.is_zero()) mm = std::min(mm, valuation(m, P));
    }
  if (mm == VAL_INFINITY) return std::nullopt;  // equal points
  Rat r(mm - mx - my, P.e);
  r.canonicalize();
  return r;
}

std::optional<RealInterval> delta_v(const ProjPoint& a, const ProjPoint& b,
                                    const Place& v, mpfr_prec_t prec) {
  if (v.finite) {
    auto coeff = delta_v_finite_coeff(a, b, v);
    if (!coeff) return std::nullopt;
    RealInterval lp = RealInterval::from_int(Int(v.prime->p), prec).log();
    return RealInterval::from_rat(*coeff, prec) * lp;
  }
  auto abs_max = [&](const std::vector<FieldElement>& xs) {
    RealInterval mx(prec);
    bool first = true;
    for (const auto& c : xs) {
      RealInterval av = embed_element(c, v, prec).abs();
      mx = first ? av : RealInterval::max(mx, av);
      first = false;
    }
    return mx;
  };
  RealInterval mm(prec);
  bool first = true, all_zero = true;
  for (size_t i = 0; i < a.x.size(); ++i)
    for (size_t j = i + 1; j < a.x.size(); ++j) {
      FieldElement m = fe_sub(fe_mul(a.x[i], b.x[j]), fe_mul(a.x[j], b.x[i]));
      if (!m.is_zero()) all_zero = false;
      RealInterval av = embed_element(m, v, prec).abs();
      mm = first ? av : RealInterval::max(mm, av);
      first = false;
    }
  if (all_zero) return std::nullopt;
  RealInterval ratio = mm / (abs_max(a.x) * abs_max(b.x));
  return -(ratio.log());
}

bool congruent_at(const ProjPoint& a, const ProjPoint& b, const Place& v) {
  auto coeff = delta_v_finite_coeff(a, b, v);
  if (!coeff) return true;  // equal points
  return sgn(*coeff) > 0;
}

namespace {

// Certified lhs >= rhs with precision escalation.
bool certify_ge(const std::function<RealInterval(mpfr_prec_t)>& lhs_at,
                const std::function<RealInterval(mpfr_prec_t)>& rhs_at,
                mpfr_prec_t prec, RealInterval& lhs_out, RealInterval& rhs_out) {
  for (mpfr_prec_t p = prec; p <= prec * 16; p *= 2) {
    RealInterval lhs = lhs_at(p), rhs = rhs_at(p);
    lhs_out = lhs;
    rhs_out = rhs;
    auto le = rhs.certified_le(lhs);
    if (le.has_value()) return *le;
  }
  throw precision_error("inequality undecidable at precision cap");
}

}  // namespace

LocalGlobalCheck check_local_global(const ProjPoint& a, const ProjPoint& b,
                                    const std::vector<Place>& T,
                                    mpfr_prec_t prec) {
  if (pp_equal(a, b))
    throw hypothesis_error("check_local_global: points must be distinct");
  LocalGlobalCheck out{RealInterval(prec), RealInterval(prec), false};
  auto lhs_at = [&](mpfr_prec_t p) {
    return weil_height(a, p) + weil_height(b, p);
  };
  auto rhs_at = [&](mpfr_prec_t p) {
    RealInterval sum = -(RealInterval::exact(2, p).log());
    for (const auto& v : T) {
      auto d = delta_v(a, b, v, p);
      if (!d) throw internal_error("check_local_global: infinite delta for distinct points");
      sum = sum + RealInterval::from_rat(v.nv(), p) * (*d);
    }
    return sum;
  };
  out.holds = certify_ge(lhs_at, rhs_at, prec, out.lhs, out.rhs);
  return out;
}

CongruenceBoundCheck congruence_height_bound(const ProjPoint& P,
                                             const ProjPoint& Q,
                                             const std::vector<Place>& primes,
                                             mpfr_prec_t prec) {
  if (pp_equal(P, Q))
    throw hypothesis_error("congruence_height_bound: points must be distinct");
  for (const auto& v : primes) {
    if (!v.finite)
      throw hypothesis_error("congruence_height_bound: archimedean place in prime list");
    if (!congruent_at(P, Q, v))
      throw hypothesis_error(
          "congruence_height_bound: points not congruent at prime above " +
          std::to_string(v.prime->p));
  }
  CongruenceBoundCheck out{RealInterval(prec), RealInterval(prec), false};
  long n = P.K->degree;
  auto lhs_at = [&](mpfr_prec_t pr) {
    return weil_height(P, pr) + weil_height(Q, pr);
  };
  auto rhs_at = [&](mpfr_prec_t pr) {
    RealInterval sum = -(RealInterval::exact(2, pr).log());
    for (const auto& v : primes) {
      RealInterval lognorm = RealInterval::from_int(v.residue_size(), pr).log();
      sum = sum + RealInterval::from_rat(Rat(1, n), pr) * lognorm;
    }
    return sum;
  };
  out.holds = certify_ge(lhs_at, rhs_at, prec, out.lhs, out.rhs);
  return out;
}

}  // namespace hc
