#include "heightcert/interval.hpp"

#include <sstream>

namespace hc {

RealInterval::RealInterval(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

RealInterval::RealInterval(const RealInterval& o) : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

RealInterval::RealInterval(RealInterval&& o) noexcept : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

RealInterval& RealInterval::operator=(const RealInterval& o) {
  if (this != &o) {
    if (prec_ != o.prec_) {
      mpfr_set_prec(lo_, o.prec_);
      mpfr_set_prec(hi_, o.prec_);
      prec_ = o.prec_;
    }
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  return *this;
}

RealInterval& RealInterval::operator=(RealInterval&& o) noexcept {
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  std::swap(prec_, o.prec_);
  return *this;
}

RealInterval::~RealInterval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

RealInterval RealInterval::exact(long v, mpfr_prec_t prec) {
  RealInterval r(prec);
  mpfr_set_si(r.lo_, v, MPFR_RNDD);
  mpfr_set_si(r.hi_, v, MPFR_RNDU);
  return r;
}

RealInterval RealInterval::from_int(const Int& v, mpfr_prec_t prec) {
  RealInterval r(prec);
  mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
  return r;
}

RealInterval RealInterval::from_rat(const Rat& v, mpfr_prec_t prec) {
  RealInterval r(prec);
  mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
  return r;
}

RealInterval RealInterval::operator+(const RealInterval& o) const {
  RealInterval r(std::max(prec_, o.prec_));
  mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

RealInterval RealInterval::operator-(const RealInterval& o) const {
  RealInterval r(std::max(prec_, o.prec_));
  mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
  return r;
}

RealInterval RealInterval::operator-() const {
  RealInterval r(prec_);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

RealInterval RealInterval::operator*(const RealInterval& o) const {
  RealInterval r(std::max(prec_, o.prec_));
  mpfr_t t;
  mpfr_init2(t, r.prec_);
  // lo: min over endpoint products rounded down; hi: max rounded up.
  mpfr_mul(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_mul(t, lo_, o.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_mul(t, hi_, o.lo_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_mul(t, hi_, o.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);

  mpfr_mul(r.hi_, lo_, o.lo_, MPFR_RNDU);
  mpfr_mul(t, lo_, o.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_mul(t, hi_, o.lo_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_mul(t, hi_, o.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_clear(t);
  return r;
}

RealInterval RealInterval::operator/(const RealInterval& o) const {
  if (o.contains_zero()) throw precision_error("interval division by interval containing zero");
  RealInterval r(std::max(prec_, o.prec_));
  mpfr_t t;
  mpfr_init2(t, r.prec_);
  mpfr_div(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_div(t, lo_, o.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_div(t, hi_, o.lo_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_div(t, hi_, o.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);

  mpfr_div(r.hi_, lo_, o.lo_, MPFR_RNDU);
  mpfr_div(t, lo_, o.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_div(t, hi_, o.lo_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_div(t, hi_, o.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_clear(t);
  return r;
}

RealInterval RealInterval::abs() const {
  RealInterval r(prec_);
  if (mpfr_sgn(lo_) >= 0) {
    mpfr_set(r.lo_, lo_, MPFR_RNDD);
    mpfr_set(r.hi_, hi_, MPFR_RNDU);
  } else if (mpfr_sgn(hi_) <= 0) {
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  } else {
    mpfr_set_zero(r.lo_, 1);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, hi_, MPFR_RNDU);
  }
  return r;
}

RealInterval RealInterval::sqrt() const {
  if (mpfr_sgn(hi_) < 0) throw precision_error("sqrt of negative interval");
  RealInterval r(prec_);
  if (mpfr_sgn(lo_) <= 0) {
    mpfr_set_zero(r.lo_, 1);
  } else {
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  }
  mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

RealInterval RealInterval::log() const {
  if (mpfr_sgn(lo_) <= 0) throw precision_error("log of interval touching (-inf,0]");
  RealInterval r(prec_);
  mpfr_log(r.lo_, lo_, MPFR_RNDD);
  mpfr_log(r.hi_, hi_, MPFR_RNDU);
  return r;
}

RealInterval RealInterval::exp() const {
  RealInterval r(prec_);
  mpfr_exp(r.lo_, lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, hi_, MPFR_RNDU);
  return r;
}

RealInterval RealInterval::pi(mpfr_prec_t prec) {
  RealInterval r(prec);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

namespace {
RealInterval angle2pi(long a, long b, mpfr_prec_t prec) {
  RealInterval two = RealInterval::exact(2, prec);
  RealInterval frac =
      RealInterval::exact(a, prec) / RealInterval::exact(b, prec);
  return two * RealInterval::pi(prec) * frac;
}
}  // namespace

RealInterval RealInterval::cos2pi(long a, long b, mpfr_prec_t prec) {
  RealInterval ang = angle2pi(a, b, prec);
  // cos is 1-Lipschitz: enclose via midpoint value +/- (width + rounding).
  RealInterval r(prec);
  mpfr_t m, w, c;
  mpfr_init2(m, prec); mpfr_init2(w, prec); mpfr_init2(c, prec);
  mpfr_add(m, ang.lo_raw(), ang.hi_raw(), MPFR_RNDN);
  mpfr_div_ui(m, m, 2, MPFR_RNDN);
  mpfr_sub(w, ang.hi_raw(), ang.lo_raw(), MPFR_RNDU);
  mpfr_cos(c, m, MPFR_RNDN);
  mpfr_t lo, hi;
  mpfr_init2(lo, prec); mpfr_init2(hi, prec);
  mpfr_sub(lo, c, w, MPFR_RNDD);
  mpfr_nextbelow(lo);
  mpfr_add(hi, c, w, MPFR_RNDU);
  mpfr_nextabove(hi);
  r.set_endpoints_raw(lo, hi);
  mpfr_clear(m); mpfr_clear(w); mpfr_clear(c); mpfr_clear(lo); mpfr_clear(hi);
  return r;
}

RealInterval RealInterval::sin2pi(long a, long b, mpfr_prec_t prec) {
  RealInterval ang = angle2pi(a, b, prec);
  RealInterval r(prec);
  mpfr_t m, w, c;
  mpfr_init2(m, prec); mpfr_init2(w, prec); mpfr_init2(c, prec);
  mpfr_add(m, ang.lo_raw(), ang.hi_raw(), MPFR_RNDN);
  mpfr_div_ui(m, m, 2, MPFR_RNDN);
  mpfr_sub(w, ang.hi_raw(), ang.lo_raw(), MPFR_RNDU);
  mpfr_sin(c, m, MPFR_RNDN);
  mpfr_t lo, hi;
  mpfr_init2(lo, prec); mpfr_init2(hi, prec);
  mpfr_sub(lo, c, w, MPFR_RNDD);
  mpfr_nextbelow(lo);
  mpfr_add(hi, c, w, MPFR_RNDU);
  mpfr_nextabove(hi);
  r.set_endpoints_raw(lo, hi);
  mpfr_clear(m); mpfr_clear(w); mpfr_clear(c); mpfr_clear(lo); mpfr_clear(hi);
  return r;
}

void RealInterval::set_endpoints_raw(const mpfr_t lo, const mpfr_t hi) {
  mpfr_set(lo_, lo, MPFR_RNDD);
  mpfr_set(hi_, hi, MPFR_RNDU);
}

RealInterval RealInterval::max(const RealInterval& a, const RealInterval& b) {
  RealInterval r(std::max(a.prec_, b.prec_));
  mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

RealInterval RealInterval::min(const RealInterval& a, const RealInterval& b) {
  RealInterval r(std::max(a.prec_, b.prec_));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

RealInterval RealInterval::pow_ui(unsigned long n) const {
  RealInterval acc = RealInterval::exact(1, prec_);
  RealInterval base = *this;
  while (n > 0) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

bool RealInterval::contains_zero() const {
  return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool RealInterval::is_positive() const { return mpfr_sgn(lo_) > 0; }
bool RealInterval::is_negative() const { return mpfr_sgn(hi_) < 0; }

std::optional<bool> RealInterval::certified_le(const RealInterval& o) const {
  if (mpfr_cmp(hi_, o.lo_) <= 0) return true;
  if (mpfr_cmp(lo_, o.hi_) > 0) return false;
  return std::nullopt;
}

std::optional<bool> RealInterval::certified_lt(const RealInterval& o) const {
  if (mpfr_cmp(hi_, o.lo_) < 0) return true;
  if (mpfr_cmp(lo_, o.hi_) >= 0) return false;
  return std::nullopt;
}

double RealInterval::width_d() const {
  mpfr_t w;
  mpfr_init2(w, prec_);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double d = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return d;
}

std::string RealInterval::str() const {
  std::ostringstream os;
  os << "[" << lo_d() << ", " << hi_d() << "]";
  return os.str();
}

}  // namespace hc
