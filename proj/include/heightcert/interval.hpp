#ifndef HEIGHTCERT_INTERVAL_HPP
#define HEIGHTCERT_INTERVAL_HPP

#include <mpfr.h>

#include <optional>
#include <string>
#include <utility>

#include "heightcert/common.hpp"

namespace hc {

// Closed real interval [lo, hi] with outward-rounded MPFR endpoints.
// All arithmetic is enclosure arithmetic: the exact result of the real
// operation is contained in the returned interval.
class RealInterval {
 public:
  explicit RealInterval(mpfr_prec_t prec = 128);
  RealInterval(const RealInterval& o);
  RealInterval(RealInterval&& o) noexcept;
  RealInterval& operator=(const RealInterval& o);
  RealInterval& operator=(RealInterval&& o) noexcept;
  ~RealInterval();

  static RealInterval exact(long v, mpfr_prec_t prec = 128);
  static RealInterval from_int(const Int& v, mpfr_prec_t prec);
  static RealInterval from_rat(const Rat& v, mpfr_prec_t prec);

  mpfr_prec_t prec() const { return prec_; }

  RealInterval operator+(const RealInterval& o) const;
  RealInterval operator-(const RealInterval& o) const;
  RealInterval operator-() const;
  RealInterval operator*(const RealInterval& o) const;
  RealInterval operator/(const RealInterval& o) const;  // 0 not in o

  RealInterval abs() const;
  RealInterval sqrt() const;  // requires hi >= 0; lo clamped to 0
  RealInterval log() const;   // requires lo > 0
  RealInterval exp() const;

  static RealInterval pi(mpfr_prec_t prec);
  // Enclosures of cos(2*pi*a/b), sin(2*pi*a/b).
  static RealInterval cos2pi(long a, long b, mpfr_prec_t prec);
  static RealInterval sin2pi(long a, long b, mpfr_prec_t prec);

  static RealInterval max(const RealInterval& a, const RealInterval& b);
  static RealInterval min(const RealInterval& a, const RealInterval& b);

  // Integer power, n >= 0.
  RealInterval pow_ui(unsigned long n) const;

  bool contains_zero() const;
  bool is_positive() const;  // lo > 0
  bool is_negative() const;  // hi < 0

  // Certified comparisons; nullopt when the intervals overlap.
  std::optional<bool> certified_le(const RealInterval& o) const;
  std::optional<bool> certified_lt(const RealInterval& o) const;

  double lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  double mid_d() const { return (lo_d() + hi_d()) / 2; }
  double width_d() const;

  std::string str() const;

  const mpfr_t& lo_raw() const { return lo_; }
  const mpfr_t& hi_raw() const { return hi_; }
  void set_endpoints_raw(const mpfr_t lo, const mpfr_t hi);

 private:
  mpfr_t lo_, hi_;
  mpfr_prec_t prec_;
};

// Rectangular complex enclosure.
class ComplexInterval {
 public:
  RealInterval re, im;

  explicit ComplexInterval(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
  ComplexInterval(RealInterval r, RealInterval i)
      : re(std::move(r)), im(std::move(i)) {}

  ComplexInterval operator+(const ComplexInterval& o) const {
    return {re + o.re, im + o.im};
  }
  ComplexInterval operator-(const ComplexInterval& o) const {
    return {re - o.re, im - o.im};
  }
  ComplexInterval operator*(const ComplexInterval& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  RealInterval abs2() const { return re * re + im * im; }
  RealInterval abs() const { return abs2().sqrt(); }
};

}  // namespace hc

#endif  // HEIGHTCERT_INTERVAL_HPP
