#pragma once

#include <mpfr.h>

#include "qhb/interval.hpp"

namespace qhb {

// Interval with MPFR endpoints and directed rounding; used for residuals that
// must be resolved below double precision.
class MpInterval {
 public:
  static constexpr mpfr_prec_t kPrec = 256;

  MpInterval();
  MpInterval(const Interval& x);  // NOLINT: implicit lift from double intervals
  MpInterval(const MpInterval& o);
  MpInterval& operator=(const MpInterval& o);
  ~MpInterval();

  // Outward rounding to a double interval.
  Interval to_interval() const;

  friend MpInterval operator+(const MpInterval& a, const MpInterval& b);
  friend MpInterval operator-(const MpInterval& a, const MpInterval& b);
  friend MpInterval operator*(const MpInterval& a, const MpInterval& b);
  friend MpInterval operator-(const MpInterval& a);

 private:
  mpfr_t lo_, hi_;
};

}  // namespace qhb
