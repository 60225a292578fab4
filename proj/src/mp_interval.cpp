#include "qhb/mp_interval.hpp"

namespace qhb {

MpInterval::MpInterval() {
  mpfr_inits2(kPrec, lo_, hi_, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

MpInterval::MpInterval(const Interval& x) {
  mpfr_inits2(kPrec, lo_, hi_, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_d(lo_, x.lo(), MPFR_RNDD);
  mpfr_set_d(hi_, x.hi(), MPFR_RNDU);
}

MpInterval::MpInterval(const MpInterval& o) {
  mpfr_inits2(kPrec, lo_, hi_, static_cast<mpfr_ptr>(nullptr));
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

MpInterval& MpInterval::operator=(const MpInterval& o) {
  if (this != &o) {
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  return *this;
}

MpInterval::~MpInterval() { mpfr_clears(lo_, hi_, static_cast<mpfr_ptr>(nullptr)); }

Interval MpInterval::to_interval() const {
  return {mpfr_get_d(lo_, MPFR_RNDD), mpfr_get_d(hi_, MPFR_RNDU)};
}

MpInterval operator+(const MpInterval& a, const MpInterval& b) {
  MpInterval r;
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

MpInterval operator-(const MpInterval& a, const MpInterval& b) {
  MpInterval r;
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

MpInterval operator-(const MpInterval& a) {
  MpInterval r;
  mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
  return r;
}

MpInterval operator*(const MpInterval& a, const MpInterval& b) {
  MpInterval r;
  mpfr_t t;
  mpfr_init2(t, MpInterval::kPrec);
  const mpfr_srcptr xs[2] = {a.lo_, a.hi_};
  const mpfr_srcptr ys[2] = {b.lo_, b.hi_};
  bool first = true;
  for (auto x : xs)
    for (auto y : ys) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return r;
}

}  // namespace qhb
