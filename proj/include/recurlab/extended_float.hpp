#pragma once

#include <mpfr.h>

#include <utility>

namespace recurlab {

// Owning MPFR value with a fixed mantissa width. Round-to-nearest throughout.
class ExtendedFloat {
 public:
  explicit ExtendedFloat(unsigned bits) { mpfr_init2(v_, static_cast<mpfr_prec_t>(bits)); }
  ExtendedFloat(unsigned bits, double value) : ExtendedFloat(bits) { set(value); }
  ExtendedFloat(const ExtendedFloat& o) : ExtendedFloat(static_cast<unsigned>(mpfr_get_prec(o.v_))) {
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  ExtendedFloat& operator=(const ExtendedFloat& o) {
    if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  ~ExtendedFloat() { mpfr_clear(v_); }

  void set(double value) { mpfr_set_d(v_, value, MPFR_RNDN); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  unsigned bits() const { return static_cast<unsigned>(mpfr_get_prec(v_)); }

  mpfr_ptr get() noexcept { return v_; }
  mpfr_srcptr get() const noexcept { return v_; }

  void swap(ExtendedFloat& o) noexcept { mpfr_swap(v_, o.v_); }

 private:
  mpfr_t v_;
};

}  // namespace recurlab
