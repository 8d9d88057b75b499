#pragma once

#include <mpfr.h>

namespace spinscreen::detail {

/// RAII holder for an mpfr_t.
class MpfrScratch {
 public:
  explicit MpfrScratch(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~MpfrScratch() {
    if (v_[0]._mpfr_d != nullptr) mpfr_clear(v_);
  }
  MpfrScratch(const MpfrScratch&) = delete;
  MpfrScratch& operator=(const MpfrScratch&) = delete;
  MpfrScratch(MpfrScratch&& o) noexcept {
    v_[0] = o.v_[0];
    o.v_[0]._mpfr_d = nullptr;
  }
  MpfrScratch& operator=(MpfrScratch&&) = delete;

  mpfr_ptr get() noexcept { return v_; }
  mpfr_srcptr get() const noexcept { return v_; }
  operator mpfr_ptr() noexcept { return v_; }
  operator mpfr_srcptr() const noexcept { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace spinscreen::detail
