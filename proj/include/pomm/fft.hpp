// fft.hpp - unitary 2D FFT on the periodic grid (FFTW backend)
#pragma once

#include <Eigen/Core>

#include "pomm/types.hpp"

struct fftw_plan_s;

namespace pomm {

/// In-place unitary 2D complex FFT of a side x side field stored row-major
/// in a length side^2 vector. forward() applies F, inverse() applies F^-1,
/// both scaled by 1/side so that ||Fx|| = ||x||.
///
/// Plan creation is serialized internally; execution on distinct buffers is
/// safe from concurrent threads.
class Fourier2D {
 public:
  explicit Fourier2D(int side);
  ~Fourier2D();
  Fourier2D(const Fourier2D&) = delete;
  Fourier2D& operator=(const Fourier2D&) = delete;

  int side() const { return side_; }
  int size() const { return side_ * side_; }

  void forward(cxd* data) const;
  void inverse(cxd* data) const;
  void forward(Eigen::Ref<VecC> v) const;
  void inverse(Eigen::Ref<VecC> v) const;

  /// x <- F^-1 diag(symbol) F x
  template <typename Symbol>
  void apply_symbol(const Symbol& symbol, Eigen::Ref<VecC> x) const {
    forward(x);
    x.array() *= symbol.array();
    inverse(x);
  }

 private:
  int side_;
  fftw_plan_s* fwd_;
  fftw_plan_s* bwd_;
};

}  // namespace pomm
