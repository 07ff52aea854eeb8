#include "pomm/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>
#include <vector>

namespace pomm {

namespace {
// FFTW's planner is not thread safe; executing a plan on fresh buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Fourier2D::Fourier2D(int side) : side_(side) {
  if (side < 2) throw std::invalid_argument("Fourier2D: side must be >= 2");
  std::vector<cxd> buf(static_cast<size_t>(side) * side);
  auto* p = reinterpret_cast<fftw_complex*>(buf.data());
  std::lock_guard<std::mutex> lock(planner_mutex());
  fwd_ = fftw_plan_dft_2d(side, side, p, p, FFTW_FORWARD,
                          FFTW_ESTIMATE | FFTW_UNALIGNED);
  bwd_ = fftw_plan_dft_2d(side, side, p, p, FFTW_BACKWARD,
                          FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!fwd_ || !bwd_) throw std::runtime_error("Fourier2D: plan creation failed");
}

Fourier2D::~Fourier2D() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(fwd_);
  fftw_destroy_plan(bwd_);
}

void Fourier2D::forward(cxd* data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(fwd_, p, p);
  const double s = 1.0 / side_;
  const int n = size();
  for (int i = 0; i < n; ++i) data[i] *= s;
}

void Fourier2D::inverse(cxd* data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(bwd_, p, p);
  const double s = 1.0 / side_;
  const int n = size();
  for (int i = 0; i < n; ++i) data[i] *= s;
}

void Fourier2D::forward(Eigen::Ref<VecC> v) const {
  if (v.size() != size()) throw std::invalid_argument("Fourier2D: size mismatch");
  forward(v.data());
}

void Fourier2D::inverse(Eigen::Ref<VecC> v) const {
  if (v.size() != size()) throw std::invalid_argument("Fourier2D: size mismatch");
  inverse(v.data());
}

}  // namespace pomm
