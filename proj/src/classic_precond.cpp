#include "pomm/classic_precond.hpp"

#include <cmath>
#include <stdexcept>

namespace pomm {

double tpa_symbol(double s) {
  double p = 27.0 + s * (18.0 + s * (12.0 + 8.0 * s));
  return p / (p + 16.0 * s * s * s * s);
}

double gtpa_symbol(double s, int t) {
  if (t < 0) throw std::invalid_argument("gtpa_symbol: order must be >= 0");
  double p = 0.0, ck = 1.0, sk = 1.0;
  for (int k = 0; k <= t; ++k) {
    p += ck * sk;
    if (k < t) { ck *= 2.0 / 3.0; sk *= s; }
  }
  sk *= s;                 // s^{t+1}
  double tail = 2.0 * ck;  // c_{t+1} = 2 (2/3)^t
  return p / (p + tail * sk);
}

double compute_tau(const SpectralGrid& grid, const Fourier2D& fft, const WaveBlock& x) {
  if (x.rows() != grid.n) throw std::invalid_argument("compute_tau: row mismatch");
  double tau = 0.0;
  for (int j = 0; j < x.cols(); ++j) {
    VecC xh = x.col(j);
    fft.forward(xh);
    double nrm2 = xh.squaredNorm();
    if (nrm2 == 0.0) continue;
    double ke = 0.5 * (grid.freq_sq.array() * xh.array().abs2()).sum() / nrm2;
    tau = std::max(tau, ke);
  }
  if (tau <= 0.0) throw std::runtime_error("compute_tau: zero kinetic energy");
  return tau;
}

KineticFilter::KineticFilter(const SpectralGrid& grid, std::shared_ptr<const Fourier2D> fft,
                             FilterKind kind, double tau, int gtpa_order)
    : fft_(std::move(fft)) {
  if (tau <= 0.0) throw std::invalid_argument("KineticFilter: tau must be > 0");
  symbol_.resize(grid.n);
  for (int i = 0; i < grid.n; ++i) {
    double s = grid.freq_sq[i] / tau;
    switch (kind) {
      case FilterKind::shifted_laplacian: symbol_[i] = 1.0 / (1.0 + s); break;
      case FilterKind::tpa: symbol_[i] = tpa_symbol(s); break;
      case FilterKind::gtpa: symbol_[i] = gtpa_symbol(s, gtpa_order); break;
    }
  }
}

WaveBlock KineticFilter::apply(const WaveBlock& g) const {
  WaveBlock out(g.rows(), g.cols());
  const int ncols = static_cast<int>(g.cols());
#pragma omp parallel for schedule(static)
  for (int j = 0; j < ncols; ++j) {
    VecC col = g.col(j);
    fft_->apply_symbol(symbol_, col);
    out.col(j) = col;
  }
  return out;
}

}  // namespace pomm
