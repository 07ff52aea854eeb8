// classic_precond.hpp - Fourier-diagonal kinetic-energy preconditioners
#pragma once

#include <memory>

#include "pomm/fft.hpp"
#include "pomm/grid.hpp"
#include "pomm/omm.hpp"
#include "pomm/types.hpp"

namespace pomm {

enum class FilterKind { shifted_laplacian, tpa, gtpa };

/// Teter-Payne-Allan rational filter at s = |k|^2 / tau.
double tpa_symbol(double s);

/// Generalized TPA of order t: truncated geometric numerator with the tail
/// folded into the last coefficient; t = 3 reproduces TPA exactly.
double gtpa_symbol(double s, int t);

/// tau = max over columns of the kinetic energy 1/2 sum |k|^2 |x^(k)|^2 of
/// the L2-normalized Fourier coefficients of X.
double compute_tau(const SpectralGrid& grid, const Fourier2D& fft, const WaveBlock& x);

/// Diagonal-in-Fourier preconditioner G -> F^-1 diag(f(|k|^2)) F G.
class KineticFilter final : public Preconditioner {
 public:
  /// shifted_laplacian: f = (1 + s)^-1; tpa / gtpa: the corresponding
  /// rational filters; all at s = |k|^2 / tau.
  KineticFilter(const SpectralGrid& grid, std::shared_ptr<const Fourier2D> fft,
                FilterKind kind, double tau, int gtpa_order = 3);

  WaveBlock apply(const WaveBlock& g) const override;

  const VecR& symbol() const { return symbol_; }

 private:
  std::shared_ptr<const Fourier2D> fft_;
  VecR symbol_;
};

}  // namespace pomm
