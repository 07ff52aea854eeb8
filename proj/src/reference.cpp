#include "pomm/reference.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pomm {

namespace {

// separable 1D pass along each axis keeps this O(n^1.5) instead of O(n^2)
VecC dft2_ref(const SpectralGrid& grid, const VecC& x, double sign) {
  const int side = grid.side;
  if (x.size() != grid.n) throw std::invalid_argument("dft2_ref: size mismatch");
  MatC w(side, side);
  const double scale = 1.0 / std::sqrt(static_cast<double>(side));
  for (int k = 0; k < side; ++k)
    for (int j = 0; j < side; ++j) {
      double ph = sign * 2.0 * std::numbers::pi * k * j / side;
      w(k, j) = scale * cxd(std::cos(ph), std::sin(ph));
    }
  Eigen::Map<const MatC> xg(x.data(), side, side);  // column-major: x(j2, j1)
  MatC yg = w * xg * w.transpose();                 // transform both axes
  VecC out(grid.n);
  Eigen::Map<MatC>(out.data(), side, side) = yg;
  return out;
}

}  // namespace

VecC dft_forward_ref(const SpectralGrid& grid, const VecC& x) {
  return dft2_ref(grid, x, -1.0);
}

VecC dft_inverse_ref(const SpectralGrid& grid, const VecC& x) {
  return dft2_ref(grid, x, 1.0);
}

WaveBlock apply_hamiltonian_ref(const HamiltonianOp& h, const WaveBlock& x) {
  if (x.rows() != h.n()) throw std::invalid_argument("apply_hamiltonian_ref: row mismatch");
  WaveBlock out(x.rows(), x.cols());
  for (int j = 0; j < x.cols(); ++j) {
    VecC xh = dft_forward_ref(h.grid, x.col(j));
    xh.array() *= h.kinetic_symbol.array();
    out.col(j) = dft_inverse_ref(h.grid, xh).array() +
                 (h.potential.values.array() - h.shift) * x.col(j).array();
  }
  return out;
}

}  // namespace pomm
