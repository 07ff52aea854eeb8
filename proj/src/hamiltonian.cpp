#include "pomm/hamiltonian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pomm {

HamiltonianOp make_hamiltonian(const SpectralGrid& grid, RealField potential,
                               double shift) {
  if (potential.values.size() != grid.n)
    throw std::invalid_argument("make_hamiltonian: potential size mismatch");
  HamiltonianOp h;
  h.grid = grid;
  h.potential = std::move(potential);
  h.shift = shift;
  h.kinetic_symbol = 2.0 * std::numbers::pi * std::numbers::pi * grid.freq_sq;
  h.fft = std::make_shared<Fourier2D>(grid.side);
  return h;
}

HamiltonianOp with_shift(const HamiltonianOp& h, double shift) {
  HamiltonianOp out = h;
  out.shift = shift;
  return out;
}

void apply_hamiltonian_col(const HamiltonianOp& h, const VecC& x, VecC& out) {
  out = x;
  h.fft->apply_symbol(h.kinetic_symbol, out);
  out.array() += (h.potential.values.array() - h.shift) * x.array();
}

WaveBlock apply_hamiltonian(const HamiltonianOp& h, const WaveBlock& x) {
  if (x.rows() != h.n()) throw std::invalid_argument("apply_hamiltonian: row mismatch");
  WaveBlock out(x.rows(), x.cols());
  const int ncols = static_cast<int>(x.cols());
#pragma omp parallel for schedule(static)
  for (int j = 0; j < ncols; ++j) {
    VecC col = x.col(j);
    h.fft->apply_symbol(h.kinetic_symbol, col);
    out.col(j) = col.array() + (h.potential.values.array() - h.shift) * x.col(j).array();
  }
  return out;
}

VecC apply_const_resolvent(const SpectralGrid& grid, const Fourier2D& fft,
                           cxd l, cxd z, const VecC& b) {
  if (b.size() != grid.n) throw std::invalid_argument("apply_const_resolvent: size mismatch");
  const double two_pi_sq = 2.0 * std::numbers::pi * std::numbers::pi;
  VecC symbol = (two_pi_sq * grid.freq_sq.array() + (l - z)).matrix().cast<cxd>();
  double min_abs = symbol.array().abs().minCoeff();
  double max_abs = symbol.array().abs().maxCoeff();
  if (min_abs < 1e-10 * max_abs)
    throw std::runtime_error("apply_const_resolvent: near-resonant symbol");
  VecC out = b;
  fft.forward(out);
  out.array() /= symbol.array();
  fft.inverse(out);
  return out;
}

MatC densify(const HamiltonianOp& h, int cap) {
  const int n = h.n();
  if (n > cap) throw std::invalid_argument("densify: n exceeds cap");
  MatC m(n, n);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < n; ++j) {
    VecC e = VecC::Zero(n);
    e[j] = 1.0;
    VecC col(n);
    apply_hamiltonian_col(h, e, col);
    m.col(j) = col;
  }
  return m;
}

}  // namespace pomm
