// hamiltonian.hpp - pseudospectral Hamiltonian -1/2 Laplacian + V - sigma
#pragma once

#include <memory>

#include "pomm/fft.hpp"
#include "pomm/grid.hpp"
#include "pomm/potential.hpp"
#include "pomm/types.hpp"

namespace pomm {

/// H = F^-1 diag(2 pi^2 |k|^2) F + diag(V) - sigma I, applied column-wise
/// via the FFT. Cheap to copy; the FFT plan is shared.
struct HamiltonianOp {
  SpectralGrid grid;
  RealField potential;
  double shift = 0.0;             // sigma
  VecR kinetic_symbol;            // 2 pi^2 |k|^2 over K, natural order
  std::shared_ptr<const Fourier2D> fft;

  int n() const { return grid.n; }
};

HamiltonianOp make_hamiltonian(const SpectralGrid& grid, RealField potential,
                               double shift = 0.0);

/// Returns H with a different diagonal shift, sharing grid/potential/plan.
HamiltonianOp with_shift(const HamiltonianOp& h, double shift);

/// H applied to every column of X; O(N n log n).
WaveBlock apply_hamiltonian(const HamiltonianOp& h, const WaveBlock& x);

/// Single-column apply into preallocated storage (no heap traffic).
void apply_hamiltonian_col(const HamiltonianOp& h, const VecC& x, VecC& out);

/// (-1/2 Laplacian + l - z)^-1 b via FFT diagonal division. Throws when the
/// symbol nearly vanishes (resonance); callers perturb z instead.
VecC apply_const_resolvent(const SpectralGrid& grid, const Fourier2D& fft,
                           cxd l, cxd z, const VecC& b);

/// Exact dense n x n matrix of H (unit-vector probes through the FFT path).
MatC densify(const HamiltonianOp& h, int cap = 16384);

}  // namespace pomm
