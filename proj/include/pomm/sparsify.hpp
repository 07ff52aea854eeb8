// sparsify.hpp - sparsifying preconditioner for (H - z) u = b
#pragma once

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <array>
#include <memory>
#include <vector>

#include "pomm/fft.hpp"
#include "pomm/grid.hpp"
#include "pomm/types.hpp"

namespace pomm {

using SparseC = Eigen::SparseMatrix<cxd>;

/// Local-stencil approximate inverse of H - z built from the constant
/// resolvent G = (-1/2 Laplacian + l - z)^-1 with l = <V>: a stencil q on the
/// (2q+1)^2 neighborhood turns q*G into a nearly local operator (residual
/// epsilon), giving the sparse system P u = Q G b solved by sparse LU.
struct SparsifiedSystem {
  SpectralGrid grid;
  std::shared_ptr<const Fourier2D> fft;
  cxd z;               // possibly nudged off a lattice resonance
  double l = 0.0;      // mean potential
  int q = 1;
  std::vector<std::array<int, 2>> offsets;
  VecC q_stencil;      // smallest left singular vector of G(a(0), a(0)^c)
  VecC c_stencil;      // q* G restricted to a(0)
  double epsilon = 0.0;
  SparseC Q;
  std::unique_ptr<Eigen::SparseLU<SparseC, Eigen::COLAMDOrdering<int>>> lu;

  /// G b via FFT diagonal division.
  VecC apply_G(const VecC& b) const;

  /// One application: u = P^-1 Q G b.
  VecC precond_apply(const VecC& b) const;
};

/// Build the preconditioner for H - z on the given potential. A z landing on
/// a resonance of the constant-coefficient symbol is nudged off the real
/// axis before factorization.
SparsifiedSystem build_sparsified(const SpectralGrid& grid, const VecR& potential,
                                  cxd z, int q = 1);

}  // namespace pomm
