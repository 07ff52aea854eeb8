// dense_oracle.hpp - dense reference eigensolver, metrics, Hessian probes
#pragma once

#include "pomm/hamiltonian.hpp"
#include "pomm/types.hpp"

namespace pomm {

/// Full spectrum plus the first-N orthonormal eigenvector block.
struct SpectralData {
  VecR eigenvalues;   // ascending
  WaveBlock X0;       // n x N
  int N = 0;
  double mu = 0.0;    // (lambda_N + lambda_{N+1}) / 2
  double gap = 0.0;   // lambda_{N+1} - lambda_N
  double spread = 0.0;

  double lambda1() const { return eigenvalues[0]; }
  double lambdaN() const { return eigenvalues[N - 1]; }
  double lambdaN1() const { return eigenvalues[N]; }
  double lambdan() const { return eigenvalues[eigenvalues.size() - 1]; }
};

/// Dense Hermitian eigendecomposition; eigenvector columns are
/// phase-canonicalized (largest-magnitude entry made real positive).
/// Throws on a degenerate gap (< 1e-12).
SpectralData dense_eig(const MatC& h, int N);

/// || P_X - P_X0 ||_max / || P_X0 ||_max with P_Y = Y (Y*Y)^-1 Y*.
double subspace_distance(const WaveBlock& x, const WaveBlock& x0);

/// (lambda_n - lambda_1) / (lambda_{N+1} - lambda_N): the "cond" column.
double omm_condition_bound(const SpectralData& s);

/// Condition-number lower bound of the shifted-inverse-preconditioned
/// Hessian, by the position of mu in the spectrum. mu must be < lambda_{N+1}.
double shifted_inverse_condition_bound(const SpectralData& s, double mu_shift);

/// Exact Hessian-vector product of E_omm at X.
WaveBlock hessian_apply(const HamiltonianOp& h, const WaveBlock& x, const WaveBlock& z);

}  // namespace pomm
