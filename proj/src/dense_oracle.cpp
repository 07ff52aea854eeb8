#include "pomm/dense_oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace pomm {

SpectralData dense_eig(const MatC& h, int N) {
  const int n = static_cast<int>(h.rows());
  if (N < 1 || N >= n) throw std::invalid_argument("dense_eig: need 1 <= N < n");
  Eigen::SelfAdjointEigenSolver<MatC> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("dense_eig: solver failed");

  SpectralData s;
  s.eigenvalues = es.eigenvalues();
  s.N = N;
  s.gap = s.eigenvalues[N] - s.eigenvalues[N - 1];
  if (s.gap < 1e-12)
    throw std::runtime_error("dense_eig: degenerate gap at requested occupation");
  s.mu = 0.5 * (s.eigenvalues[N - 1] + s.eigenvalues[N]);
  s.spread = s.eigenvalues[n - 1] - s.eigenvalues[0];

  s.X0 = es.eigenvectors().leftCols(N);
  // fix the arbitrary per-column phase: largest entry real and positive
  for (int j = 0; j < N; ++j) {
    int imax = 0;
    s.X0.col(j).cwiseAbs().maxCoeff(&imax);
    cxd a = s.X0(imax, j);
    if (std::abs(a) > 0) s.X0.col(j) *= std::conj(a) / std::abs(a);
  }
  return s;
}

namespace {

MatC span_projector(const WaveBlock& x) {
  MatC gram = x.adjoint() * x;
  Eigen::LDLT<MatC> ldlt(gram);
  VecR d = ldlt.vectorD().real();
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      d.minCoeff() <= 1e-12 * d.maxCoeff())
    throw std::runtime_error("subspace_distance: singular Gram matrix");
  return x * ldlt.solve(x.adjoint());
}

}  // namespace

double subspace_distance(const WaveBlock& x, const WaveBlock& x0) {
  if (x.rows() != x0.rows() || x.cols() != x0.cols())
    throw std::invalid_argument("subspace_distance: shape mismatch");
  MatC p = span_projector(x);
  MatC p0 = span_projector(x0);
  return (p - p0).cwiseAbs().maxCoeff() / p0.cwiseAbs().maxCoeff();
}

double omm_condition_bound(const SpectralData& s) {
  return (s.lambdan() - s.lambda1()) / s.gap;
}

double shifted_inverse_condition_bound(const SpectralData& s, double mu_shift) {
  const double l1 = s.lambda1(), lN = s.lambdaN(), lN1 = s.lambdaN1(), ln = s.lambdan();
  if (mu_shift >= lN1)
    throw std::invalid_argument("shifted_inverse_condition_bound: mu must be < lambda_{N+1}");
  if (mu_shift > lN)
    return ((lN1 - l1) / (ln - lN)) * ((ln - mu_shift) / (lN1 - mu_shift));
  if (mu_shift > l1)
    return (lN1 - l1) / (lN1 - lN);
  return ((ln - l1) / (lN1 - lN)) * ((lN1 - mu_shift) / (ln - mu_shift));
}

WaveBlock hessian_apply(const HamiltonianOp& h, const WaveBlock& x, const WaveBlock& z) {
  WaveBlock hx = apply_hamiltonian(h, x);
  WaveBlock hz = apply_hamiltonian(h, z);
  MatC xhx = x.adjoint() * hx;
  return 2.0 * hz - z * xhx - x * (z.adjoint() * hx) - x * (x.adjoint() * hz) -
         hz * (x.adjoint() * x) - hx * (z.adjoint() * x) - hx * (x.adjoint() * z);
}

}  // namespace pomm
