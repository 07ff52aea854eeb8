#include "pomm/projection_precond.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace pomm {

DenseResolventSolver::DenseResolventSolver(const MatC& h, const PoleSet& poles) {
  const int n = static_cast<int>(h.rows());
  for (cxd z : poles.nodes) {
    NodeKey key(z);
    if (lus_.count(key)) continue;
    MatC a = h - z * MatC::Identity(n, n);
    lus_.emplace(key, Eigen::PartialPivLU<MatC>(a));
  }
}

VecC DenseResolventSolver::solve(cxd z, const VecC& rhs) const {
  auto it = lus_.find(NodeKey(z));
  if (it == lus_.end()) throw std::invalid_argument("DenseResolventSolver: unknown node");
  return it->second.solve(rhs);
}

IterativeResolventSolver::IterativeResolventSolver(HamiltonianOp h, const PoleSet& poles,
                                                   InnerPrecond kind, GmresConfig cfg)
    : h_(std::move(h)), kind_(kind), cfg_(cfg) {
  l_ = h_.potential.values.mean() - h_.shift;
  if (kind_ == InnerPrecond::sparsifying) {
    // factor one sparsified system per distinct node up front
    VecR shifted = h_.potential.values.array() - h_.shift;
    for (cxd z : poles.nodes) {
      NodeKey key(z);
      if (systems_.count(key)) continue;
      systems_.emplace(key, build_sparsified(h_.grid, shifted, z));
    }
  }
}

VecC IterativeResolventSolver::solve(cxd z, const VecC& rhs) const {
  LinearOp a = [this, z](const VecC& x) {
    VecC out(x.size());
    apply_hamiltonian_col(h_, x, out);
    out -= z * x;
    return out;
  };
  LinearOp m;
  switch (kind_) {
    case InnerPrecond::none:
      m = [](const VecC& x) { return x; };
      break;
    case InnerPrecond::const_resolvent:
      m = [this, z](const VecC& x) {
        return apply_const_resolvent(h_.grid, *h_.fft, l_, z, x);
      };
      break;
    case InnerPrecond::sparsifying: {
      const SparsifiedSystem& sys = systems_.at(NodeKey(z));
      m = [&sys](const VecC& x) { return sys.precond_apply(x); };
      break;
    }
  }
  GmresResult res = gmres_solve(a, m, rhs, rhs, cfg_);
  matvecs_ += res.matvecs;
  return res.x;
}

WaveBlock apply_pp(const PoleSet& poles, const ResolventSolver& solver,
                   const WaveBlock& b) {
  const bool realb = b.imag().cwiseAbs().maxCoeff() <=
                     1e-14 * std::max(1.0, b.real().cwiseAbs().maxCoeff());
  WaveBlock out = WaveBlock::Zero(b.rows(), b.cols());
  const int ncols = static_cast<int>(b.cols());
  const int p = static_cast<int>(poles.nodes.size());
#pragma omp parallel for schedule(dynamic)
  for (int col = 0; col < ncols; ++col) {
    VecC acc = VecC::Zero(b.rows());
    for (int j = 0; j < p; ++j) {
      if (realb && poles.nodes[j].imag() <= 0.0) continue;
      VecC y = solver.solve(poles.nodes[j], b.col(col));
      acc += poles.weights[j] * y;
    }
    out.col(col) = realb ? VecC(2.0 * acc.real().cast<cxd>()) : acc;
  }
  return out;
}

WaveBlock randomized_projection(const PoleSet& poles, const ResolventSolver& solver,
                                int n, int N, int extra, std::uint64_t seed) {
  if (N < 1 || extra < 0) throw std::invalid_argument("randomized_projection: bad sizes");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  WaveBlock b(n, N + extra);
  for (int j = 0; j < N + extra; ++j)
    for (int i = 0; i < n; ++i) b(i, j) = gauss(rng);
  WaveBlock y = apply_pp(poles, solver, b);
  Eigen::ColPivHouseholderQR<MatC> qr(y);
  const MatC& r = qr.matrixR();
  if (std::abs(r(N - 1, N - 1)) < 1e-12 * std::abs(r(0, 0)))
    throw std::runtime_error("randomized_projection: sketch is rank deficient");
  MatC qfull = qr.householderQ() * MatC::Identity(n, N);
  // columns of Q follow the pivoting, which orders them by importance already
  return qfull;
}

ProjectionPrecond::ProjectionPrecond(std::shared_ptr<const PoleSet> poles,
                                     std::shared_ptr<const ResolventSolver> solver)
    : poles_(std::move(poles)), solver_(std::move(solver)) {
  if (!poles_ || !solver_) throw std::invalid_argument("ProjectionPrecond: null argument");
}

ProjectionPrecond::ProjectionPrecond(WaveBlock u) : u_(std::move(u)) {
  if (u_.size() == 0) throw std::invalid_argument("ProjectionPrecond: empty basis");
}

WaveBlock ProjectionPrecond::apply(const WaveBlock& g) const {
  if (u_.size() != 0) return u_ * (u_.adjoint() * g);
  return apply_pp(*poles_, *solver_, g);
}

}  // namespace pomm
