// projection_precond.hpp - approximate Fermi-operator projection preconditioner
#pragma once

#include <Eigen/Dense>
#include <atomic>
#include <cstdint>
#include <map>
#include <memory>

#include "pomm/gmres.hpp"
#include "pomm/hamiltonian.hpp"
#include "pomm/omm.hpp"
#include "pomm/poles.hpp"
#include "pomm/sparsify.hpp"
#include "pomm/types.hpp"

namespace pomm {

/// strict-weak-order key for complex pole nodes
struct NodeKey {
  double re, im;
  NodeKey(cxd z) : re(z.real()), im(z.imag()) {}
  bool operator<(const NodeKey& o) const {
    return re != o.re ? re < o.re : im < o.im;
  }
};

/// Solves (H - z) y = rhs for the pole nodes z; implementations trade
/// accuracy for speed.
class ResolventSolver {
 public:
  virtual ~ResolventSolver() = default;
  virtual VecC solve(cxd z, const VecC& rhs) const = 0;
};

/// Exact dense solves with one prefactored LU per node (reference only).
class DenseResolventSolver final : public ResolventSolver {
 public:
  DenseResolventSolver(const MatC& h, const PoleSet& poles);
  VecC solve(cxd z, const VecC& rhs) const override;

 private:
  std::map<NodeKey, Eigen::PartialPivLU<MatC>> lus_;
};

enum class InnerPrecond { none, const_resolvent, sparsifying };

/// Rough GMRES solves of (H - z) y = rhs, right-preconditioned by either the
/// constant-coefficient resolvent at l = <V> or the sparsifying system; the
/// RHS doubles as the initial guess.
class IterativeResolventSolver final : public ResolventSolver {
 public:
  IterativeResolventSolver(HamiltonianOp h, const PoleSet& poles,
                           InnerPrecond kind, GmresConfig cfg = {});
  VecC solve(cxd z, const VecC& rhs) const override;

  /// total Arnoldi matvecs across all solves so far
  std::int64_t matvecs() const { return matvecs_; }

 private:
  HamiltonianOp h_;
  InnerPrecond kind_;
  GmresConfig cfg_;
  double l_ = 0.0;
  std::map<NodeKey, SparsifiedSystem> systems_;
  mutable std::atomic<std::int64_t> matvecs_ = 0;  // solves may run in parallel
};

/// sum_j w_j (H - z_j)^-1 B. Real blocks use the conjugate-pair reduction
/// (2 Re of the upper-half-plane sum).
WaveBlock apply_pp(const PoleSet& poles, const ResolventSolver& solver,
                   const WaveBlock& b);

/// Algorithm: apply the pole expansion to an n x (N + extra) Gaussian block,
/// then rank-revealing QR; returns the first N Q-columns. Throws when the
/// sketch loses rank.
WaveBlock randomized_projection(const PoleSet& poles, const ResolventSolver& solver,
                                int n, int N, int extra, std::uint64_t seed);

/// OMM preconditioner G -> Pi G with Pi the approximate projection, either
/// applied per-iteration through the solver ("on the fly") or as U U* with a
/// precomputed orthonormal basis U.
class ProjectionPrecond final : public Preconditioner {
 public:
  ProjectionPrecond(std::shared_ptr<const PoleSet> poles,
                    std::shared_ptr<const ResolventSolver> solver);
  explicit ProjectionPrecond(WaveBlock u);  // precomputed basis

  WaveBlock apply(const WaveBlock& g) const override;

 private:
  std::shared_ptr<const PoleSet> poles_;
  std::shared_ptr<const ResolventSolver> solver_;
  WaveBlock u_;
};

}  // namespace pomm
