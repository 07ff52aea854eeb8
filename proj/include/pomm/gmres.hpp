// gmres.hpp - restarted GMRES with right preconditioning
#pragma once

#include <functional>

#include "pomm/types.hpp"

namespace pomm {

struct GmresConfig {
  double rel_tol = 1e-5;
  int restart = 15;
  int max_restarts = 5;
};

struct GmresResult {
  VecC x;
  double rel_residual = 0.0;  // true residual norm / ||b||
  int matvecs = 0;
  bool converged = false;
};

using LinearOp = std::function<VecC(const VecC&)>;

/// Solves A x = b with right preconditioner M (solve A M y = b, x = M y).
/// Restart cycles check the true residual; the best iterate seen is
/// returned. Pass the identity for M to run unpreconditioned.
GmresResult gmres_solve(const LinearOp& a, const LinearOp& m, const VecC& b,
                        const VecC& x0, const GmresConfig& cfg = {});

}  // namespace pomm
