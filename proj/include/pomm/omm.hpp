// omm.hpp - orbital minimization: energy, gradient, preconditioned CG
#pragma once

#include <memory>
#include <vector>

#include "pomm/hamiltonian.hpp"
#include "pomm/types.hpp"

namespace pomm {

/// Search-direction filter applied to the negative gradient each iteration.
class Preconditioner {
 public:
  virtual ~Preconditioner() = default;
  virtual WaveBlock apply(const WaveBlock& g) const = 0;
};

class IdentityPrecond final : public Preconditioner {
 public:
  WaveBlock apply(const WaveBlock& g) const override { return g; }
};

struct OmmConfig {
  double tol = 1e-13;   // relative energy stagnation
  int max_iter = 4000;
};

struct OmmReport {
  int iterations = 0;
  bool converged = false;
  std::vector<double> energy_trace;
  WaveBlock final_X;
  double seconds = 0.0;
};

/// E(X) = 1/2 tr((2I - X*X)(X*HX)). Unconstrained; H must be negative definite.
double omm_energy(const HamiltonianOp& h, const WaveBlock& x);

/// grad E = 2HX - X(X*HX) - HX(X*X).
WaveBlock omm_gradient(const HamiltonianOp& h, const WaveBlock& x);

/// Global minimizer of the exact quartic a -> E(X + a D). Returns 0 with
/// decreased=false when no step decreases the energy.
struct LineSearchResult {
  double alpha = 0.0;
  bool decreased = false;
};
LineSearchResult line_search_quartic(const HamiltonianOp& h, const WaveBlock& x,
                                     const WaveBlock& d);

/// Preconditioned nonlinear CG (Polak-Ribiere) on E. X0 is the start block.
OmmReport pcg_minimize(const HamiltonianOp& h, const WaveBlock& x0,
                       const Preconditioner& precond, const OmmConfig& cfg = {});

/// Shift sigma making H - sigma I negative definite: lambda_n + margin.
double negative_definite_shift(double lambda_max, double margin = 1.0);

}  // namespace pomm
