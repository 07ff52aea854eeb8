#include "pomm/omm.hpp"

#include <Eigen/Dense>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>

namespace pomm {

namespace {

double retr(const MatC& m) { return m.trace().real(); }

// E(X + aD) = c[0] + c[1] a + ... + c[4] a^4, from precomputed H applies.
std::array<double, 5> quartic_coeffs(const WaveBlock& x, const WaveBlock& d,
                                     const WaveBlock& hx, const WaveBlock& hd) {
  MatC a0 = x.adjoint() * hx;
  MatC a1 = x.adjoint() * hd;
  MatC a2 = d.adjoint() * hd;
  MatC s0 = x.adjoint() * x;
  MatC s1 = x.adjoint() * d;
  MatC s2 = d.adjoint() * d;
  MatC b = s1 + s1.adjoint();
  MatC c = a1 + a1.adjoint();
  std::array<double, 5> co;
  co[0] = 0.5 * (2.0 * retr(a0) - retr(s0 * a0));
  co[1] = 0.5 * (2.0 * retr(c) - retr(s0 * c) - retr(b * a0));
  co[2] = 0.5 * (2.0 * retr(a2) - retr(s0 * a2) - retr(b * c) - retr(s2 * a0));
  co[3] = 0.5 * (-retr(b * a2) - retr(s2 * c));
  co[4] = 0.5 * (-retr(s2 * a2));
  return co;
}

double eval_quartic(const std::array<double, 5>& c, double a) {
  return c[0] + a * (c[1] + a * (c[2] + a * (c[3] + a * c[4])));
}

// real critical points of the quartic (roots of its derivative cubic)
std::vector<double> critical_points(const std::array<double, 5>& c) {
  double d0 = c[1], d1 = 2.0 * c[2], d2 = 3.0 * c[3], d3 = 4.0 * c[4];
  double scale = std::max({std::abs(d0), std::abs(d1), std::abs(d2), std::abs(d3)});
  std::vector<double> roots;
  if (scale == 0.0) return roots;
  if (std::abs(d3) > 1e-14 * scale) {
    Eigen::Matrix3d comp = Eigen::Matrix3d::Zero();
    comp(1, 0) = 1.0;
    comp(2, 1) = 1.0;
    comp(0, 2) = -d0 / d3;
    comp(1, 2) = -d1 / d3;
    comp(2, 2) = -d2 / d3;
    Eigen::EigenSolver<Eigen::Matrix3d> es(comp);
    for (int i = 0; i < 3; ++i) {
      cxd r = es.eigenvalues()[i];
      if (std::abs(r.imag()) <= 1e-8 * (1.0 + std::abs(r.real())))
        roots.push_back(r.real());
    }
  } else if (std::abs(d2) > 1e-14 * scale) {
    double disc = d1 * d1 - 4.0 * d2 * d0;
    if (disc >= 0.0) {
      double s = std::sqrt(disc);
      roots.push_back((-d1 + s) / (2.0 * d2));
      roots.push_back((-d1 - s) / (2.0 * d2));
    }
  } else if (std::abs(d1) > 1e-14 * scale) {
    roots.push_back(-d0 / d1);
  }
  return roots;
}

LineSearchResult minimize_quartic(const std::array<double, 5>& c) {
  LineSearchResult res;
  double best = c[0];
  for (double a : critical_points(c)) {
    double e = eval_quartic(c, a);
    if (e < best) {
      best = e;
      res.alpha = a;
      res.decreased = true;
    }
  }
  return res;
}

}  // namespace

double omm_energy(const HamiltonianOp& h, const WaveBlock& x) {
  WaveBlock hx = apply_hamiltonian(h, x);
  MatC a0 = x.adjoint() * hx;
  MatC s0 = x.adjoint() * x;
  return 0.5 * (2.0 * retr(a0) - retr(s0 * a0));
}

WaveBlock omm_gradient(const HamiltonianOp& h, const WaveBlock& x) {
  WaveBlock hx = apply_hamiltonian(h, x);
  return 2.0 * hx - x * (x.adjoint() * hx) - hx * (x.adjoint() * x);
}

LineSearchResult line_search_quartic(const HamiltonianOp& h, const WaveBlock& x,
                                     const WaveBlock& d) {
  WaveBlock hx = apply_hamiltonian(h, x);
  WaveBlock hd = apply_hamiltonian(h, d);
  return minimize_quartic(quartic_coeffs(x, d, hx, hd));
}

OmmReport pcg_minimize(const HamiltonianOp& h, const WaveBlock& x0,
                       const Preconditioner& precond, const OmmConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  OmmReport rep;
  WaveBlock x = x0;
  WaveBlock g_prev, d_prev;
  double e_prev = omm_energy(h, x);
  rep.energy_trace.push_back(e_prev);
  int bad_streak = 0, restarts = 0;
  bool restart_next = true;

  for (int m = 1; m <= cfg.max_iter; ++m) {
    WaveBlock hx = apply_hamiltonian(h, x);
    WaveBlock grad = 2.0 * hx - x * (x.adjoint() * hx) - hx * (x.adjoint() * x);
    WaveBlock g = precond.apply(-grad);

    double beta = 0.0;
    if (!restart_next) {
      double denom = g_prev.cwiseAbs2().sum();
      if (denom > 0.0)
        beta = ((g.array().conjugate() * (g - g_prev).array()).sum()).real() / denom;
      if (!std::isfinite(beta)) beta = 0.0;
    }
    restart_next = false;
    WaveBlock d = (beta == 0.0) ? g : WaveBlock(g + beta * d_prev);

    WaveBlock hd = apply_hamiltonian(h, d);
    auto co = quartic_coeffs(x, d, hx, hd);
    auto ls = minimize_quartic(co);
    double e = eval_quartic(co, ls.alpha);
    x += ls.alpha * d;
    rep.energy_trace.push_back(e);
    rep.iterations = m;

    if (std::abs(e - e_prev) <= cfg.tol * std::max(1.0, std::abs(e))) {
      rep.converged = true;
      break;
    }
    if (e > e_prev) {  // divergence guard: drop conjugacy, then give up
      if (++bad_streak >= 2) {
        restart_next = true;
        bad_streak = 0;
        if (++restarts > 3) break;
      }
    } else {
      bad_streak = 0;
      restarts = 0;
    }
    e_prev = e;
    g_prev = std::move(g);
    d_prev = std::move(d);
  }

  rep.final_X = std::move(x);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

double negative_definite_shift(double lambda_max, double margin) {
  return lambda_max + margin;
}

}  // namespace pomm
