#include "pomm/gmres.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace pomm {

GmresResult gmres_solve(const LinearOp& a, const LinearOp& m, const VecC& b,
                        const VecC& x0, const GmresConfig& cfg) {
  const double nb = b.norm();
  GmresResult res;
  res.x = x0;
  if (nb == 0.0) {
    res.x.setZero();
    res.converged = true;
    return res;
  }

  VecC best_x = x0;
  double best_r = (b - a(x0)).norm() / nb;
  VecC x = x0;

  for (int cycle = 0; cycle < cfg.max_restarts; ++cycle) {
    VecC r = b - a(x);
    double beta = r.norm();
    if (!std::isfinite(beta)) throw std::runtime_error("gmres_solve: breakdown (non-finite residual)");
    if (beta / nb <= cfg.rel_tol) {
      res.converged = true;
      if (beta / nb < best_r) { best_r = beta / nb; best_x = x; }
      break;
    }

    std::vector<VecC> v;
    v.push_back(r / beta);
    MatC hess = MatC::Zero(cfg.restart + 1, cfg.restart);
    int k = 0;
    bool happy = false;
    for (int j = 0; j < cfg.restart; ++j) {
      VecC w = a(m(v[j]));
      ++res.matvecs;
      for (int i = 0; i <= j; ++i) {
        hess(i, j) = v[i].dot(w);
        w -= hess(i, j) * v[i];
      }
      double h = w.norm();
      hess(j + 1, j) = h;
      k = j + 1;
      if (h <= 1e-14 * nb) { happy = true; break; }
      v.push_back(w / h);
    }

    VecC e1 = VecC::Zero(k + 1);
    e1[0] = beta;
    Eigen::VectorXcd y =
        hess.topLeftCorner(k + 1, k).colPivHouseholderQr().solve(e1);
    VecC dy = VecC::Zero(b.size());
    for (int i = 0; i < k; ++i) dy += y[i] * v[i];
    x += m(dy);

    double rr = (b - a(x)).norm() / nb;
    if (!std::isfinite(rr)) throw std::runtime_error("gmres_solve: breakdown (non-finite residual)");
    if (rr < best_r) { best_r = rr; best_x = x; }
    if (rr <= cfg.rel_tol || happy) {
      res.converged = rr <= cfg.rel_tol || happy;
      break;
    }
  }

  res.x = std::move(best_x);
  res.rel_residual = best_r;
  return res;
}

}  // namespace pomm
