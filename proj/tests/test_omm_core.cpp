#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "pomm/dense_oracle.hpp"
#include "pomm/grid.hpp"
#include "pomm/hamiltonian.hpp"
#include "pomm/omm.hpp"
#include "pomm/potential.hpp"

using namespace pomm;

namespace {

WaveBlock random_block(int n, int cols, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  WaveBlock x(n, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < n; ++i) x(i, j) = cxd(g(rng), g(rng));
  return x;
}

// shifted (negative definite) single-cell Test-1 operator plus ground truth
struct Toy {
  HamiltonianOp hs;
  SpectralData s;  // spectrum of the shifted operator
};

Toy make_toy(int N) {
  SpectralGrid grid = build_grid(1);
  PotentialSpec spec;
  spec.global_scale = 0.01;
  HamiltonianOp h = make_hamiltonian(grid, sample_potential(grid, spec));
  SpectralData s = dense_eig(densify(h), N);
  double sigma = negative_definite_shift(s.lambdan());
  Toy t{with_shift(h, sigma), s};
  t.s.eigenvalues.array() -= sigma;
  t.s.mu -= sigma;
  return t;
}

}  // namespace

TEST_CASE("energy") {
  Toy t = make_toy(5);

  SUBCASE("at the orthonormal minimizer: half the occupied sum") {
    CHECK(omm_energy(t.hs, t.s.X0) ==
          doctest::Approx(0.5 * t.s.eigenvalues.head(5).sum()).epsilon(1e-12));
  }

  SUBCASE("zero block") {
    CHECK(omm_energy(t.hs, WaveBlock::Zero(t.hs.n(), 5)) == 0.0);
  }

  SUBCASE("matches the dense formula on random input") {
    WaveBlock x = random_block(t.hs.n(), 5, 1);
    MatC hd = densify(t.hs);
    MatC xhx = x.adjoint() * hd * x;
    MatC s0 = x.adjoint() * x;
    double expect =
        0.5 * ((2.0 * MatC::Identity(5, 5) - s0) * xhx).trace().real();
    CHECK(omm_energy(t.hs, x) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("gradient") {
  Toy t = make_toy(5);

  SUBCASE("vanishes at the minimizer") {
    double scale = t.s.eigenvalues.cwiseAbs().maxCoeff();
    CHECK(omm_gradient(t.hs, t.s.X0).cwiseAbs().maxCoeff() < 1e-10 * scale);
  }

  SUBCASE("central-difference directional derivative") {
    WaveBlock x = random_block(t.hs.n(), 5, 2);
    WaveBlock z = random_block(t.hs.n(), 5, 3);
    WaveBlock grad = omm_gradient(t.hs, x);
    // dE/dh along Z is Re tr(Z* G) for G = dE/dX* (Wirtinger convention)
    double dd = (z.adjoint() * grad).trace().real();
    for (double h : {1e-4, 1e-5}) {
      double fd =
          (omm_energy(t.hs, x + h * z) - omm_energy(t.hs, x - h * z)) / (2.0 * h);
      CHECK(std::abs(fd - dd) < 1e-6 * std::abs(dd));
    }
  }
}

TEST_CASE("quartic line search") {
  Toy t = make_toy(5);
  WaveBlock x = random_block(t.hs.n(), 5, 4) * 0.3;

  SUBCASE("steepest descent step decreases the energy") {
    WaveBlock d = -omm_gradient(t.hs, x);
    auto ls = line_search_quartic(t.hs, x, d);
    CHECK(ls.decreased);
    CHECK(omm_energy(t.hs, x + ls.alpha * d) < omm_energy(t.hs, x));
  }

  SUBCASE("the returned alpha is a local minimum along the ray") {
    WaveBlock d = -omm_gradient(t.hs, x);
    d /= d.norm();
    auto ls = line_search_quartic(t.hs, x, d);
    double e = omm_energy(t.hs, x + ls.alpha * d);
    double h = 1e-3 * std::max(std::abs(ls.alpha), 1e-3);
    double slack = 1e-9 * std::abs(e);
    CHECK(e <= omm_energy(t.hs, x + (ls.alpha + h) * d) + slack);
    CHECK(e <= omm_energy(t.hs, x + (ls.alpha - h) * d) + slack);
  }

  SUBCASE("near-stationary start gives a tiny step") {
    WaveBlock d = random_block(t.hs.n(), 5, 5) * 1e-3;
    auto ls = line_search_quartic(t.hs, t.s.X0, d);
    CHECK(std::abs(ls.alpha) < 1e-6);
  }

  SUBCASE("five-point sample reproduces the ray energy as a quartic") {
    WaveBlock d = random_block(t.hs.n(), 5, 6);
    // fit E(a) on {0, +-h, +-2h} and predict an off-grid point
    double h = 0.05;
    double e0 = omm_energy(t.hs, x);
    double ep = omm_energy(t.hs, x + h * d), em = omm_energy(t.hs, x - h * d);
    double ep2 = omm_energy(t.hs, x + 2 * h * d), em2 = omm_energy(t.hs, x - 2 * h * d);
    // quartic through 5 points: evaluate at a = 3h by Lagrange interpolation
    double predict = 5.0 * ep2 - 10.0 * ep + 10.0 * e0 - 5.0 * em + em2;
    double actual = omm_energy(t.hs, x + 3 * h * d);
    CHECK(actual == doctest::Approx(predict).epsilon(1e-8));
  }
}

TEST_CASE("pcg_minimize") {
  Toy t = make_toy(5);
  IdentityPrecond ident;

  SUBCASE("starting at the answer stops immediately") {
    OmmReport rep = pcg_minimize(t.hs, t.s.X0, ident);
    CHECK(rep.converged);
    CHECK(rep.iterations <= 1);
    CHECK(rep.energy_trace.back() ==
          doctest::Approx(0.5 * t.s.eigenvalues.head(5).sum()).epsilon(1e-12));
  }

  SUBCASE("converges from a perturbed start; energy is monotone") {
    WaveBlock x1 = t.s.X0 + 0.05 * random_block(t.hs.n(), 5, 7);
    OmmReport rep = pcg_minimize(t.hs, x1, ident);
    CHECK(rep.converged);
    // the 1e-13 energy tolerance pins the subspace to roughly sqrt(tol)
    CHECK(subspace_distance(rep.final_X, t.s.X0) < 1e-4);
    for (std::size_t i = 1; i < rep.energy_trace.size(); ++i)
      CHECK(rep.energy_trace[i] <= rep.energy_trace[i - 1] + 1e-12);
    // converged gradient is small relative to HX
    WaveBlock g = omm_gradient(t.hs, rep.final_X);
    WaveBlock hx = apply_hamiltonian(t.hs, rep.final_X);
    CHECK(g.norm() <= 1e-5 * hx.norm());
  }

  SUBCASE("subspace invariance of the start block") {
    WaveBlock x1 = t.s.X0 + 0.05 * random_block(t.hs.n(), 5, 8);
    MatC r(5, 5);
    r = MatC::Identity(5, 5) + 0.2 * random_block(5, 5, 11);
    OmmReport a = pcg_minimize(t.hs, x1, ident);
    OmmReport b = pcg_minimize(t.hs, x1 * r, ident);
    CHECK(subspace_distance(a.final_X, b.final_X) < 1e-4);
  }

  SUBCASE("iteration cap reported as non-convergence") {
    OmmConfig cfg;
    cfg.max_iter = 2;
    WaveBlock x1 = random_block(t.hs.n(), 5, 9);
    OmmReport rep = pcg_minimize(t.hs, x1, ident, cfg);
    CHECK_FALSE(rep.converged);
    CHECK(rep.iterations == 2);
  }
}

TEST_CASE("negative_definite_shift") {
  CHECK(negative_definite_shift(5.0) == 6.0);
  CHECK(negative_definite_shift(5.0, 0.5) == 5.5);
  Toy t = make_toy(5);
  CHECK(t.s.eigenvalues.maxCoeff() < 0.0);
}
