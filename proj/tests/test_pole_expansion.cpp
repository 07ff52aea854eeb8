#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <string>

#include "pomm/dense_oracle.hpp"
#include "pomm/grid.hpp"
#include "pomm/hamiltonian.hpp"
#include "pomm/poles.hpp"
#include "pomm/potential.hpp"
#include "pomm/projection_precond.hpp"

using namespace pomm;

namespace {

SpectralWindow toy_window() {
  SpectralWindow w;
  w.lo = -10.0;
  w.hi = -4.0;
  w.mu = -2.0;
  w.rest_lo = 0.0;
  w.rest_hi = 50.0;
  return w;
}

double scalar_indicator(const PoleSet& ps, double x) {
  cxd acc = 0.0;
  for (std::size_t j = 0; j < ps.nodes.size(); ++j)
    acc += ps.weights[j] / (x - ps.nodes[j]);
  return acc.real();
}

struct Problem {
  SpectralData s;
  SpectralWindow w;
  MatC hd;
};

// shifted Test-1 operator, single cell, with dense factorized resolvents
Problem make_problem(int ell, int N) {
  SpectralGrid grid = build_grid(ell);
  PotentialSpec spec;
  spec.global_scale = 0.01;
  HamiltonianOp h = make_hamiltonian(grid, sample_potential(grid, spec));
  SpectralData s = dense_eig(densify(h), N);
  double sigma = negative_definite_shift(s.lambdan());
  HamiltonianOp hs = with_shift(h, sigma);
  Problem p{s, {}, densify(hs)};
  p.s.eigenvalues.array() -= sigma;
  p.s.mu -= sigma;
  p.w = make_window(p.s);
  return p;
}

}  // namespace

TEST_CASE("build_poles") {
  SpectralWindow w = toy_window();

  SUBCASE("nodes and weights come in conjugate pairs") {
    PoleSet ps = build_poles(w, 16);
    REQUIRE(ps.nodes.size() == 16);
    for (int j = 0; j < 8; ++j) {
      CHECK(std::abs(ps.nodes[j] - std::conj(ps.nodes[15 - j])) <
            1e-12 * std::abs(ps.nodes[j]));
      CHECK(std::abs(ps.weights[j] - std::conj(ps.weights[15 - j])) <
            1e-12 * std::abs(ps.weights[j]));
    }
    // no node touches the real axis
    for (const cxd& z : ps.nodes) CHECK(std::abs(z.imag()) > 1e-12);
  }

  SUBCASE("contour crossings bracket the occupied window") {
    PoleSet ps = build_poles(w, 30);
    double remin = 1e300, remax = -1e300;
    for (const cxd& z : ps.nodes) {
      remin = std::min(remin, z.real());
      remax = std::max(remax, z.real());
    }
    CHECK(remin > 2.0 * w.lo);   // left of lambda_1 but finite
    CHECK(remin < w.lo);
    CHECK(remax < w.mu);
    CHECK(remax > w.hi);
  }

  SUBCASE("invalid parameters rejected") {
    CHECK_THROWS(build_poles(w, 15));  // odd
    CHECK_THROWS(build_poles(w, 0));
    CHECK_THROWS(build_poles(w, 16, ContourKind::ellipse, 0.0));
  }
}

TEST_CASE("indicator accuracy") {
  SpectralWindow w = toy_window();

  SUBCASE("scalar filter: ~1 inside, ~0 outside") {
    PoleSet ps = build_poles(w, 30);
    CHECK(std::abs(scalar_indicator(ps, w.lo) - 1.0) < 1e-4);
    CHECK(std::abs(scalar_indicator(ps, w.hi) - 1.0) < 1e-4);
    CHECK(std::abs(scalar_indicator(ps, w.rest_lo)) < 1e-4);
    CHECK(std::abs(scalar_indicator(ps, w.rest_hi)) < 1e-6);
  }

  SUBCASE("error decreases with quadrature order") {
    double e16 = indicator_error(build_poles(w, 16), w);
    double e30 = indicator_error(build_poles(w, 30), w);
    CHECK(e30 < e16);
    CHECK(e30 < 1e-3);
  }

  SUBCASE("error is invariant under affine rescaling of the window") {
    SpectralWindow w2;
    double a = 7.0, b = 11.0;  // x -> a x + b
    w2.lo = a * w.lo + b;
    w2.hi = a * w.hi + b;
    w2.mu = a * w.mu + b;
    w2.rest_lo = a * w.rest_lo + b;
    w2.rest_hi = a * w.rest_hi + b;
    double e1 = indicator_error(build_poles(w, 20), w);
    double e2 = indicator_error(build_poles(w2, 20), w2);
    CHECK(e1 == doctest::Approx(e2).epsilon(1e-8));
  }
}

TEST_CASE("apply_pp with exact resolvents") {
  Problem p = make_problem(1, 5);
  PoleSet ps = build_poles(p.w, 30);
  double tol = 10.0 * std::max(indicator_error(ps, p.w), 1e-12);
  DenseResolventSolver solver(p.hd, ps);

  SUBCASE("occupied eigenvectors pass through") {
    WaveBlock y = apply_pp(ps, solver, p.s.X0);
    CHECK((y - p.s.X0).cwiseAbs().maxCoeff() < tol);
  }

  SUBCASE("unoccupied eigenvectors are annihilated") {
    Eigen::SelfAdjointEigenSolver<MatC> es(p.hd);
    WaveBlock top = es.eigenvectors().rightCols(2);
    CHECK(apply_pp(ps, solver, top).cwiseAbs().maxCoeff() < tol);
  }

  SUBCASE("real input keeps a real image") {
    WaveBlock b = WaveBlock::Zero(p.hd.rows(), 2);
    b(5, 0) = 1.0;
    b(11, 1) = 2.5;
    WaveBlock y = apply_pp(ps, solver, b);
    CHECK(y.imag().cwiseAbs().maxCoeff() == 0.0);
    // and matches the full-sum evaluation done column by column
    WaveBlock ref = WaveBlock::Zero(p.hd.rows(), 2);
    for (int j = 0; j < 2; ++j) {
      VecC acc = VecC::Zero(p.hd.rows());
      for (std::size_t k = 0; k < ps.nodes.size(); ++k)
        acc += ps.weights[k] * solver.solve(ps.nodes[k], b.col(j));
      ref.col(j) = acc;
    }
    CHECK((y - ref.real().cast<cxd>()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("randomized_projection") {
  Problem p = make_problem(1, 5);
  PoleSet ps = build_poles(p.w, 30);
  double tol = 10.0 * std::max(indicator_error(ps, p.w), 1e-12);
  DenseResolventSolver solver(p.hd, ps);
  const int n = static_cast<int>(p.hd.rows());

  SUBCASE("recovers the occupied subspace") {
    WaveBlock u = randomized_projection(ps, solver, n, 5, 8, 42);
    CHECK((u.adjoint() * u - MatC::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-12);
    MatC pi = p.s.X0 * p.s.X0.adjoint();
    CHECK((u * u.adjoint() - pi).cwiseAbs().maxCoeff() < tol);
  }

  SUBCASE("oversampling does not change the subspace") {
    WaveBlock u0 = randomized_projection(ps, solver, n, 5, 0, 7);
    WaveBlock u8 = randomized_projection(ps, solver, n, 5, 8, 8);
    CHECK(subspace_distance(u0, u8) < 1e-6);
  }

  SUBCASE("rank collapse detected when N exceeds the window") {
    // at high quadrature order the contour passes only 5 states, so an
    // oversized request starves the sketch
    PoleSet sharp = build_poles(p.w, 64);
    DenseResolventSolver exact(p.hd, sharp);
    CHECK_THROWS(randomized_projection(sharp, exact, n, 8, 4, 5));
  }
}

TEST_CASE("write_poles_csv") {
  SpectralWindow w = toy_window();
  PoleSet ps = build_poles(w, 8);
  std::string path = "poles_test_out.csv";
  write_poles_csv(ps, path);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);
  CHECK(line == "j,re_z,im_z,re_w,im_w");
  int rows = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 8);
  in.close();
  std::remove(path.c_str());
}
