#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pomm/fft.hpp"
#include "pomm/grid.hpp"
#include "pomm/hamiltonian.hpp"
#include "pomm/potential.hpp"
#include "pomm/reference.hpp"

using namespace pomm;

namespace {

VecC random_vec(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  VecC v(n);
  for (int i = 0; i < n; ++i) v[i] = cxd(g(rng), g(rng));
  return v;
}

VecC planewave(const SpectralGrid& grid, int k1, int k2) {
  VecC v(grid.n);
  for (int j1 = 0; j1 < grid.side; ++j1)
    for (int j2 = 0; j2 < grid.side; ++j2) {
      double ph = 2.0 * std::numbers::pi * (k1 * j1 + k2 * j2) / grid.side;
      v[grid.index(j1, j2)] = cxd(std::cos(ph), std::sin(ph));
    }
  return v / grid.side;  // unit l2 norm
}

}  // namespace

TEST_CASE("grid sizes and frequency set") {
  SpectralGrid g3 = build_grid(3);
  CHECK(g3.side == 24);
  CHECK(g3.n == 576);
  CHECK(build_grid(1).n == 64);
  CHECK(build_grid(5).n == 1600);
  CHECK_THROWS(build_grid(0));
  CHECK_THROWS(build_grid(2, 7));  // odd side

  // centered frequencies cover [-side/2, side/2) in each direction
  SpectralGrid g1 = build_grid(1);
  CHECK(g1.freq_component(0) == 0);
  CHECK(g1.freq_component(3) == 3);
  CHECK(g1.freq_component(4) == -4);
  CHECK(g1.freq_component(7) == -1);
  double max_fsq = g1.freq_sq.maxCoeff();
  CHECK(max_fsq == doctest::Approx(32.0));  // (-4)^2 + (-4)^2
  CHECK(g1.freq_sq.minCoeff() == 0.0);
}

TEST_CASE("unitary FFT: Parseval and roundtrip") {
  SpectralGrid grid = build_grid(2);
  Fourier2D fft(grid.side);
  VecC x = random_vec(grid.n, 1);
  VecC xh = x;
  fft.forward(xh);
  CHECK(xh.norm() == doctest::Approx(x.norm()).epsilon(1e-12));
  fft.inverse(xh);
  CHECK((xh - x).norm() < 1e-12 * x.norm());
}

TEST_CASE("potential sampling") {
  SpectralGrid grid = build_grid(3);
  PotentialSpec spec;  // defaults: depth 40, width 0.15
  spec.global_scale = 0.01;

  SUBCASE("well minimum hits the closed form at cell centers") {
    RealField f = sample_potential(grid, spec);
    CHECK(f.values.minCoeff() == doctest::Approx(-0.01 * 9 * 40.0).epsilon(1e-13));
    CHECK(f.values.maxCoeff() < 0.0);
  }

  SUBCASE("all cells vacant gives the zero field") {
    spec.vacancy_mode = VacancyMode::fixed_count;
    spec.fixed_count = 9;
    RealField f = sample_potential(grid, spec);
    CHECK(f.values.cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("fraction rounds to a cell count, deterministically") {
    SpectralGrid g4 = build_grid(4);
    PotentialSpec s4;
    s4.vacancy_mode = VacancyMode::fraction;
    s4.fraction = 0.25;
    s4.rng_seed = 9;
    auto v1 = vacant_cells(g4, s4);
    auto v2 = vacant_cells(g4, s4);
    CHECK(v1.size() == 4);
    CHECK(v1 == v2);
    s4.rng_seed = 10;
    CHECK(vacant_cells(g4, s4) != v1);
  }

  SUBCASE("periodic tiling: values depend only on the in-cell position") {
    SpectralGrid g1 = build_grid(1), g2 = build_grid(2);
    PotentialSpec s;
    RealField f1 = sample_potential(g1, s), f2 = sample_potential(g2, s);
    // scale ratio ell^2 = 4; compare a shared in-cell point in every cell
    for (int c1 = 0; c1 < 2; ++c1)
      for (int c2 = 0; c2 < 2; ++c2)
        CHECK(f2.values[g2.index(8 * c1 + 3, 8 * c2 + 5)] ==
              doctest::Approx(4.0 * f1.values[g1.index(3, 5)]).epsilon(1e-13));
  }

  SUBCASE("spec validation") {
    PotentialSpec bad;
    bad.well_depth = -1;
    CHECK_THROWS(sample_potential(grid, bad));
    bad = PotentialSpec{};
    bad.vacancy_mode = VacancyMode::fraction;
    bad.fraction = 1.5;
    CHECK_THROWS(sample_potential(grid, bad));
  }
}

TEST_CASE("hamiltonian apply") {
  SpectralGrid grid = build_grid(2);
  PotentialSpec spec;
  spec.global_scale = 0.01;
  HamiltonianOp h = make_hamiltonian(grid, sample_potential(grid, spec));

  SUBCASE("planewaves are kinetic eigenfunctions when V = 0") {
    RealField zero;
    zero.values = VecR::Zero(grid.n);
    HamiltonianOp h0 = make_hamiltonian(grid, zero);
    WaveBlock x(grid.n, 2);
    x.col(0) = VecC::Constant(grid.n, 1.0 / grid.side);
    x.col(1) = planewave(grid, 3, -2);
    WaveBlock y = apply_hamiltonian(h0, x);
    CHECK(y.col(0).norm() < 1e-12);
    double lam = 2.0 * std::numbers::pi * std::numbers::pi * 13.0;
    CHECK((y.col(1) - lam * x.col(1)).norm() < 1e-10 * lam);
  }

  SUBCASE("agrees with densify and the serial reference") {
    WaveBlock x(grid.n, 3);
    for (int j = 0; j < 3; ++j) x.col(j) = random_vec(grid.n, 10 + j);
    MatC hd = densify(h);
    CHECK((hd - hd.adjoint()).cwiseAbs().maxCoeff() < 1e-9);
    WaveBlock y = apply_hamiltonian(h, x);
    CHECK((y - hd * x).cwiseAbs().maxCoeff() < 1e-12 * hd.cwiseAbs().maxCoeff());
    WaveBlock yr = apply_hamiltonian_ref(h, x);
    CHECK((y - yr).cwiseAbs().maxCoeff() < 1e-9);
    // unit-vector probe: densify column = single-column apply
    VecC e = VecC::Zero(grid.n), col(grid.n);
    e[17] = 1.0;
    apply_hamiltonian_col(h, e, col);
    CHECK((hd.col(17) - col).norm() < 1e-12);
  }

  SUBCASE("linearity and self-adjointness") {
    VecC x = random_vec(grid.n, 3), y = random_vec(grid.n, 4);
    WaveBlock xy(grid.n, 2);
    xy.col(0) = x;
    xy.col(1) = y;
    WaveBlock hxy = apply_hamiltonian(h, xy);
    VecC both(grid.n);
    apply_hamiltonian_col(h, VecC(2.0 * x - 3.0 * y), both);
    CHECK((both - (2.0 * hxy.col(0) - 3.0 * hxy.col(1))).norm() < 1e-11 * both.norm());
    cxd a = x.dot(hxy.col(1)), b = hxy.col(0).dot(y);
    CHECK(std::abs(a - b) < 1e-12 * std::abs(a));
  }

  SUBCASE("shift moves the diagonal only") {
    HamiltonianOp hs = with_shift(h, 2.5);
    VecC x = random_vec(grid.n, 5), y0(grid.n), ys(grid.n);
    apply_hamiltonian_col(h, x, y0);
    apply_hamiltonian_col(hs, x, ys);
    CHECK((ys - (y0 - 2.5 * x)).norm() < 1e-12 * y0.norm());
  }

  SUBCASE("dimension mismatch rejected") {
    WaveBlock bad(grid.n / 2, 1);
    CHECK_THROWS(apply_hamiltonian(h, bad));
  }
}

TEST_CASE("constant-coefficient resolvent") {
  SpectralGrid grid = build_grid(2);
  Fourier2D fft(grid.side);

  SUBCASE("planewave division") {
    VecC b = planewave(grid, 2, 1);
    VecC y = apply_const_resolvent(grid, fft, cxd(1.0, 0.0), cxd(0.0, 0.0), b);
    double sym = 2.0 * std::numbers::pi * std::numbers::pi * 5.0 + 1.0;
    CHECK((y - b / sym).norm() < 1e-12);
  }

  SUBCASE("matches the dense inverse") {
    RealField zero;
    zero.values = VecR::Zero(grid.n);
    HamiltonianOp h0 = make_hamiltonian(grid, zero);
    cxd l(0.7, 0.0), z(-2.0, 1.5);
    MatC a = densify(h0) + (l - z) * MatC::Identity(grid.n, grid.n);
    VecC b = random_vec(grid.n, 6);
    VecC y = apply_const_resolvent(grid, fft, l, z, b);
    CHECK((a * y - b).norm() < 1e-10 * b.norm());
  }

  SUBCASE("resonant symbol rejected") {
    CHECK_THROWS(apply_const_resolvent(grid, fft, cxd(1.0, 0.0), cxd(1.0, 0.0),
                                       VecC::Ones(grid.n)));
  }
}
