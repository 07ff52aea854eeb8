// Timing harness: OpenMP/FFTW Hamiltonian apply vs the serial reference.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pomm/grid.hpp"
#include "pomm/hamiltonian.hpp"
#include "pomm/harness.hpp"
#include "pomm/potential.hpp"
#include "pomm/reference.hpp"

using namespace pomm;

namespace {

double g_sink = 0.0;  // defeats dead-code elimination

double time_loop(int reps, const std::function<double()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) g_sink += fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() /
         reps;
}

}  // namespace

int main(int argc, char** argv) {
  int ell = argc > 1 ? std::atoi(argv[1]) : 6;
  int ncols = argc > 2 ? std::atoi(argv[2]) : 16;
  int reps = argc > 3 ? std::atoi(argv[3]) : 20;

  SpectralGrid grid = build_grid(ell);
  RealField field = sample_potential(grid, test_potential(1, 7));
  HamiltonianOp h = make_hamiltonian(grid, field);

  std::mt19937_64 rng(42);
  std::normal_distribution<double> gauss;
  WaveBlock x(grid.n, ncols);
  for (int j = 0; j < ncols; ++j)
    for (int i = 0; i < grid.n; ++i) x(i, j) = cxd(gauss(rng), gauss(rng));

  std::printf("grid: ell=%d n=%d, block of %d columns, %d reps\n", ell, grid.n, ncols,
              reps);

  WaveBlock y_ref = apply_hamiltonian_ref(h, x);
  double t_ref = time_loop(std::max(1, reps / 10),
                           [&] { return std::abs(apply_hamiltonian_ref(h, x)(0, 0)); });
  std::printf("serial reference (direct DFT): %.4f s/apply\n", t_ref);

#ifdef _OPENMP
  int max_threads = omp_get_max_threads();
  omp_set_num_threads(1);
#endif
  WaveBlock y1 = apply_hamiltonian(h, x);
  double t1 = time_loop(reps, [&] { return std::abs(apply_hamiltonian(h, x)(0, 0)); });
  std::printf("FFTW kernel, 1 thread:         %.6f s/apply\n", t1);

#ifdef _OPENMP
  omp_set_num_threads(max_threads);
  WaveBlock yp = apply_hamiltonian(h, x);
  double tp = time_loop(reps, [&] { return std::abs(apply_hamiltonian(h, x)(0, 0)); });
  std::printf("FFTW kernel, %2d threads:       %.6f s/apply (speedup %.2fx)\n",
              max_threads, tp, t1 / tp);
  std::printf("parallel vs serial-thread diff: %.3e\n",
              (yp - y1).cwiseAbs().maxCoeff());
#endif

  std::printf("FFTW vs reference max diff:     %.3e\n",
              (y1 - y_ref).cwiseAbs().maxCoeff());
  return 0;
}
