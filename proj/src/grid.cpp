#include "pomm/grid.hpp"

#include <stdexcept>

namespace pomm {

SpectralGrid build_grid(int cells_per_dim, int pts_per_cell) {
  if (cells_per_dim < 1) throw std::invalid_argument("build_grid: cells_per_dim must be >= 1");
  if (pts_per_cell < 2 || pts_per_cell % 2 != 0)
    throw std::invalid_argument("build_grid: pts_per_cell must be positive and even");

  SpectralGrid g;
  g.cells_per_dim = cells_per_dim;
  g.pts_per_cell = pts_per_cell;
  g.side = cells_per_dim * pts_per_cell;
  if (g.side % 2 != 0) throw std::invalid_argument("build_grid: side must be even");
  g.n = g.side * g.side;
  g.freq_sq.resize(g.n);
  for (int m1 = 0; m1 < g.side; ++m1) {
    const double k1 = g.freq_component(m1);
    for (int m2 = 0; m2 < g.side; ++m2) {
      const double k2 = g.freq_component(m2);
      g.freq_sq[g.index(m1, m2)] = k1 * k1 + k2 * k2;
    }
  }
  return g;
}

}  // namespace pomm
