#include "pomm/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace pomm {

void PotentialSpec::validate(int cells_per_dim) const {
  if (well_depth <= 0) throw std::invalid_argument("PotentialSpec: well_depth must be > 0");
  if (well_width <= 0) throw std::invalid_argument("PotentialSpec: well_width must be > 0");
  const int ncells = cells_per_dim * cells_per_dim;
  if (vacancy_mode == VacancyMode::fixed_count && (fixed_count < 0 || fixed_count > ncells))
    throw std::invalid_argument("PotentialSpec: fixed_count out of range");
  if (vacancy_mode == VacancyMode::fraction && (fraction < 0.0 || fraction > 1.0))
    throw std::invalid_argument("PotentialSpec: fraction must be in [0,1]");
}

std::vector<int> vacant_cells(const SpectralGrid& grid, const PotentialSpec& spec) {
  const int ncells = grid.cells_per_dim * grid.cells_per_dim;
  int count = 0;
  switch (spec.vacancy_mode) {
    case VacancyMode::none: return {};
    case VacancyMode::fixed_count: count = spec.fixed_count; break;
    case VacancyMode::fraction:
      count = static_cast<int>(std::lround(spec.fraction * ncells));
      break;
  }
  std::vector<int> cells(ncells);
  std::iota(cells.begin(), cells.end(), 0);
  std::mt19937_64 rng(spec.rng_seed);
  std::shuffle(cells.begin(), cells.end(), rng);
  cells.resize(count);
  std::sort(cells.begin(), cells.end());
  return cells;
}

RealField sample_potential(const SpectralGrid& grid, const PotentialSpec& spec) {
  spec.validate(grid.cells_per_dim);
  const int ell = grid.cells_per_dim;
  const int ppc = grid.pts_per_cell;
  const auto vac = vacant_cells(grid, spec);

  RealField field;
  field.values.resize(grid.n);
  const double inv2s2 = 1.0 / (2.0 * spec.well_width * spec.well_width);
  const double amp = spec.global_scale * ell * ell * spec.well_depth;
  for (int j1 = 0; j1 < grid.side; ++j1) {
    const int c1 = j1 / ppc;
    const double u1 = static_cast<double>(j1 % ppc) / ppc - 0.5;
    for (int j2 = 0; j2 < grid.side; ++j2) {
      const int c2 = j2 / ppc;
      const int cell = c1 * ell + c2;
      double v = 0.0;
      if (!std::binary_search(vac.begin(), vac.end(), cell)) {
        const double u2 = static_cast<double>(j2 % ppc) / ppc - 0.5;
        v = -amp * std::exp(-(u1 * u1 + u2 * u2) * inv2s2);
      }
      field.values[grid.index(j1, j2)] = v;
    }
  }
  return field;
}

}  // namespace pomm
