// potential.hpp - periodic Gaussian-well lattice potentials with vacancies
#pragma once

#include <cstdint>
#include <vector>

#include "pomm/grid.hpp"
#include "pomm/types.hpp"

namespace pomm {

enum class VacancyMode { none, fixed_count, fraction };

/// Parameters of the test potential: one Gaussian well
///   -well_depth * exp(-|u - u_c|^2 / (2 well_width^2))
/// per unit cell (u in cell-width units, u_c the cell center), optionally
/// with whole cells zeroed out ("vacant"), then sampled on the grid and
/// scaled by global_scale * ell^2.
struct PotentialSpec {
  double well_depth = 40.0;
  double well_width = 0.15;
  double global_scale = 1.0;
  VacancyMode vacancy_mode = VacancyMode::none;
  int fixed_count = 0;     // for VacancyMode::fixed_count
  double fraction = 0.0;   // for VacancyMode::fraction, in [0,1]
  std::uint64_t rng_seed = 0;

  void validate(int cells_per_dim) const;
};

/// Sampled real potential on the grid, natural (row-major J) order.
struct RealField {
  VecR values;
};

/// Vacant cell indices (c1*ell + c2) drawn uniformly without replacement.
std::vector<int> vacant_cells(const SpectralGrid& grid, const PotentialSpec& spec);

RealField sample_potential(const SpectralGrid& grid, const PotentialSpec& spec);

}  // namespace pomm
