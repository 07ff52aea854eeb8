// grid.hpp - periodic 2D pseudospectral grid and its frequency set
#pragma once

#include <utility>

#include "pomm/types.hpp"

namespace pomm {

/// Periodic unit-square grid of side = cells_per_dim * pts_per_cell points
/// per dimension. Real-space points are j/side for j in J = [0,side)^2
/// (row-major), frequencies are the centered integer set
/// K = {(k1,k2) : -side/2 <= ki < side/2} stored in FFT-natural order.
struct SpectralGrid {
  int cells_per_dim = 0;
  int pts_per_cell = 8;
  int side = 0;
  int n = 0;
  /// |k|^2 (integer frequency magnitude squared) per grid index, natural order.
  VecR freq_sq;

  /// Centered frequency for FFT-natural index m in [0, side).
  int freq_component(int m) const { return m < side / 2 ? m : m - side; }
  /// Flat index of real-space point (j1, j2).
  int index(int j1, int j2) const { return j1 * side + j2; }
  /// Frequency pair of flat index.
  std::pair<int, int> freq_of(int idx) const {
    return {freq_component(idx / side), freq_component(idx % side)};
  }
};

/// Builds the grid for an ell x ell cell lattice. Rejects odd sides.
SpectralGrid build_grid(int cells_per_dim, int pts_per_cell = 8);

}  // namespace pomm
