#include "pomm/sparsify.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pomm {

namespace {

VecC const_symbol(const SpectralGrid& grid, double l, cxd z) {
  const double two_pi_sq = 2.0 * std::numbers::pi * std::numbers::pi;
  VecC s(grid.n);
  for (int i = 0; i < grid.n; ++i) s[i] = two_pi_sq * grid.freq_sq[i] + (l - z);
  return s;
}

}  // namespace

VecC SparsifiedSystem::apply_G(const VecC& b) const {
  VecC s = const_symbol(grid, l, z);
  VecC out = b;
  fft->forward(out);
  out.array() /= s.array();
  fft->inverse(out);
  return out;
}

VecC SparsifiedSystem::precond_apply(const VecC& b) const {
  VecC rhs = Q * apply_G(b);
  return lu->solve(rhs);
}

SparsifiedSystem build_sparsified(const SpectralGrid& grid, const VecR& potential,
                                  cxd z, int q) {
  if (potential.size() != grid.n)
    throw std::invalid_argument("build_sparsified: potential size mismatch");
  if (q < 1) throw std::invalid_argument("build_sparsified: q must be >= 1");
  const int side = grid.side;
  const int n = grid.n;
  const int w = 2 * q + 1;
  const int ns = w * w;
  if (w >= side) throw std::invalid_argument("build_sparsified: stencil wider than grid");

  SparsifiedSystem sys;
  sys.grid = grid;
  sys.fft = std::make_shared<Fourier2D>(side);
  sys.q = q;
  sys.l = potential.mean();

  // nudge z off a resonance of the constant-coefficient symbol
  sys.z = z;
  {
    VecC s = const_symbol(grid, sys.l, sys.z);
    double mn = s.array().abs().minCoeff();
    double mx = s.array().abs().maxCoeff();
    if (mn < 1e-10 * mx) sys.z += cxd(0.0, 1e-6 * mx);
  }

  // lattice Green kernel g(x) with G[x, y] = g(x - y mod side); the unitary
  // inverse transform leaves a factor sqrt(n) relative to the true kernel
  VecC g = const_symbol(grid, sys.l, sys.z);
  g = g.cwiseInverse();
  sys.fft->inverse(g);
  g /= static_cast<double>(side);

  auto wrap = [side](int m) { return ((m % side) + side) % side; };
  auto gat = [&](int d1, int d2) { return g[grid.index(wrap(d1), wrap(d2))]; };

  sys.offsets.reserve(ns);
  for (int d1 = -q; d1 <= q; ++d1)
    for (int d2 = -q; d2 <= q; ++d2) sys.offsets.push_back({d1, d2});

  // mark a(0) = stencil footprint at the origin
  std::vector<char> in_stencil(n, 0);
  for (auto [d1, d2] : sys.offsets) in_stencil[grid.index(wrap(d1), wrap(d2))] = 1;

  // rows: stencil points; columns: everything outside the footprint
  MatC a(ns, n - ns);
  int col = 0;
  for (int y1 = 0; y1 < side; ++y1)
    for (int y2 = 0; y2 < side; ++y2) {
      if (in_stencil[grid.index(y1, y2)]) continue;
      for (int i = 0; i < ns; ++i)
        a(i, col) = gat(sys.offsets[i][0] - y1, sys.offsets[i][1] - y2);
      ++col;
    }

  Eigen::JacobiSVD<MatC> svd(a, Eigen::ComputeThinU);
  sys.q_stencil = svd.matrixU().col(ns - 1);
  sys.epsilon = svd.singularValues()[ns - 1];

  sys.c_stencil.resize(ns);
  for (int j = 0; j < ns; ++j) {
    cxd acc = 0.0;
    for (int i = 0; i < ns; ++i)
      acc += std::conj(sys.q_stencil[i]) *
             gat(sys.offsets[i][0] - sys.offsets[j][0],
                 sys.offsets[i][1] - sys.offsets[j][1]);
    sys.c_stencil[j] = acc;
  }

  std::vector<Eigen::Triplet<cxd>> tp, tq;
  tp.reserve(static_cast<std::size_t>(n) * ns);
  tq.reserve(static_cast<std::size_t>(n) * ns);
  for (int j1 = 0; j1 < side; ++j1)
    for (int j2 = 0; j2 < side; ++j2) {
      const int row = grid.index(j1, j2);
      for (int i = 0; i < ns; ++i) {
        const int cidx = grid.index(wrap(j1 + sys.offsets[i][0]),
                                    wrap(j2 + sys.offsets[i][1]));
        cxd qi = std::conj(sys.q_stencil[i]);
        tq.emplace_back(row, cidx, qi);
        tp.emplace_back(row, cidx,
                        qi + sys.c_stencil[i] * (potential[cidx] - sys.l));
      }
    }
  sys.Q.resize(n, n);
  sys.Q.setFromTriplets(tq.begin(), tq.end());
  SparseC p(n, n);
  p.setFromTriplets(tp.begin(), tp.end());
  p.makeCompressed();

  sys.lu = std::make_unique<Eigen::SparseLU<SparseC, Eigen::COLAMDOrdering<int>>>();
  sys.lu->analyzePattern(p);
  sys.lu->factorize(p);
  if (sys.lu->info() != Eigen::Success)
    throw std::runtime_error("build_sparsified: sparse LU factorization failed");
  return sys;
}

}  // namespace pomm
