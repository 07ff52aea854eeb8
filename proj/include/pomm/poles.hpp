// poles.hpp - contour quadrature for the Fermi-operator projection
#pragma once

#include <string>
#include <vector>

#include "pomm/dense_oracle.hpp"
#include "pomm/types.hpp"

namespace pomm {

/// Spectral bracket of the occupied states: [lo, hi] encloses the first N
/// eigenvalues, mu sits in the gap, rest_lo is lambda_{N+1}.
struct SpectralWindow {
  double lo = 0.0;      // lambda_1
  double hi = 0.0;      // lambda_N
  double mu = 0.0;      // (lambda_N + lambda_{N+1}) / 2
  double rest_lo = 0.0; // lambda_{N+1}
  double rest_hi = 0.0; // lambda_n
};

SpectralWindow make_window(const SpectralData& s);

enum class ContourKind { circle, ellipse };

struct PoleSet {
  std::vector<cxd> nodes;
  std::vector<cxd> weights;
  ContourKind contour = ContourKind::ellipse;
  int p = 0;
};

/// Trapezoidal quadrature of (2 pi i)^-1 oint (z - H)^-1 dz on a contour
/// crossing the real axis at mu (right) and left of lambda_1 (left).
/// ellipse: half-height = aspect * half-width, left crossing lambda_1 - gap/2;
/// circle: through the same two crossings.
PoleSet build_poles(const SpectralWindow& w, int p,
                    ContourKind kind = ContourKind::ellipse, double aspect = 0.5);

/// max over sampled real x of |sum_j w_j/(x - z_j) - ind(x)| where ind = 1 on
/// [lo, hi] and 0 on [rest_lo, rest_hi]; endpoints are always sampled.
double indicator_error(const PoleSet& poles, const SpectralWindow& w, int samples = 2000);

/// nodes/weights as CSV: j,re_z,im_z,re_w,im_w
void write_poles_csv(const PoleSet& poles, const std::string& path);

}  // namespace pomm
