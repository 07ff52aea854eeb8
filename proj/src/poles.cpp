#include "pomm/poles.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace pomm {

SpectralWindow make_window(const SpectralData& s) {
  SpectralWindow w;
  w.lo = s.lambda1();
  w.hi = s.lambdaN();
  w.mu = s.mu;
  w.rest_lo = s.lambdaN1();
  w.rest_hi = s.lambdan();
  return w;
}

PoleSet build_poles(const SpectralWindow& w, int p, ContourKind kind, double aspect) {
  if (p < 2 || p % 2 != 0) throw std::invalid_argument("build_poles: p must be even, >= 2");
  if (aspect <= 0.0) throw std::invalid_argument("build_poles: aspect must be > 0");
  const double gap = w.rest_lo - w.hi;
  const double left = w.lo - 0.5 * gap;
  if (!(w.mu > left)) throw std::invalid_argument("build_poles: empty contour");

  const double c = 0.5 * (left + w.mu);
  const double a = 0.5 * (w.mu - left);
  const double b = (kind == ContourKind::circle) ? a : aspect * a;

  PoleSet ps;
  ps.contour = kind;
  ps.p = p;
  ps.nodes.reserve(p);
  ps.weights.reserve(p);
  for (int j = 0; j < p; ++j) {
    double th = 2.0 * std::numbers::pi * (j + 0.5) / p;
    cxd z(c + a * std::cos(th), b * std::sin(th));
    cxd dz(-a * std::sin(th), b * std::cos(th));
    ps.nodes.push_back(z);
    // (2 pi i)^-1 * dz * (2 pi / p); sign gives +1 inside the contour
    ps.weights.push_back(-dz / (cxd(0.0, 1.0) * static_cast<double>(p)));
  }
  return ps;
}

namespace {

double indicator_mismatch(const PoleSet& poles, double x, double want) {
  cxd acc = 0.0;
  for (std::size_t j = 0; j < poles.nodes.size(); ++j)
    acc += poles.weights[j] / (x - poles.nodes[j]);
  return std::abs(acc - want);
}

}  // namespace

double indicator_error(const PoleSet& poles, const SpectralWindow& w, int samples) {
  if (samples < 2) throw std::invalid_argument("indicator_error: samples must be >= 2");
  double worst = 0.0;
  auto scan = [&](double lo, double hi, double want) {
    for (int i = 0; i < samples; ++i) {
      double x = lo + (hi - lo) * i / (samples - 1);
      worst = std::max(worst, indicator_mismatch(poles, x, want));
    }
  };
  scan(w.lo, w.hi, 1.0);
  scan(w.rest_lo, w.rest_hi, 0.0);
  return worst;
}

void write_poles_csv(const PoleSet& poles, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_poles_csv: cannot open " + path);
  out << "j,re_z,im_z,re_w,im_w\n";
  out.precision(17);
  for (std::size_t j = 0; j < poles.nodes.size(); ++j)
    out << j << ',' << poles.nodes[j].real() << ',' << poles.nodes[j].imag() << ','
        << poles.weights[j].real() << ',' << poles.weights[j].imag() << '\n';
}

}  // namespace pomm
