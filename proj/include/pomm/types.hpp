// types.hpp - shared scalar/matrix aliases
#pragma once

#include <complex>
#include <Eigen/Core>

namespace pomm {

using cxd = std::complex<double>;

/// n x N block of trial orbitals; columns are orbitals.
using WaveBlock = Eigen::MatrixXcd;

using VecC = Eigen::VectorXcd;
using VecR = Eigen::VectorXd;
using MatC = Eigen::MatrixXcd;

}  // namespace pomm
