// reference.hpp - slow serial reference kernels (testing and benchmarking)
#pragma once

#include "pomm/hamiltonian.hpp"
#include "pomm/types.hpp"

namespace pomm {

/// Unitary 2D DFT by direct O(n^2) summation, one thread, no FFT library.
VecC dft_forward_ref(const SpectralGrid& grid, const VecC& x);
VecC dft_inverse_ref(const SpectralGrid& grid, const VecC& x);

/// Serial H X through the direct DFT; bit-for-bit independent of FFTW and of
/// the OpenMP column scheduling.
WaveBlock apply_hamiltonian_ref(const HamiltonianOp& h, const WaveBlock& x);

}  // namespace pomm
