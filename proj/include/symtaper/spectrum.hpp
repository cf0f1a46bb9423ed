#pragma once

// Small-scale eigensolvers for PauliSums. Basis index bit q is qubit q.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "symtaper/pauli.hpp"

namespace symtaper {

inline constexpr std::size_t kDenseQubitLimit = 14;
inline constexpr std::size_t kIterativeQubitLimit = 20;
inline constexpr std::size_t kMatvecCap = 2000;
inline constexpr double kResidualTolerance = 1e-9;

struct SpectrumResult {
  double min_eigenvalue = 0.0;
  std::vector<double> spectrum;  // dense path only, ascending
  std::size_t iterations = 0;    // matrix-vector products (iterative path)
  double residual = 0.0;         // ||Hx - lambda x|| for unit x
};

Eigen::MatrixXcd to_dense(const PauliSum& h);

/// Full spectrum, n_qubits <= 14.
SpectrumResult dense_spectrum(const PauliSum& h);

/// Lowest eigenvalue by restarted Lanczos, n_qubits <= 20. Deterministic in seed.
SpectrumResult min_eigenvalue_iterative(const PauliSum& h, std::uint64_t seed = 0);

/// y = H x. Both spans have length 2^n.
void apply_pauli_sum(const PauliSum& h, std::span<const std::complex<double>> x, std::span<std::complex<double>> y);

/// Dense for small systems, iterative above `dense_cutoff` qubits.
SpectrumResult min_eigenvalue(const PauliSum& h, std::uint64_t seed = 0, std::size_t dense_cutoff = 10);

}  // namespace symtaper
