#pragma once

// Data-parallel inner loops with a portable scalar reference and optional
// SIMD variants. The active table is chosen once at first use from the CPU's
// capabilities; SYMTAPER_SIMD=scalar|avx2 in the environment overrides it.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace symtaper::simd {

using cplx = std::complex<double>;

struct KernelTable {
  const char* name;

  /// y[j] += sum_t (re[t] + i im[t]) * (-1)^{popcount(z[t] & j)} * x[j ^ xmask]
  /// for j in [0, dim). dim is a power of two.
  void (*pauli_group_apply)(std::uint64_t xmask, const std::uint64_t* z, const double* re, const double* im,
                            std::size_t n_terms, const cplx* x, cplx* y, std::size_t dim);

  /// sum_j conj(a[j]) * b[j]
  cplx (*zdotc)(const cplx* a, const cplx* b, std::size_t n);

  /// y += alpha * x
  void (*zaxpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);

  /// dst ^= src over n words
  void (*xor_words)(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
};

const KernelTable& scalar_kernels();
/// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels();
/// Every table usable on this machine, scalar first.
std::vector<const KernelTable*> available_kernels();
const KernelTable& active_kernels();
/// Forces a table by name ("scalar", "avx2"); returns false if unavailable.
bool select_kernels(std::string_view name);

}  // namespace symtaper::simd
