#include <bit>

#include "symtaper/kernels.hpp"

namespace symtaper::simd {

namespace {

void pauli_group_apply_scalar(std::uint64_t xmask, const std::uint64_t* z, const double* re, const double* im,
                              std::size_t n_terms, const cplx* x, cplx* y, std::size_t dim) {
  for (std::size_t t = 0; t < n_terms; ++t) {
    const cplx c{re[t], im[t]};
    for (std::size_t j = 0; j < dim; ++j) {
      const bool odd = std::popcount(z[t] & j) & 1;
      y[j] += (odd ? -c : c) * x[j ^ xmask];
    }
  }
}

cplx zdotc_scalar(const cplx* a, const cplx* b, std::size_t n) {
  cplx s{};
  for (std::size_t j = 0; j < n; ++j) s += std::conj(a[j]) * b[j];
  return s;
}

void zaxpy_scalar(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) y[j] += alpha * x[j];
}

void xor_words_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  for (std::size_t w = 0; w < n; ++w) dst[w] ^= src[w];
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", pauli_group_apply_scalar, zdotc_scalar, zaxpy_scalar, xor_words_scalar};
  return table;
}

}  // namespace symtaper::simd
