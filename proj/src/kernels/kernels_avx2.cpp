// AVX2/FMA variants. This translation unit is the only one compiled with
// -mavx2 -mfma; nothing here runs unless dispatch confirmed CPU support.

#include <immintrin.h>

#include <bit>

#include "symtaper/kernels.hpp"

namespace symtaper::simd {

const KernelTable& scalar_kernels();

namespace {

constexpr std::size_t kBlock = 512;  // amplitudes per coefficient block

inline __m256d swap_re_im(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

// (d_re + i d_im) * v for two interleaved complex numbers
inline __m256d cmul(__m256d d_re, __m256d d_im, __m256d v) {
  return _mm256_addsub_pd(_mm256_mul_pd(d_re, v), _mm256_mul_pd(d_im, swap_re_im(v)));
}

void pauli_group_apply_avx2(std::uint64_t xmask, const std::uint64_t* z, const double* re, const double* im,
                            std::size_t n_terms, const cplx* x, cplx* y, std::size_t dim) {
  if (dim < 4) {
    scalar_kernels().pauli_group_apply(xmask, z, re, im, n_terms, x, y, dim);
    return;
  }
  alignas(32) double d_re[kBlock];
  alignas(32) double d_im[kBlock];
  const __m256d neg = _mm256_set1_pd(-0.0);
  const std::uint64_t x_hi = xmask & ~std::uint64_t{3};
  const unsigned x_lo = static_cast<unsigned>(xmask & 3);
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);

  const std::size_t block = dim < kBlock ? dim : kBlock;
  for (std::size_t j0 = 0; j0 < dim; j0 += block) {
    for (std::size_t k = 0; k < block; k += 4) {
      _mm256_store_pd(d_re + k, _mm256_setzero_pd());
      _mm256_store_pd(d_im + k, _mm256_setzero_pd());
    }
    for (std::size_t t = 0; t < n_terms; ++t) {
      const std::uint64_t zt = z[t];
      // lane l of a quad carries (-1)^{popcount(z & l)}
      const double l1 = (zt & 1) ? -1.0 : 1.0;
      const double l2 = (zt & 2) ? -1.0 : 1.0;
      const __m256d lanes = _mm256_set_pd(l1 * l2, l2, l1, 1.0);
      const __m256d v_re = _mm256_mul_pd(_mm256_set1_pd(re[t]), lanes);
      const __m256d v_im = _mm256_mul_pd(_mm256_set1_pd(im[t]), lanes);
      const std::uint64_t z_hi = zt & ~std::uint64_t{3};
      for (std::size_t k = 0; k < block; k += 4) {
        const bool odd = std::popcount(z_hi & (j0 + k)) & 1;
        const __m256d flip = odd ? neg : _mm256_setzero_pd();
        _mm256_store_pd(d_re + k, _mm256_add_pd(_mm256_load_pd(d_re + k), _mm256_xor_pd(v_re, flip)));
        _mm256_store_pd(d_im + k, _mm256_add_pd(_mm256_load_pd(d_im + k), _mm256_xor_pd(v_im, flip)));
      }
    }
    for (std::size_t k = 0; k < block; k += 4) {
      const std::size_t j = j0 + k;
      const std::size_t src = j ^ x_hi;
      __m256d a = _mm256_loadu_pd(xd + 2 * src);      // amplitudes src, src+1
      __m256d b = _mm256_loadu_pd(xd + 2 * src + 4);  // amplitudes src+2, src+3
      if (x_lo & 2) std::swap(a, b);
      if (x_lo & 1) {
        a = _mm256_permute2f128_pd(a, a, 1);
        b = _mm256_permute2f128_pd(b, b, 1);
      }
      const __m256d dr = _mm256_load_pd(d_re + k);
      const __m256d di = _mm256_load_pd(d_im + k);
      const __m256d dr01 = _mm256_permute4x64_pd(dr, 0x50);
      const __m256d di01 = _mm256_permute4x64_pd(di, 0x50);
      const __m256d dr23 = _mm256_permute4x64_pd(dr, 0xFA);
      const __m256d di23 = _mm256_permute4x64_pd(di, 0xFA);
      _mm256_storeu_pd(yd + 2 * j, _mm256_add_pd(_mm256_loadu_pd(yd + 2 * j), cmul(dr01, di01, a)));
      _mm256_storeu_pd(yd + 2 * j + 4, _mm256_add_pd(_mm256_loadu_pd(yd + 2 * j + 4), cmul(dr23, di23, b)));
    }
  }
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

cplx zdotc_avx2(const cplx* a, const cplx* b, std::size_t n) {
  const double* ad = reinterpret_cast<const double*>(a);
  const double* bd = reinterpret_cast<const double*>(b);
  __m256d acc_re = _mm256_setzero_pd();  // a.re b.re, a.im b.im
  __m256d acc_im = _mm256_setzero_pd();  // a.re b.im, a.im b.re
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d va = _mm256_loadu_pd(ad + 2 * j);
    const __m256d vb = _mm256_loadu_pd(bd + 2 * j);
    acc_re = _mm256_fmadd_pd(va, vb, acc_re);
    acc_im = _mm256_fmadd_pd(va, swap_re_im(vb), acc_im);
  }
  alignas(32) double t[4];
  _mm256_store_pd(t, acc_im);
  cplx s{hsum(acc_re), t[0] - t[1] + t[2] - t[3]};
  for (; j < n; ++j) s += std::conj(a[j]) * b[j];
  return s;
}

void zaxpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d vx = _mm256_loadu_pd(xd + 2 * j);
    _mm256_storeu_pd(yd + 2 * j, _mm256_add_pd(_mm256_loadu_pd(yd + 2 * j), cmul(ar, ai, vx)));
  }
  for (; j < n; ++j) y[j] += alpha * x[j];
}

void xor_words_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  std::size_t w = 0;
  for (; w + 4 <= n; w += 4) {
    const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + w));
    const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + w));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + w), _mm256_xor_si256(a, b));
  }
  for (; w < n; ++w) dst[w] ^= src[w];
}

}  // namespace

const KernelTable& avx2_kernel_table() {
  static const KernelTable table{"avx2", pauli_group_apply_avx2, zdotc_avx2, zaxpy_avx2, xor_words_avx2};
  return table;
}

}  // namespace symtaper::simd
