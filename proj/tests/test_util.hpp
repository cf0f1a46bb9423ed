#pragma once

// Independent dense oracles shared by the test binaries. Nothing here calls
// into the library's own dense path, so comparisons are genuine cross-checks.

#include <algorithm>
#include <array>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "symtaper/integrals.hpp"
#include "symtaper/pauli.hpp"
#include "symtaper/pointgroup.hpp"

namespace testutil {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline const std::string kDataDir = SYMTAPER_TEST_DATA;

inline std::string data(const std::string& name) { return kDataDir + "/" + name; }

inline Mat single_qubit(char op) {
  Mat m(2, 2);
  switch (op) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::runtime_error("bad op");
  }
  return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Basis index bit q is qubit q, so qubit 0 is the last Kronecker factor.
inline Mat label_matrix(const std::string& label) {
  Mat m = Mat::Identity(1, 1);
  for (std::size_t q = label.size(); q-- > 0;) m = kron(m, single_qubit(label[q]));
  return m;
}

inline Mat string_matrix(const symtaper::PauliString& p) {
  return p.label_factor() * label_matrix(p.label());
}

inline Mat sum_matrix(const symtaper::PauliSum& h) {
  const Eigen::Index dim = Eigen::Index{1} << h.n_qubits();
  Mat m = Mat::Zero(dim, dim);
  for (const auto& t : h) m += t.coeff * string_matrix(t.op);
  return m;
}

inline std::vector<double> eigenvalues(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(v.begin(), v.end());
  return v;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return 1e300;
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

// Jordan-Wigner ladder operators from Kronecker products; occupied = |1>.
inline Mat annihilator(std::size_t p, std::size_t n) {
  Mat lower(2, 2);
  lower << 0, 1, 0, 0;  // |1> -> |0>
  Mat m = Mat::Identity(1, 1);
  for (std::size_t q = n; q-- > 0;) {
    if (q == p)
      m = kron(m, lower);
    else if (q < p)
      m = kron(m, single_qubit('Z'));
    else
      m = kron(m, single_qubit('I'));
  }
  return m;
}

// Hamiltonian assembled directly from the second-quantized definition.
inline Mat fermionic_hamiltonian(const symtaper::IntegralSet& ints) {
  const std::size_t m = ints.n_modes();
  std::vector<Mat> a(m), ad(m);
  for (std::size_t p = 0; p < m; ++p) {
    a[p] = annihilator(p, m);
    ad[p] = a[p].adjoint();
  }
  const Eigen::Index dim = Eigen::Index{1} << m;
  Mat h = ints.e_core() * Mat::Identity(dim, dim);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (ints.h1(i, j) != 0.0) h += ints.h1(i, j) * ad[i] * a[j];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const Mat adij = ad[i] * ad[j];
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l)
          if (ints.h2(i, j, k, l) != 0.0) h += 0.5 * ints.h2(i, j, k, l) * adij * a[k] * a[l];
    }
  return h;
}

inline symtaper::PauliString random_string(std::size_t n, std::mt19937_64& rng) {
  std::string label(n, 'I');
  std::uniform_int_distribution<int> d(0, 3);
  for (auto& c : label) c = "IXYZ"[d(rng)];
  return symtaper::PauliString::from_label(label);
}

inline symtaper::PauliSum random_hermitian(std::size_t n, std::size_t terms, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  symtaper::PauliSumBuilder b(n);
  for (std::size_t t = 0; t < terms; ++t) b.add(random_string(n, rng), g(rng));
  return b.build();
}

// Random real spin-conserving integrals with the full 8-fold symmetry of (pq|rs).
inline symtaper::IntegralSet random_integrals(std::size_t n_spatial, std::size_t na, std::size_t nb, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  symtaper::IntegralSet ints(n_spatial, na, nb);
  ints.set_e_core(g(rng));
  for (std::size_t p = 0; p < n_spatial; ++p)
    for (std::size_t q = p; q < n_spatial; ++q) ints.set_spatial_one_body(p, q, g(rng));
  for (std::size_t p = 0; p < n_spatial; ++p)
    for (std::size_t q = 0; q <= p; ++q)
      for (std::size_t r = 0; r < n_spatial; ++r)
        for (std::size_t s = 0; s <= r; ++s) {
          if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + s) continue;
          const double v = 0.3 * g(rng);
          for (auto [a, b, c, d] : {std::array{p, q, r, s}, std::array{q, p, r, s}, std::array{p, q, s, r},
                                    std::array{q, p, s, r}, std::array{r, s, p, q}, std::array{s, r, p, q},
                                    std::array{r, s, q, p}, std::array{s, r, q, p}})
            ints.set_spatial_two_body(a, b, c, d, v);
        }
  return ints;
}

// Integrals relabelled by R: h1' = R^T h1 R and likewise on every index of h2.
inline symtaper::IntegralSet transformed(const symtaper::IntegralSet& ints, const symtaper::SignedPermutation& r) {
  symtaper::IntegralSet out(ints.n_spatial(), ints.n_alpha(), ints.n_beta());
  out.set_e_core(ints.e_core());
  const std::size_t m = ints.n_modes();
  const Eigen::MatrixXd R = r.matrix();
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      double s = 0;
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) s += R(Eigen::Index(i), Eigen::Index(a)) * ints.h1(i, j) * R(Eigen::Index(j), Eigen::Index(b));
      out.h1(a, b) = s;
    }
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < m; ++c)
        for (std::size_t d = 0; d < m; ++d) {
          const std::size_t i = r.perm()[a], j = r.perm()[b], k = r.perm()[c], l = r.perm()[d];
          out.h2(a, b, c, d) = r.signs()[a] * r.signs()[b] * r.signs()[c] * r.signs()[d] * ints.h2(i, j, k, l);
        }
  return out;
}

inline symtaper::SignedPermutation random_involution(std::size_t m, std::mt19937_64& rng) {
  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  std::vector<std::size_t> perm(m);
  std::vector<int> signs(m, 1);
  for (std::size_t i = 0; i < m; ++i) perm[i] = i;
  std::size_t pos = 0;
  const std::size_t cycles = rng() % (m / 2 + 1);
  for (std::size_t c = 0; c < cycles; ++c, pos += 2) {
    perm[idx[pos]] = idx[pos + 1];
    perm[idx[pos + 1]] = idx[pos];
    const int s = rng() & 1 ? 1 : -1;
    signs[idx[pos]] = signs[idx[pos + 1]] = s;
  }
  for (; pos < m; ++pos) signs[idx[pos]] = rng() & 1 ? 1 : -1;
  return symtaper::SignedPermutation(perm, signs, "R");
}

}  // namespace testutil
