#include <doctest.h>

#include "symtaper/error.hpp"
#include "symtaper/spectrum.hpp"
#include "test_util.hpp"

using namespace symtaper;
using testutil::Mat;
using testutil::sum_matrix;

namespace {

PauliSum sum(std::initializer_list<std::pair<std::string, cplx>> t) {
  std::vector<std::pair<std::string, cplx>> v(t);
  return PauliSum::from_labels(v);
}

std::vector<cplx> random_vector(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<cplx> v(dim);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

}  // namespace

TEST_CASE("dense_spectrum: examples") {
  const auto z = dense_spectrum(sum({{"Z", 1.0}}));
  CHECK(testutil::max_abs_diff(z.spectrum, {-1.0, 1.0}) < 1e-15);
  CHECK(z.min_eigenvalue == -1.0);
  const auto zz = dense_spectrum(sum({{"ZZ", 1.0}, {"XX", 0.5}}));
  CHECK(testutil::max_abs_diff(zz.spectrum, {-1.5, -0.5, 0.5, 1.5}) < 1e-14);
  const auto y = dense_spectrum(sum({{"Y", 2.0}, {"Z", 1.0}}));
  CHECK(y.min_eigenvalue == doctest::Approx(-std::sqrt(5.0)).epsilon(1e-14));
}

TEST_CASE("dense_spectrum agrees with the Kronecker oracle") {
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 10; ++rep) {
    const auto h = testutil::random_hermitian(1 + rep % 5, 12, rng);
    CHECK(testutil::max_abs_diff(dense_spectrum(h).spectrum, testutil::eigenvalues(sum_matrix(h))) < 1e-11);
  }
}

TEST_CASE("apply_pauli_sum: basis-state examples") {
  std::vector<cplx> x{1, 0}, y(2);
  apply_pauli_sum(sum({{"X", 1.0}}), x, y);
  CHECK(y[0] == cplx(0));
  CHECK(y[1] == cplx(1));
  x = {0, 1};
  apply_pauli_sum(sum({{"Z", 1.0}}), x, y);
  CHECK(y[1] == cplx(-1));
  apply_pauli_sum(sum({{"Y", 1.0}}), x, y);
  CHECK(y[0] == cplx(0, -1));
  std::vector<cplx> shorter(1);
  CHECK_THROWS_AS(apply_pauli_sum(sum({{"X", 1.0}}), x, shorter), PreconditionError);
}

TEST_CASE("apply_pauli_sum matches the dense product, is linear and Hermitian") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t n = 1 + rep % 6;
    const std::size_t dim = std::size_t{1} << n;
    const auto h = testutil::random_hermitian(n, 20, rng);
    const Mat m = sum_matrix(h);
    const auto a = random_vector(dim, rng), b = random_vector(dim, rng);
    std::vector<cplx> ha(dim), hb(dim), hab(dim), ab(dim);
    apply_pauli_sum(h, a, ha);
    apply_pauli_sum(h, b, hb);
    const cplx alpha(0.3, -1.1);
    for (std::size_t j = 0; j < dim; ++j) ab[j] = alpha * a[j] + b[j];
    apply_pauli_sum(h, ab, hab);
    double dense = 0, lin = 0;
    cplx lhs = 0, rhs = 0;
    for (std::size_t j = 0; j < dim; ++j) {
      cplx ref = 0;
      for (std::size_t k = 0; k < dim; ++k) ref += m(Eigen::Index(j), Eigen::Index(k)) * a[k];
      dense = std::max(dense, std::abs(ref - ha[j]));
      lin = std::max(lin, std::abs(hab[j] - alpha * ha[j] - hb[j]));
      lhs += std::conj(b[j]) * ha[j];
      rhs += std::conj(hb[j]) * a[j];
    }
    CHECK(dense < 1e-12);
    CHECK(lin < 1e-12);
    CHECK(std::abs(lhs - rhs) < 1e-11);
  }
}

TEST_CASE("min_eigenvalue_iterative agrees with the dense spectrum") {
  std::mt19937_64 rng(19);
  for (int rep = 0; rep < 6; ++rep) {
    const auto h = testutil::random_hermitian(8, 40, rng);
    const auto it = min_eigenvalue_iterative(h, rep);
    CHECK(std::abs(it.min_eigenvalue - dense_spectrum(h).min_eigenvalue) < 1e-9);
    CHECK(it.residual <= kResidualTolerance);
    CHECK(it.iterations <= kMatvecCap);
  }
  CHECK(min_eigenvalue_iterative(sum({{"Z", 1.0}})).min_eigenvalue == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("min_eigenvalue_iterative: degenerate ground space, determinism") {
  std::mt19937_64 rng(23);
  // XX + YY + ZZ on a pair, repeated on disjoint pairs: highly degenerate spectrum
  const auto h = sum({{"ZZII", 1.0}, {"XXII", 1.0}, {"YYII", 1.0}, {"IIZZ", 1.0}, {"IIXX", 1.0}, {"IIYY", 1.0}});
  const auto a = min_eigenvalue_iterative(h, 7), b = min_eigenvalue_iterative(h, 7);
  CHECK(a.min_eigenvalue == doctest::Approx(-6.0).epsilon(1e-12));
  CHECK(a.min_eigenvalue == b.min_eigenvalue);
  CHECK(a.iterations == b.iterations);
  const auto r = testutil::random_hermitian(11, 60, rng);
  CHECK(min_eigenvalue(r, 3).min_eigenvalue == min_eigenvalue(r, 3).min_eigenvalue);
  CHECK(std::abs(min_eigenvalue(r, 3).min_eigenvalue - dense_spectrum(r).min_eigenvalue) < 1e-9);
}

TEST_CASE("size limits") {
  CHECK_THROWS_AS(dense_spectrum(PauliSum::identity(kDenseQubitLimit + 1)), SizeLimitError);
  CHECK_THROWS_AS(min_eigenvalue_iterative(PauliSum::identity(kIterativeQubitLimit + 1)), SizeLimitError);
  CHECK_THROWS_AS(to_dense(PauliSum::identity(kDenseQubitLimit + 1)), SizeLimitError);
}
