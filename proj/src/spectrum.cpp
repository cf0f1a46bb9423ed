#include "symtaper/spectrum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <random>
#include <string>

#include "symtaper/error.hpp"
#include "symtaper/kernels.hpp"

namespace symtaper {

namespace {

using simd::active_kernels;

cplx i_pow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

// Terms grouped by X mask; coefficients absorb the phase and the Z-before-X sign
// so that y[j] += c * (-1)^{z.j} * x[j ^ xmask].
class CompiledSum {
 public:
  explicit CompiledSum(const PauliSum& h) : n_(h.n_qubits()) {
    if (n_ > 63) throw SizeLimitError("state-vector methods need fewer than 64 qubits");
    std::map<std::uint64_t, Group> by_x;
    for (const auto& t : h) {
      const std::uint64_t x = t.op.x_bits().low_word(), z = t.op.z_bits().low_word();
      const int sign = std::popcount(x & z) & 1 ? -1 : 1;
      const cplx c = t.coeff * i_pow(t.op.phase()) * double(sign);
      auto& g = by_x[x];
      g.xmask = x;
      g.z.push_back(z);
      g.re.push_back(c.real());
      g.im.push_back(c.imag());
    }
    for (auto& [x, g] : by_x) groups_.push_back(std::move(g));
  }

  std::size_t dim() const { return std::size_t{1} << n_; }

  void apply(const cplx* x, cplx* y) const {
    std::fill(y, y + dim(), cplx{0, 0});
    const auto& k = active_kernels();
    for (const auto& g : groups_) k.pauli_group_apply(g.xmask, g.z.data(), g.re.data(), g.im.data(), g.z.size(), x, y, dim());
  }

 private:
  struct Group {
    std::uint64_t xmask = 0;
    std::vector<std::uint64_t> z;
    std::vector<double> re, im;
  };
  std::size_t n_;
  std::vector<Group> groups_;
};

double norm(const std::vector<cplx>& v) { return std::sqrt(active_kernels().zdotc(v.data(), v.data(), v.size()).real()); }

void scale(std::vector<cplx>& v, double s) {
  for (auto& a : v) a *= s;
}

}  // namespace

Eigen::MatrixXcd to_dense(const PauliSum& h) {
  if (h.n_qubits() > kDenseQubitLimit) throw SizeLimitError("to_dense: more than 14 qubits");
  const std::size_t dim = std::size_t{1} << h.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& t : h) {
    const std::uint64_t x = t.op.x_bits().low_word(), z = t.op.z_bits().low_word();
    const cplx c = t.coeff * i_pow(t.op.phase());
    // P|j> = i^phase (-1)^{z.j} |j ^ x>
    for (std::size_t j = 0; j < dim; ++j) {
      const double s = std::popcount(z & j) & 1 ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(j ^ x), static_cast<Eigen::Index>(j)) += s * c;
    }
  }
  return m;
}

SpectrumResult dense_spectrum(const PauliSum& h) {
  if (h.n_qubits() > kDenseQubitLimit)
    throw SizeLimitError("dense_spectrum: " + std::to_string(h.n_qubits()) + " qubits exceeds the limit of 14");
  const Eigen::MatrixXcd m = to_dense(h);
  SpectrumResult r;
  Eigen::VectorXd ev;
  if (m.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.real(), Eigen::EigenvaluesOnly);
    ev = es.eigenvalues();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    ev = es.eigenvalues();
  }
  r.spectrum.assign(ev.data(), ev.data() + ev.size());
  r.min_eigenvalue = r.spectrum.front();
  return r;
}

void apply_pauli_sum(const PauliSum& h, std::span<const cplx> x, std::span<cplx> y) {
  if (h.n_qubits() > 63) throw SizeLimitError("apply_pauli_sum: too many qubits");
  const std::size_t dim = std::size_t{1} << h.n_qubits();
  if (x.size() != dim || y.size() != dim)
    throw PreconditionError("apply_pauli_sum: vector length must be 2^" + std::to_string(h.n_qubits()));
  CompiledSum(h).apply(x.data(), y.data());
}

SpectrumResult min_eigenvalue_iterative(const PauliSum& h, std::uint64_t seed) {
  const std::size_t n = h.n_qubits();
  if (n > kIterativeQubitLimit)
    throw SizeLimitError("min_eigenvalue_iterative: " + std::to_string(n) + " qubits exceeds the limit of 20");
  const CompiledSum op(h);
  const std::size_t dim = op.dim();
  const std::size_t kdim = std::min<std::size_t>(n <= 16 ? 60 : 24, dim);
  const auto& k = active_kernels();

  std::vector<cplx> x(dim);
  {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& a : x) {
      const double re = u(rng);
      a = {re, u(rng)};
    }
    scale(x, 1.0 / norm(x));
  }

  std::vector<cplx> hx(dim);
  op.apply(x.data(), hx.data());
  std::size_t matvecs = 1;
  double residual = 0.0;

  std::vector<std::vector<cplx>> basis;
  std::vector<double> alpha, beta;
  for (;;) {
    basis.clear();
    alpha.clear();
    beta.clear();
    basis.push_back(x);
    std::vector<cplx> w = hx;
    double hscale = 0.0;
    for (;;) {
      const auto& v = basis.back();
      alpha.push_back(k.zdotc(v.data(), w.data(), dim).real());
      // full reorthogonalization, two passes
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) k.zaxpy(-k.zdotc(b.data(), w.data(), dim), b.data(), w.data(), dim);
      const double b = norm(w);
      hscale = std::max({hscale, std::abs(alpha.back()), b});
      if (basis.size() == kdim || matvecs >= kMatvecCap || b <= 1e-12 * std::max(1.0, hscale)) break;
      beta.push_back(b);
      scale(w, 1.0 / b);
      basis.push_back(std::move(w));
      w.assign(dim, cplx{0, 0});
      op.apply(basis.back().data(), w.data());
      ++matvecs;
    }

    const auto m = static_cast<Eigen::Index>(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) t(i, i) = alpha[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 0; i + 1 < m; ++i) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    const Eigen::VectorXd s = es.eigenvectors().col(0);

    std::fill(x.begin(), x.end(), cplx{0, 0});
    for (Eigen::Index i = 0; i < m; ++i) k.zaxpy(s(i), basis[static_cast<std::size_t>(i)].data(), x.data(), dim);
    scale(x, 1.0 / norm(x));
    op.apply(x.data(), hx.data());
    ++matvecs;

    const double lambda = k.zdotc(x.data(), hx.data(), dim).real();
    std::vector<cplx> r = hx;
    k.zaxpy(-lambda, x.data(), r.data(), dim);
    residual = norm(r);
    if (residual <= kResidualTolerance) {
      SpectrumResult out;
      out.min_eigenvalue = lambda;
      out.iterations = matvecs;
      out.residual = residual;
      return out;
    }
    if (matvecs >= kMatvecCap)
      throw ConvergenceError("min_eigenvalue_iterative: no convergence after " + std::to_string(matvecs) +
                                 " matrix-vector products (residual " + std::to_string(residual) + ")",
                             residual);
  }
}

SpectrumResult min_eigenvalue(const PauliSum& h, std::uint64_t seed, std::size_t dense_cutoff) {
  if (h.n_qubits() <= std::min(dense_cutoff, kDenseQubitLimit)) return dense_spectrum(h);
  return min_eigenvalue_iterative(h, seed);
}

}  // namespace symtaper
