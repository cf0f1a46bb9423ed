#pragma once

// Spin-orbital one- and two-body integrals and the FCIDUMP reader/writer.
//
// Spin orbitals are BLOCKED: alpha orbitals 0..n-1, then beta n..2n-1.
// The two-body tensor is stored in physicist order for
//   H = sum_ij h_ij a+_i a_j + 1/2 sum_ijkl h_ijkl a+_i a+_j a_k a_l,
// so that h_ijkl = (il|jk) in chemist notation.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace symtaper {

class IntegralSet {
 public:
  IntegralSet() = default;
  /// Zero integrals over 2*n_spatial spin orbitals.
  IntegralSet(std::size_t n_spatial, std::size_t n_alpha, std::size_t n_beta);

  std::size_t n_spatial() const { return n_spatial_; }
  std::size_t n_modes() const { return 2 * n_spatial_; }
  std::size_t n_alpha() const { return n_alpha_; }
  std::size_t n_beta() const { return n_beta_; }
  std::size_t n_electrons() const { return n_alpha_ + n_beta_; }

  double e_core() const { return e_core_; }
  void set_e_core(double e) { e_core_ = e; }

  double h1(std::size_t i, std::size_t j) const { return h1_[i * n_modes() + j]; }
  double& h1(std::size_t i, std::size_t j) { return h1_[i * n_modes() + j]; }
  double h2(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const { return h2_[index4(i, j, k, l)]; }
  double& h2(std::size_t i, std::size_t j, std::size_t k, std::size_t l) { return h2_[index4(i, j, k, l)]; }

  const std::vector<double>& h1_data() const { return h1_; }
  const std::vector<double>& h2_data() const { return h2_; }

  /// Spatial-orbital view: (pq|rs) in chemist notation, taken from the alpha block.
  double chemist(std::size_t p, std::size_t q, std::size_t r, std::size_t s) const {
    return h2(p, r, s, q);
  }

  /// Fills every spin combination of the spatial integral (pq|rs).
  void set_spatial_two_body(std::size_t p, std::size_t q, std::size_t r, std::size_t s, double value);
  /// Fills both spin blocks of the spatial one-body integral h_pq (and h_qp).
  void set_spatial_one_body(std::size_t p, std::size_t q, double value);

  /// Largest violation of h1 symmetry, h2 Hermiticity (h_ijkl = h_lkji) and
  /// spin-block structure.
  double max_structure_violation() const;

 private:
  std::size_t index4(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    const std::size_t m = n_modes();
    return ((i * m + j) * m + k) * m + l;
  }

  std::size_t n_spatial_ = 0;
  std::size_t n_alpha_ = 0;
  std::size_t n_beta_ = 0;
  double e_core_ = 0.0;
  std::vector<double> h1_;
  std::vector<double> h2_;
};

/// Molpro-style FCIDUMP: `&FCI NORB=..,NELEC=..,MS2=.. &END` followed by
/// `value i j k l` lines with 1-based spatial indices in chemist notation.
/// Missing permutation partners of (ij|kl) are filled; explicit duplicates that
/// disagree by more than 1e-10 are rejected.
IntegralSet parse_fcidump(std::istream& in);
IntegralSet read_fcidump(const std::string& path);

/// Writes the spatial integrals (alpha block) with 8-fold compression.
void write_fcidump(const IntegralSet& ints, std::ostream& out, double tol = 1e-14);

struct CarDiagnostics {
  std::size_t modes_checked = 0;
  /// max |{a_i, a_j}| and max |{a_i, a+_j} - delta_ij I| over all i, j
  double max_deviation = 0.0;
};

/// Builds the Jordan-Wigner images of a_i, a+_j for the first min(M, 6) modes
/// as dense matrices and checks the canonical anticommutation relations.
CarDiagnostics hamiltonian_action_check(const IntegralSet& ints);

}  // namespace symtaper
