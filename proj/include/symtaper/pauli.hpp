#pragma once

// Symplectic Pauli strings and weighted Pauli sums.
//
// A PauliString is i^phase * prod_q X_q^{x_q} * prod_q Z_q^{z_q}. The label
// alphabet {I,X,Y,Z} uses Y = i X Z, so a label with m Y's has phase m mod 4.
// Qubit 0 is the leftmost character of a label.

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "symtaper/error.hpp"

namespace symtaper {

using cplx = std::complex<double>;

inline constexpr std::size_t kMaxQubits = 128;
inline constexpr double kDropTolerance = 1e-12;

/// Fixed-capacity bit set over qubit indices.
class QubitMask {
 public:
  static constexpr std::size_t kWords = kMaxQubits / 64;

  constexpr QubitMask() = default;

  bool test(std::size_t q) const { return (words_[q >> 6] >> (q & 63)) & 1u; }
  void set(std::size_t q, bool v = true) {
    const std::uint64_t bit = std::uint64_t{1} << (q & 63);
    if (v)
      words_[q >> 6] |= bit;
    else
      words_[q >> 6] &= ~bit;
  }
  void flip(std::size_t q) { words_[q >> 6] ^= std::uint64_t{1} << (q & 63); }

  std::size_t count() const;
  bool none() const;
  bool any() const { return !none(); }

  std::uint64_t word(std::size_t w) const { return words_[w]; }
  std::uint64_t& word(std::size_t w) { return words_[w]; }
  /// Low 64 qubits; only meaningful when n_qubits <= 64.
  std::uint64_t low_word() const { return words_[0]; }

  QubitMask& operator^=(const QubitMask& o);
  QubitMask& operator&=(const QubitMask& o);
  QubitMask& operator|=(const QubitMask& o);
  friend QubitMask operator^(QubitMask a, const QubitMask& b) { return a ^= b; }
  friend QubitMask operator&(QubitMask a, const QubitMask& b) { return a &= b; }
  friend QubitMask operator|(QubitMask a, const QubitMask& b) { return a |= b; }

  friend bool operator==(const QubitMask&, const QubitMask&) = default;
  friend auto operator<=>(const QubitMask&, const QubitMask&) = default;

 private:
  std::array<std::uint64_t, kWords> words_{};
};

/// Parity of |a & b|.
bool overlap_parity(const QubitMask& a, const QubitMask& b);

class PauliString {
 public:
  PauliString() = default;
  /// Identity on n qubits.
  explicit PauliString(std::size_t n_qubits);
  PauliString(std::size_t n_qubits, const QubitMask& x, const QubitMask& z, int phase = 0);

  /// Hermitian string for a label over {I,X,Y,Z}; phase is the Y count.
  static PauliString from_label(std::string_view label);
  /// Single-qubit operator ('I','X','Y','Z') on qubit q, Hermitian.
  static PauliString single(std::size_t n_qubits, std::size_t q, char op);

  std::size_t n_qubits() const { return n_; }
  const QubitMask& x_bits() const { return x_; }
  const QubitMask& z_bits() const { return z_; }
  bool x(std::size_t q) const { return x_.test(q); }
  bool z(std::size_t q) const { return z_.test(q); }
  int phase() const { return phase_; }

  /// 'I','X','Y','Z' acting on qubit q, ignoring the global phase.
  char op(std::size_t q) const;
  std::string label() const;
  /// c such that *this == c * (Hermitian label operator).
  cplx label_factor() const;
  /// Same bits with the phase reset so the string equals its label.
  PauliString as_label() const;

  bool is_identity() const { return x_.none() && z_.none(); }
  bool is_hermitian() const;
  bool is_z_type() const { return x_.none(); }
  /// Number of qubits acted on non-trivially.
  std::size_t weight() const { return (x_ | z_).count(); }

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  friend PauliString multiply(const PauliString& a, const PauliString& b);

  std::uint32_t n_ = 0;
  std::uint8_t phase_ = 0;
  QubitMask x_;
  QubitMask z_;
};

/// Product a*b with exact quarter-phase bookkeeping.
PauliString multiply(const PauliString& a, const PauliString& b);
/// True iff the symplectic product a_x.b_z + a_z.b_x vanishes mod 2.
bool commutes(const PauliString& a, const PauliString& b);

/// Ordering on (x, z) bits only; used as the canonical term order.
struct PauliBitsLess {
  bool operator()(const PauliString& a, const PauliString& b) const;
};

struct PauliTerm {
  PauliString op;  // label form: phase equals the Y count
  cplx coeff;
};

/// Weighted sum of Pauli labels. Terms are unique, sorted by (x, z) bits and
/// never carry a coefficient below the drop tolerance. Immutable once built.
class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(std::size_t n_qubits) : n_(n_qubits) {}

  static PauliSum identity(std::size_t n_qubits, cplx coeff = 1.0);
  static PauliSum from_string(const PauliString& p, cplx coeff = 1.0);
  /// Accumulates possibly repeated, phase-carrying strings.
  static PauliSum from_terms(std::size_t n_qubits, std::span<const PauliTerm> terms,
                             double drop_tol = kDropTolerance);
  /// Builds from (label, coefficient) pairs, e.g. {{"XX", 0.5}, {"ZZ", 1.0}}.
  static PauliSum from_labels(std::span<const std::pair<std::string, cplx>> terms);

  std::size_t n_qubits() const { return n_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  /// Coefficient of the Hermitian label operator with p's bits (0 if absent).
  cplx coefficient(const PauliString& p) const;
  /// True if every folded coefficient is real within tol.
  bool is_hermitian(double tol = kDropTolerance) const;
  /// sqrt(sum |c_j|^2).
  double coefficient_norm() const;

  PauliSum scaled(cplx s, double drop_tol = kDropTolerance) const;

  friend PauliSum operator+(const PauliSum& a, const PauliSum& b);
  friend PauliSum operator-(const PauliSum& a, const PauliSum& b);
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);
  friend PauliSum operator*(cplx s, const PauliSum& a) { return a.scaled(s); }

 private:
  std::size_t n_ = 0;
  std::vector<PauliTerm> terms_;
};

/// Hash-based accumulator that produces a canonical PauliSum.
class PauliSumBuilder {
 public:
  explicit PauliSumBuilder(std::size_t n_qubits);
  ~PauliSumBuilder();
  PauliSumBuilder(PauliSumBuilder&&) noexcept;
  PauliSumBuilder& operator=(PauliSumBuilder&&) noexcept;

  std::size_t n_qubits() const { return n_; }
  void add(const PauliString& p, cplx coeff);
  void add(const PauliSum& s, cplx scale = 1.0);
  PauliSum build(double drop_tol = kDropTolerance) const;

 private:
  struct Impl;
  std::size_t n_;
  std::unique_ptr<Impl> impl_;
};

/// U h U^dagger with U = (tau + sigma)/sqrt(2); tau, sigma Hermitian and
/// mutually anticommuting.
PauliSum conjugate_by_clifford(const PauliSum& h, const PauliString& tau, const PauliString& sigma);

/// Relabels qubit q to perm[q].
PauliString apply_qubit_permutation(const PauliString& p, std::span<const std::size_t> perm);
PauliSum apply_qubit_permutation(const PauliSum& h, std::span<const std::size_t> perm);

/// Replaces X on qubit q by `eigenvalue` and removes the qubit. Throws if a
/// term acts on q with Y or Z.
PauliSum restrict_qubit(const PauliSum& h, std::size_t q, int eigenvalue);

}  // namespace symtaper
