#pragma once

// Linear algebra over Z2 on packed bit rows: check matrices, kernels and the
// symplectic reduction that turns a commutant basis into commuting
// symmetry generators.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "symtaper/pauli.hpp"

namespace symtaper::gf2 {

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n_bits) : n_(n_bits), words_((n_bits + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v = true);
  bool none() const;
  std::size_t count() const;
  /// Index of the lowest set bit, or size() if none.
  std::size_t first_set() const;

  BitVector& operator^=(const BitVector& o);
  /// Parity of the bitwise AND.
  bool dot(const BitVector& o) const;

  std::vector<std::uint64_t>& words() { return words_; }
  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Row-major dense bit matrix.
class BinMatrix {
 public:
  BinMatrix() = default;
  BinMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool test(std::size_t r, std::size_t c) const { return rows_data_[r].test(c); }
  void set(std::size_t r, std::size_t c, bool v = true) { rows_data_[r].set(c, v); }
  const BitVector& row(std::size_t r) const { return rows_data_[r]; }
  BitVector& row(std::size_t r) { return rows_data_[r]; }
  void append_row(BitVector row);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BitVector> rows_data_;
};

/// Reduced row-echelon form of the row space. Rows are consumed in input order,
/// pivots are the leftmost set bit; zero rows are dropped. `pivots` receives
/// the pivot column of each returned row, ascending.
std::vector<BitVector> row_reduce(std::vector<BitVector> rows, std::vector<std::size_t>* pivots = nullptr);

std::size_t rank(const BinMatrix& m);

/// E = [G_z^T | G_x^T]: row j holds (a_z | a_x) of term j.
BinMatrix build_check_matrix(const PauliSum& h);

/// Basis of {v : m v = 0} in reduced row-echelon form.
std::vector<BitVector> kernel(const BinMatrix& m);

/// Symplectic layout (a_x | a_z) of length 2n.
BitVector to_symplectic(const PauliString& p);
/// Hermitian Pauli label for a (a_x | a_z) vector.
PauliString from_symplectic(const BitVector& v, std::size_t n_qubits);
/// Symplectic form <a, b> = a_x.b_z + a_z.b_x mod 2 on (x|z) vectors.
bool symplectic_product(const BitVector& a, const BitVector& b);

/// Reduces a set of Pauli strings commuting with a Hamiltonian to an
/// independent, pairwise commuting generating set: binary Gram-Schmidt splits
/// the span into hyperbolic pairs and an isotropic part, one partner of each
/// pair is kept, and the result is brought to RREF (generators ordered by
/// pivot column, identity never emitted).
std::vector<PauliString> commuting_generators(const std::vector<PauliString>& strings, std::size_t n_qubits);

/// Generators of the Z2 symmetry group from a kernel basis of
/// build_check_matrix(h). Re-checks every generator against every term.
std::vector<PauliString> extract_generators(const std::vector<BitVector>& kernel_basis, const PauliSum& h);

/// kernel + extract_generators in one call.
std::vector<PauliString> find_symmetry_generators(const PauliSum& h);

/// Rank of the stacked symplectic rows.
std::size_t pauli_rank(const std::vector<PauliString>& strings);
/// True if p lies in the Z2 span (ignoring phases) of `basis`.
bool in_span(const PauliString& p, const std::vector<PauliString>& basis);

}  // namespace symtaper::gf2
