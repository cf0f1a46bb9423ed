#pragma once

// Point-group operations as signed permutations of atom-centred orbitals, and
// their conversion into Pauli-Z symmetries.
//
// A SignedPermutation R acts on basis vectors as R e_c = s_c e_{perm[c]}.
// Its Fock-space image R^ satisfies R^ a_p R^+ = sum_q R_pq a_q.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "symtaper/fermion_map.hpp"
#include "symtaper/integrals.hpp"
#include "symtaper/pauli.hpp"

namespace symtaper {

inline constexpr double kInvarianceTolerance = 1e-8;

class SignedPermutation {
 public:
  SignedPermutation() = default;
  /// Throws if perm is not a bijection or a sign is not +-1.
  SignedPermutation(std::vector<std::size_t> perm, std::vector<int> signs, std::string name = {});

  static SignedPermutation identity(std::size_t n);

  std::size_t size() const { return perm_.size(); }
  const std::vector<std::size_t>& perm() const { return perm_; }
  const std::vector<int>& signs() const { return signs_; }
  const std::string& name() const { return name_; }

  /// Matrix entry R_{row,col}.
  int entry(std::size_t row, std::size_t col) const { return perm_[col] == row ? signs_[col] : 0; }
  Eigen::MatrixXd matrix() const;

  SignedPermutation compose(const SignedPermutation& rhs) const;  // this * rhs
  bool is_involution() const;
  bool commutes_with(const SignedPermutation& o) const;

  /// Same action on the alpha and beta blocks of 2n spin orbitals.
  SignedPermutation block_doubled() const;

  friend bool operator==(const SignedPermutation& a, const SignedPermutation& b) {
    return a.perm_ == b.perm_ && a.signs_ == b.signs_;
  }

 private:
  std::vector<std::size_t> perm_;
  std::vector<int> signs_;
  std::string name_;
};

struct OrbitalRotation {
  Eigen::MatrixXd v;  // columns are the new orbitals in the old basis
  std::size_t size() const { return static_cast<std::size_t>(v.rows()); }
};

struct ZSymmetry {
  std::string name;
  std::vector<std::size_t> support;  // modes whose diagonalized eigenvalue is -1
  PauliString pauli;

  /// Throws if the support is empty or the string has X bits.
  static ZSymmetry make(std::string name, std::vector<std::size_t> support, std::size_t n_modes, MappingKind kind);
};

struct InvarianceResult {
  bool invariant = false;
  double max_deviation = 0.0;
};

/// Compares R^T h1 R and the relabelled two-body tensor with the originals.
InvarianceResult check_invariance(const IntegralSet& ints, const SignedPermutation& r,
                                  double tol = kInvarianceTolerance);

/// Fock-space image of R as a product of transposition operators
/// I - n_p - n_q + a+_p a_q + a+_q a_p and sign operators 1 - 2 n_p.
PauliSum second_quantized_permutation(const SignedPermutation& r, MappingKind kind = MappingKind::JordanWigner);

struct SelectionResult {
  std::vector<SignedPermutation> retained;
  std::vector<std::string> notes;  // one line per rejected candidate
};

/// Drops the identity, keeps involutions, then greedily grows a pairwise-commuting subset in input order.
SelectionResult select_commuting_involutions(const std::vector<SignedPermutation>& candidates);

struct Diagonalization {
  OrbitalRotation rotation;
  std::vector<ZSymmetry> symmetries;  // one per input operation, same order
};

/// Orthogonal V with V^T R_i V = diag(+-1) for every R_i. 2-cycles (p,q) with
/// sign s become (e_p + e_q)/sqrt2 at p (eigenvalue s) and (e_p - e_q)/sqrt2 at q.
Diagonalization simultaneous_diagonalize(const std::vector<SignedPermutation>& set,
                                         MappingKind kind = MappingKind::JordanWigner);

/// h1' = V^T h1 V and the four-index transform of h2.
IntegralSet rotate_integrals(const IntegralSet& ints, const OrbitalRotation& v);

/// True iff every term of h commutes with s.pauli.
bool verify_z_symmetry(const PauliSum& h, const ZSymmetry& s);

struct SymmetryFile {
  std::size_t n_spatial = 0;
  std::vector<SignedPermutation> operations;  // spatial orbitals
};

/// {"n_spatial": n, "operations": [{"name": str, "perm": [...], "signs": [...]}]}
SymmetryFile parse_symmetry_json(std::istream& in);
SymmetryFile read_symmetry_json(const std::string& path);

}  // namespace symtaper
