#pragma once

// Clifford transformation of a qubit Hamiltonian so that each symmetry
// generator becomes a single-qubit X, followed by removal of those qubits.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "symtaper/fermion_map.hpp"
#include "symtaper/integrals.hpp"
#include "symtaper/pauli.hpp"

namespace symtaper {

inline constexpr std::size_t kSectorScanLimit = 12;

struct TaperingPlan {
  std::size_t n_qubits = 0;
  std::vector<PauliString> generators;   // tau_i
  std::vector<std::size_t> qubit_choices;  // q(i)
  std::vector<char> pivot_paulis;        // single-qubit partner of tau_i at q(i): 'X', 'Y' or 'Z'
  std::vector<int> sector;               // +-1 per generator, filled by the caller
  std::vector<std::size_t> permutation;  // qubit q -> position; tapered qubits go last, in generator order

  std::size_t n_tapered() const { return generators.size(); }
  std::size_t n_remaining() const { return n_qubits - generators.size(); }
};

/// Lowest qubit per generator (in order) where a single-qubit Pauli anticommutes
/// with tau_i and commutes with the others; X is tried before Y and Z.
/// Throws PreconditionError when no assignment exists.
std::vector<std::size_t> choose_taper_qubits(const std::vector<PauliString>& generators,
                                             std::vector<char>* pivots = nullptr);

/// Generators of the same group (up to signs) rewritten by elimination, qubit by
/// qubit, so that a single-qubit partner assignment always exists. Throws if the
/// generators are dependent.
std::vector<PauliString> reduce_for_tapering(const std::vector<PauliString>& generators,
                                             std::vector<std::size_t>* qubits = nullptr,
                                             std::vector<char>* pivots = nullptr);

/// Uses the generators as given when choose_taper_qubits succeeds on them,
/// otherwise their reduce_for_tapering form.
TaperingPlan make_plan(const std::vector<PauliString>& generators, std::size_t n_qubits);

/// Conjugates by U_i = (tau_i + sigma_i)/sqrt2 (and, for a Y or Z partner, by
/// (sigma_i + X)/sqrt2), then moves the tapered qubits to the end.
PauliSum build_and_apply(const PauliSum& h, const TaperingPlan& plan);

/// Eigenvalue of each Z-type generator on the Hartree-Fock determinant built
/// from the lowest n_alpha alpha and n_beta beta modes; nullopt otherwise.
std::vector<std::optional<int>> select_sector(const TaperingPlan& plan, const IntegralSet& ints, MappingKind kind);

/// Restricts the last n_tapered qubits of a transformed Hamiltonian to plan.sector.
PauliSum taper(const PauliSum& h_transformed, const TaperingPlan& plan);

struct SectorEnergy {
  std::vector<int> sector;
  double energy = 0.0;
};

struct ScanResult {
  std::vector<SectorEnergy> sectors;  // enumeration order: bit i of the index set means -1 for the i-th scanned generator
  std::size_t best = 0;               // index of the lowest energy (first on ties)
};

/// Minimum eigenvalue of every sector. Generators with a known eigenvalue in
/// `fixed` are held; only the rest are enumerated (at most 12).
ScanResult sector_scan(const PauliSum& h_transformed, const TaperingPlan& plan,
                       const std::vector<std::optional<int>>& fixed = {}, std::uint64_t seed = 0);

}  // namespace symtaper
