#pragma once

// Fermion-to-qubit mappings of the second-quantized Hamiltonian.
//
// Jordan-Wigner: a+_p = Z_0 ... Z_{p-1} (X_p - i Y_p)/2, occupied mode <-> |1>,
// so n_p = (I - Z_p)/2 and an occupied mode has Z eigenvalue -1.
// Parity: qubit q stores n_0 + ... + n_q mod 2.

#include <cstddef>
#include <string>
#include <vector>

#include "symtaper/integrals.hpp"
#include "symtaper/pauli.hpp"

namespace symtaper {

enum class MappingKind { JordanWigner, Parity };

std::string to_string(MappingKind kind);
/// "jw" / "jordan-wigner" / "parity"
MappingKind parse_mapping(const std::string& name);

PauliSum creation_image(std::size_t p, std::size_t n_modes, MappingKind kind);
PauliSum annihilation_image(std::size_t p, std::size_t n_modes, MappingKind kind);

/// Image of a+_p a_q + a+_q a_p (p != q) or a+_p a_p (p == q).
PauliSum map_excitation(std::size_t p, std::size_t q, std::size_t n_modes, MappingKind kind);

/// Qubit image of sum h_ij a+_i a_j + 1/2 sum h_ijkl a+_i a+_j a_k a_l + e_core.
PauliSum map_hamiltonian(const IntegralSet& ints, MappingKind kind, double drop_tol = kDropTolerance);

/// Image of the parity operator prod_{p in modes} (-1)^{n_p}; always Z-type.
PauliString mode_parity_string(const std::vector<std::size_t>& modes, std::size_t n_modes, MappingKind kind);

/// Computational basis state encoding the occupation vector under the mapping.
QubitMask encode_occupation(const std::vector<bool>& occupied, MappingKind kind);

/// Number operator sum_p n_p.
PauliSum number_operator(std::size_t n_modes, MappingKind kind);

}  // namespace symtaper
