#pragma once

// End-to-end driver: FCIDUMP (+ optional point-group operations) to a tapered
// qubit Hamiltonian, plus the three CLI commands built on it.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "symtaper/fermion_map.hpp"
#include "symtaper/integrals.hpp"
#include "symtaper/pauli.hpp"
#include "symtaper/pointgroup.hpp"
#include "symtaper/taper.hpp"

namespace symtaper {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitUsage = 2,
  kExitParse = 3,
  kExitInvariance = 4,
  kExitVerify = 5,
};

inline constexpr double kVerifyTolerance = 1e-8;

struct RunConfig {
  std::string fcidump;
  std::string symmetries;  // empty: no point-group input
  MappingKind mapping = MappingKind::JordanWigner;
  bool auto_z2 = true;
  bool sector_scan = false;
  std::string out;  // reduced Hamiltonian path for `taper`; empty: none
  std::uint64_t seed = 0;
  double tol_invariance = kInvarianceTolerance;
  double tol_drop = kDropTolerance;

  bool use_pointgroup() const { return !symmetries.empty(); }
  /// Throws UsageError.
  void validate() const;
};

struct OperationInfo {
  std::string name;
  double max_deviation = 0.0;
  bool single_pauli_image = false;  // Fock image in the input basis is one Pauli string
};

struct GeneratorInfo {
  PauliString pauli;
  std::string source;  // "spin-alpha parity", "point group <name>", "kernel", ...
  std::size_t qubit = 0;
  char partner = 'X';
  int sector = 1;
  bool sector_from_reference = true;  // false: taken from the sector scan
};

struct PipelineResult {
  RunConfig config;
  std::size_t n_spatial = 0, n_alpha = 0, n_beta = 0;
  std::size_t n_qubits = 0;
  std::size_t n_terms = 0;  // mapped Hamiltonian in the working basis

  std::vector<OperationInfo> operations;
  std::vector<std::string> retained;
  std::optional<OrbitalRotation> rotation;
  std::vector<ZSymmetry> pointgroup_symmetries;

  std::size_t kernel_only_count = 0;       // independent commuting generators of the unrotated Hamiltonian
  std::vector<PauliString> kernel_generators;  // working basis
  std::size_t spin_parity_count = 0;

  TaperingPlan plan;
  std::vector<GeneratorInfo> generators;
  std::optional<ScanResult> scan;
  std::vector<std::string> notes;

  IntegralSet integrals;  // working basis
  PauliSum hamiltonian;   // working basis, before tapering
  PauliSum reduced;
};

/// Runs every stage up to and including tapering. Exceptions carry a stage tag.
PipelineResult run_pipeline(const RunConfig& cfg);

/// Each returns an exit code and writes the report to `out`.
int cmd_symmetries(const RunConfig& cfg, std::ostream& out);
int cmd_taper(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);

/// Exit code for an exception escaping a command.
int exit_code_for(const std::exception& e);

}  // namespace symtaper
