#pragma once

// Plain-text serialization: Pauli sums and run reports.

#include <iosfwd>
#include <string>

#include "symtaper/pauli.hpp"
#include "symtaper/pipeline.hpp"

namespace symtaper {

/// Round-trippable decimal (%.17g).
std::string format_number(double v);

/// `# qubits N` header, then one `<re> <im> <label>` line per term.
void write_pauli_sum(const PauliSum& h, std::ostream& out);
/// Accepts the format above; `#` starts a comment. Without a header the qubit
/// count is taken from the labels.
PauliSum read_pauli_sum(std::istream& in);

/// Symmetry section only (inputs, point-group verdicts, generators).
void write_symmetry_report(const PipelineResult& r, std::ostream& out);
/// Symmetry section, tapering plan, origin breakdown, notes and the reduced Hamiltonian.
void write_taper_report(const PipelineResult& r, std::ostream& out);

}  // namespace symtaper
