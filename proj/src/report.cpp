#include "symtaper/report.hpp"

#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "symtaper/error.hpp"

namespace symtaper {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string join_modes(const std::vector<std::size_t>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

std::string sign_str(int s) { return s < 0 ? "-1" : "+1"; }

void write_header(const PipelineResult& r, std::ostream& out) {
  const auto& c = r.config;
  out << "fcidump: " << c.fcidump << "\n";
  out << "symmetries: " << (c.symmetries.empty() ? "none" : c.symmetries) << "\n";
  out << "mapping: " << to_string(c.mapping) << "\n";
  out << "kernel search: " << (c.auto_z2 ? "on" : "off") << "\n";
  out << "conventions: spin orbitals blocked (alpha 0.." << r.n_spatial - 1 << ", beta " << r.n_spatial << ".."
      << 2 * r.n_spatial - 1 << "); qubit 0 is the leftmost label character; occupied mode has Z eigenvalue -1\n";
  out << "orbitals: " << r.n_spatial << " spatial, " << r.n_qubits << " spin orbitals\n";
  out << "electrons: " << r.n_alpha << " alpha, " << r.n_beta << " beta\n";
  out << "hamiltonian terms: " << r.n_terms << "\n";
}

void write_pointgroup(const PipelineResult& r, std::ostream& out) {
  if (r.operations.empty()) return;
  out << "\n[point group]\n";
  for (const auto& op : r.operations)
    out << "operation " << op.name << ": invariant, max deviation " << fmt("%.3e", op.max_deviation)
        << ", Fock image " << (op.single_pauli_image ? "is a single Pauli string" : "is not a Pauli string") << "\n";
  out << "retained commuting involutions:";
  for (const auto& n : r.retained) out << " " << n;
  out << "\n";
  if (r.rotation) {
    const std::size_t n = r.n_spatial;
    out << "orbital rotation V (spatial block, columns are new orbitals):\n";
    for (std::size_t i = 0; i < n; ++i) {
      out << " ";
      for (std::size_t j = 0; j < n; ++j)
        out << " " << fmt("%+.6f", r.rotation->v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
      out << "\n";
    }
  }
  out << "Z symmetries:\n";
  for (std::size_t i = 0; i < r.pointgroup_symmetries.size(); ++i) {
    const auto& s = r.pointgroup_symmetries[i];
    bool extra = false;
    for (const auto& op : r.operations)
      if (op.name == s.name) extra = !op.single_pauli_image;
    out << "  " << s.name << " support " << join_modes(s.support) << " " << s.pauli.label()
        << (extra ? "  [beyond kernel search in the input basis]" : "") << "\n";
  }
}

void write_generators(const PipelineResult& r, std::ostream& out, bool with_plan) {
  out << "\n[kernel generators]\n";
  if (!r.config.auto_z2) out << "(kernel search off)\n";
  for (const auto& g : r.kernel_generators) out << "  " << g.label() << "\n";
  out << "\n[generators]\n";
  if (with_plan)
    out << "  i  q(i)  partner  sector  source  generator\n";
  else
    out << "  i  source  generator\n";
  for (std::size_t i = 0; i < r.generators.size(); ++i) {
    const auto& g = r.generators[i];
    out << "  " << i + 1;
    if (with_plan)
      out << "  " << g.qubit + 1 << "  " << g.partner << "  " << sign_str(g.sector)
          << (g.sector_from_reference ? "" : "*");
    out << "  " << g.source << "  " << g.pauli.label() << "\n";
  }
}

void write_notes(const PipelineResult& r, std::ostream& out) {
  out << "\n[notes]\n";
  if (r.notes.empty()) out << "none\n";
  for (const auto& n : r.notes) out << "- " << n << "\n";
}

}  // namespace

std::string format_number(double v) { return fmt("%.17g", v); }

void write_pauli_sum(const PauliSum& h, std::ostream& out) {
  out << "# qubits " << h.n_qubits() << "\n";
  for (const auto& t : h) {
    const PauliString l = t.op.as_label();
    const cplx c = t.coeff * t.op.label_factor();
    out << format_number(c.real()) << " " << format_number(c.imag()) << " " << l.label() << "\n";
  }
}

PauliSum read_pauli_sum(std::istream& in) {
  std::string line;
  std::optional<std::size_t> n;
  std::vector<std::pair<std::string, cplx>> rows;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first[0] == '#') {
      std::string key;
      std::size_t q;
      if (ls >> key >> q && key == "qubits") n = q;
      continue;
    }
    double re, im;
    std::string label;
    try {
      re = std::stod(first);
    } catch (const std::exception&) {
      throw ParseError("pauli sum line " + std::to_string(lineno) + ": bad real part");
    }
    if (!(ls >> im)) throw ParseError("pauli sum line " + std::to_string(lineno) + ": missing imaginary part");
    ls >> label;
    std::string extra;
    if (ls >> extra) throw ParseError("pauli sum line " + std::to_string(lineno) + ": trailing text");
    if (!n) n = label.size();
    if (label.size() != *n)
      throw ParseError("pauli sum line " + std::to_string(lineno) + ": label length " + std::to_string(label.size()) +
                       " != " + std::to_string(*n));
    rows.emplace_back(label, cplx{re, im});
  }
  if (!n) throw ParseError("pauli sum: empty input");
  PauliSumBuilder b(*n);
  for (const auto& [label, c] : rows) {
    PauliString p(*n);
    try {
      if (*n > 0) p = PauliString::from_label(label);
    } catch (const Error& e) {
      throw ParseError(std::string("pauli sum: ") + e.what());
    }
    b.add(p, c);
  }
  return b.build(0.0);
}

void write_symmetry_report(const PipelineResult& r, std::ostream& out) {
  out << "symtaper symmetries\n";
  write_header(r, out);
  write_pointgroup(r, out);
  write_generators(r, out, false);
  out << "\n[summary]\n";
  out << "independent commuting generators: " << r.generators.size() << "\n";
  out << "kernel search on the input basis: " << r.kernel_only_count << "\n";
  write_notes(r, out);
}

void write_taper_report(const PipelineResult& r, std::ostream& out) {
  out << "symtaper taper\n";
  write_header(r, out);
  write_pointgroup(r, out);
  write_generators(r, out, true);
  if (r.scan) {
    out << "\n[sector scan]\n";
    for (std::size_t i = 0; i < r.scan->sectors.size(); ++i) {
      const auto& s = r.scan->sectors[i];
      out << " ";
      for (int v : s.sector) out << " " << sign_str(v);
      out << "  " << fmt("%.12f", s.energy) << (i == r.scan->best ? "  <- lowest" : "") << "\n";
    }
  }
  const std::size_t k = r.plan.n_tapered();
  out << "\n[qubits]\n";
  out << "before: " << r.n_qubits << "\n";
  out << "tapered: " << k << "\n";
  out << "after: " << r.n_qubits - k << "\n";
  out << "\n[origin of tapered qubits]\n";
  out << "spin parity: " << r.spin_parity_count << "\n";
  out << "kernel search on the input basis: " << r.kernel_only_count << "\n";
  if (r.config.auto_z2)
    out << "point group beyond kernel search: " << static_cast<long>(k) - static_cast<long>(r.kernel_only_count) << "\n";
  write_notes(r, out);
  out << "\n[reduced hamiltonian]\n";
  write_pauli_sum(r.reduced, out);
}

}  // namespace symtaper
