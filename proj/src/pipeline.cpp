#include "symtaper/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>

#include "symtaper/error.hpp"
#include "symtaper/gf2.hpp"
#include "symtaper/report.hpp"
#include "symtaper/spectrum.hpp"

namespace symtaper {

namespace {

// Re-throws library errors with the stage name prepended, keeping the type.
template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const UsageError& e) {
    throw UsageError(std::string(name) + ": " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(std::string(name) + ": " + e.what());
  } catch (const InvarianceError& e) {
    throw InvarianceError(std::string(name) + ": " + e.what());
  } catch (const InvariantBreach& e) {
    throw InvariantBreach(std::string(name) + ": " + e.what());
  } catch (const SizeLimitError& e) {
    throw SizeLimitError(std::string(name) + ": " + e.what());
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(std::string(name) + ": " + e.what(), e.residual());
  } catch (const PreconditionError& e) {
    throw PreconditionError(std::string(name) + ": " + e.what());
  }
}

bool same_bits(const PauliString& a, const PauliString& b) {
  return a.x_bits() == b.x_bits() && a.z_bits() == b.z_bits();
}

std::size_t transposition_count(const SignedPermutation& r) {
  std::size_t moved = 0, cycles = 0;
  std::vector<bool> seen(r.size(), false);
  for (std::size_t c = 0; c < r.size(); ++c) {
    if (seen[c] || r.perm()[c] == c) continue;
    ++cycles;
    for (std::size_t p = c; !seen[p]; p = r.perm()[p]) {
      seen[p] = true;
      ++moved;
    }
  }
  return moved - cycles;
}

std::vector<std::size_t> range(std::size_t from, std::size_t to) {
  std::vector<std::size_t> v(to - from);
  std::iota(v.begin(), v.end(), from);
  return v;
}

std::vector<PauliString> commuting_kernel(const PauliSum& h) {
  return gf2::commuting_generators(gf2::find_symmetry_generators(h), h.n_qubits());
}

std::string fixed12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

void RunConfig::validate() const {
  if (fcidump.empty()) throw UsageError("--fcidump is required");
  if (!auto_z2 && symmetries.empty())
    throw UsageError("nothing to do: kernel search is off and no --symmetries file was given");
  if (!(tol_invariance > 0.0)) throw UsageError("--tol-invariance must be positive");
  if (!(tol_drop > 0.0)) throw UsageError("--tol-drop must be positive");
}

PipelineResult run_pipeline(const RunConfig& cfg) {
  cfg.validate();
  PipelineResult r;
  r.config = cfg;
  const MappingKind kind = cfg.mapping;

  const IntegralSet ints = stage("parse", [&] { return read_fcidump(cfg.fcidump); });
  r.n_spatial = ints.n_spatial();
  r.n_alpha = ints.n_alpha();
  r.n_beta = ints.n_beta();
  r.n_qubits = ints.n_modes();
  const std::size_t m = r.n_qubits;
  if (m > kMaxQubits) throw SizeLimitError("parse: more than 128 spin orbitals");

  const PauliSum h_input = stage("map", [&] { return map_hamiltonian(ints, kind, cfg.tol_drop); });
  const auto kernel_input = stage("kernel", [&] { return commuting_kernel(h_input); });
  r.kernel_only_count = kernel_input.size();

  r.integrals = ints;
  r.hamiltonian = h_input;
  if (cfg.use_pointgroup()) {
    const SymmetryFile sf = stage("symmetries", [&] { return read_symmetry_json(cfg.symmetries); });
    if (sf.n_spatial != ints.n_spatial())
      throw ParseError("symmetries: n_spatial " + std::to_string(sf.n_spatial) + " does not match NORB " +
                       std::to_string(ints.n_spatial()));
    std::vector<SignedPermutation> ops;
    for (const auto& op : sf.operations) {
      const SignedPermutation spin = op.block_doubled();
      const auto inv = check_invariance(ints, spin, cfg.tol_invariance);
      if (!inv.invariant)
        throw InvarianceError("invariance: operation '" + op.name() + "' changes the integrals (max deviation " +
                              sci(inv.max_deviation) + " > " + sci(cfg.tol_invariance) + ")");
      OperationInfo info{op.name(), inv.max_deviation, false};
      if (transposition_count(spin) <= 6)
        info.single_pauli_image = stage("fock image", [&] { return second_quantized_permutation(spin, kind).size() == 1; });
      r.operations.push_back(info);
      ops.push_back(spin);
    }
    const auto sel = select_commuting_involutions(ops);
    for (const auto& n : sel.notes) r.notes.push_back("point group: " + n);
    for (const auto& op : sel.retained) r.retained.push_back(op.name());

    if (!sel.retained.empty()) {
      const auto diag = stage("diagonalize", [&] { return simultaneous_diagonalize(sel.retained, kind); });
      r.rotation = diag.rotation;
      r.pointgroup_symmetries = diag.symmetries;
      r.integrals = stage("rotate", [&] { return rotate_integrals(ints, diag.rotation); });
      r.hamiltonian = stage("map", [&] { return map_hamiltonian(r.integrals, kind, cfg.tol_drop); });
      for (const auto& s : r.pointgroup_symmetries)
        if (!verify_z_symmetry(r.hamiltonian, s))
          throw InvariantBreach("rotate: symmetry '" + s.name + "' does not commute with the rotated Hamiltonian");
    }
  }
  const PauliSum& h = r.hamiltonian;
  r.n_terms = h.size();

  // generators: kernel of the working Hamiltonian, then point-group strings
  std::vector<PauliString> collected;
  if (cfg.auto_z2) {
    r.kernel_generators = r.rotation ? stage("kernel", [&] { return commuting_kernel(h); }) : kernel_input;
    collected = r.kernel_generators;
  }
  for (const auto& s : r.pointgroup_symmetries) {
    bool ok = true;
    for (const auto& g : collected)
      if (!commutes(g, s.pauli)) ok = false;
    if (!ok) {
      r.notes.push_back("point group: " + s.name + " anticommutes with a kernel generator, not used");
      continue;
    }
    collected.push_back(s.pauli);
  }
  r.plan = stage("plan", [&] { return make_plan(gf2::commuting_generators(collected, m), m); });
  const auto& gens = r.plan.generators;
  const PauliSum ht = stage("transform", [&] { return build_and_apply(h, r.plan); });

  // sector
  const auto reference = select_sector(r.plan, r.integrals, kind);
  std::vector<int> sector(gens.size(), 1);
  std::vector<bool> from_ref(gens.size(), true);
  bool unknown = false;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (reference[i])
      sector[i] = *reference[i];
    else
      unknown = true;
  }
  if (cfg.sector_scan || unknown) {
    r.scan = stage("sector scan", [&] {
      return cfg.sector_scan ? sector_scan(ht, r.plan, {}, cfg.seed) : sector_scan(ht, r.plan, reference, cfg.seed);
    });
    const auto& best = r.scan->sectors[r.scan->best].sector;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (reference[i] && *reference[i] != best[i])
        r.notes.push_back("sector scan disagrees with the reference determinant on generator " + std::to_string(i + 1));
      if (!reference[i] || cfg.sector_scan) {
        from_ref[i] = reference[i].has_value() && *reference[i] == best[i];
        sector[i] = best[i];
      }
    }
    if (unknown) r.notes.push_back("some generators are not Z-type; their sectors come from the sector scan");
  }
  r.plan.sector = sector;
  r.reduced = stage("taper", [&] { return taper(ht, r.plan); });

  // labels
  const PauliString alpha = mode_parity_string(range(0, r.n_spatial), m, kind);
  const PauliString beta = mode_parity_string(range(r.n_spatial, m), m, kind);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    GeneratorInfo g{gens[i], "kernel", r.plan.qubit_choices[i], r.plan.pivot_paulis[i], sector[i], from_ref[i]};
    if (same_bits(gens[i], alpha))
      g.source = "spin-alpha parity";
    else if (same_bits(gens[i], beta))
      g.source = "spin-beta parity";
    else
      for (const auto& s : r.pointgroup_symmetries)
        if (same_bits(gens[i], s.pauli)) {
          g.source = "point group " + s.name;
          break;
        }
    if (g.source == "kernel") {
      std::vector<PauliString> named{alpha, beta};
      for (const auto& s : r.pointgroup_symmetries) named.push_back(s.pauli);
      if (gf2::in_span(gens[i], named)) g.source = "product of named symmetries";
    }
    r.generators.push_back(std::move(g));
  }
  r.spin_parity_count = static_cast<std::size_t>(gf2::in_span(alpha, gens)) + static_cast<std::size_t>(gf2::in_span(beta, gens));
  if (r.n_alpha != r.n_beta)
    r.notes.push_back("open shell (n_alpha != n_beta): reference occupation fills the lowest orbitals by index; "
                      "confirm the sector with --sector-scan");
  return r;
}

int cmd_symmetries(const RunConfig& cfg, std::ostream& out) {
  const auto r = run_pipeline(cfg);
  write_symmetry_report(r, out);
  return kExitOk;
}

int cmd_taper(const RunConfig& cfg, std::ostream& out) {
  const auto r = run_pipeline(cfg);
  write_taper_report(r, out);
  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out);
    if (!f) throw PreconditionError("cannot write '" + cfg.out + "'");
    write_pauli_sum(r.reduced, f);
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const auto r = run_pipeline(cfg);
  out << "symtaper verify\n";
  out << "fcidump: " << cfg.fcidump << "\n";
  out << "qubits: " << r.n_qubits << " -> " << r.reduced.n_qubits() << "\n";
  std::optional<double> full, tapered;
  if (r.n_qubits <= kIterativeQubitLimit) {
    const PauliSum h_input = map_hamiltonian(read_fcidump(cfg.fcidump), cfg.mapping, cfg.tol_drop);
    full = stage("verify", [&] { return min_eigenvalue(h_input, cfg.seed).min_eigenvalue; });
    out << "full minimum eigenvalue: " << fixed12(*full) << "\n";
  } else {
    out << "full minimum eigenvalue: unverifiable at desk scale (" << r.n_qubits << " qubits)\n";
  }
  if (r.reduced.n_qubits() <= kIterativeQubitLimit) {
    tapered = stage("verify", [&] { return min_eigenvalue(r.reduced, cfg.seed).min_eigenvalue; });
    out << "tapered minimum eigenvalue: " << fixed12(*tapered) << "\n";
  } else {
    out << "tapered minimum eigenvalue: unverifiable at desk scale (" << r.reduced.n_qubits() << " qubits)\n";
  }
  if (!full || !tapered) {
    out << "status: unverifiable at desk scale\n";
    return kExitOk;
  }
  const double diff = std::abs(*full - *tapered);
  out << "difference: " << sci(diff) << "\n";
  const bool ok = diff <= kVerifyTolerance;
  out << "status: " << (ok ? "ok" : "FAILED") << "\n";
  return ok ? kExitOk : kExitVerify;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const UsageError*>(&e)) return kExitUsage;
  if (dynamic_cast<const ParseError*>(&e)) return kExitParse;
  if (dynamic_cast<const InvarianceError*>(&e)) return kExitInvariance;
  return kExitInternal;
}

}  // namespace symtaper
