// symtaper: symmetry detection and qubit tapering for molecular Hamiltonians.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "symtaper/error.hpp"
#include "symtaper/pipeline.hpp"

namespace st = symtaper;

namespace {

void add_common(CLI::App* cmd, st::RunConfig& cfg, std::string& mapping, bool& no_auto) {
  cmd->add_option("--fcidump", cfg.fcidump, "FCIDUMP integral file")->required();
  cmd->add_option("--symmetries", cfg.symmetries, "point-group operations (JSON)");
  cmd->add_option("--mapping", mapping, "jw or parity")
      ->default_val("jw")
      ->check(CLI::IsMember({"jw", "jordan-wigner", "parity"}));
  cmd->add_flag("--no-auto-z2", no_auto, "skip the check-matrix kernel search");
  cmd->add_flag("--sector-scan", cfg.sector_scan, "choose the sector by exhaustive scan");
  cmd->add_option("--out", cfg.out, "write the reduced Hamiltonian here");
  cmd->add_option("--seed", cfg.seed, "iterative eigensolver seed");
  cmd->add_option("--tol-invariance", cfg.tol_invariance, "max tensor deviation for a symmetry");
  cmd->add_option("--tol-drop", cfg.tol_drop, "drop Pauli coefficients below this");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Z2 symmetry detection and qubit tapering"};
  app.require_subcommand(1);
  st::RunConfig cfg;
  std::string mapping = "jw";
  bool no_auto = false;

  auto* sym = app.add_subcommand("symmetries", "report the symmetry generators");
  auto* tap = app.add_subcommand("taper", "taper the Hamiltonian and write a report");
  auto* ver = app.add_subcommand("verify", "compare full and tapered ground-state energies");
  for (auto* c : {sym, tap, ver}) add_common(c, cfg, mapping, no_auto);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return st::kExitUsage;
  }

  try {
    cfg.mapping = st::parse_mapping(mapping);
    cfg.auto_z2 = !no_auto;
    if (!cfg.out.empty() && !tap->parsed()) throw st::UsageError("--out applies to `taper` only");
    if (sym->parsed()) return st::cmd_symmetries(cfg, std::cout);
    if (tap->parsed()) return st::cmd_taper(cfg, std::cout);
    return st::cmd_verify(cfg, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "symtaper: " << e.what() << "\n";
    return st::exit_code_for(e);
  }
}
