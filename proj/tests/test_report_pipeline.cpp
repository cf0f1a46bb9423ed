#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "symtaper/error.hpp"
#include "symtaper/pipeline.hpp"
#include "symtaper/report.hpp"
#include "test_util.hpp"

using namespace symtaper;
namespace fs = std::filesystem;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  const auto p = fs::temp_directory_path() / ("symtaper_test_" + name);
  std::ofstream(p) << text;
  return p.string();
}

RunConfig config(const std::string& mol, bool pg = true) {
  RunConfig c;
  c.fcidump = testutil::data(mol + ".fcidump");
  if (pg) c.symmetries = testutil::data(mol + ".sym.json");
  return c;
}

int run(int (*cmd)(const RunConfig&, std::ostream&), const RunConfig& cfg, std::string* text = nullptr) {
  std::ostringstream out;
  int code;
  try {
    cfg.validate();
    code = cmd(cfg, out);
  } catch (const std::exception& e) {
    code = exit_code_for(e);
  }
  if (text) *text = out.str();
  return code;
}

}  // namespace

TEST_CASE("format_number round trips doubles") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int i = 0; i < 100; ++i) {
    const double v = g(rng) * std::pow(10.0, int(rng() % 20) - 10);
    CHECK(std::stod(format_number(v)) == v);
  }
}

TEST_CASE("Pauli sum file round trip and errors") {
  std::mt19937_64 rng(2);
  const auto h = testutil::random_hermitian(5, 30, rng);
  std::stringstream buf;
  write_pauli_sum(h, buf);
  const auto back = read_pauli_sum(buf);
  CHECK(back.n_qubits() == 5);
  CHECK((back - h).empty());
  REQUIRE(back.size() == h.size());
  for (const auto& t : h) CHECK(back.coefficient(t.op) == t.coeff);

  std::istringstream nohdr("# comment\n1.5 0 XZ\n-2 0.5 IY\n");
  const auto p = read_pauli_sum(nohdr);
  CHECK(p.n_qubits() == 2);
  CHECK(p.coefficient(PauliString::from_label("IY")) == cplx(-2, 0.5));

  for (const char* bad : {"1.0 0 XQ\n", "1.0 XZ\n", "# qubits 3\n1.0 0 XZ\n", "1.0 0 X\n1.0 0 XX\n", "abc 0 X\n"}) {
    std::istringstream in(bad);
    CHECK_THROWS_AS(read_pauli_sum(in), ParseError);
  }
}

TEST_CASE("reports are deterministic") {
  for (const char* mol : {"h2", "lih"}) {
    std::string a, b;
    CHECK(run(cmd_taper, config(mol), &a) == kExitOk);
    CHECK(run(cmd_taper, config(mol), &b) == kExitOk);
    CHECK(a == b);
    CHECK(a.find("[reduced hamiltonian]") != std::string::npos);
  }
}

TEST_CASE("symmetries report contents for H2") {
  std::string text;
  REQUIRE(run(cmd_symmetries, config("h2"), &text) == kExitOk);
  CHECK(text.find("orbitals: 2 spatial, 4 spin orbitals") != std::string::npos);
  CHECK(text.find("electrons: 1 alpha, 1 beta") != std::string::npos);
  CHECK(text.find("[generators]") != std::string::npos);
  CHECK(text.find("spin-beta parity") != std::string::npos);
  CHECK(text.find("independent commuting generators: 3") != std::string::npos);
  CHECK(text.find("IZIZ") != std::string::npos);
}

TEST_CASE("taper writes the reduced Hamiltonian file") {
  auto cfg = config("h2");
  cfg.out = (fs::temp_directory_path() / "symtaper_test_h2_reduced.txt").string();
  REQUIRE(run(cmd_taper, cfg) == kExitOk);
  std::ifstream f(cfg.out);
  const auto h = read_pauli_sum(f);
  CHECK(h.n_qubits() == 1);
  const auto r = run_pipeline(config("h2"));
  CHECK((h - r.reduced).empty());
}

TEST_CASE("verify passes on the small fixtures") {
  for (const char* mol : {"h2", "lih"}) {
    std::string text;
    CHECK(run(cmd_verify, config(mol), &text) == kExitOk);
    CHECK(text.find("status: ok") != std::string::npos);
  }
  std::string text;
  CHECK(run(cmd_verify, config("h2", false), &text) == kExitOk);
  CHECK(text.find("qubits: 4 -> 2") != std::string::npos);
}

TEST_CASE("exit codes") {
  RunConfig none;
  CHECK(run(cmd_symmetries, none) == kExitUsage);
  auto no_input = config("h2", false);
  no_input.auto_z2 = false;
  CHECK(run(cmd_symmetries, no_input) == kExitUsage);
  auto neg = config("h2");
  neg.tol_drop = -1;
  CHECK(run(cmd_symmetries, neg) == kExitUsage);

  auto missing = config("h2");
  missing.fcidump = "/nonexistent/h2.fcidump";
  CHECK(run(cmd_symmetries, missing) == kExitParse);
  auto broken = config("h2");
  broken.fcidump = write_temp("broken.fcidump", "&FCI NORB=2 &END\n");
  CHECK(run(cmd_taper, broken) == kExitParse);
  auto badjson = config("h2");
  badjson.symmetries = write_temp("bad.json", "{\"n_spatial\": 3, \"operations\": []}");
  CHECK(run(cmd_taper, badjson) == kExitParse);

  auto notsym = config("h2");
  notsym.symmetries =
      write_temp("flip.json", R"({"n_spatial": 2, "operations": [{"name": "flip", "perm": [0, 1], "signs": [1, -1]}]})");
  std::string text;
  CHECK(run(cmd_symmetries, notsym, &text) == kExitInvariance);
  try {
    run_pipeline(notsym);
    FAIL("expected InvarianceError");
  } catch (const InvarianceError& e) {
    CHECK(std::string(e.what()).find("flip") != std::string::npos);
  }
  CHECK(exit_code_for(InvariantBreach("x")) == kExitInternal);
  CHECK(exit_code_for(std::runtime_error("x")) == kExitInternal);
}

TEST_CASE("report with no generators is well formed") {
  PipelineResult r;
  r.config.fcidump = "none.fcidump";
  r.n_spatial = 1;
  r.n_alpha = 1;
  r.n_qubits = 2;
  const std::vector<std::pair<std::string, cplx>> terms{{"XY", 0.5}, {"ZI", 1.0}};
  r.hamiltonian = PauliSum::from_labels(terms);
  r.n_terms = r.hamiltonian.size();
  r.plan = make_plan({}, 2);
  r.reduced = r.hamiltonian;
  std::ostringstream a, b;
  write_taper_report(r, a);
  write_taper_report(r, b);
  CHECK(a.str() == b.str());
  CHECK(a.str().find("tapered: 0") != std::string::npos);
  std::istringstream tail(a.str().substr(a.str().find("[reduced hamiltonian]") + 22));
  CHECK((read_pauli_sum(tail) - r.hamiltonian).empty());
}
