#include <doctest.h>

#include <set>

#include "symtaper/error.hpp"
#include "symtaper/gf2.hpp"
#include "symtaper/pipeline.hpp"
#include "symtaper/spectrum.hpp"
#include "symtaper/taper.hpp"
#include "test_util.hpp"

using namespace symtaper;
using testutil::Mat;
using testutil::sum_matrix;

namespace {

PauliSum sum(std::initializer_list<std::pair<std::string, cplx>> t) {
  std::vector<std::pair<std::string, cplx>> v(t);
  return PauliSum::from_labels(v);
}

PauliString ps(const char* l) { return PauliString::from_label(l); }

PauliString single(char op, std::size_t q, std::size_t n) {
  std::string l(n, 'I');
  l[q] = op;
  return ps(l.c_str());
}

// Eigenvalue of a Z-type string on the generator sectors: the product of the
// sectors of the generators that multiply to it. nullopt when not in the span.
std::optional<int> implied_sign(const PauliString& target, const std::vector<PauliString>& gens,
                                const std::vector<int>& sector) {
  const std::size_t n = target.n_qubits();
  for (std::size_t mask = 0; mask < (std::size_t{1} << gens.size()); ++mask) {
    PauliString p(n);
    int s = 1;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if ((mask >> i) & 1) {
        p = multiply(p, gens[i]);
        s *= sector[i];
      }
    if (p.label() == target.label()) return s;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("choose_taper_qubits: examples") {
  std::vector<char> piv;
  CHECK(choose_taper_qubits({ps("ZZ")}, &piv) == std::vector<std::size_t>{0});
  CHECK(piv == std::vector<char>{'X'});
  CHECK(choose_taper_qubits({}).empty());
  CHECK_THROWS_AS(choose_taper_qubits({ps("ZI"), ps("XI")}), PreconditionError);
  CHECK_THROWS_AS(choose_taper_qubits({PauliString(2)}), PreconditionError);
}

TEST_CASE("choose_taper_qubits: partners satisfy the anticommutation pattern") {
  const std::vector<std::vector<PauliString>> cases{
      {ps("ZZ"), ps("XX")},
      {ps("ZZII"), ps("IZZI")},
      {ps("ZIII"), ps("IYII"), ps("IIZZ"), ps("IIXX")},
      {ps("XXII"), ps("ZZII"), ps("IIZZ")},
  };
  for (const auto& gens : cases) {
    std::vector<char> piv;
    const auto qs = choose_taper_qubits(gens, &piv);
    REQUIRE(qs.size() == gens.size());
    CHECK(std::set<std::size_t>(qs.begin(), qs.end()).size() == qs.size());
    const std::size_t n = gens[0].n_qubits();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const auto sigma = single(piv[i], qs[i], n);
      for (std::size_t j = 0; j < gens.size(); ++j) CHECK(commutes(sigma, gens[j]) == (i != j));
    }
  }
}

TEST_CASE("choose_taper_qubits: exhaustive existence oracle on 2 qubits") {
  const std::string ops = "IXYZ";
  std::vector<PauliString> all;
  for (char a : ops)
    for (char b : ops)
      if (a != 'I' || b != 'I') all.push_back(ps(std::string{a, b}.c_str()));
  int feasible = 0, checked = 0;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if (!commutes(all[i], all[j])) continue;
      const std::vector<PauliString> gens{all[i], all[j]};
      bool exists = false;
      for (std::size_t q0 = 0; q0 < 2; ++q0)
        for (char s0 : std::string("XYZ"))
          for (char s1 : std::string("XYZ")) {
            const auto a = single(s0, q0, 2), b = single(s1, 1 - q0, 2);
            exists = exists || (!commutes(a, gens[0]) && commutes(a, gens[1]) && commutes(b, gens[0]) &&
                                !commutes(b, gens[1]));
          }
      if (exists) {
        std::vector<char> piv;
        const auto qs = choose_taper_qubits(gens, &piv);
        REQUIRE(qs.size() == 2);
        for (std::size_t g = 0; g < 2; ++g) {
          const auto sigma = single(piv[g], qs[g], 2);
          CHECK_FALSE(commutes(sigma, gens[g]));
          CHECK(commutes(sigma, gens[1 - g]));
        }
        ++feasible;
      } else {
        CHECK_THROWS_AS(choose_taper_qubits(gens), PreconditionError);
      }
      // the reduced generating set of the same group always admits an assignment
      const auto reduced = gf2::commuting_generators(gens, 2);
      CHECK(reduced.size() == 2);
      CHECK(choose_taper_qubits(reduced).size() == 2);
      ++checked;
    }
  CHECK(checked == 45);
  CHECK(feasible > 0);
  CHECK(feasible < checked);
}

TEST_CASE("reduce_for_tapering: same group, partners always exist") {
  const std::vector<PauliString> hard{ps("XIXIZ"), ps("IXXZI"), ps("IZIXZ"), ps("IZZZX"), ps("ZZZII")};
  CHECK_THROWS_AS(choose_taper_qubits(hard), PreconditionError);
  std::vector<std::size_t> qs;
  std::vector<char> piv;
  const auto red = reduce_for_tapering(hard, &qs, &piv);
  REQUIRE(red.size() == hard.size());
  for (std::size_t i = 0; i < red.size(); ++i) {
    CHECK(gf2::in_span(red[i], hard));
    const auto sigma = single(piv[i], qs[i], 5);
    for (std::size_t j = 0; j < red.size(); ++j) CHECK(commutes(sigma, red[j]) == (i != j));
  }
  CHECK(gf2::pauli_rank(red) == 5);
  CHECK(make_plan(hard, 5).generators == red);
  CHECK_THROWS_AS(reduce_for_tapering({ps("ZZ"), ps("ZZ")}), PreconditionError);

  // random commuting independent sets grown one string at a time
  std::mt19937_64 rng(71);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + rep % 5;
    std::vector<PauliString> gens;
    for (int tries = 0; tries < 200 && gens.size() < n; ++tries) {
      const auto p = testutil::random_string(n, rng);
      if (p.is_identity()) continue;
      bool ok = true;
      for (const auto& g : gens) ok = ok && commutes(p, g);
      if (!ok || gf2::in_span(p, gens)) continue;
      gens.push_back(p);
    }
    if (gens.empty() || gf2::pauli_rank(gens) != gens.size()) continue;
    const auto plan = make_plan(gens, n);
    CHECK(plan.n_tapered() == gens.size());
    for (std::size_t i = 0; i < plan.n_tapered(); ++i) {
      CHECK(gf2::in_span(plan.generators[i], gens));
      const auto sigma = single(plan.pivot_paulis[i], plan.qubit_choices[i], n);
      for (std::size_t j = 0; j < plan.n_tapered(); ++j) CHECK(commutes(sigma, plan.generators[j]) == (i != j));
    }
  }
}

TEST_CASE("build_and_apply: tapered qubit carries only I or X") {
  const auto h = sum({{"ZZ", 0.7}, {"XX", 0.4}, {"ZI", 0.0}});
  const auto plan = make_plan({ps("ZZ")}, 2);
  const auto ht = build_and_apply(h, plan);
  for (const auto& t : ht) {
    const char c = t.op.op(1);
    CHECK((c == 'I' || c == 'X'));
  }
  CHECK(testutil::max_abs_diff(testutil::eigenvalues(sum_matrix(ht)), testutil::eigenvalues(sum_matrix(h))) < 1e-12);
}

TEST_CASE("taper: toy two-qubit example") {
  const auto h = sum({{"ZZ", 1.0}, {"XX", 0.5}});
  auto plan = make_plan({ps("XX")}, 2);
  const auto ht = build_and_apply(h, plan);
  plan.sector = {1};
  const auto plus = testutil::eigenvalues(sum_matrix(taper(ht, plan)));
  plan.sector = {-1};
  const auto minus = testutil::eigenvalues(sum_matrix(taper(ht, plan)));
  std::vector<double> all(plus);
  all.insert(all.end(), minus.begin(), minus.end());
  std::sort(all.begin(), all.end());
  CHECK(testutil::max_abs_diff(all, {-1.5, -0.5, 0.5, 1.5}) < 1e-12);
  CHECK(testutil::max_abs_diff(plus, {-0.5, 1.5}) < 1e-12);
  CHECK(testutil::max_abs_diff(minus, {-1.5, 0.5}) < 1e-12);

  const auto scan = sector_scan(ht, plan);
  REQUIRE(scan.sectors.size() == 2);
  CHECK(scan.sectors[scan.best].sector == std::vector<int>{-1});
  CHECK(scan.sectors[scan.best].energy == doctest::Approx(-1.5).epsilon(1e-12));
}

TEST_CASE("taper: no generators leaves the Hamiltonian unchanged") {
  std::mt19937_64 rng(6);
  const auto h = testutil::random_hermitian(3, 9, rng);
  auto plan = make_plan({}, 3);
  const auto ht = build_and_apply(h, plan);
  CHECK((ht - h).empty());
  CHECK((taper(ht, plan) - h).empty());
  CHECK_THROWS_AS(make_plan({ps("ZI"), ps("XI")}, 2), PreconditionError);
}

TEST_CASE("taper: sector spectra reassemble the full spectrum for planted symmetries") {
  std::mt19937_64 rng(44);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t n = 2 + rep % 4;
    std::vector<PauliString> planted;
    for (int s = 0; s < 2; ++s) {
      std::string l(n, 'I');
      for (auto& c : l) c = "IXZ"[rng() % 3];
      planted.push_back(ps(l.c_str()));
    }
    PauliSumBuilder b(n);
    std::normal_distribution<double> g;
    for (int t = 0; t < 12; ++t) {
      const auto p = testutil::random_string(n, rng);
      bool ok = true;
      for (const auto& s : planted) ok = ok && commutes(p, s);
      if (ok) b.add(p, g(rng));
    }
    const auto h = b.build();
    if (h.empty()) continue;
    const auto gens = gf2::commuting_generators(gf2::find_symmetry_generators(h), n);
    auto plan = make_plan(gens, n);
    const auto ht = build_and_apply(h, plan);
    std::vector<double> all;
    for (std::size_t mask = 0; mask < (std::size_t{1} << gens.size()); ++mask) {
      plan.sector.assign(gens.size(), 1);
      for (std::size_t i = 0; i < gens.size(); ++i)
        if ((mask >> i) & 1) plan.sector[i] = -1;
      const auto r = taper(ht, plan);
      CHECK(r.n_qubits() == n - gens.size());
      const auto e = testutil::eigenvalues(sum_matrix(r));
      all.insert(all.end(), e.begin(), e.end());
    }
    std::sort(all.begin(), all.end());
    CHECK(testutil::max_abs_diff(all, testutil::eigenvalues(sum_matrix(h))) < 1e-10);
  }
}

TEST_CASE("select_sector: Hartree-Fock eigenvalues of Z-type generators") {
  IntegralSet ints(2, 1, 1);
  ints.h1(0, 0) = -1;
  const std::vector<PauliString> gens{ps("ZZII"), ps("IIZZ"), ps("XXXX")};
  const auto plan = make_plan(gens, 4);
  const auto s = select_sector(plan, ints, MappingKind::JordanWigner);
  REQUIRE(s.size() == 3);
  CHECK(s[0] == -1);
  CHECK(s[1] == -1);
  CHECK_FALSE(s[2].has_value());

  IntegralSet empty(2, 0, 0);
  const auto e = select_sector(make_plan({ps("ZZII"), ps("IIZZ")}, 4), empty, MappingKind::JordanWigner);
  CHECK(e[0] == 1);
  CHECK(e[1] == 1);
}

TEST_CASE("pipeline on H2: one qubit left, same ground energy") {
  RunConfig cfg;
  cfg.fcidump = testutil::data("h2.fcidump");
  cfg.symmetries = testutil::data("h2.sym.json");
  const auto r = run_pipeline(cfg);
  CHECK(r.n_qubits == 4);
  CHECK(r.reduced.n_qubits() == 1);
  const double full = testutil::eigenvalues(sum_matrix(map_hamiltonian(read_fcidump(cfg.fcidump), cfg.mapping))).front();
  CHECK(std::abs(testutil::eigenvalues(sum_matrix(r.reduced)).front() - full) <= 1e-9);

  auto scan_cfg = cfg;
  scan_cfg.sector_scan = true;
  const auto rs = run_pipeline(scan_cfg);
  REQUIRE(rs.scan);
  CHECK(rs.scan->sectors[rs.scan->best].sector == r.plan.sector);
  for (const auto& g : rs.generators) CHECK(g.sector_from_reference);
}

TEST_CASE("pipeline on BeH2: both spin parities sit in the -1 sector") {
  RunConfig cfg;
  cfg.fcidump = testutil::data("beh2.fcidump");
  cfg.symmetries = testutil::data("beh2.sym.json");
  const auto r = run_pipeline(cfg);
  CHECK(r.spin_parity_count == 2);
  const std::size_t m = r.n_qubits;
  std::vector<std::size_t> a, b;
  for (std::size_t p = 0; p < r.n_spatial; ++p) {
    a.push_back(p);
    b.push_back(p + r.n_spatial);
  }
  CHECK(implied_sign(mode_parity_string(a, m, cfg.mapping), r.plan.generators, r.plan.sector) == -1);
  CHECK(implied_sign(mode_parity_string(b, m, cfg.mapping), r.plan.generators, r.plan.sector) == -1);
}
