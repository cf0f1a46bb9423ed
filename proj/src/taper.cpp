#include "symtaper/taper.hpp"

#include <string>

#include "symtaper/error.hpp"
#include "symtaper/spectrum.hpp"

namespace symtaper {

namespace {

constexpr char kPartnerOrder[] = {'X', 'Y', 'Z'};

bool assign(std::size_t i, const std::vector<PauliString>& gens, std::vector<bool>& used, std::vector<std::size_t>& out,
            std::vector<char>& piv) {
  if (i == gens.size()) return true;
  const std::size_t n = gens[i].n_qubits();
  for (std::size_t q = 0; q < n; ++q) {
    if (used[q]) continue;
    for (char op : kPartnerOrder) {
      const PauliString s = PauliString::single(n, q, op);
      if (commutes(s, gens[i])) continue;
      bool ok = true;
      for (std::size_t j = 0; j < gens.size() && ok; ++j)
        if (j != i && !commutes(s, gens[j])) ok = false;
      if (!ok) continue;
      used[q] = true;
      out[i] = q;
      piv[i] = op;
      if (assign(i + 1, gens, used, out, piv)) return true;
      used[q] = false;
    }
  }
  return false;
}

void check_generators(const std::vector<PauliString>& generators, const char* who) {
  const std::size_t n = generators.front().n_qubits();
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].n_qubits() != n) throw PreconditionError(std::string(who) + ": qubit count mismatch");
    if (generators[i].is_identity()) throw PreconditionError(std::string(who) + ": identity generator");
    for (std::size_t j = i + 1; j < generators.size(); ++j)
      if (!commutes(generators[i], generators[j]))
        throw PreconditionError(std::string(who) + ": generators " + generators[i].label() + " and " +
                                generators[j].label() + " do not commute");
  }
}

std::size_t tapered_position(const TaperingPlan& plan, std::size_t i) { return plan.n_remaining() + i; }

}  // namespace

std::vector<std::size_t> choose_taper_qubits(const std::vector<PauliString>& generators, std::vector<char>* pivots) {
  if (generators.empty()) {
    if (pivots) pivots->clear();
    return {};
  }
  check_generators(generators, "choose_taper_qubits");
  const std::size_t n = generators.front().n_qubits();
  std::vector<bool> used(n, false);
  std::vector<std::size_t> out(generators.size());
  std::vector<char> piv(generators.size());
  if (!assign(0, generators, used, out, piv))
    throw PreconditionError("choose_taper_qubits: no single-qubit assignment exists (dependent generators?)");
  if (pivots) *pivots = std::move(piv);
  return out;
}

std::vector<PauliString> reduce_for_tapering(const std::vector<PauliString>& generators,
                                             std::vector<std::size_t>* qubits, std::vector<char>* pivots) {
  if (generators.empty()) {
    if (qubits) qubits->clear();
    if (pivots) pivots->clear();
    return {};
  }
  check_generators(generators, "reduce_for_tapering");
  const std::size_t n = generators.front().n_qubits();
  const std::size_t k = generators.size();
  std::vector<PauliString> g(generators);
  std::vector<bool> done(k, false);
  std::vector<std::size_t> q_of(k);
  std::vector<char> p_of(k);
  std::size_t assigned = 0;
  for (std::size_t q = 0; q < n && assigned < k; ++q) {
    // an X-type pivot at q takes a Z partner; failing that a Z-type pivot takes an X partner
    for (const bool use_x : {true, false}) {
      std::size_t piv = k;
      for (std::size_t i = 0; i < k && piv == k; ++i)
        if (!done[i] && (use_x ? g[i].x(q) : g[i].z(q))) piv = i;
      if (piv == k) continue;
      for (std::size_t j = 0; j < k; ++j)
        if (j != piv && (use_x ? g[j].x(q) : g[j].z(q))) g[j] = multiply(g[j], g[piv]).as_label();
      done[piv] = true;
      q_of[piv] = q;
      p_of[piv] = use_x ? 'Z' : 'X';
      ++assigned;
      break;
    }
  }
  if (assigned < k) throw PreconditionError("reduce_for_tapering: generators are not independent");
  if (qubits) *qubits = std::move(q_of);
  if (pivots) *pivots = std::move(p_of);
  return g;
}

TaperingPlan make_plan(const std::vector<PauliString>& generators, std::size_t n_qubits) {
  TaperingPlan plan;
  plan.n_qubits = n_qubits;
  for (const auto& g : generators) {
    if (g.n_qubits() != n_qubits) throw PreconditionError("make_plan: generator qubit count mismatch");
    if (!g.is_hermitian()) throw PreconditionError("make_plan: generator " + g.label() + " is not Hermitian");
  }
  plan.generators = generators;
  if (!generators.empty()) {
    check_generators(generators, "make_plan");
    plan.qubit_choices.assign(generators.size(), 0);
    plan.pivot_paulis.assign(generators.size(), 'X');
    std::vector<bool> used(n_qubits, false);
    if (!assign(0, generators, used, plan.qubit_choices, plan.pivot_paulis))
      plan.generators = reduce_for_tapering(generators, &plan.qubit_choices, &plan.pivot_paulis);
  }

  const std::size_t k = generators.size();
  std::vector<bool> tapered(n_qubits, false);
  for (auto q : plan.qubit_choices) tapered[q] = true;
  plan.permutation.assign(n_qubits, 0);
  std::size_t next = 0;
  for (std::size_t q = 0; q < n_qubits; ++q)
    if (!tapered[q]) plan.permutation[q] = next++;
  for (std::size_t i = 0; i < k; ++i) plan.permutation[plan.qubit_choices[i]] = n_qubits - k + i;
  return plan;
}

PauliSum build_and_apply(const PauliSum& h, const TaperingPlan& plan) {
  if (h.n_qubits() != plan.n_qubits) throw PreconditionError("build_and_apply: qubit count mismatch");
  const std::size_t n = plan.n_qubits;
  PauliSum cur = h;
  for (std::size_t i = 0; i < plan.n_tapered(); ++i)
    cur = conjugate_by_clifford(cur, plan.generators[i],
                                PauliString::single(n, plan.qubit_choices[i], plan.pivot_paulis[i]));
  // each tapered qubit now carries only I or its partner; rotate Y/Z partners onto X
  for (std::size_t i = 0; i < plan.n_tapered(); ++i) {
    if (plan.pivot_paulis[i] == 'X') continue;
    const std::size_t q = plan.qubit_choices[i];
    cur = conjugate_by_clifford(cur, PauliString::single(n, q, plan.pivot_paulis[i]), PauliString::single(n, q, 'X'));
  }
  cur = apply_qubit_permutation(cur, plan.permutation);
  for (std::size_t i = 0; i < plan.n_tapered(); ++i) {
    const std::size_t p = tapered_position(plan, i);
    for (const auto& t : cur)
      if (t.op.z(p))
        throw InvariantBreach("build_and_apply: term " + t.op.label() + " acts with Y or Z on tapered qubit " +
                              std::to_string(p));
  }
  return cur;
}

std::vector<std::optional<int>> select_sector(const TaperingPlan& plan, const IntegralSet& ints, MappingKind kind) {
  const std::size_t m = ints.n_modes();
  if (m != plan.n_qubits) throw PreconditionError("select_sector: integral and plan sizes differ");
  std::vector<bool> occ(m, false);
  for (std::size_t p = 0; p < ints.n_alpha(); ++p) occ[p] = true;
  for (std::size_t p = 0; p < ints.n_beta(); ++p) occ[ints.n_spatial() + p] = true;
  const QubitMask hf = encode_occupation(occ, kind);

  std::vector<std::optional<int>> out;
  for (const auto& g : plan.generators) {
    if (!g.is_z_type()) {
      out.emplace_back();
      continue;
    }
    int ev = overlap_parity(g.z_bits(), hf) ? -1 : 1;
    if (g.phase() % 4 == 2) ev = -ev;
    out.emplace_back(ev);
  }
  return out;
}

PauliSum taper(const PauliSum& h_transformed, const TaperingPlan& plan) {
  if (h_transformed.n_qubits() != plan.n_qubits) throw PreconditionError("taper: qubit count mismatch");
  if (plan.sector.size() != plan.n_tapered())
    throw PreconditionError("taper: sector has " + std::to_string(plan.sector.size()) + " entries for " +
                            std::to_string(plan.n_tapered()) + " generators");
  PauliSum cur = h_transformed;
  for (std::size_t i = plan.n_tapered(); i-- > 0;) cur = restrict_qubit(cur, tapered_position(plan, i), plan.sector[i]);
  return cur;
}

ScanResult sector_scan(const PauliSum& h_transformed, const TaperingPlan& plan,
                       const std::vector<std::optional<int>>& fixed, std::uint64_t seed) {
  const std::size_t k = plan.n_tapered();
  if (!fixed.empty() && fixed.size() != k) throw PreconditionError("sector_scan: fixed sector has the wrong length");
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < k; ++i)
    if (fixed.empty() || !fixed[i]) free.push_back(i);
  if (free.size() > kSectorScanLimit)
    throw PreconditionError("sector_scan: " + std::to_string(free.size()) + " unknown sectors exceed the limit of " +
                            std::to_string(kSectorScanLimit));

  ScanResult res;
  TaperingPlan p = plan;
  for (std::size_t mask = 0; mask < (std::size_t{1} << free.size()); ++mask) {
    p.sector.assign(k, 1);
    for (std::size_t i = 0; i < k; ++i)
      if (!fixed.empty() && fixed[i]) p.sector[i] = *fixed[i];
    for (std::size_t b = 0; b < free.size(); ++b)
      if ((mask >> b) & 1) p.sector[free[b]] = -1;
    const double e = min_eigenvalue(taper(h_transformed, p), seed).min_eigenvalue;
    res.sectors.push_back({p.sector, e});
    if (e < res.sectors[res.best].energy - 1e-10) res.best = res.sectors.size() - 1;
  }
  return res;
}

}  // namespace symtaper
