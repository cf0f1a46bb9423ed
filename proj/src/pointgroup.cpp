#include "symtaper/pointgroup.hpp"

#include <cmath>
#include <fstream>
#include <istream>

#include <json.hpp>

namespace symtaper {

namespace {

constexpr double kStructureTol = 1e-9;

void require(bool ok, const std::string& msg) {
  if (!ok) throw PreconditionError(msg);
}

// Reads a dense matrix back as a signed permutation, or throws.
SignedPermutation as_signed_permutation(const Eigen::MatrixXd& m, const std::string& name) {
  const auto n = static_cast<std::size_t>(m.rows());
  std::vector<std::size_t> perm(n);
  std::vector<int> signs(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t hits = 0;
    for (std::size_t r = 0; r < n; ++r) {
      const double v = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      if (std::abs(v) < kStructureTol) continue;
      if (std::abs(std::abs(v) - 1.0) > kStructureTol)
        throw PreconditionError("simultaneous_diagonalize: operation '" + name +
                                "' is not a signed permutation in the partially diagonalized basis "
                                "(input operations must commute)");
      perm[c] = r;
      signs[c] = v > 0 ? 1 : -1;
      ++hits;
    }
    if (hits != 1)
      throw PreconditionError("simultaneous_diagonalize: operation '" + name + "' lost its permutation structure");
  }
  return SignedPermutation(std::move(perm), std::move(signs), name);
}

}  // namespace

// -------------------------------------------------------- SignedPermutation

SignedPermutation::SignedPermutation(std::vector<std::size_t> perm, std::vector<int> signs, std::string name)
    : perm_(std::move(perm)), signs_(std::move(signs)), name_(std::move(name)) {
  require(perm_.size() == signs_.size(), "SignedPermutation: perm and signs differ in length");
  std::vector<bool> seen(perm_.size(), false);
  for (auto p : perm_) {
    require(p < perm_.size() && !seen[p], "SignedPermutation: perm is not a bijection");
    seen[p] = true;
  }
  for (int s : signs_) require(s == 1 || s == -1, "SignedPermutation: signs must be +1 or -1");
}

SignedPermutation SignedPermutation::identity(std::size_t n) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  return SignedPermutation(std::move(perm), std::vector<int>(n, 1), "E");
}

Eigen::MatrixXd SignedPermutation::matrix() const {
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t c = 0; c < size(); ++c) m(static_cast<Eigen::Index>(perm_[c]), static_cast<Eigen::Index>(c)) = signs_[c];
  return m;
}

SignedPermutation SignedPermutation::compose(const SignedPermutation& rhs) const {
  require(size() == rhs.size(), "SignedPermutation::compose: size mismatch");
  std::vector<std::size_t> perm(size());
  std::vector<int> signs(size());
  for (std::size_t c = 0; c < size(); ++c) {
    const std::size_t mid = rhs.perm_[c];
    perm[c] = perm_[mid];
    signs[c] = rhs.signs_[c] * signs_[mid];
  }
  return SignedPermutation(std::move(perm), std::move(signs));
}

bool SignedPermutation::is_involution() const { return compose(*this) == identity(size()); }

bool SignedPermutation::commutes_with(const SignedPermutation& o) const { return compose(o) == o.compose(*this); }

SignedPermutation SignedPermutation::block_doubled() const {
  const std::size_t n = size();
  std::vector<std::size_t> perm(2 * n);
  std::vector<int> signs(2 * n);
  for (std::size_t c = 0; c < n; ++c) {
    perm[c] = perm_[c];
    perm[n + c] = n + perm_[c];
    signs[c] = signs[n + c] = signs_[c];
  }
  return SignedPermutation(std::move(perm), std::move(signs), name_);
}

// ----------------------------------------------------------------- ZSymmetry

ZSymmetry ZSymmetry::make(std::string name, std::vector<std::size_t> support, std::size_t n_modes, MappingKind kind) {
  if (support.empty()) throw PreconditionError("ZSymmetry '" + name + "': empty support is the identity");
  PauliString p = mode_parity_string(support, n_modes, kind);
  if (!p.is_z_type() || p.is_identity()) throw InvariantBreach("ZSymmetry '" + name + "': not a nontrivial Z string");
  return ZSymmetry{std::move(name), std::move(support), std::move(p)};
}

// ---------------------------------------------------------------- operations

InvarianceResult check_invariance(const IntegralSet& ints, const SignedPermutation& r, double tol) {
  const std::size_t m = ints.n_modes();
  require(r.size() == m, "check_invariance: permutation size " + std::to_string(r.size()) + " does not match " +
                             std::to_string(m) + " spin orbitals");
  const auto& pi = r.perm();
  const auto& s = r.signs();
  double dev = 0.0;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      dev = std::max(dev, std::abs(s[a] * s[b] * ints.h1(pi[a], pi[b]) - ints.h1(a, b)));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) {
          const double transformed = s[i] * s[j] * s[k] * s[l] * ints.h2(pi[i], pi[j], pi[k], pi[l]);
          dev = std::max(dev, std::abs(transformed - ints.h2(i, j, k, l)));
        }
  return {dev <= tol, dev};
}

PauliSum second_quantized_permutation(const SignedPermutation& r, MappingKind kind) {
  const std::size_t m = r.size();
  // target: U a_p U^+ = s_{inv(p)} a_{inv(p)}, U = D * T_1 ... T_k with
  // t_1 o ... o t_k = inverse permutation
  std::vector<std::size_t> cur(m);
  for (std::size_t c = 0; c < m; ++c) cur[r.perm()[c]] = c;
  PauliSum u = PauliSum::identity(m);
  for (std::size_t p = 0; p < m; ++p) {
    while (cur[p] != p) {
      const std::size_t q = cur[p];
      // T_pq = I - n_p - n_q + a+_p a_q + a+_q a_p
      PauliSum t = PauliSum::identity(m) - map_excitation(p, p, m, kind) - map_excitation(q, q, m, kind) +
                   map_excitation(p, q, m, kind);
      u = u * t;
      // cur <- (p q) o cur
      for (auto& v : cur) {
        if (v == p)
          v = q;
        else if (v == q)
          v = p;
      }
    }
  }
  PauliSum d = PauliSum::identity(m);
  for (std::size_t c = 0; c < m; ++c)
    if (r.signs()[c] < 0) d = d * (PauliSum::identity(m) - map_excitation(c, c, m, kind).scaled(2.0));
  return d * u;
}

SelectionResult select_commuting_involutions(const std::vector<SignedPermutation>& candidates) {
  SelectionResult res;
  for (const auto& c : candidates) {
    const std::string label = c.name().empty() ? std::string("<unnamed>") : c.name();
    if (c == SignedPermutation::identity(c.size())) {
      res.notes.push_back(label + ": identity, skipped");
      continue;
    }
    if (!c.is_involution()) {
      res.notes.push_back(label + ": not an involution (R^2 != I), skipped");
      continue;
    }
    const SignedPermutation* clash = nullptr;
    for (const auto& kept : res.retained)
      if (!kept.commutes_with(c)) {
        clash = &kept;
        break;
      }
    if (clash) {
      res.notes.push_back(label + ": does not commute with " + clash->name() + ", skipped");
      continue;
    }
    res.retained.push_back(c);
  }
  return res;
}

Diagonalization simultaneous_diagonalize(const std::vector<SignedPermutation>& set, MappingKind kind) {
  Diagonalization out;
  if (set.empty()) return out;
  const std::size_t m = set.front().size();
  const auto n = static_cast<Eigen::Index>(m);
  for (const auto& r : set) {
    require(r.size() == m, "simultaneous_diagonalize: size mismatch");
    require(r.is_involution(), "simultaneous_diagonalize: '" + r.name() + "' is not an involution");
  }
  for (std::size_t a = 0; a < set.size(); ++a)
    for (std::size_t b = a + 1; b < set.size(); ++b)
      require(set[a].commutes_with(set[b]),
              "simultaneous_diagonalize: '" + set[a].name() + "' and '" + set[b].name() + "' do not commute");

  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double h = 1.0 / std::sqrt(2.0);
  for (const auto& r : set) {
    const SignedPermutation local = as_signed_permutation(v.transpose() * r.matrix() * v, r.name());
    Eigen::MatrixXd w = Eigen::MatrixXd::Identity(n, n);
    for (std::size_t c = 0; c < m; ++c) {
      const std::size_t d = local.perm()[c];
      if (d <= c) continue;
      const auto ci = static_cast<Eigen::Index>(c), di = static_cast<Eigen::Index>(d);
      w(ci, ci) = h;
      w(di, ci) = h;
      w(ci, di) = h;
      w(di, di) = -h;
    }
    v = v * w;
  }

  out.rotation.v = v;
  for (const auto& r : set) {
    const Eigen::MatrixXd dmat = v.transpose() * r.matrix() * v;
    std::vector<std::size_t> support;
    for (Eigen::Index p = 0; p < n; ++p) {
      const double dpp = dmat(p, p);
      if (std::abs(std::abs(dpp) - 1.0) > 1e-12) throw InvariantBreach("simultaneous_diagonalize: result not diagonal");
      if (dpp < 0) support.push_back(static_cast<std::size_t>(p));
    }
    const double off = (dmat - Eigen::MatrixXd(dmat.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
    if (off > 1e-12) throw InvariantBreach("simultaneous_diagonalize: off-diagonal residue " + std::to_string(off));
    out.symmetries.push_back(ZSymmetry::make(r.name(), std::move(support), m, kind));
  }
  return out;
}

IntegralSet rotate_integrals(const IntegralSet& ints, const OrbitalRotation& rot) {
  const std::size_t m = ints.n_modes();
  require(rot.size() == m && static_cast<std::size_t>(rot.v.cols()) == m,
          "rotate_integrals: rotation size does not match the number of spin orbitals");
  const Eigen::MatrixXd& v = rot.v;
  IntegralSet out(ints.n_spatial(), ints.n_alpha(), ints.n_beta());
  out.set_e_core(ints.e_core());

  // nonzero entries of each column of V
  std::vector<std::vector<std::pair<std::size_t, double>>> col(m);
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t r = 0; r < m; ++r) {
      const double x = v(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      if (x != 0.0) col[c].emplace_back(r, x);
    }

  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      double s = 0.0;
      for (auto [i, vi] : col[a])
        for (auto [j, vj] : col[b]) s += vi * vj * ints.h1(i, j);
      out.h1(a, b) = s;
    }

  // four quarter transforms, one index at a time
  const std::size_t m2 = m * m, m3 = m2 * m, m4 = m3 * m;
  std::vector<double> src(ints.h2_data()), dst(m4);
  for (std::size_t pass = 0; pass < 4; ++pass) {
    // transform index `pass` (0 = i, ..., 3 = l)
    const std::size_t stride = pass == 0 ? m3 : pass == 1 ? m2 : pass == 2 ? m : 1;
    std::fill(dst.begin(), dst.end(), 0.0);
    for (std::size_t idx = 0; idx < m4; ++idx) {
      const std::size_t target = (idx / stride) % m;
      const std::size_t base = idx - target * stride;
      double s = 0.0;
      for (auto [r, x] : col[target]) s += x * src[base + r * stride];
      dst[idx] = s;
    }
    std::swap(src, dst);
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) out.h2(i, j, k, l) = src[((i * m + j) * m + k) * m + l];
  return out;
}

bool verify_z_symmetry(const PauliSum& h, const ZSymmetry& s) {
  require(h.n_qubits() == s.pauli.n_qubits(), "verify_z_symmetry: qubit count mismatch");
  for (const auto& t : h)
    if (!commutes(t.op, s.pauli)) return false;
  return true;
}

SymmetryFile parse_symmetry_json(std::istream& in) {
  using nlohmann::json;
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ParseError(std::string("symmetry JSON: ") + e.what());
  }
  SymmetryFile f;
  try {
    f.n_spatial = doc.at("n_spatial").get<std::size_t>();
    for (const auto& op : doc.at("operations")) {
      auto name = op.value("name", std::string{});
      auto perm = op.at("perm").get<std::vector<std::size_t>>();
      auto signs = op.contains("signs") ? op.at("signs").get<std::vector<int>>() : std::vector<int>(perm.size(), 1);
      if (perm.size() != f.n_spatial || signs.size() != f.n_spatial)
        throw ParseError("symmetry JSON: operation '" + name + "' has wrong length (expected n_spatial=" +
                         std::to_string(f.n_spatial) + ")");
      try {
        f.operations.emplace_back(std::move(perm), std::move(signs), std::move(name));
      } catch (const PreconditionError& e) {
        throw ParseError(std::string("symmetry JSON: ") + e.what());
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("symmetry JSON: ") + e.what());
  }
  return f;
}

SymmetryFile read_symmetry_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open symmetry file '" + path + "'");
  return parse_symmetry_json(f);
}

}  // namespace symtaper
