#include "symtaper/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

namespace symtaper {

namespace {

using u128 = unsigned __int128;

static_assert(QubitMask::kWords == 2, "mask helpers assume 128-bit masks");

u128 to_u128(const QubitMask& m) { return (u128(m.word(1)) << 64) | m.word(0); }

QubitMask from_u128(u128 v) {
  QubitMask m;
  m.word(0) = static_cast<std::uint64_t>(v);
  m.word(1) = static_cast<std::uint64_t>(v >> 64);
  return m;
}

// Drops bit q and shifts every higher bit down by one.
QubitMask remove_bit(const QubitMask& m, std::size_t q) {
  const u128 v = to_u128(m);
  const u128 low_mask = (u128(1) << q) - 1;
  const u128 low = v & low_mask;
  const u128 high = q + 1 < 128 ? (v >> (q + 1)) << q : 0;
  return from_u128(low | high);
}

void require_same_size(std::size_t a, std::size_t b, const char* where) {
  if (a != b)
    throw PreconditionError(std::string(where) + ": qubit count mismatch (" + std::to_string(a) + " vs " +
                            std::to_string(b) + ")");
}

struct KeyHash {
  std::size_t operator()(const std::pair<QubitMask, QubitMask>& k) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (std::size_t w = 0; w < QubitMask::kWords; ++w) {
      h ^= k.first.word(w) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h ^= k.second.word(w) * 0xff51afd7ed558ccdull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

}  // namespace

// ---------------------------------------------------------------- QubitMask

std::size_t QubitMask::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool QubitMask::none() const {
  for (auto w : words_)
    if (w) return false;
  return true;
}

QubitMask& QubitMask::operator^=(const QubitMask& o) {
  for (std::size_t w = 0; w < kWords; ++w) words_[w] ^= o.words_[w];
  return *this;
}
QubitMask& QubitMask::operator&=(const QubitMask& o) {
  for (std::size_t w = 0; w < kWords; ++w) words_[w] &= o.words_[w];
  return *this;
}
QubitMask& QubitMask::operator|=(const QubitMask& o) {
  for (std::size_t w = 0; w < kWords; ++w) words_[w] |= o.words_[w];
  return *this;
}

bool overlap_parity(const QubitMask& a, const QubitMask& b) {
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < QubitMask::kWords; ++w) acc ^= a.word(w) & b.word(w);
  return std::popcount(acc) & 1;
}

// -------------------------------------------------------------- PauliString

PauliString::PauliString(std::size_t n_qubits) : PauliString(n_qubits, {}, {}, 0) {}

PauliString::PauliString(std::size_t n_qubits, const QubitMask& x, const QubitMask& z, int phase)
    : n_(static_cast<std::uint32_t>(n_qubits)), phase_(static_cast<std::uint8_t>(((phase % 4) + 4) % 4)), x_(x), z_(z) {
  if (n_qubits > kMaxQubits)
    throw PreconditionError("PauliString: at most " + std::to_string(kMaxQubits) + " qubits supported");
}

PauliString PauliString::from_label(std::string_view label) {
  QubitMask x, z;
  int ys = 0;
  for (std::size_t q = 0; q < label.size(); ++q) {
    switch (label[q]) {
      case 'I': break;
      case 'X': x.set(q); break;
      case 'Z': z.set(q); break;
      case 'Y':
        x.set(q);
        z.set(q);
        ++ys;
        break;
      default: throw ParseError("invalid Pauli label character '" + std::string(1, label[q]) + "'");
    }
  }
  return PauliString(label.size(), x, z, ys);
}

PauliString PauliString::single(std::size_t n_qubits, std::size_t q, char op) {
  if (q >= n_qubits) throw PreconditionError("PauliString::single: qubit index out of range");
  std::string label(n_qubits, 'I');
  label[q] = op;
  return from_label(label);
}

char PauliString::op(std::size_t q) const {
  const bool xb = x_.test(q), zb = z_.test(q);
  if (xb && zb) return 'Y';
  if (xb) return 'X';
  if (zb) return 'Z';
  return 'I';
}

std::string PauliString::label() const {
  std::string s(n_, 'I');
  for (std::size_t q = 0; q < n_; ++q) s[q] = op(q);
  return s;
}

cplx PauliString::label_factor() const {
  const int ys = static_cast<int>((x_ & z_).count() % 4);
  return kIPow[(phase_ - ys + 4) % 4];
}

PauliString PauliString::as_label() const {
  return PauliString(n_, x_, z_, static_cast<int>((x_ & z_).count() % 4));
}

bool PauliString::is_hermitian() const { return ((phase_ + (x_ & z_).count()) % 2) == 0; }

PauliString multiply(const PauliString& a, const PauliString& b) {
  require_same_size(a.n_qubits(), b.n_qubits(), "multiply");
  PauliString r;
  r.n_ = a.n_;
  r.x_ = a.x_ ^ b.x_;
  r.z_ = a.z_ ^ b.z_;
  // Z^{a_z} X^{b_x} = (-1)^{a_z.b_x} X^{b_x} Z^{a_z}
  r.phase_ = static_cast<std::uint8_t>((a.phase_ + b.phase_ + 2 * overlap_parity(a.z_, b.x_)) % 4);
  return r;
}

bool commutes(const PauliString& a, const PauliString& b) {
  require_same_size(a.n_qubits(), b.n_qubits(), "commutes");
  return overlap_parity(a.x_bits(), b.z_bits()) == overlap_parity(a.z_bits(), b.x_bits());
}

bool PauliBitsLess::operator()(const PauliString& a, const PauliString& b) const {
  if (a.x_bits() != b.x_bits()) return a.x_bits() < b.x_bits();
  return a.z_bits() < b.z_bits();
}

// ------------------------------------------------------------ PauliSumBuilder

struct PauliSumBuilder::Impl {
  std::unordered_map<std::pair<QubitMask, QubitMask>, cplx, KeyHash> acc;
};

PauliSumBuilder::PauliSumBuilder(std::size_t n_qubits) : n_(n_qubits), impl_(std::make_unique<Impl>()) {}
PauliSumBuilder::~PauliSumBuilder() = default;
PauliSumBuilder::PauliSumBuilder(PauliSumBuilder&&) noexcept = default;
PauliSumBuilder& PauliSumBuilder::operator=(PauliSumBuilder&&) noexcept = default;

void PauliSumBuilder::add(const PauliString& p, cplx coeff) {
  require_same_size(n_, p.n_qubits(), "PauliSumBuilder::add");
  if (coeff == cplx{}) return;
  impl_->acc[{p.x_bits(), p.z_bits()}] += coeff * p.label_factor();
}

void PauliSumBuilder::add(const PauliSum& s, cplx scale) {
  require_same_size(n_, s.n_qubits(), "PauliSumBuilder::add");
  for (const auto& t : s) impl_->acc[{t.op.x_bits(), t.op.z_bits()}] += scale * t.coeff;
}

PauliSum PauliSumBuilder::build(double drop_tol) const {
  std::vector<PauliTerm> terms;
  terms.reserve(impl_->acc.size());
  for (const auto& [key, c] : impl_->acc) {
    if (std::abs(c) < drop_tol) continue;
    PauliString p(n_, key.first, key.second);
    terms.push_back({p.as_label(), c});
  }
  std::sort(terms.begin(), terms.end(),
            [](const PauliTerm& a, const PauliTerm& b) { return PauliBitsLess{}(a.op, b.op); });
  return PauliSum::from_terms(n_, terms, drop_tol);
}

// ------------------------------------------------------------------ PauliSum

PauliSum PauliSum::identity(std::size_t n_qubits, cplx coeff) {
  return from_string(PauliString(n_qubits), coeff);
}

PauliSum PauliSum::from_string(const PauliString& p, cplx coeff) {
  const PauliTerm t{p, coeff};
  return from_terms(p.n_qubits(), std::span<const PauliTerm>(&t, 1));
}

PauliSum PauliSum::from_terms(std::size_t n_qubits, std::span<const PauliTerm> terms, double drop_tol) {
  std::vector<PauliTerm> folded;
  folded.reserve(terms.size());
  for (const auto& t : terms) {
    require_same_size(n_qubits, t.op.n_qubits(), "PauliSum::from_terms");
    folded.push_back({t.op.as_label(), t.coeff * t.op.label_factor()});
  }
  std::stable_sort(folded.begin(), folded.end(),
                   [](const PauliTerm& a, const PauliTerm& b) { return PauliBitsLess{}(a.op, b.op); });
  PauliSum s(n_qubits);
  s.terms_.reserve(folded.size());
  for (std::size_t i = 0; i < folded.size();) {
    std::size_t j = i;
    cplx c{};
    while (j < folded.size() && folded[j].op == folded[i].op) c += folded[j++].coeff;
    if (std::abs(c) >= drop_tol) s.terms_.push_back({folded[i].op, c});
    i = j;
  }
  return s;
}

PauliSum PauliSum::from_labels(std::span<const std::pair<std::string, cplx>> terms) {
  if (terms.empty()) throw PreconditionError("PauliSum::from_labels: no terms");
  std::vector<PauliTerm> v;
  for (const auto& [label, c] : terms) v.push_back({PauliString::from_label(label), c});
  return from_terms(terms.front().first.size(), v);
}

cplx PauliSum::coefficient(const PauliString& p) const {
  const auto it = std::lower_bound(terms_.begin(), terms_.end(), p,
                                   [](const PauliTerm& t, const PauliString& k) { return PauliBitsLess{}(t.op, k); });
  if (it != terms_.end() && it->op.x_bits() == p.x_bits() && it->op.z_bits() == p.z_bits()) return it->coeff;
  return {};
}

bool PauliSum::is_hermitian(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(), [tol](const PauliTerm& t) { return std::abs(t.coeff.imag()) <= tol; });
}

double PauliSum::coefficient_norm() const {
  double s = 0;
  for (const auto& t : terms_) s += std::norm(t.coeff);
  return std::sqrt(s);
}

PauliSum PauliSum::scaled(cplx s, double drop_tol) const {
  PauliSum r(n_);
  for (const auto& t : terms_) {
    const cplx c = s * t.coeff;
    if (std::abs(c) >= drop_tol) r.terms_.push_back({t.op, c});
  }
  return r;
}

PauliSum operator+(const PauliSum& a, const PauliSum& b) {
  require_same_size(a.n_qubits(), b.n_qubits(), "PauliSum +");
  std::vector<PauliTerm> all(a.terms_);
  all.insert(all.end(), b.terms_.begin(), b.terms_.end());
  return PauliSum::from_terms(a.n_, all);
}

PauliSum operator-(const PauliSum& a, const PauliSum& b) { return a + b.scaled(-1.0); }

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  require_same_size(a.n_qubits(), b.n_qubits(), "PauliSum *");
  PauliSumBuilder builder(a.n_);
  for (const auto& ta : a)
    for (const auto& tb : b) builder.add(multiply(ta.op, tb.op), ta.coeff * tb.coeff);
  return builder.build();
}

// --------------------------------------------------------- transformations

PauliSum conjugate_by_clifford(const PauliSum& h, const PauliString& tau, const PauliString& sigma) {
  require_same_size(h.n_qubits(), tau.n_qubits(), "conjugate_by_clifford");
  require_same_size(h.n_qubits(), sigma.n_qubits(), "conjugate_by_clifford");
  if (!tau.is_hermitian() || !sigma.is_hermitian())
    throw PreconditionError("conjugate_by_clifford: tau and sigma must be Hermitian involutions");
  if (commutes(tau, sigma)) throw PreconditionError("conjugate_by_clifford: tau and sigma must anticommute");

  PauliSumBuilder out(h.n_qubits());
  const PauliString ends[2] = {tau, sigma};
  for (const auto& t : h) {
    const bool c_tau = commutes(t.op, tau);
    const bool c_sigma = commutes(t.op, sigma);
    if (c_tau && c_sigma) {
      out.add(t.op, t.coeff);
      continue;
    }
    // (tau + sigma) P (tau + sigma) / 2
    for (const auto& l : ends) {
      const PauliString lp = multiply(l, t.op);
      for (const auto& r : ends) out.add(multiply(lp, r), 0.5 * t.coeff);
    }
  }
  return out.build();
}

PauliString apply_qubit_permutation(const PauliString& p, std::span<const std::size_t> perm) {
  const std::size_t n = p.n_qubits();
  require_same_size(n, perm.size(), "apply_qubit_permutation");
  QubitMask x, z;
  for (std::size_t q = 0; q < n; ++q) {
    if (p.x(q)) x.set(perm[q]);
    if (p.z(q)) z.set(perm[q]);
  }
  return PauliString(n, x, z, p.phase());
}

PauliSum apply_qubit_permutation(const PauliSum& h, std::span<const std::size_t> perm) {
  const std::size_t n = h.n_qubits();
  require_same_size(n, perm.size(), "apply_qubit_permutation");
  std::vector<bool> seen(n, false);
  for (auto q : perm) {
    if (q >= n || seen[q]) throw PreconditionError("apply_qubit_permutation: permutation is not a bijection");
    seen[q] = true;
  }
  std::vector<PauliTerm> terms;
  terms.reserve(h.size());
  for (const auto& t : h) terms.push_back({apply_qubit_permutation(t.op, perm), t.coeff});
  return PauliSum::from_terms(n, terms);
}

PauliSum restrict_qubit(const PauliSum& h, std::size_t q, int eigenvalue) {
  const std::size_t n = h.n_qubits();
  if (q >= n) throw PreconditionError("restrict_qubit: qubit index out of range");
  if (eigenvalue != 1 && eigenvalue != -1) throw PreconditionError("restrict_qubit: eigenvalue must be +1 or -1");
  std::vector<PauliTerm> terms;
  terms.reserve(h.size());
  for (const auto& t : h) {
    if (t.op.z(q))
      throw PreconditionError("restrict_qubit: term " + t.op.label() + " acts on qubit " + std::to_string(q) +
                            " with Y or Z");
    const double f = t.op.x(q) ? eigenvalue : 1.0;
    PauliString reduced(n - 1, remove_bit(t.op.x_bits(), q), remove_bit(t.op.z_bits(), q));
    terms.push_back({reduced.as_label(), f * t.coeff});
  }
  return PauliSum::from_terms(n - 1, terms);
}

}  // namespace symtaper
