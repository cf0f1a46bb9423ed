#include "symtaper/gf2.hpp"

#include <algorithm>
#include <bit>
#include <deque>

#include "symtaper/kernels.hpp"

namespace symtaper::gf2 {

void BitVector::set(std::size_t i, bool v) {
  const std::uint64_t bit = std::uint64_t{1} << (i & 63);
  if (v)
    words_[i >> 6] |= bit;
  else
    words_[i >> 6] &= ~bit;
}

bool BitVector::none() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t BitVector::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::size_t BitVector::first_set() const {
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
  return n_;
}

BitVector& BitVector::operator^=(const BitVector& o) {
  if (o.n_ != n_) throw PreconditionError("BitVector: length mismatch");
  simd::active_kernels().xor_words(words_.data(), o.words_.data(), words_.size());
  return *this;
}

bool BitVector::dot(const BitVector& o) const {
  if (o.n_ != n_) throw PreconditionError("BitVector: length mismatch");
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & o.words_[w];
  return std::popcount(acc) & 1;
}

BinMatrix::BinMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), rows_data_(rows, BitVector(cols)) {}

void BinMatrix::append_row(BitVector row) {
  if (row.size() != cols_) throw PreconditionError("BinMatrix::append_row: width mismatch");
  rows_data_.push_back(std::move(row));
  ++rows_;
}

std::vector<BitVector> row_reduce(std::vector<BitVector> rows, std::vector<std::size_t>* pivots) {
  // Incremental echelon basis: basis[i] has pivot piv[i] and no bits at other
  // rows' pivots once the final back-substitution has run.
  std::vector<BitVector> basis;
  std::vector<std::size_t> piv;
  for (auto& r : rows) {
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (r.test(piv[i])) r ^= basis[i];
    if (r.none()) continue;
    const std::size_t p = r.first_set();
    // keep earlier rows free of the new pivot
    for (auto& b : basis)
      if (b.test(p)) b ^= r;
    basis.push_back(std::move(r));
    piv.push_back(p);
  }
  std::vector<std::size_t> order(basis.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return piv[a] < piv[b]; });
  std::vector<BitVector> out;
  out.reserve(basis.size());
  if (pivots) pivots->clear();
  for (auto i : order) {
    out.push_back(std::move(basis[i]));
    if (pivots) pivots->push_back(piv[i]);
  }
  return out;
}

std::size_t rank(const BinMatrix& m) {
  std::vector<BitVector> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  return row_reduce(std::move(rows)).size();
}

BinMatrix build_check_matrix(const PauliSum& h) {
  if (h.empty()) throw PreconditionError("build_check_matrix: empty Hamiltonian");
  const std::size_t n = h.n_qubits();
  BinMatrix e(0, 2 * n);
  for (const auto& t : h) {
    BitVector row(2 * n);
    for (std::size_t q = 0; q < n; ++q) {
      if (t.op.z(q)) row.set(q);
      if (t.op.x(q)) row.set(n + q);
    }
    e.append_row(std::move(row));
  }
  return e;
}

std::vector<BitVector> kernel(const BinMatrix& m) {
  const std::size_t cols = m.cols();
  std::vector<BitVector> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  std::vector<std::size_t> pivots;
  const auto rref = row_reduce(std::move(rows), &pivots);

  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;

  // One basis vector per free column f: set f, and each pivot column takes the
  // value of its row's bit at f.
  std::vector<BitVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    BitVector v(cols);
    v.set(f);
    for (std::size_t i = 0; i < rref.size(); ++i)
      if (rref[i].test(f)) v.set(pivots[i]);
    basis.push_back(std::move(v));
  }
  return row_reduce(std::move(basis));
}

BitVector to_symplectic(const PauliString& p) {
  const std::size_t n = p.n_qubits();
  BitVector v(2 * n);
  for (std::size_t q = 0; q < n; ++q) {
    if (p.x(q)) v.set(q);
    if (p.z(q)) v.set(n + q);
  }
  return v;
}

PauliString from_symplectic(const BitVector& v, std::size_t n_qubits) {
  if (v.size() != 2 * n_qubits) throw PreconditionError("from_symplectic: length must be 2n");
  QubitMask x, z;
  for (std::size_t q = 0; q < n_qubits; ++q) {
    if (v.test(q)) x.set(q);
    if (v.test(n_qubits + q)) z.set(q);
  }
  return PauliString(n_qubits, x, z).as_label();
}

bool symplectic_product(const BitVector& a, const BitVector& b) {
  if (a.size() != b.size() || a.size() % 2) throw PreconditionError("symplectic_product: bad lengths");
  const std::size_t n = a.size() / 2;
  bool s = false;
  for (std::size_t q = 0; q < n; ++q) s ^= (a.test(q) && b.test(n + q)) ^ (a.test(n + q) && b.test(q));
  return s;
}

std::vector<PauliString> commuting_generators(const std::vector<PauliString>& strings, std::size_t n_qubits) {
  std::vector<BitVector> rows;
  for (const auto& s : strings) {
    if (s.n_qubits() != n_qubits) throw PreconditionError("commuting_generators: qubit count mismatch");
    rows.push_back(to_symplectic(s));
  }
  std::deque<BitVector> remaining;
  for (auto& r : row_reduce(std::move(rows))) remaining.push_back(std::move(r));

  std::vector<BitVector> kept;
  while (!remaining.empty()) {
    BitVector a = std::move(remaining.front());
    remaining.pop_front();
    auto partner = std::find_if(remaining.begin(), remaining.end(),
                                [&](const BitVector& b) { return symplectic_product(a, b); });
    if (partner == remaining.end()) {
      kept.push_back(std::move(a));
      continue;
    }
    BitVector b = std::move(*partner);
    remaining.erase(partner);
    for (auto& c : remaining) {
      const bool cb = symplectic_product(c, b);
      const bool ca = symplectic_product(c, a);
      if (cb) c ^= a;
      if (ca) c ^= b;
    }
    kept.push_back(std::move(a));
  }

  std::vector<PauliString> out;
  for (const auto& v : row_reduce(std::move(kept))) out.push_back(from_symplectic(v, n_qubits));
  return out;
}

std::vector<PauliString> extract_generators(const std::vector<BitVector>& kernel_basis, const PauliSum& h) {
  const std::size_t n = h.n_qubits();
  std::vector<PauliString> candidates;
  candidates.reserve(kernel_basis.size());
  for (const auto& v : kernel_basis) {
    if (v.none()) continue;
    candidates.push_back(from_symplectic(v, n));
  }
  auto gens = commuting_generators(candidates, n);
  for (const auto& g : gens)
    for (const auto& t : h)
      if (!commutes(g, t.op))
        throw InvariantBreach("extract_generators: candidate " + g.label() + " anticommutes with term " +
                              t.op.label());
  return gens;
}

std::vector<PauliString> find_symmetry_generators(const PauliSum& h) {
  return extract_generators(kernel(build_check_matrix(h)), h);
}

std::size_t pauli_rank(const std::vector<PauliString>& strings) {
  std::vector<BitVector> rows;
  for (const auto& s : strings) rows.push_back(to_symplectic(s));
  return row_reduce(std::move(rows)).size();
}

bool in_span(const PauliString& p, const std::vector<PauliString>& basis) {
  std::vector<PauliString> all(basis);
  const std::size_t r = pauli_rank(all);
  all.push_back(p);
  return pauli_rank(all) == r;
}

}  // namespace symtaper::gf2
