#include "symtaper/fermion_map.hpp"

#include <cmath>

namespace symtaper {

namespace {

struct SmallTerm {
  PauliString op;
  cplx coeff;
};
using SmallSum = std::vector<SmallTerm>;

// a+_p (dagger) or a_p as two weighted strings.
SmallSum ladder(std::size_t p, std::size_t n, MappingKind kind, bool dagger) {
  if (p >= n) throw PreconditionError("fermion mapping: mode index out of range");
  QubitMask x_common, z_common;
  QubitMask z_extra;  // extra Z factor carried only by the X_p part
  switch (kind) {
    case MappingKind::JordanWigner:
      for (std::size_t q = 0; q < p; ++q) z_common.set(q);
      break;
    case MappingKind::Parity:
      for (std::size_t q = p + 1; q < n; ++q) x_common.set(q);
      if (p > 0) z_extra.set(p - 1);
      break;
  }
  QubitMask xp = x_common, zx = z_common ^ z_extra;
  xp.set(p);
  QubitMask zy = z_common;
  zy.set(p);
  // creation: (X_p [Z_{p-1}] - i Y_p)/2, annihilation: (X_p [Z_{p-1}] + i Y_p)/2
  const PauliString x_part = PauliString(n, xp, zx).as_label();
  const PauliString y_part = PauliString(n, xp, zy).as_label();
  const cplx y_coeff = dagger ? cplx{0, -0.5} : cplx{0, 0.5};
  return {{x_part, 0.5}, {y_part, y_coeff}};
}

SmallSum product(const SmallSum& a, const SmallSum& b) {
  SmallSum out;
  out.reserve(a.size() * b.size());
  for (const auto& ta : a)
    for (const auto& tb : b) out.push_back({multiply(ta.op, tb.op), ta.coeff * tb.coeff});
  return out;
}

PauliSum to_sum(const SmallSum& s, std::size_t n) {
  PauliSumBuilder b(n);
  for (const auto& t : s) b.add(t.op, t.coeff);
  return b.build();
}

}  // namespace

std::string to_string(MappingKind kind) {
  switch (kind) {
    case MappingKind::JordanWigner: return "jordan-wigner";
    case MappingKind::Parity: return "parity";
  }
  return "unknown";
}

MappingKind parse_mapping(const std::string& name) {
  if (name == "jw" || name == "jordan-wigner") return MappingKind::JordanWigner;
  if (name == "parity") return MappingKind::Parity;
  throw PreconditionError("unsupported mapping '" + name + "' (expected jw or parity)");
}

PauliSum creation_image(std::size_t p, std::size_t n_modes, MappingKind kind) {
  return to_sum(ladder(p, n_modes, kind, true), n_modes);
}

PauliSum annihilation_image(std::size_t p, std::size_t n_modes, MappingKind kind) {
  return to_sum(ladder(p, n_modes, kind, false), n_modes);
}

PauliSum map_excitation(std::size_t p, std::size_t q, std::size_t n_modes, MappingKind kind) {
  const auto ad_p = ladder(p, n_modes, kind, true);
  const auto a_q = ladder(q, n_modes, kind, false);
  if (p == q) return to_sum(product(ad_p, a_q), n_modes);
  const auto ad_q = ladder(q, n_modes, kind, true);
  const auto a_p = ladder(p, n_modes, kind, false);
  auto terms = product(ad_p, a_q);
  for (auto& t : product(ad_q, a_p)) terms.push_back(std::move(t));
  return to_sum(terms, n_modes);
}

PauliSum map_hamiltonian(const IntegralSet& ints, MappingKind kind, double drop_tol) {
  const std::size_t m = ints.n_modes();
  std::vector<SmallSum> cre(m), ann(m);
  for (std::size_t p = 0; p < m; ++p) {
    cre[p] = ladder(p, m, kind, true);
    ann[p] = ladder(p, m, kind, false);
  }
  PauliSumBuilder h(m);
  if (ints.e_core() != 0.0) h.add(PauliString(m), ints.e_core());

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const double v = ints.h1(i, j);
      if (v == 0.0) continue;
      for (const auto& t : product(cre[i], ann[j])) h.add(t.op, v * t.coeff);
    }

  // a+_i a+_j and a_k a_l pair images, normal order as written
  std::vector<SmallSum> cc(m * m), aa(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      cc[i * m + j] = product(cre[i], cre[j]);
      aa[i * m + j] = product(ann[i], ann[j]);
    }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) {
          if (k == l) continue;
          const double v = ints.h2(i, j, k, l);
          if (v == 0.0) continue;
          for (const auto& left : cc[i * m + j])
            for (const auto& right : aa[k * m + l])
              h.add(multiply(left.op, right.op), 0.5 * v * left.coeff * right.coeff);
        }
    }
  return h.build(drop_tol);
}

PauliString mode_parity_string(const std::vector<std::size_t>& modes, std::size_t n_modes, MappingKind kind) {
  QubitMask z;
  for (auto p : modes) {
    if (p >= n_modes) throw PreconditionError("mode_parity_string: mode index out of range");
    z.flip(p);
    if (kind == MappingKind::Parity && p > 0) z.flip(p - 1);
  }
  return PauliString(n_modes, {}, z);
}

QubitMask encode_occupation(const std::vector<bool>& occupied, MappingKind kind) {
  QubitMask b;
  bool running = false;
  for (std::size_t p = 0; p < occupied.size(); ++p) {
    running ^= occupied[p];
    b.set(p, kind == MappingKind::JordanWigner ? bool(occupied[p]) : running);
  }
  return b;
}

PauliSum number_operator(std::size_t n_modes, MappingKind kind) {
  PauliSumBuilder b(n_modes);
  for (std::size_t p = 0; p < n_modes; ++p) b.add(map_excitation(p, p, n_modes, kind));
  return b.build();
}

}  // namespace symtaper
