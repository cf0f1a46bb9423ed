#include "symtaper/integrals.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "symtaper/error.hpp"
#include "symtaper/fermion_map.hpp"
#include "symtaper/spectrum.hpp"

namespace symtaper {

namespace {

constexpr double kDuplicateTolerance = 1e-10;

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

double parse_number(std::string tok, std::size_t line_no) {
  std::replace(tok.begin(), tok.end(), 'D', 'E');
  std::replace(tok.begin(), tok.end(), 'd', 'e');
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError("FCIDUMP line " + std::to_string(line_no) + ": bad number '" + tok + "'");
  }
}

long parse_index(const std::string& tok, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const long v = std::stol(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError("FCIDUMP line " + std::to_string(line_no) + ": bad index '" + tok + "'");
  }
}

using Quad = std::array<std::size_t, 4>;

// Smallest of the eight index orderings equivalent under real-orbital symmetry.
Quad canonical_quad(std::size_t p, std::size_t q, std::size_t r, std::size_t s) {
  const Quad all[8] = {{p, q, r, s}, {q, p, r, s}, {p, q, s, r}, {q, p, s, r},
                       {r, s, p, q}, {s, r, p, q}, {r, s, q, p}, {s, r, q, p}};
  return *std::min_element(std::begin(all), std::end(all));
}

}  // namespace

IntegralSet::IntegralSet(std::size_t n_spatial, std::size_t n_alpha, std::size_t n_beta)
    : n_spatial_(n_spatial), n_alpha_(n_alpha), n_beta_(n_beta) {
  const std::size_t m = 2 * n_spatial;
  h1_.assign(m * m, 0.0);
  h2_.assign(m * m * m * m, 0.0);
}

void IntegralSet::set_spatial_two_body(std::size_t p, std::size_t q, std::size_t r, std::size_t s, double value) {
  const std::size_t n = n_spatial_;
  for (std::size_t sig = 0; sig < 2; ++sig)
    for (std::size_t tau = 0; tau < 2; ++tau) {
      const std::size_t i = p + sig * n, l = q + sig * n, j = r + tau * n, k = s + tau * n;
      h2(i, j, k, l) = value;
    }
}

void IntegralSet::set_spatial_one_body(std::size_t p, std::size_t q, double value) {
  const std::size_t n = n_spatial_;
  for (std::size_t sig = 0; sig < 2; ++sig) {
    h1(p + sig * n, q + sig * n) = value;
    h1(q + sig * n, p + sig * n) = value;
  }
}

double IntegralSet::max_structure_violation() const {
  const std::size_t m = n_modes(), n = n_spatial_;
  auto spin = [n](std::size_t i) { return i >= n; };
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      worst = std::max(worst, std::abs(h1(i, j) - h1(j, i)));
      if (spin(i) != spin(j)) worst = std::max(worst, std::abs(h1(i, j)));
    }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) {
          const double v = h2(i, j, k, l);
          worst = std::max(worst, std::abs(v - h2(l, k, j, i)));
          if ((spin(i) != spin(l) || spin(j) != spin(k)) && v != 0.0) worst = std::max(worst, std::abs(v));
        }
  return worst;
}

IntegralSet parse_fcidump(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::string header;
  bool started = false, ended = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string up = upper(line);
    if (!started) {
      const auto pos = up.find("&FCI");
      if (pos == std::string::npos) {
        if (up.find_first_not_of(" \t\r") == std::string::npos) continue;
        throw ParseError("FCIDUMP: expected '&FCI' header on line " + std::to_string(line_no));
      }
      started = true;
      header += up.substr(pos + 4) + ",";
    } else {
      header += up + ",";
    }
    const auto end_pos = header.find("&END");
    const auto slash = header.find('/');
    if (end_pos != std::string::npos || slash != std::string::npos) {
      header = header.substr(0, std::min(end_pos, slash));
      ended = true;
      break;
    }
  }
  if (!started || !ended) throw ParseError("FCIDUMP: malformed header (missing &FCI ... &END)");

  std::map<std::string, long> keys;
  {
    std::string cleaned = header;
    std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
    std::istringstream hs(cleaned);
    std::string tok;
    while (hs >> tok) {
      // "KEY=VALUE" or "KEY=" followed by the value as the next token
      const auto eq = tok.find('=');
      if (eq == std::string::npos) continue;
      std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
      if (val.empty() && !(hs >> val)) break;
      if (key == "NORB" || key == "NELEC" || key == "MS2") {
        try {
          keys[key] = std::stol(val);
        } catch (const std::exception&) {
          throw ParseError("FCIDUMP: malformed header value for " + key);
        }
      }
    }
  }
  if (!keys.count("NORB") || !keys.count("NELEC")) throw ParseError("FCIDUMP: header lacks NORB or NELEC");
  const long norb = keys["NORB"], nelec = keys["NELEC"], ms2 = keys.count("MS2") ? keys["MS2"] : 0;
  if (norb <= 0) throw ParseError("FCIDUMP: NORB must be positive");
  if (nelec < 0 || std::abs(ms2) > nelec || (nelec + ms2) % 2 != 0)
    throw ParseError("FCIDUMP: NELEC=" + std::to_string(nelec) + " and MS2=" + std::to_string(ms2) + " are inconsistent");
  const long n_alpha = (nelec + ms2) / 2, n_beta = (nelec - ms2) / 2;
  if (n_alpha > norb || n_beta > norb) throw ParseError("FCIDUMP: more electrons of one spin than orbitals");

  const auto n = static_cast<std::size_t>(norb);
  IntegralSet ints(n, static_cast<std::size_t>(n_alpha), static_cast<std::size_t>(n_beta));
  std::map<Quad, double> two_body;
  std::map<std::pair<std::size_t, std::size_t>, double> one_body;
  bool have_core = false;
  double core = 0.0;

  auto check_dup = [&](auto& table, const auto& key, double v) {
    auto [it, inserted] = table.emplace(key, v);
    if (!inserted && std::abs(it->second - v) > kDuplicateTolerance)
      throw ParseError("FCIDUMP line " + std::to_string(line_no) + ": conflicting duplicate integral");
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tv, ti, tj, tk, tl;
    if (!(ls >> tv)) continue;
    if (!(ls >> ti >> tj >> tk >> tl)) throw ParseError("FCIDUMP line " + std::to_string(line_no) + ": expected 'value i j k l'");
    const double v = parse_number(tv, line_no);
    const long i = parse_index(ti, line_no), j = parse_index(tj, line_no), k = parse_index(tk, line_no),
               l = parse_index(tl, line_no);
    for (long idx : {i, j, k, l})
      if (idx < 0 || idx > norb)
        throw ParseError("FCIDUMP line " + std::to_string(line_no) + ": orbital index out of range");
    if (i && j && k && l) {
      check_dup(two_body, canonical_quad(i - 1, j - 1, k - 1, l - 1), v);
    } else if (i && j && !k && !l) {
      const auto a = static_cast<std::size_t>(std::min(i, j) - 1), b = static_cast<std::size_t>(std::max(i, j) - 1);
      check_dup(one_body, std::make_pair(a, b), v);
    } else if (!i && !j && !k && !l) {
      if (have_core && std::abs(core - v) > kDuplicateTolerance)
        throw ParseError("FCIDUMP line " + std::to_string(line_no) + ": conflicting core energy");
      have_core = true;
      core = v;
    } else if (i && !j && !k && !l) {
      // orbital energy; not needed
    } else {
      throw ParseError("FCIDUMP line " + std::to_string(line_no) + ": unsupported index pattern");
    }
  }

  for (const auto& [q, v] : two_body) {
    const auto [p, qq, r, s] = q;
    const Quad all[8] = {{p, qq, r, s}, {qq, p, r, s}, {p, qq, s, r}, {qq, p, s, r},
                         {r, s, p, qq}, {s, r, p, qq}, {r, s, qq, p}, {s, r, qq, p}};
    for (const auto& a : all) ints.set_spatial_two_body(a[0], a[1], a[2], a[3], v);
  }
  for (const auto& [pq, v] : one_body) ints.set_spatial_one_body(pq.first, pq.second, v);
  ints.set_e_core(core);
  return ints;
}

IntegralSet read_fcidump(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open FCIDUMP file '" + path + "'");
  return parse_fcidump(f);
}

void write_fcidump(const IntegralSet& ints, std::ostream& out, double tol) {
  const std::size_t n = ints.n_spatial();
  const long ms2 = static_cast<long>(ints.n_alpha()) - static_cast<long>(ints.n_beta());
  out << " &FCI NORB=" << n << ",NELEC=" << ints.n_electrons() << ",MS2=" << ms2 << ",\n &END\n";
  out << std::setprecision(17);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q <= p; ++q)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s <= r; ++s) {
          if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + s) continue;
          const double v = ints.chemist(p, q, r, s);
          if (std::abs(v) > tol) out << v << ' ' << p + 1 << ' ' << q + 1 << ' ' << r + 1 << ' ' << s + 1 << '\n';
        }
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q <= p; ++q) {
      const double v = ints.h1(p, q);
      if (std::abs(v) > tol) out << v << ' ' << p + 1 << ' ' << q + 1 << " 0 0\n";
    }
  out << ints.e_core() << " 0 0 0 0\n";
  if (!out) throw Error("write_fcidump: stream write failed");
}

CarDiagnostics hamiltonian_action_check(const IntegralSet& ints) {
  const std::size_t m = std::min<std::size_t>(ints.n_modes(), 6);
  CarDiagnostics d;
  d.modes_checked = m;
  if (m == 0) return d;
  std::vector<Eigen::MatrixXcd> a(m), ad(m);
  for (std::size_t p = 0; p < m; ++p) {
    a[p] = to_dense(annihilation_image(p, m, MappingKind::JordanWigner));
    ad[p] = to_dense(creation_image(p, m, MappingKind::JordanWigner));
  }
  const Eigen::Index dim = Eigen::Index{1} << m;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const Eigen::MatrixXcd aa = a[i] * a[j] + a[j] * a[i];
      Eigen::MatrixXcd aad = a[i] * ad[j] + ad[j] * a[i];
      if (i == j) aad -= id;
      d.max_deviation = std::max({d.max_deviation, aa.cwiseAbs().maxCoeff(), aad.cwiseAbs().maxCoeff()});
    }
  return d;
}

}  // namespace symtaper
