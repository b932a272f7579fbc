#pragma once

#include "moonshine/chartab.hpp"

#include <iomanip>
#include <optional>
#include <sstream>

namespace moonshine {

inline void check_index(const CharacterTable& t, int i)
{
  if (i < 1 || i > static_cast<int>(t.dims.size())) throw std::invalid_argument("character index out of range");
}

// dim chi_i |m|^{1/4} / (sqrt2 |n|^{3/4} |M|) e^{4 pi sqrt|mn|}
inline real main_term_m(const CharacterTable& t, int i, std::int64_t m, std::int64_t n)
{
  check_index(t, i);
  if (m < 1 || n < 1) throw std::invalid_argument("main_term_m: m, n >= 1");
  real rm(m), rn(n);
  return real(t.dims[i - 1]) * mp::pow(rm, real(0.25)) / (mp::sqrt(real(2)) * mp::pow(rn, real(0.75)) * real(t.group_order)) *
         mp::exp(4 * pi() * mp::sqrt(rm * rn));
}

// sqrt12 dim chi_i / (|24n+1|^{1/2} |M|) e^{(pi/6) sqrt(23 |24n+1|)}
inline real main_term_n(const CharacterTable& t, int i, std::int64_t n)
{
  check_index(t, i);
  if (n < 1) throw std::invalid_argument("main_term_n: n >= 1");
  real k(24 * n + 1);
  return mp::sqrt(real(12)) * real(t.dims[i - 1]) / (mp::sqrt(k) * real(t.group_order)) * mp::exp(pi() / 6 * mp::sqrt(23 * k));
}

inline bigint dims_sum(const CharacterTable& t)
{
  bigint s = 0;
  for (auto& d : t.dims) s += d;
  return s;
}

inline rational delta_limit(const CharacterTable& t, int i)
{
  check_index(t, i);
  return rational(t.dims[i - 1], dims_sum(t));
}

// d.ddd x 10^e with `sig` significant digits, truncated like the table entries
inline std::string sci(const rational& q, int sig = 4)
{
  if (q == 0) return "0";
  bool neg = q < 0;
  rational a = neg ? rational(-q) : q;
  // find e with 1 <= a / 10^e < 10
  int e = 0;
  bigint ten = 10;
  rational x = a;
  while (x >= 10) {
    x /= 10;
    ++e;
  }
  while (x < 1) {
    x *= 10;
    --e;
  }
  bigint scale = 1;
  for (int k = 1; k < sig; ++k) scale *= 10;
  rational xs = x * scale;
  bigint digits = mp::numerator(xs) / mp::denominator(xs);
  std::string s = digits.str();
  std::string out = (neg ? "-" : "") + s.substr(0, 1) + (s.size() > 1 ? "." + s.substr(1) : "");
  if (e != 0) out += "e" + std::to_string(e);
  return out;
}

struct ProportionRow {
  std::int64_t n = 0;
  std::optional<std::vector<rational>> delta;  // empty when V_n = 0
};

// delta(m_i(-m, n)) = m_i / sum_j m_j for the requested characters
inline std::vector<ProportionRow> proportion_table(const CharacterTable& t, const std::vector<ModuleDecomposition>& ds, const std::vector<int>& indices)
{
  std::vector<ProportionRow> rows;
  for (auto& d : ds) {
    ProportionRow r;
    r.n = d.n;
    bigint total = 0;
    for (auto& m : d.multiplicities) total += m;
    if (total != 0) {
      std::vector<rational> v;
      for (int i : indices) {
        check_index(t, i);
        v.push_back(rational(d.multiplicities[i - 1], total));
      }
      r.delta = v;
    }
    rows.push_back(r);
  }
  return rows;
}

struct QuantumDimension {
  std::vector<std::pair<std::int64_t, rational>> sequence;  // (n, m_i/m_1)
  rational relative_gap;                                    // at the last n
};

inline QuantumDimension quantum_dimension(const CharacterTable& t, int i, const std::vector<ModuleDecomposition>& ds)
{
  check_index(t, i);
  QuantumDimension q;
  for (auto& d : ds) {
    if (d.multiplicities[0] == 0) continue;
    q.sequence.emplace_back(d.n, rational(d.multiplicities[i - 1], d.multiplicities[0]));
  }
  if (q.sequence.empty()) throw std::domain_error("quantum_dimension: m_1 vanishes on the whole range");
  rational dim(t.dims[i - 1]);
  q.relative_gap = abs(q.sequence.back().second - dim) / dim;
  return q;
}

} // namespace moonshine
