#pragma once

#include "moonshine/modgroup.hpp"
#include "moonshine/qseries.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace moonshine {

inline const bigint& monster_order()
{
  static const bigint m = [] {
    bigint r = 1;
    for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 46}, {3, 20}, {5, 9}, {7, 6}, {11, 2}, {13, 3}, {17, 1}, {19, 1},
                                                        {23, 1}, {29, 1}, {31, 1}, {41, 1}, {47, 1}, {59, 1}, {71, 1}})
      for (int i = 0; i < e; ++i) r *= p;
    return r;
  }();
  return m;
}

struct chartab_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// (a + b sqrt(d))/2, d squarefree
struct CharacterValue {
  bigint a = 0, b = 0;
  std::int64_t d = 1;

  CharacterValue conj() const
  {
    CharacterValue c = *this;
    if (d < 0) c.b = -c.b;
    return c;
  }
  bool is_rational() const { return b == 0; }
};

// sum_d c_d sqrt(d) / den, exact
struct RadicalSum {
  std::map<std::int64_t, bigint> terms;
  bigint den = 4;

  void add(std::int64_t d, const bigint& v)
  {
    if (v == 0) return;
    auto& t = terms[d];
    t += v;
    if (t == 0) terms.erase(d);
  }
  // += w * x * y
  void add_product(const CharacterValue& x, const CharacterValue& y, const bigint& w)
  {
    add(1, w * x.a * y.a);
    if (y.b != 0) add(y.d, w * x.a * y.b);
    if (x.b != 0) add(x.d, w * x.b * y.a);
    if (x.b != 0 && y.b != 0) {
      std::int64_t g = gcd(std::llabs(x.d), std::llabs(y.d));
      std::int64_t r = (std::llabs(x.d) / g) * (std::llabs(y.d) / g);
      int neg = (x.d < 0) + (y.d < 0);
      bigint f = w * x.b * y.b * g;
      if (neg == 2) f = -f;
      add(neg == 1 ? -r : r, f);
    }
  }
  // += w * x (x a CharacterValue, w an integer)
  void add_scaled(const CharacterValue& x, const bigint& w)
  {
    add(1, 2 * w * x.a);
    if (x.b != 0) add(x.d, 2 * w * x.b);
  }
  bool is_rational() const { return terms.empty() || (terms.size() == 1 && terms.count(1)); }
  rational rational_part() const
  {
    auto it = terms.find(1);
    return it == terms.end() ? rational(0) : rational(it->second, den);
  }
};

struct ClassInfo {
  std::string name;
  bigint centralizer_order;
  std::int64_t element_order = 1;
  std::map<std::int64_t, std::string> power_map;
  std::string group_symbol;
};

struct CharacterRow {
  int index = 0;  // 1-based
  std::vector<CharacterValue> values;
};

struct CharacterTable {
  bigint group_order;
  std::vector<ClassInfo> classes;
  std::vector<CharacterRow> rows;  // only the rows supplied
  std::vector<bigint> dims;        // all irreducible degrees
  std::map<std::string, std::size_t> class_index;

  bool full() const { return rows.size() == classes.size(); }
  bigint class_size(std::size_t g) const { return group_order / classes[g].centralizer_order; }
  std::size_t index_of(const std::string& name) const
  {
    auto it = class_index.find(name);
    if (it == class_index.end()) throw chartab_error("unknown class " + name);
    return it->second;
  }
  const CharacterRow& row(int i) const
  {
    for (auto& r : rows)
      if (r.index == i) return r;
    throw chartab_error("character " + std::to_string(i) + " not in table");
  }
  bool has_row(int i) const
  {
    for (auto& r : rows)
      if (r.index == i) return true;
    return false;
  }

  // class of g^k; primes missing from the stored maps are replaced by a congruent smooth exponent
  std::size_t power(std::size_t g, std::int64_t k) const
  {
    std::int64_t o = classes[g].element_order;
    k = mod(k, o);
    if (k == 0) return index_of_identity();
    if (k == 1) return g;
    for (std::int64_t kk = k; kk < k + 1000 * o; kk += o) {
      std::size_t cur = g;
      std::int64_t r = kk;
      bool ok = true;
      for (std::int64_t p = 2; p * p <= r && ok; ++p)
        while (r % p == 0 && ok) {
          auto it = classes[cur].power_map.find(p);
          if (it == classes[cur].power_map.end()) ok = false;
          else {
            cur = index_of(it->second);
            r /= p;
          }
        }
      if (ok && r > 1) {
        auto it = classes[cur].power_map.find(r);
        if (it == classes[cur].power_map.end()) ok = false;
        else cur = index_of(it->second);
      }
      if (ok) return cur;
    }
    throw chartab_error("power map for " + classes[g].name + "^" + std::to_string(k) + " unresolved");
  }
  std::size_t index_of_identity() const { return 0; }
};

namespace detail {

inline bigint json_bigint(const nlohmann::json& j, const std::string& what)
{
  if (j.is_string()) {
    const std::string& s = j.get_ref<const std::string&>();
    if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos) throw chartab_error("bad integer in " + what);
    return bigint(s);
  }
  if (j.is_number_integer()) return bigint(j.get<std::int64_t>());
  throw chartab_error("expected integer for " + what);
}

// worst |sum_g |cl(g)| chi_i(g) conj chi_j(g) / |M| - delta_ij|
inline rational row_orthogonality_residual(const CharacterTable& t)
{
  rational worst = 0;
  for (std::size_t x = 0; x < t.rows.size(); ++x)
    for (std::size_t y = x; y < t.rows.size(); ++y) {
      RadicalSum s;
      for (std::size_t g = 0; g < t.classes.size(); ++g)
        s.add_product(t.rows[x].values[g], t.rows[y].values[g].conj(), t.class_size(g));
      rational ip = s.rational_part() / t.group_order;
      rational res = abs(ip - rational(x == y ? 1 : 0));
      if (!s.is_rational()) res += 1;
      worst = std::max(worst, res);
    }
  return worst;
}

// worst |sum_i conj chi_i(g) chi_i(h) - delta_gh |C(g)||
inline rational column_orthogonality_residual(const CharacterTable& t)
{
  rational worst = 0;
  std::size_t n = t.classes.size();
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = g; h < n; ++h) {
      RadicalSum s;
      for (auto& r : t.rows) s.add_product(r.values[g].conj(), r.values[h], 1);
      rational res = abs(s.rational_part() - (g == h ? rational(t.classes[g].centralizer_order) : rational(0)));
      if (!s.is_rational()) res += 1;
      worst = std::max(worst, res);
    }
  return worst;
}

}  // namespace detail

inline CharacterTable character_table_from_json(const nlohmann::json& j, bool check_columns = true)
{
  CharacterTable t;
  try {
    t.group_order = detail::json_bigint(j.at("group_order"), "group_order");
    for (auto& c : j.at("classes")) {
      ClassInfo ci;
      ci.name = c.at("name").get<std::string>();
      ci.centralizer_order = detail::json_bigint(c.at("centralizer_order"), "centralizer_order");
      ci.element_order = c.at("element_order").get<std::int64_t>();
      for (auto& [k, v] : c.at("power_map").items()) ci.power_map[std::stoll(k)] = v.get<std::string>();
      ci.group_symbol = c.at("symbol").get<std::string>();
      if (t.class_index.count(ci.name)) throw chartab_error("duplicate class " + ci.name);
      t.class_index[ci.name] = t.classes.size();
      t.classes.push_back(ci);
    }
    for (auto& r : j.at("characters")) {
      CharacterRow row;
      row.index = r.at("index").get<int>();
      for (auto& v : r.at("values")) {
        CharacterValue cv{detail::json_bigint(v.at("a"), "a"), detail::json_bigint(v.at("b"), "b"), v.at("d").get<std::int64_t>()};
        if (cv.b == 0) cv.d = 1;
        row.values.push_back(cv);
      }
      t.rows.push_back(row);
    }
    if (j.contains("degrees"))
      for (auto& d : j.at("degrees")) t.dims.push_back(detail::json_bigint(d, "degrees"));
  } catch (const nlohmann::json::exception& e) {
    throw chartab_error(std::string("schema violation: ") + e.what());
  }

  if (t.group_order != monster_order()) throw chartab_error("group order mismatch");
  if (t.classes.empty() || t.classes[0].element_order != 1) throw chartab_error("first class must be the identity");
  bigint total = 0;
  for (std::size_t g = 0; g < t.classes.size(); ++g) {
    auto& c = t.classes[g];
    if (c.centralizer_order <= 0 || t.group_order % c.centralizer_order != 0) throw chartab_error("centralizer order of " + c.name + " does not divide |M|");
    total += t.class_size(g);
    parse_group_symbol(c.group_symbol);
    for (auto& [k, img] : c.power_map) {
      std::size_t h = t.index_of(img);
      std::int64_t o = c.element_order;
      if (t.classes[h].element_order != o / gcd(o, k)) throw chartab_error("power map of " + c.name + " violates element orders");
    }
  }
  if (total != t.group_order) throw chartab_error("class sizes do not sum to |M|");
  for (auto& r : t.rows) {
    if (r.values.size() != t.classes.size()) throw chartab_error("character row length mismatch");
    if (r.index < 1) throw chartab_error("character index must be >= 1");
  }
  std::sort(t.rows.begin(), t.rows.end(), [](auto& x, auto& y) { return x.index < y.index; });
  if (t.dims.empty()) {
    if (!t.full()) throw chartab_error("partial table needs a degrees list");
    for (auto& r : t.rows) t.dims.push_back(r.values[0].a / 2);
  }
  if (t.dims.size() != t.classes.size()) throw chartab_error("need one degree per irreducible");
  bigint sq = 0;
  for (std::size_t i = 0; i < t.dims.size(); ++i) {
    if (i && t.dims[i] < t.dims[i - 1]) throw chartab_error("degrees not ascending");
    sq += t.dims[i] * t.dims[i];
  }
  if (t.dims[0] != 1) throw chartab_error("first character must be trivial");
  if (sq != t.group_order) throw chartab_error("sum of squared degrees differs from |M|");
  for (auto& r : t.rows) {
    if (r.index > static_cast<int>(t.dims.size())) throw chartab_error("character index out of range");
    if (!(r.values[0].b == 0 && r.values[0].a == 2 * t.dims[r.index - 1])) throw chartab_error("character degree mismatch");
  }
  rational res = detail::row_orthogonality_residual(t);
  if (res != 0) throw chartab_error("row orthogonality failure, worst residual " + res.str());
  if (t.full() && check_columns) {
    res = detail::column_orthogonality_residual(t);
    if (res != 0) throw chartab_error("column orthogonality failure, worst residual " + res.str());
  }
  return t;
}

inline CharacterTable load_character_table(const std::string& path, bool check_columns = true)
{
  std::ifstream in(path);
  if (!in) throw data_error("cannot open character table " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw chartab_error(std::string("bad JSON: ") + e.what());
  }
  return character_table_from_json(j, check_columns);
}

inline std::string bundled_chartab_path() { return data_dir() + "/monster_partial.json"; }

// (1/|M|) sum_g |cl(g)| conj chi_i(g) f(g); must be an integer
inline bigint orthogonality_sum(const CharacterTable& t, int i, const std::function<bigint(std::size_t)>& f)
{
  const CharacterRow& r = t.row(i);
  RadicalSum s;
  for (std::size_t g = 0; g < t.classes.size(); ++g) {
    bigint v = f(g);
    if (v != 0) s.add_scaled(r.values[g].conj(), t.class_size(g) * v);
  }
  if (!s.is_rational()) throw chartab_error("irrational parts do not cancel for character " + std::to_string(i));
  rational m = s.rational_part() / t.group_order;
  if (mp::denominator(m) != 1) throw chartab_error("non-integral multiplicity for character " + std::to_string(i));
  return mp::numerator(m);
}

inline const ZSeries& trace_of(const std::map<std::string, ZSeries>& traces, const std::string& name)
{
  auto it = traces.find(name);
  if (it == traces.end()) throw chartab_error("missing trace series for class " + name);
  return it->second;
}

// m_i(-m, n) for n = -m .. prec, as a series with lead -m
inline ZSeries multiplicity_series(const CharacterTable& t, int i, std::int64_t m, const std::map<std::string, ZSeries>& traces, std::int64_t prec)
{
  ZSeries out = ZSeries::zero(-m, prec + m + 1);
  for (std::int64_t n = -m; n <= prec; ++n) {
    bigint v = orthogonality_sum(t, i, [&](std::size_t g) { return trace_of(traces, t.classes[g].name)[n]; });
    if (v < 0) throw chartab_error("negative multiplicity m_" + std::to_string(i) + "(" + std::to_string(-m) + "," + std::to_string(n) + ")");
    out.at(n) = v;
  }
  return out;
}

// sum_{k | (m,n)} (m/k) tr(g^k | V_{mn/k^2}); delta_{-m,n} for n <= 0
inline bigint adams_tower_trace(const CharacterTable& t, const std::string& g, std::int64_t m, std::int64_t n, const std::map<std::string, ZSeries>& base)
{
  if (m < 1) throw std::invalid_argument("adams_tower_trace: m < 1");
  if (n <= 0) return n == -m ? 1 : 0;
  std::size_t gi = t.index_of(g);
  bigint s = 0;
  for (std::int64_t k = 1; k <= std::min(m, n); ++k) {
    if (m % k || n % k) continue;
    s += bigint(m / k) * trace_of(base, t.classes[t.power(gi, k)].name)[m * n / (k * k)];
  }
  return s;
}

// T_g^{(-m)} for every class through q^prec
inline std::map<std::string, ZSeries> tower_traces(const CharacterTable& t, std::int64_t m, const std::map<std::string, ZSeries>& base, std::int64_t prec)
{
  std::map<std::string, ZSeries> out;
  for (auto& c : t.classes) {
    ZSeries s = ZSeries::zero(-m, prec + m + 1);
    for (std::int64_t n = -m; n <= prec; ++n) s.at(n) = adams_tower_trace(t, c.name, m, n, base);
    out[c.name] = s;
  }
  return out;
}

// n_i(n) for n = -1 .. prec from U_g = (q)_inf T_g + 1
inline ZSeries highest_weight_multiplicities(const CharacterTable& t, int i, const std::map<std::string, ZSeries>& traces, std::int64_t prec)
{
  std::map<std::string, ZSeries> u;
  for (auto& c : t.classes) u[c.name] = ug_from_tg(trace_of(traces, c.name).truncated(prec + 1));
  ZSeries out = ZSeries::zero(-1, prec + 2);
  for (std::int64_t n = -1; n <= prec; ++n) {
    bigint v = orthogonality_sum(t, i, [&](std::size_t g) { return u.at(t.classes[g].name)[n]; });
    if (v < 0) throw chartab_error("negative highest-weight multiplicity n_" + std::to_string(i) + "(" + std::to_string(n) + ")");
    out.at(n) = v;
  }
  return out;
}

struct ModuleDecomposition {
  std::int64_t m = 1, n = 0;
  std::vector<bigint> multiplicities;  // by character index - 1, zero for rows not supplied
  bigint target;                       // c(-m, n)
};

// all supplied rows at once
inline ModuleDecomposition decompose(const CharacterTable& t, std::int64_t m, std::int64_t n, const std::map<std::string, ZSeries>& traces)
{
  ModuleDecomposition d;
  d.m = m;
  d.n = n;
  d.multiplicities.assign(t.dims.size(), 0);
  d.target = trace_of(traces, t.classes[0].name)[n];
  for (auto& r : t.rows)
    d.multiplicities[r.index - 1] = orthogonality_sum(t, r.index, [&](std::size_t g) { return trace_of(traces, t.classes[g].name)[n]; });
  return d;
}

struct AuditReport {
  bool ok = true;
  std::vector<std::string> violations;
};

inline AuditReport nonnegativity_audit(const CharacterTable& t, const std::vector<ModuleDecomposition>& ds)
{
  AuditReport r;
  for (auto& d : ds) {
    std::string tag = "(" + std::to_string(-d.m) + "," + std::to_string(d.n) + ")";
    bigint dim = 0;
    for (std::size_t i = 0; i < d.multiplicities.size(); ++i) {
      if (d.multiplicities[i] < 0) r.violations.push_back("m_" + std::to_string(i + 1) + tag + " = " + d.multiplicities[i].str());
      dim += d.multiplicities[i] * t.dims[i];
    }
    if (t.full() && dim != d.target) r.violations.push_back("dimension " + tag + ": " + dim.str() + " != " + d.target.str());
  }
  r.ok = r.violations.empty();
  return r;
}

} // namespace moonshine
