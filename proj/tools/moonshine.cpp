#include "moonshine/distrib.hpp"
#include "moonshine/monster.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace moonshine;
using nlohmann::json;

namespace {

struct RunConfig {
  std::string cls = "1A";
  std::int64_t m = 1;
  std::string n_list;
  std::int64_t n_max = 10;
  std::string thresholds = "25,50,75,100";
  std::int64_t c_max = 200;
  unsigned bits = 256;
  std::string chartab;
  std::string format = "text";
  std::string out;
  std::string indices;
};

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::int64_t> int_list(const std::string& s, const char* what)
{
  std::vector<std::int64_t> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      std::size_t pos = 0;
      v.push_back(std::stoll(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw usage_error(std::string("bad integer in ") + what + ": " + tok);
    }
  }
  return v;
}

PrecisionConfig precision(const RunConfig& rc)
{
  PrecisionConfig p{rc.bits, rc.c_max};
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw usage_error(e.what());
  }
  return p;
}

GroupSymbol lookup_class(const std::string& cls)
{
  auto syms = load_monster_symbols();
  auto it = syms.find(cls);
  if (it != syms.end()) return it->second;
  try {
    return parse_group_symbol(cls);
  } catch (const std::invalid_argument&) {
    throw usage_error("unknown class " + cls);
  }
}

// digits after the point, truncated toward zero like the printed tables
std::string truncated_decimal(const real& x, int digits)
{
  bigint scale = 1;
  for (int k = 0; k < digits; ++k) scale *= 10;
  real y = mp::trunc(x * real(scale));
  bigint z = nearest_integer(y);
  bool neg = z < 0;
  std::string s = bigint(abs(z)).str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  return (neg ? "-" : "") + s;
}

// rows of cells; first row is the header
using Grid = std::vector<std::vector<std::string>>;

void emit(const RunConfig& rc, const Grid& g, const json& extra = json::object())
{
  std::ostringstream os;
  if (rc.format == "csv") {
    for (auto& r : g) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
      os << "\n";
    }
  } else if (rc.format == "json") {
    json j = extra;
    j["columns"] = g.front();
    j["rows"] = json::array();
    for (std::size_t i = 1; i < g.size(); ++i) j["rows"].push_back(g[i]);
    os << j.dump(1) << "\n";
  } else {
    std::vector<std::size_t> w;
    for (auto& r : g)
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (w.size() <= i) w.push_back(0);
        w[i] = std::max(w[i], r[i].size());
      }
    for (auto& r : g) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "  " : "") << std::setw(static_cast<int>(w[i])) << r[i];
      os << "\n";
    }
    if (extra.contains("note")) os << extra["note"].get<std::string>() << "\n";
  }
  if (rc.out.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream f(rc.out);
    if (!f) throw data_error("cannot write " + rc.out);
    f << os.str();
  }
}

int cmd_jcoeffs(const RunConfig& rc)
{
  if (rc.n_max < 0) throw usage_error("--n-max must be >= 0");
  auto j = j_series(rc.n_max);
  Grid g{{"n", "c(n)"}};
  for (std::int64_t n = -1; n <= rc.n_max; ++n) g.push_back({std::to_string(n), j[n].str()});
  emit(rc, g);
  return 0;
}

int cmd_convergence(const RunConfig& rc)
{
  auto sym = lookup_class(rc.cls);
  auto ns = int_list(rc.n_list.empty() ? "1,5,10" : rc.n_list, "--n");
  auto th = int_list(rc.thresholds, "--thresholds");
  if (ns.empty() || th.empty()) throw usage_error("need at least one n and one threshold");
  for (auto n : ns)
    if (n < 1) throw usage_error("--n entries must be >= 1");
  for (auto t : th)
    if (t < 1) throw usage_error("thresholds must be >= 1");
  std::sort(th.begin(), th.end());
  th.erase(std::unique(th.begin(), th.end()), th.end());
  auto cfg = precision(rc);
  auto est = tg_partial(sym, rc.m, ns, th, cfg);
  std::int64_t nmax = *std::max_element(ns.begin(), ns.end());
  // exact row from rounding at c_max
  std::vector<std::int64_t> all;
  for (std::int64_t n = 1; n <= nmax; ++n) all.push_back(n);
  auto ex = tg_partial(sym, rc.m, all, {cfg.c_max}, cfg);
  std::vector<CoefficientEstimate> flat;
  for (auto& e : ex) flat.push_back(e[0]);
  precision_scope ps(cfg.working_bits);
  RoundedSeries rs = round_estimates(flat);

  Grid g{{"c"}};
  for (auto n : ns) g[0].push_back("n=" + std::to_string(n));
  for (std::size_t j = 0; j < th.size(); ++j) {
    std::vector<std::string> r{"c<=" + std::to_string(th[j])};
    for (std::size_t i = 0; i < ns.size(); ++i) r.push_back(truncated_decimal(est[i][j].value.re, 3));
    g.push_back(r);
  }
  std::vector<std::string> r{"exact"};
  for (auto n : ns) r.push_back(rs.series[n].str());
  g.push_back(r);
  json extra;
  extra["class"] = rc.cls;
  extra["symbol"] = sym.text;
  extra["m"] = rc.m;
  extra["c_max"] = cfg.c_max;
  std::vector<double> dist;
  for (auto n : ns) dist.push_back(rs.distance[n - 1]);
  extra["rounding_distance"] = dist;
  std::ostringstream note;
  note << "symbol " << sym.text << ", exact row by rounding at c_max " << cfg.c_max;
  extra["note"] = note.str();
  emit(rc, g, extra);
  return 0;
}

int cmd_tower(const RunConfig& rc)
{
  auto sym = lookup_class(rc.cls);
  if (rc.m < 1) throw usage_error("--m must be >= 1");
  if (rc.n_max < 1) throw usage_error("--n-max must be >= 1");
  auto cfg = precision(rc);
  ZSeries base;
  if (sym.N == 1) {
    base = j_series(rc.n_max + rc.m);
  } else {
    base = rounded_tg_series(sym, rc.n_max + rc.m, cfg).series;
  }
  auto f = faber_tower(base, rc.m);
  Grid g{{"n", "coefficient"}};
  for (std::int64_t n = -rc.m; n <= rc.n_max; ++n) g.push_back({std::to_string(n), f.series[n].str()});
  std::ostringstream poly;
  for (std::int64_t k = rc.m; k >= 0; --k) {
    if (f.poly[k] == 0) continue;
    bigint c = f.poly[k];
    bool first = poly.str().empty();
    if (!first) poly << (c < 0 ? " - " : " + ");
    else if (c < 0) poly << "-";
    bigint a = abs(c);
    if (k == 0 || a != 1) poly << a.str();
    if (k >= 1) poly << "T" << (k > 1 ? "^" + std::to_string(k) : "");
  }
  json extra;
  extra["class"] = rc.cls;
  extra["m"] = rc.m;
  extra["faber_polynomial"] = poly.str();
  std::vector<std::string> pc;
  for (auto& c : f.poly) pc.push_back(c.str());
  extra["faber_coefficients"] = pc;
  extra["note"] = "P_" + std::to_string(rc.m) + "(T) = " + poly.str();
  emit(rc, g, extra);
  return 0;
}

CharacterTable table_for(const RunConfig& rc)
{
  return load_character_table(rc.chartab.empty() ? bundled_chartab_path() : rc.chartab);
}

std::vector<int> chosen_indices(const CharacterTable& t, const std::string& s, std::vector<int> dflt)
{
  if (s.empty()) return dflt;
  std::vector<int> v;
  for (auto x : int_list(s, "--i")) {
    if (x < 1 || x > static_cast<std::int64_t>(t.dims.size())) throw usage_error("character index out of range");
    v.push_back(static_cast<int>(x));
  }
  return v;
}

std::map<std::string, ZSeries> traces_for(const CharacterTable& t, std::int64_t m, std::int64_t n_max, const PrecisionConfig& cfg)
{
  auto base = monster_traces(t, std::max<std::int64_t>(m * n_max, 1), cfg);
  if (m == 1) return base;
  return tower_traces(t, m, base, n_max);
}

int cmd_multiplicities(const RunConfig& rc)
{
  if (rc.m < 1) throw usage_error("--m must be >= 1");
  if (rc.n_max < 1) throw usage_error("--n-max must be >= 1");
  auto cfg = precision(rc);
  auto t = table_for(rc);
  std::vector<int> dflt;
  for (auto& r : t.rows) dflt.push_back(r.index);
  auto idx = chosen_indices(t, rc.indices, dflt);
  for (int i : idx)
    if (!t.has_row(i)) throw data_error("character " + std::to_string(i) + " not in the supplied table");
  auto tr = traces_for(t, rc.m, rc.n_max, cfg);
  Grid g{{"n", "dim"}};
  for (int i : idx) g[0].push_back("m" + std::to_string(i));
  std::vector<ModuleDecomposition> ds;
  for (std::int64_t n = -rc.m; n <= rc.n_max; ++n) {
    auto d = decompose(t, rc.m, n, tr);
    std::vector<std::string> r{std::to_string(n), d.target.str()};
    for (int i : idx) r.push_back(d.multiplicities[i - 1].str());
    g.push_back(r);
    ds.push_back(d);
  }
  auto audit = nonnegativity_audit(t, ds);
  json extra;
  extra["m"] = rc.m;
  extra["full_table"] = t.full();
  extra["audit_ok"] = audit.ok;
  extra["violations"] = audit.violations;
  extra["note"] = std::string("nonnegativity audit: ") + (audit.ok ? "pass" : "FAIL") + (t.full() ? "" : " (partial table: dimension identity not checked)");
  emit(rc, g, extra);
  return audit.ok ? 0 : 3;
}

int cmd_distribution(const RunConfig& rc)
{
  if (rc.m < 1) throw usage_error("--m must be >= 1");
  auto cfg = precision(rc);
  auto t = table_for(rc);
  if (!t.full()) throw data_error("distribution needs a complete character table (--chartab)");
  auto idx = chosen_indices(t, rc.indices, {1, 2, 194});
  auto ns = int_list(rc.n_list.empty() ? "-1,0,1,2,40" : rc.n_list, "--n");
  if (ns.empty()) throw usage_error("need at least one n");
  std::int64_t nmax = 1;
  for (auto n : ns) {
    if (n < -rc.m) throw usage_error("--n entries must be >= -m");
    nmax = std::max(nmax, n);
  }
  auto tr = traces_for(t, rc.m, nmax, cfg);
  std::vector<ModuleDecomposition> ds;
  for (auto n : ns) ds.push_back(decompose(t, rc.m, n, tr));
  auto rows = proportion_table(t, ds, idx);
  Grid g{{"n"}};
  for (int i : idx) g[0].push_back("delta(m" + std::to_string(i) + ")");
  auto fmt = [](const rational& q) {
    if (q == 0) return std::string("0");
    if (q == 1) return std::string("1");
    if (mp::numerator(q) == 1 && mp::denominator(q) < 1000) return q.str();
    return sci(q);
  };
  for (auto& r : rows) {
    std::vector<std::string> cells{std::to_string(r.n)};
    for (std::size_t k = 0; k < idx.size(); ++k) cells.push_back(r.delta ? fmt((*r.delta)[k]) : "—");
    g.push_back(cells);
  }
  std::vector<std::string> lim{"inf"};
  for (int i : idx) lim.push_back(delta_limit(t, i).str());
  g.push_back(lim);
  std::vector<std::string> limd{"inf(dec)"};
  for (int i : idx) limd.push_back(sci(delta_limit(t, i)));
  g.push_back(limd);
  json extra;
  extra["m"] = rc.m;
  emit(rc, g, extra);
  return 0;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"moonshine: McKay-Thompson series, Rademacher sums and Monster module decompositions"};
  app.require_subcommand(1);
  RunConfig rc;

  auto common = [&](CLI::App* s) {
    s->add_option("--cmax", rc.c_max, "truncation bound on c")->capture_default_str();
    s->add_option("--bits", rc.bits, "working precision in bits")->capture_default_str();
    s->add_option("--format", rc.format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}))->capture_default_str();
    s->add_option("--out", rc.out, "output file (default stdout)");
  };

  auto* jc = app.add_subcommand("jcoeffs", "exact coefficients of J");
  jc->add_option("--n-max", rc.n_max, "last index")->capture_default_str();
  common(jc);

  auto* cv = app.add_subcommand("convergence", "partial Rademacher sums for T_g at c thresholds");
  cv->add_option("--class", rc.cls, "class name or group symbol")->capture_default_str();
  cv->add_option("--m", rc.m, "pole order of the tower member")->capture_default_str();
  cv->add_option("--n", rc.n_list, "comma separated indices (default 1,5,10)");
  cv->add_option("--thresholds", rc.thresholds, "comma separated c bounds")->capture_default_str();
  common(cv);

  auto* tw = app.add_subcommand("tower", "T_g^(-m) and its Faber polynomial");
  tw->add_option("--class", rc.cls, "class name or group symbol")->capture_default_str();
  tw->add_option("--m", rc.m, "tower index")->capture_default_str();
  tw->add_option("--n-max", rc.n_max, "last index")->capture_default_str();
  common(tw);

  auto* mu = app.add_subcommand("multiplicities", "decompose V^(-m)_n into irreducibles");
  mu->add_option("--chartab", rc.chartab, "character table JSON (default bundled partial table)");
  mu->add_option("--m", rc.m, "tower index")->capture_default_str();
  mu->add_option("--n-max", rc.n_max, "last index")->capture_default_str();
  mu->add_option("--i", rc.indices, "comma separated character indices");
  common(mu);

  auto* di = app.add_subcommand("distribution", "proportions delta(m_i(-m,n))");
  di->add_option("--chartab", rc.chartab, "complete character table JSON")->required();
  di->add_option("--m", rc.m, "tower index")->capture_default_str();
  di->add_option("--n", rc.n_list, "comma separated indices (default -1,0,1,2,40)");
  di->add_option("--i", rc.indices, "comma separated character indices (default 1,2,194)");
  common(di);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int r = app.exit(e);
    return r == 0 ? 0 : 2;
  }

  try {
    if (jc->parsed()) return cmd_jcoeffs(rc);
    if (cv->parsed()) return cmd_convergence(rc);
    if (tw->parsed()) return cmd_tower(rc);
    if (mu->parsed()) return cmd_multiplicities(rc);
    if (di->parsed()) return cmd_distribution(rc);
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const certificate_error& e) {
    std::cerr << "certificate failure: " << e.what() << "\n";
    return 3;
  } catch (const replication_error& e) {
    std::cerr << "certificate failure: " << e.what() << "\n";
    return 3;
  } catch (const data_error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 4;
  } catch (const chartab_error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
