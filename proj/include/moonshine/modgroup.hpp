#pragma once

#include "moonshine/numeric.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#ifndef MOONSHINE_DEFAULT_DATA_DIR
#define MOONSHINE_DEFAULT_DATA_DIR "data"
#endif

namespace moonshine {

inline std::string data_dir()
{
  if (const char* p = std::getenv("MOONSHINE_DATA_DIR"); p && *p) return p;
  return MOONSHINE_DEFAULT_DATA_DIR;
}

struct data_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IntMatrix {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  std::int64_t det() const { return a * d - b * c; }
  IntMatrix operator*(const IntMatrix& o) const
  {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  IntMatrix inverse() const
  {
    if (det() != 1) throw std::domain_error("IntMatrix::inverse: det != 1");
    return {d, -b, -c, a};
  }
  IntMatrix operator-() const { return {-a, -b, -c, -d}; }
  bool operator==(const IntMatrix& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
  static IntMatrix T(std::int64_t r = 1) { return {1, r, 0, 1}; }
  static IntMatrix S() { return {0, -1, 1, 0}; }
  std::string str() const
  {
    std::ostringstream os;
    os << "[[" << a << "," << b << "],[" << c << "," << d << "]]";
    return os.str();
  }
};

inline bool exact_divisor(std::int64_t e, std::int64_t n) { return e > 0 && n % e == 0 && gcd(e, n / e) == 1; }

inline std::vector<std::int64_t> divisors(std::int64_t n)
{
  std::vector<std::int64_t> out;
  for (std::int64_t k = 1; k <= n; ++k)
    if (n % k == 0) out.push_back(k);
  return out;
}

struct GroupSymbol {
  std::int64_t N = 1, h = 1;
  std::set<std::int64_t> wset{1};
  std::string class_name;
  std::string text;

  std::int64_t level() const { return N * h; }
  // lambda_g: -1 when the Fricke-type involution N/h is present
  int lambda() const { return wset.count(N / h) ? -1 : 1; }
};

inline std::int64_t al_compose(std::int64_t e, std::int64_t f)
{
  std::int64_t g = gcd(e, f);
  return e * f / (g * g);
}

inline GroupSymbol parse_group_symbol(const std::string& text)
{
  static const std::regex re(R"(^(\d+)(?:\|\|(\d+))?(\+([0-9,]*))?$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw std::invalid_argument("malformed group symbol: " + text);
  GroupSymbol s;
  s.text = text;
  s.N = std::stoll(m[1]);
  s.h = m[2].matched ? std::stoll(m[2]) : 1;
  if (s.N < 1 || s.h < 1 || gcd(s.N, 24) % s.h != 0)
    throw std::invalid_argument("h must divide gcd(N,24): " + text);
  std::int64_t q = s.N / s.h;
  if (m[3].matched) {
    std::string list = m[4];
    if (list.empty()) {
      for (auto e : divisors(q))
        if (exact_divisor(e, q)) s.wset.insert(e);
    } else {
      std::stringstream ss(list);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw std::invalid_argument("malformed group symbol: " + text);
        std::int64_t e = std::stoll(tok);
        if (!exact_divisor(e, q)) throw std::invalid_argument("not an exact divisor of N/h: " + text);
        s.wset.insert(e);
      }
    }
  }
  // close under e o f = ef/(e,f)^2
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<std::int64_t> cur(s.wset.begin(), s.wset.end());
    for (auto e : cur)
      for (auto f : cur)
        if (s.wset.insert(al_compose(e, f)).second) grew = true;
  }
  return s;
}

// class name -> symbol; "23AB 23+" yields 23A and 23B
inline std::map<std::string, GroupSymbol> load_monster_symbols(const std::string& path = data_dir() + "/monster_groups.txt")
{
  std::ifstream in(path);
  if (!in) throw data_error("cannot open " + path);
  std::map<std::string, GroupSymbol> out;
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string cls, sym;
    if (!(ls >> cls >> sym)) throw data_error("bad line in " + path + ": " + line);
    size_t k = 0;
    while (k < cls.size() && std::isdigit(static_cast<unsigned char>(cls[k]))) ++k;
    if (k == 0 || k == cls.size()) throw data_error("bad class name: " + cls);
    GroupSymbol g;
    try {
      g = parse_group_symbol(sym);
    } catch (const std::invalid_argument& e) {
      throw data_error(e.what());
    }
    for (size_t j = k; j < cls.size(); ++j) {
      g.class_name = cls.substr(0, k) + cls[j];
      out[g.class_name] = g;
    }
    ++rows;
  }
  if (rows == 0) throw data_error("empty symbol file " + path);
  return out;
}

struct Cusp {
  std::int64_t alpha = 1, gamma = 0;  // gamma == 0 is infinity
  bool is_infinity() const { return gamma == 0; }
  std::string str() const
  {
    if (gamma == 0) return "inf";
    if (alpha == 0) return "0";
    return std::to_string(alpha) + "/" + std::to_string(gamma);
  }
  bool operator==(const Cusp& o) const { return alpha == o.alpha && gamma == o.gamma; }
};

struct CuspDatum {
  Cusp cusp;
  std::int64_t width = 1;
  rational kappa = 0;
  IntMatrix scaling;  // L with L^{-1} inf = cusp, bottom row (gamma, -alpha)
};

// L = [[-delta, beta],[gamma, -alpha]], smallest |beta| (ties beta >= 0), then smallest |delta|
inline IntMatrix scaling_matrix(std::int64_t alpha, std::int64_t gamma)
{
  if (gcd(alpha, gamma) != 1) throw std::invalid_argument("scaling_matrix: alpha, gamma not coprime");
  if (gamma == 0) return {-alpha, 0, 0, -alpha};  // alpha = +-1
  std::int64_t bestd = 0, bestb = 0;
  bool have = false;
  auto better = [&](std::int64_t dl, std::int64_t be) {
    if (!have) return true;
    if (std::llabs(be) != std::llabs(bestb)) return std::llabs(be) < std::llabs(bestb);
    if ((be < 0) != (bestb < 0)) return be >= 0;
    if (std::llabs(dl) != std::llabs(bestd)) return std::llabs(dl) < std::llabs(bestd);
    return dl > bestd;
  };
  std::int64_t g = std::llabs(gamma);
  if (alpha == 0) {
    // -beta*gamma = 1
    return {0, -gamma, gamma, 0};
  }
  std::int64_t d0 = inv_mod(alpha, g);
  // beta = (alpha*delta - 1)/gamma moves by alpha per step of gamma in delta
  std::int64_t span = 2 + std::llabs(alpha) + g;
  for (std::int64_t k = -span; k <= span; ++k) {
    std::int64_t dl = d0 + k * g;
    std::int64_t num = alpha * dl - 1;
    if (num % gamma != 0) continue;
    std::int64_t be = num / gamma;
    if (better(dl, be)) {
      bestd = dl;
      bestb = be;
      have = true;
    }
  }
  return {-bestd, bestb, gamma, -alpha};
}

inline std::int64_t cusp_width(std::int64_t N, std::int64_t gamma)
{
  if (gamma == 0) return 1;
  return N / gcd(gamma * gamma, N);
}

inline std::int64_t gamma0_index(std::int64_t N)
{
  std::int64_t idx = N, n = N;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    idx = idx / p * (p + 1);
  }
  if (n > 1) idx = idx / n * (n + 1);
  return idx;
}

// representatives alpha/gamma, gamma | N; alpha mod gcd(gamma, N/gamma), lifted to be coprime to gamma
inline std::vector<CuspDatum> cusps_of_gamma0(std::int64_t N)
{
  if (N < 1) throw std::invalid_argument("cusps_of_gamma0: N < 1");
  std::vector<CuspDatum> out;
  for (auto gam : divisors(N)) {
    if (gam == N) continue;
    std::int64_t g = gcd(gam, N / gam);
    for (std::int64_t r = 0; r < g; ++r) {
      if (gcd(r, g) != 1) continue;
      std::int64_t al = r;
      while (gcd(al, gam) != 1) al += g;
      CuspDatum cd;
      cd.cusp = {al, gam};
      cd.width = cusp_width(N, gam);
      cd.scaling = scaling_matrix(al, gam);
      out.push_back(cd);
    }
  }
  CuspDatum inf;
  inf.cusp = {1, 0};
  inf.width = 1;
  inf.scaling = scaling_matrix(1, 0);
  out.push_back(inf);
  return out;
}

// eta multiplier parameter kappa = t/24 mod 1
inline std::vector<CuspDatum> with_eta_kappa(std::vector<CuspDatum> cs)
{
  for (auto& c : cs) {
    rational k(c.width, 24);
    k -= rational(static_cast<std::int64_t>(c.width / 24));
    c.kappa = k;
  }
  return cs;
}

struct EquivalenceWitness {
  IntMatrix M;
  std::int64_t r = 0;
};

// L_{c1} = M^{-1} L_{c2} T^r with M in Gamma_0(N)
inline std::optional<EquivalenceWitness> cusp_equivalent(std::int64_t N, const Cusp& c1, const Cusp& c2)
{
  IntMatrix L1 = scaling_matrix(c1.alpha, c1.gamma), L2 = scaling_matrix(c2.alpha, c2.gamma);
  IntMatrix L1i = L1.inverse();
  for (std::int64_t r = 0; r < N; ++r) {
    IntMatrix M = L2 * IntMatrix::T(r) * L1i;
    if (M.c % N == 0) {
      if (!(M.inverse() * L2 * IntMatrix::T(r) == L1)) throw std::logic_error("cusp_equivalent: witness check");
      return EquivalenceWitness{M, r};
    }
  }
  return std::nullopt;
}

// W_e = [[e a, b],[N c, e d]] with determinant e
inline IntMatrix atkin_lehner_matrix(std::int64_t N, std::int64_t e)
{
  if (!exact_divisor(e, N)) throw std::invalid_argument("atkin_lehner_matrix: e is not an exact divisor of N");
  if (e == 1) return {1, 0, 0, 1};
  if (e == N) return {0, -1, N, 0};
  std::int64_t q = N / e;
  std::int64_t d = inv_mod(e, q);
  std::int64_t b = (e * d - 1) / q;
  return {e, b, N, e * d};
}

// M = [[a e, b/h],[c N, d e]] with a d e - b c N/(e h) = 1
struct EigengroupElement {
  std::int64_t a = 1, b = 0, c = 0, d = 1, e = 1;
};

inline bool in_shape(const GroupSymbol& s, const EigengroupElement& m)
{
  if (!s.wset.count(m.e)) return false;
  if ((m.c * s.N) % (m.e * s.h) != 0) return false;
  return m.a * m.d * m.e - m.b * m.c * s.N / (m.e * s.h) == 1;
}

namespace detail {
// 2x2 with entries num/den (common denominator)
struct QMat {
  std::int64_t a, b, c, d, den;
  QMat operator*(const QMat& o) const
  {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d, den * o.den};
  }
};
}  // namespace detail

// sigma_g(M) = e((A+B+lambda C)/h) where T^{B/h} M T^{A/h} [[1,0],[CN,1]] is, up to a scalar,
// an Atkin-Lehner involution of Gamma_0(Nh)
inline root_of_unity sigma_g(const GroupSymbol& s, const EigengroupElement& m)
{
  if (!in_shape(s, m)) throw std::invalid_argument("sigma_g: matrix not in eigengroup shape");
  const std::int64_t h = s.h, N = s.N, Nh = N * h;
  detail::QMat M{m.a * m.e * h, m.b, m.c * N * h, m.d * m.e * h, h};
  std::set<std::int64_t> sols;
  for (std::int64_t A = 0; A < h; ++A)
    for (std::int64_t B = 0; B < h; ++B)
      for (std::int64_t C = 0; C < h; ++C) {
        detail::QMat X = detail::QMat{h, B, 0, h, h} * M * detail::QMat{h, A, 0, h, h} * detail::QMat{1, 0, C * N, 1, 1};
        for (auto sc : divisors(h)) {
          if ((sc * X.a) % X.den || (sc * X.b) % X.den || (sc * X.c) % X.den || (sc * X.d) % X.den) continue;
          std::int64_t ya = sc * X.a / X.den, yc = sc * X.c / X.den, yd = sc * X.d / X.den;
          std::int64_t E = sc * sc * m.e;
          if (!exact_divisor(E, Nh)) continue;
          if (ya % E || yd % E || yc % Nh) continue;
          sols.insert(mod(A + B + s.lambda() * C, h));
        }
      }
  if (sols.empty()) throw std::invalid_argument("sigma_g: no admissible (A,B,C)");
  if (sols.size() > 1) throw std::logic_error("sigma_g: ambiguous decomposition");
  return root_of_unity(*sols.begin(), h);
}

struct EpsilonDatum {
  root_of_unity eps;
  rational pole_order;
  std::int64_t e = 1;
  std::int64_t u = 0;
};

// T_g|L = eps q^{-pole_order} + O(1) when T_g|L has a pole
inline std::optional<EpsilonDatum> epsilon_g(const GroupSymbol& s, const IntMatrix& L)
{
  if (L.det() != 1) throw std::invalid_argument("epsilon_g: det L != 1");
  const std::int64_t h = s.h, N = s.N;
  std::int64_t dl = -L.a, be = L.b, gam = L.c, al = -L.d;
  std::int64_t g = gcd(h, gam);
  std::int64_t x = gcd(std::llabs(gam) / g, N / h);
  if ((N / h) % x) return std::nullopt;
  std::int64_t e = (N / h) / x;
  if (!s.wset.count(e)) return std::nullopt;
  EpsilonDatum out;
  out.e = e;
  out.pole_order = rational(g * g, e * h * h);
  std::int64_t u = 0;
  for (;; ++u) {
    std::int64_t t = u * gam - al * g;
    if (t % h == 0 && (t / h) % e == 0) break;
    if (u > e * h * h * (std::llabs(gam) + 1)) throw std::logic_error("epsilon_g: no u");
  }
  out.u = u;
  // LU = [[a e, b/h],[c N, d e]]
  std::int64_t a = -dl * h / g;
  std::int64_t b = -dl * u + be * g;
  std::int64_t cn = gam * e * h;  // c N * g
  if (cn % (g * N)) throw std::logic_error("epsilon_g: LU shape");
  std::int64_t c = cn / (g * N);
  std::int64_t dnum = gam * u - al * g;
  if (dnum % (e * h)) throw std::logic_error("epsilon_g: LU shape");
  std::int64_t d = dnum / (e * h);
  if (((-dl) * e * h) % g) throw std::logic_error("epsilon_g: LU shape");
  EigengroupElement m{a, b, c, d, e};
  out.eps = sigma_g(s, m) * root_of_unity(u * g, e * h * h);
  return out;
}

struct PoleCusp {
  CuspDatum cusp;
  EpsilonDatum eps;
};

inline std::vector<PoleCusp> pole_cusps(const GroupSymbol& s)
{
  std::vector<PoleCusp> out;
  for (auto& cd : cusps_of_gamma0(s.level()))
    if (auto ed = epsilon_g(s, cd.scaling)) out.push_back({cd, *ed});
  return out;
}

} // namespace moonshine
