#pragma once

#include "moonshine/numeric.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace moonshine {

struct precision_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// truncated Laurent series sum_{k=lead}^{lead+prec-1} coeffs[k-lead] q^k
template <class T>
struct QSeries {
  std::int64_t lead = 0;
  std::vector<T> coeffs;

  QSeries() = default;
  QSeries(std::int64_t lead_, std::vector<T> c) : lead(lead_), coeffs(std::move(c)) {}
  static QSeries zero(std::int64_t lead, std::int64_t prec) { return QSeries(lead, std::vector<T>(std::max<std::int64_t>(prec, 0), T(0))); }

  std::int64_t prec() const { return static_cast<std::int64_t>(coeffs.size()); }
  std::int64_t end() const { return lead + prec(); }  // first exponent not known

  T operator[](std::int64_t k) const
  {
    if (k < lead) return T(0);
    if (k >= end()) throw precision_error("coefficient q^" + std::to_string(k) + " beyond precision");
    return coeffs[k - lead];
  }
  T& at(std::int64_t k)
  {
    if (k < lead || k >= end()) throw precision_error("coefficient out of range");
    return coeffs[k - lead];
  }

  QSeries truncated(std::int64_t new_end) const
  {
    if (new_end > end()) throw precision_error("truncate beyond precision");
    QSeries r = *this;
    r.coeffs.resize(std::max<std::int64_t>(new_end - lead, 0));
    return r;
  }

  // drop leading zeros so lead is the true valuation
  QSeries normalized() const
  {
    QSeries r = *this;
    std::size_t z = 0;
    while (z < r.coeffs.size() && r.coeffs[z] == 0) ++z;
    if (z == r.coeffs.size()) return r;
    r.coeffs.erase(r.coeffs.begin(), r.coeffs.begin() + z);
    r.lead += static_cast<std::int64_t>(z);
    return r;
  }

  QSeries operator-() const
  {
    QSeries r = *this;
    for (auto& c : r.coeffs) c = -c;
    return r;
  }

  friend QSeries operator+(const QSeries& x, const QSeries& y)
  {
    std::int64_t lo = std::min(x.lead, y.lead), hi = std::min(x.end(), y.end());
    QSeries r = zero(lo, hi - lo);
    for (std::int64_t k = lo; k < hi; ++k) r.coeffs[k - lo] = x[k] + y[k];
    return r;
  }
  friend QSeries operator-(const QSeries& x, const QSeries& y) { return x + (-y); }

  friend QSeries operator*(const QSeries& x, const QSeries& y)
  {
    std::int64_t p = std::min(x.prec(), y.prec());
    QSeries r = zero(x.lead + y.lead, p);
    for (std::int64_t i = 0; i < p; ++i) {
      if (x.coeffs[i] == 0) continue;
      for (std::int64_t j = 0; i + j < p; ++j) r.coeffs[i + j] += x.coeffs[i] * y.coeffs[j];
    }
    return r;
  }

  QSeries scaled(const T& s) const
  {
    QSeries r = *this;
    for (auto& c : r.coeffs) c *= s;
    return r;
  }

  QSeries plus_constant(const T& s) const
  {
    QSeries r = *this;
    if (0 >= r.end()) throw precision_error("constant beyond precision");
    if (r.lead > 0) {
      std::vector<T> pad(static_cast<std::size_t>(r.lead), T(0));
      r.coeffs.insert(r.coeffs.begin(), pad.begin(), pad.end());
      r.lead = 0;
    }
    r.coeffs[-r.lead] += s;
    return r;
  }

  QSeries pow(unsigned e) const
  {
    if (e == 0) return QSeries(0, std::vector<T>(prec(), T(0))).plus_constant(T(1));
    QSeries r = *this;
    for (unsigned k = 1; k < e; ++k) r = r * *this;
    return r;
  }

  // 1/x; leading coefficient must be a unit of T
  QSeries inverse() const
  {
    QSeries x = normalized();
    if (x.prec() == 0 || x.coeffs[0] == 0) throw std::domain_error("inverse: zero series");
    const T& l = x.coeffs[0];
    if constexpr (std::is_same_v<T, bigint>) {
      if (l != 1 && l != -1) throw std::domain_error("inverse: leading coefficient not a unit");
    }
    QSeries r = zero(-x.lead, x.prec());
    for (std::int64_t n = 0; n < x.prec(); ++n) {
      T s = (n == 0) ? T(1) : T(0);
      for (std::int64_t k = 1; k <= n; ++k) s -= x.coeffs[k] * r.coeffs[n - k];
      r.coeffs[n] = s / l;
    }
    return r;
  }

  // q d/dq
  QSeries theta() const
  {
    QSeries r = *this;
    for (std::int64_t k = 0; k < prec(); ++k) r.coeffs[k] *= T(lead + k);
    return r;
  }

  // q -> q^m
  QSeries substitute(std::int64_t m) const
  {
    if (m < 1) throw std::invalid_argument("substitute: m < 1");
    QSeries r = zero(lead * m, (prec() - 1) * m + 1);
    for (std::int64_t k = 0; k < prec(); ++k) r.coeffs[k * m] = coeffs[k];
    return r;
  }

  bool operator==(const QSeries& o) const { return lead == o.lead && coeffs == o.coeffs; }
};

using ZSeries = QSeries<bigint>;
using RSeries = QSeries<rational>;

inline RSeries to_rational(const ZSeries& s)
{
  RSeries r(s.lead, {});
  for (auto& c : s.coeffs) r.coeffs.emplace_back(c);
  return r;
}

inline ZSeries to_integer(const RSeries& s)
{
  ZSeries r(s.lead, {});
  for (auto& c : s.coeffs) {
    if (mp::denominator(c) != 1) throw std::domain_error("non-integral coefficient");
    r.coeffs.emplace_back(mp::numerator(c));
  }
  return r;
}

// exp(x) for x with lead >= 1
inline RSeries series_exp(const RSeries& x)
{
  if (x.normalized().lead < 1 && x.normalized().prec() > 0 && x.normalized().coeffs[0] != 0)
    throw std::domain_error("exp: argument needs lead >= 1");
  std::int64_t P = x.end();
  if (P <= 0) throw precision_error("exp: no precision");
  // y' = x' y in theta form: n y_n = sum_k k x_k y_{n-k}
  RSeries y = RSeries::zero(0, P);
  y.coeffs[0] = 1;
  for (std::int64_t n = 1; n < P; ++n) {
    rational s = 0;
    for (std::int64_t k = std::max<std::int64_t>(1, x.lead); k <= n; ++k) s += rational(k) * x[k] * y.coeffs[n - k];
    y.coeffs[n] = s / n;
  }
  return y;
}

// log(x) for x = 1 + O(q)
inline RSeries series_log(const RSeries& x)
{
  RSeries u = x.normalized();
  if (u.lead != 0 || u.coeffs.empty() || u.coeffs[0] != 1) throw std::domain_error("log: needs constant term 1");
  std::int64_t P = u.end();
  RSeries r = RSeries::zero(0, P);
  // theta log x = theta x / x
  RSeries t = u.theta() * u.inverse();
  for (std::int64_t n = 1; n < P; ++n) r.coeffs[n] = t[n] / n;
  return r;
}

// (q)_infinity = prod (1-q^n), through q^n_max
inline ZSeries eta_pochhammer(std::int64_t n_max)
{
  if (n_max < 0) throw std::invalid_argument("eta_pochhammer: n_max < 0");
  ZSeries r = ZSeries::zero(0, n_max + 1);
  r.coeffs[0] = 1;
  for (std::int64_t n = 1; n <= n_max; ++n)
    for (std::int64_t k = n_max; k >= n; --k) r.coeffs[k] -= r.coeffs[k - n];
  return r;
}

// J = E4^3/Delta - 744 with coefficients through q^n_max
inline ZSeries j_series(std::int64_t n_max)
{
  if (n_max < 0) throw std::invalid_argument("j_series: n_max < 0");
  std::int64_t P = n_max + 2;  // q^0 .. q^{n_max+1} of E4^3 and Delta/q
  ZSeries e4 = ZSeries::zero(0, P);
  e4.coeffs[0] = 1;
  for (std::int64_t n = 1; n < P; ++n) {
    bigint s = 0;
    for (std::int64_t d = 1; d <= n; ++d)
      if (n % d == 0) s += bigint(d) * d * d;
    e4.coeffs[n] = 240 * s;
  }
  ZSeries qinf = eta_pochhammer(P - 1);
  ZSeries d24 = qinf;
  for (int k = 1; k < 24; ++k) d24 = d24 * qinf;  // Delta/q
  ZSeries j = e4.pow(3) * d24.inverse();
  j.lead = -1;
  return j.plus_constant(-744);
}

// c(m, n) = sum_{k | (m,n)} (m/k) c(mn/k^2); needs j through q^{m n}
inline ZSeries hecke_tower_dims(std::int64_t m, std::int64_t n_max)
{
  if (m < 1) throw std::invalid_argument("hecke_tower_dims: m < 1");
  ZSeries j = j_series(std::max<std::int64_t>(m * std::max<std::int64_t>(n_max, 1), 1));
  ZSeries r = ZSeries::zero(-m, n_max + m + 1);
  r.at(-m) = 1;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    bigint s = 0;
    for (std::int64_t k = 1; k <= std::gcd(m, n); ++k)
      if (m % k == 0 && n % k == 0) s += bigint(m / k) * j[m * n / (k * k)];
    r.at(n) = s;
  }
  return r;
}

template <class T>
struct FaberResult {
  QSeries<T> series;
  std::vector<T> poly;  // poly[k] multiplies base^k, poly[m] = 1
};

// unique q^{-m} + O(q) that is a monic degree-m polynomial in base = q^{-1} + O(1)
template <class T>
FaberResult<T> faber_tower(const QSeries<T>& base, std::int64_t m)
{
  if (m < 1) throw std::invalid_argument("faber_tower: m < 1");
  QSeries<T> b = base.normalized();
  if (b.lead != -1 || b.coeffs.empty() || b.coeffs[0] != 1) throw std::invalid_argument("faber_tower: base must be q^-1 + O(1)");
  if (b.end() < m) throw precision_error("faber_tower: insufficient precision");
  std::vector<QSeries<T>> powers{QSeries<T>(0, std::vector<T>(b.prec(), T(0))).plus_constant(T(1)), b};
  for (std::int64_t k = 2; k <= m; ++k) powers.push_back(powers.back() * b);
  FaberResult<T> out;
  out.poly.assign(m + 1, T(0));
  out.poly[m] = 1;
  QSeries<T> s = powers[m];
  for (std::int64_t k = m - 1; k >= 0; --k) {
    T c = s[-k];
    if (c != 0) {
      s = s - powers[k].scaled(c);
      out.poly[k] = -c;
    }
  }
  out.series = s;
  return out;
}

// U_g = (q)_inf T_g + 1
inline ZSeries ug_from_tg(const ZSeries& tg)
{
  ZSeries t = tg.normalized();
  if (t.lead != -1 || t.coeffs[0] != 1) throw std::invalid_argument("ug_from_tg: expected q^-1 + O(q)");
  ZSeries qi = eta_pochhammer(t.prec());
  return (qi * t).plus_constant(1);
}

// c(4n+2) = c(2n+2) + sum_{k=1}^n c(k)c(2n-k+1)
struct MahlerFailure {
  std::int64_t n;
  bigint residual;
};

inline std::vector<std::int64_t> mahler_check(const ZSeries& j, std::vector<MahlerFailure>* failures = nullptr)
{
  std::vector<std::int64_t> ok;
  for (std::int64_t n = 0; 4 * n + 2 < j.end(); ++n) {
    bigint rhs = j[2 * n + 2];
    for (std::int64_t k = 1; k <= n; ++k) rhs += j[k] * j[2 * n - k + 1];
    bigint res = j[4 * n + 2] - rhs;
    if (res == 0)
      ok.push_back(n);
    else if (failures)
      failures->push_back({n, res});
  }
  return ok;
}

// two-variable truncated series: p^i q^k for i in [lp, lp+np), k in [lq, lq+nq)
template <class T>
struct BiSeries {
  std::int64_t lp = 0, lq = 0, np = 0, nq = 0;
  std::vector<T> c;

  BiSeries() = default;
  BiSeries(std::int64_t lp_, std::int64_t np_, std::int64_t lq_, std::int64_t nq_)
      : lp(lp_), lq(lq_), np(np_), nq(nq_), c(static_cast<std::size_t>(np_ * nq_), T(0)) {}

  bool inside(std::int64_t i, std::int64_t k) const { return i >= lp && i < lp + np && k >= lq && k < lq + nq; }
  T get(std::int64_t i, std::int64_t k) const { return inside(i, k) ? c[(i - lp) * nq + (k - lq)] : T(0); }
  T& ref(std::int64_t i, std::int64_t k)
  {
    if (!inside(i, k)) throw precision_error("BiSeries index out of window");
    return c[(i - lp) * nq + (k - lq)];
  }
  void add(std::int64_t i, std::int64_t k, const T& v)
  {
    if (inside(i, k)) c[(i - lp) * nq + (k - lq)] += v;
  }

  // product truncated to this window shape (both factors share it)
  BiSeries mul(const BiSeries& o) const
  {
    BiSeries r(lp, np, lq, nq);
    for (std::int64_t i = 0; i < np; ++i)
      for (std::int64_t k = 0; k < nq; ++k) {
        const T& x = c[i * nq + k];
        if (x == 0) continue;
        for (std::int64_t j = 0; j < o.np; ++j)
          for (std::int64_t l = 0; l < o.nq; ++l) {
            const T& y = o.c[j * o.nq + l];
            if (y == 0) continue;
            r.add(lp + i + o.lp + j, lq + k + o.lq + l, x * y);
          }
      }
    return r;
  }
};

namespace detail {
// exp of a series in p, q whose terms all have p-degree >= 1
inline BiSeries<rational> biexp(const BiSeries<rational>& x)
{
  BiSeries<rational> r(x.lp, x.np, x.lq, x.nq), term(x.lp, x.np, x.lq, x.nq);
  r.ref(0, 0) = 1;
  term.ref(0, 0) = 1;
  for (std::int64_t k = 1; k < x.lp + x.np; ++k) {
    term = term.mul(x);
    for (auto& v : term.c) v /= k;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] += term.c[i];
  }
  return r;
}

inline bigint binom(const bigint& n, std::int64_t k)
{
  bigint r = 1;
  for (std::int64_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}
}  // namespace detail

// p^{-1} prod_{m>0, n in Z} (1 - p^m q^n)^{c(mn)} - (J(p) - J(q)) over p^{-1..P}, q^{-1..Q}
inline BiSeries<bigint> denominator_identity_residual_series(std::int64_t P, std::int64_t Q)
{
  if (P < 1 || Q < 1) throw std::invalid_argument("denominator identity: precisions >= 1");
  std::int64_t lq = -(P + 2), hq = Q + P + 2;  // negative q only via (1 - p/q)
  ZSeries j = j_series(std::max<std::int64_t>((P + 1) * hq, P + Q + 1));
  BiSeries<bigint> prod(0, P + 2, lq, hq - lq);
  prod.ref(0, 0) = 1;
  auto mulfactor = [&](std::int64_t m, std::int64_t n, const bigint& e) {
    // (1 - p^m q^n)^e, e >= 0
    BiSeries<bigint> f(0, P + 2, lq, hq - lq);
    for (std::int64_t k = 0; k * m < P + 2; ++k) {
      bigint b = detail::binom(e, k);
      if (b == 0) break;
      f.add(k * m, k * n, (k % 2) ? bigint(-b) : b);
    }
    prod = prod.mul(f);
  };
  mulfactor(1, -1, 1);
  for (std::int64_t m = 1; m < P + 2; ++m)
    for (std::int64_t n = 1; n < hq; ++n) mulfactor(m, n, j[m * n]);
  BiSeries<bigint> res(-1, P + 2, -1, Q + 2);
  for (std::int64_t i = -1; i <= P; ++i)
    for (std::int64_t k = -1; k <= Q; ++k) res.ref(i, k) = prod.get(i + 1, k);
  for (std::int64_t i = -1; i <= P; ++i) res.ref(i, 0) -= j[i];
  for (std::int64_t k = -1; k <= Q; ++k) res.ref(0, k) += j[k];
  return res;
}

inline bigint denominator_identity_residual(std::int64_t P, std::int64_t Q)
{
  auto r = denominator_identity_residual_series(P, Q);
  bigint worst = 0;
  for (std::int64_t i = 1; i <= P; ++i)
    for (std::int64_t k = 1; k <= Q; ++k) worst = std::max(worst, bigint(abs(r.get(i, k))));
  return worst;
}

// traces[k] = T_{g^k}; residual of p^{-1} exp(-sum_k sum_{m>0,n} tr(g^k|V_mn) p^{mk} q^{nk}/k) - (T_g(p) - T_g(q))
inline BiSeries<rational> equivariant_denominator_residual_series(const std::map<std::int64_t, ZSeries>& traces, std::int64_t P, std::int64_t Q)
{
  std::int64_t lq = -(P + 2), hq = Q + P + 2;
  BiSeries<rational> x(0, P + 2, lq, hq - lq);
  for (std::int64_t k = 1; k < P + 2; ++k) {
    auto it = traces.find(k);
    if (it == traces.end()) throw std::out_of_range("missing trace for g^" + std::to_string(k));
    const ZSeries& t = it->second;
    for (std::int64_t m = 1; m * k < P + 2; ++m)
      for (std::int64_t n = -1; n * k < hq; ++n) {
        if (n == 0) continue;
        if (m * n >= t.end()) throw precision_error("equivariant check: trace precision");
        bigint tr = t[m * n];
        if (tr != 0) x.add(m * k, n * k, -rational(tr) / k);
      }
  }
  BiSeries<rational> e = detail::biexp(x);
  const ZSeries& tg = traces.at(1);
  BiSeries<rational> res(-1, P + 2, -1, Q + 2);
  for (std::int64_t i = -1; i <= P; ++i)
    for (std::int64_t k = -1; k <= Q; ++k) res.ref(i, k) = e.get(i + 1, k);
  for (std::int64_t i = -1; i <= P; ++i) res.ref(i, 0) -= rational(tg[i]);
  for (std::int64_t k = -1; k <= Q; ++k) res.ref(0, k) += rational(tg[k]);
  return res;
}

inline rational equivariant_denominator_check(const std::map<std::int64_t, ZSeries>& traces, std::int64_t P, std::int64_t Q)
{
  auto r = equivariant_denominator_residual_series(traces, P, Q);
  rational worst = 0;
  for (std::int64_t i = 1; i <= P; ++i)
    for (std::int64_t k = -1; k <= Q; ++k) worst = std::max(worst, rational(abs(r.get(i, k))));
  return worst;
}

// {lead, coeffs: [decimal strings], prec}
inline nlohmann::json to_json(const ZSeries& s)
{
  nlohmann::json j;
  j["lead"] = s.lead;
  j["prec"] = s.prec();
  auto& a = j["coeffs"] = nlohmann::json::array();
  for (auto& c : s.coeffs) a.push_back(c.str());
  return j;
}

inline ZSeries zseries_from_json(const nlohmann::json& j)
{
  ZSeries s;
  s.lead = j.at("lead").get<std::int64_t>();
  for (auto& c : j.at("coeffs")) s.coeffs.emplace_back(c.get<std::string>());
  if (j.contains("prec") && j.at("prec").get<std::int64_t>() != s.prec()) throw std::invalid_argument("QSeries json: prec mismatch");
  return s;
}

} // namespace moonshine
