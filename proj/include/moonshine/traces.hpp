#pragma once

#include "moonshine/rademacher.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace moonshine {

// a conjugacy class as far as the trace recursion cares: its group symbol and the class of g^2
struct ClassSpec {
  std::string name;
  GroupSymbol sym;
  std::string square;
};

struct SeedReport {
  std::string symbol;
  std::vector<std::int64_t> n;
  std::vector<double> distance;
};

struct replication_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// power sums of one T_g, filled lazily as coefficients become known
struct PowerCache {
  std::vector<bigint> a;  // a[k+1] = coefficient of q^k, k >= -1
  std::vector<bigint> t2, t3, t4;  // index i + 2, i + 3, i + 4

  bigint A(std::int64_t k) const
  {
    if (k < -1) return 0;
    if (k + 1 >= static_cast<std::int64_t>(a.size())) throw std::logic_error("replication: coefficient not yet known");
    return a[k + 1];
  }
  bigint T2(std::int64_t i)
  {
    while (static_cast<std::int64_t>(t2.size()) <= i + 2) {
      std::int64_t x = static_cast<std::int64_t>(t2.size()) - 2;
      bigint s = 0;
      for (std::int64_t j = -1; j <= x + 1; ++j) s += A(j) * A(x - j);
      t2.push_back(s);
    }
    return t2[i + 2];
  }
  bigint T3(std::int64_t i)
  {
    while (static_cast<std::int64_t>(t3.size()) <= i + 3) {
      std::int64_t x = static_cast<std::int64_t>(t3.size()) - 3;
      bigint s = 0;
      for (std::int64_t j = -2; j <= x + 1; ++j) s += T2(j) * A(x - j);
      t3.push_back(s);
    }
    return t3[i + 3];
  }
  bigint T4(std::int64_t i)
  {
    while (static_cast<std::int64_t>(t4.size()) <= i + 4) {
      std::int64_t x = static_cast<std::int64_t>(t4.size()) - 4;
      bigint s = 0;
      for (std::int64_t j = -2; j <= x + 2; ++j) s += T2(j) * T2(x - j);
      t4.push_back(s);
    }
    return t4[i + 4];
  }
};

inline bigint half_exact(const bigint& x, const std::string& where)
{
  if (x % 2 != 0) throw replication_error("non-integral coefficient at " + where);
  return x / 2;
}

}  // namespace detail

// Rademacher values of a(1), a(2), a(3), a(5) for each distinct symbol, rounded with certificate
inline std::map<std::string, std::vector<bigint>> replication_seeds(const std::vector<ClassSpec>& classes, const PrecisionConfig& cfg,
                                                                    std::vector<SeedReport>* report = nullptr)
{
  std::map<std::string, std::vector<bigint>> out;
  const std::vector<std::int64_t> ns{1, 2, 3, 5};
  for (auto& c : classes) {
    if (out.count(c.sym.text)) continue;
    auto est = tg_partial(c.sym, 1, ns, {cfg.c_max}, cfg);
    SeedReport rep{c.sym.text, ns, {}};
    std::vector<bigint> v;
    precision_scope ps(cfg.working_bits);
    for (std::size_t i = 0; i < ns.size(); ++i) {
      bigint z = nearest_integer(est[i][0].value.re);
      double dist = std::max(static_cast<double>(mp::abs(est[i][0].value.re - real(z))), static_cast<double>(mp::abs(est[i][0].value.im)));
      rep.distance.push_back(dist);
      if (!(dist < 0.25))
        throw certificate_error("seed " + c.sym.text + " a(" + std::to_string(ns[i]) + ") rounding distance " + std::to_string(dist));
      v.push_back(z);
    }
    out[c.sym.text] = v;
    if (report) report->push_back(rep);
  }
  return out;
}

// exact T_g through q^n_max for every class, from seeds and the replication relations
// coeff_n P_m(T_g) = sum_{k | (m,n)} (m/k) a_{g^k}(mn/k^2) with m = 2 and m = 4
inline std::map<std::string, ZSeries> mckay_thompson_series(const std::vector<ClassSpec>& classes, std::int64_t n_max,
                                                            const std::map<std::string, std::vector<bigint>>& seeds)
{
  if (n_max < 1) throw std::invalid_argument("mckay_thompson_series: n_max < 1");
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < classes.size(); ++i) idx[classes[i].name] = i;
  std::vector<std::size_t> sq(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    auto it = idx.find(classes[i].square);
    if (it == idx.end()) throw std::invalid_argument("mckay_thompson_series: class " + classes[i].square + " missing");
    sq[i] = it->second;
  }
  std::int64_t top = std::max<std::int64_t>(n_max, 5);
  std::vector<detail::PowerCache> pc(classes.size());
  std::vector<std::vector<bigint>> faber4(classes.size());
  std::vector<std::map<std::int64_t, bigint>> predicted(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    auto it = seeds.find(classes[i].sym.text);
    if (it == seeds.end()) throw std::invalid_argument("mckay_thompson_series: no seed for " + classes[i].sym.text);
    pc[i].a = {1, 0, it->second[0], it->second[1], it->second[2]};
  }
  auto a2 = [&](std::size_t i, std::int64_t k) { return pc[sq[i]].A(k); };
  auto a4 = [&](std::size_t i, std::int64_t k) { return pc[sq[sq[i]]].A(k); };
  for (std::int64_t N = 4; N <= top; ++N) {
    std::vector<bigint> next(classes.size());
    for (std::size_t i = 0; i < classes.size(); ++i) {
      auto& P = pc[i];
      std::string where = classes[i].name + " q^" + std::to_string(N);
      if (N == 5) {
        next[i] = seeds.at(classes[i].sym.text)[3];
      } else if (N % 2 == 0) {
        std::int64_t n = N / 2;
        bigint s = 0;
        for (std::int64_t k = 1; k < n; ++k) s += P.A(k) * P.A(n - k);
        if (n % 2 == 0) s -= a2(i, n / 2);
        next[i] = P.A(n + 1) + detail::half_exact(s, where);
      } else {
        std::int64_t n = (N - 1) / 2;
        if (faber4[i].empty()) {
          ZSeries t(-1, {P.A(-1), 0, P.A(1), P.A(2), P.A(3)});
          faber4[i] = faber_tower(t, 4).poly;
        }
        auto& f = faber4[i];
        bigint pn = P.T4(n) + f[3] * P.T3(n) + f[2] * P.T2(n) + f[1] * P.A(n);
        if (n % 2 == 0) pn -= 2 * a2(i, n);
        if (n % 4 == 0) pn -= a4(i, n / 4);
        if (pn % 4 != 0) throw replication_error("non-integral coefficient at " + classes[i].name + " q^" + std::to_string(4 * n));
        bigint a4n = pn / 4;
        predicted[i][4 * n] = a4n;
        bigint s = 0;
        for (std::int64_t k = 1; k < 2 * n; ++k) s += P.A(k) * P.A(2 * n - k);
        s -= a2(i, n);
        next[i] = a4n - detail::half_exact(s, where);
      }
    }
    for (std::size_t i = 0; i < classes.size(); ++i) {
      auto p = predicted[i].find(N);
      if (p != predicted[i].end() && p->second != next[i])
        throw replication_error("inconsistent coefficient at " + classes[i].name + " q^" + std::to_string(N));
      pc[i].a.push_back(next[i]);
    }
  }
  std::map<std::string, ZSeries> out;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    ZSeries s = ZSeries::zero(-1, n_max + 2);
    for (std::int64_t k = -1; k <= n_max; ++k) s.at(k) = pc[i].A(k);
    out[classes[i].name] = s;
  }
  return out;
}

} // namespace moonshine
