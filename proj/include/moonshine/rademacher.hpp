#pragma once

#include "moonshine/modgroup.hpp"
#include "moonshine/qseries.hpp"

#include <complex>
#include <functional>
#include <map>
#include <vector>

namespace moonshine {

struct PrecisionConfig {
  unsigned working_bits = 256;
  std::int64_t c_max = 200;

  void validate() const
  {
    if (working_bits < 64) throw std::invalid_argument("working_bits must be >= 64");
    if (c_max < 1) throw std::invalid_argument("c_max must be >= 1");
  }
};

struct CoefficientEstimate {
  cplx value;
  std::int64_t c_max_used = 0;
  real tail_indicator = 0;
};

struct certificate_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Multiplier { trivial, eta };

struct MultiplierSystem {
  Multiplier tag = Multiplier::trivial;
  rational weight = 0;
};

// I_nu(x) by the ascending series; nu = 1/2 or a positive integer
inline real bessel_i(const rational& nu, const real& x)
{
  bool half = (nu == rational(1, 2));
  if (!half && (mp::denominator(nu) != 1 || nu < 1)) throw std::invalid_argument("bessel_i: unsupported order");
  if (x <= 0) throw std::domain_error("bessel_i: x must be positive");
  real nur = to_real(nu);
  real h = x / 2, h2 = h * h;
  // (x/2)^nu / Gamma(nu+1)
  real term = mp::pow(h, nur) / mp::tgamma(nur + 1);
  real sum = term;
  real eps = mp::ldexp(real(1), -static_cast<int>(mp::mpfr_float::default_precision() * 3.33) - 16);
  for (std::int64_t k = 1;; ++k) {
    term *= h2 / (real(k) * (real(k) + nur));
    sum += term;
    // ratio of successive terms below 1/2 bounds the tail by twice the last term
    if (term < sum * eps && h2 / (real(k + 1) * (real(k + 1) + nur)) < 0.5) break;
  }
  return sum;
}

// s(h, k) by reciprocity, gcd(h, k) = 1, k > 0
inline rational dedekind_sum(std::int64_t h, std::int64_t k)
{
  if (k <= 0) throw std::invalid_argument("dedekind_sum: k <= 0");
  rational s = 0;
  int sign = 1;
  h = mod(h, k);
  while (k > 1 && h != 0) {
    // s(h,k) = -s(k,h) - 1/4 + (h/k + k/h + 1/(hk))/12
    s += sign * (rational(-1, 4) + (rational(h, k) + rational(k, h) + rational(1, h * k)) / 12);
    std::int64_t nk = h;
    h = mod(k, h);
    k = nk;
    sign = -sign;
  }
  return s;
}

// eta(M tau) = nu(M) sqrt(c tau + d) eta(tau), principal branch
inline root_of_unity eta_multiplier(const IntMatrix& M)
{
  if (M.det() != 1) throw std::invalid_argument("eta_multiplier: det != 1");
  if (M.c == 0) {
    if (M.a == 1) return root_of_unity(M.b, 24);
    return root_of_unity(-M.b - 6, 24);  // -T^{-b}
  }
  if (M.c < 0) return root_of_unity(6, 24) * eta_multiplier(-M);
  rational ph = (rational(M.a + M.d, 12 * M.c) - dedekind_sum(M.d, M.c) - rational(1, 4)) / 2;
  return root_of_unity::from_phase(ph);
}

// +-1 with sqrt(j(A,B tau)) sqrt(j(B,tau)) = w sqrt(j(AB,tau))
inline int sqrt_cocycle(const IntMatrix& A, const IntMatrix& B, std::complex<double> tau = {0.0, 1.0})
{
  auto j = [](const IntMatrix& M, std::complex<double> z) { return double(M.c) * z + double(M.d); };
  auto act = [](const IntMatrix& M, std::complex<double> z) { return (double(M.a) * z + double(M.b)) / (double(M.c) * z + double(M.d)); };
  std::complex<double> v = std::sqrt(j(A, act(B, tau))) * std::sqrt(j(B, tau)) / std::sqrt(j(A * B, tau));
  return v.real() > 0 ? 1 : -1;
}

namespace detail {

// (a, d) with a in [0, t c), gamma a = alpha c mod M, gcd(a, c) = 1, a d = 1 mod c
inline std::vector<std::pair<std::int64_t, std::int64_t>> kloosterman_pairs(std::int64_t M, const IntMatrix& L, std::int64_t t, std::int64_t c)
{
  std::int64_t gam = L.c, al = -L.d;
  std::int64_t g = gcd(std::llabs(gam), M);
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  if (gcd(c, M) != g) return out;
  std::int64_t step = M / g;
  std::int64_t a0 = 0;
  if (step > 1) a0 = mod(mod(al * (c / g), step) * inv_mod(mod(gam / g, step), step), step);
  for (std::int64_t a = a0; a < t * c; a += step) {
    if (gcd(a, c) != 1) continue;
    out.emplace_back(a, c == 1 ? 0 : inv_mod(a, c));
  }
  return out;
}

// sum_k count[k] e(k/D) in double, or at working precision
inline cplx phase_sum(const std::map<std::int64_t, std::int64_t>& counts, std::int64_t D, bool exact)
{
  if (exact) {
    cplx s;
    for (auto& [k, n] : counts) s += unit_phase(k, D) * real(n);
    return s;
  }
  long double re = 0, im = 0;
  const long double tau = 6.283185307179586476925286766559L;
  for (auto& [k, n] : counts) {
    long double x = tau * (long double)k / (long double)D;
    re += n * std::cos(x);
    im += n * std::sin(x);
  }
  return cplx(real(static_cast<double>(re)), real(static_cast<double>(im)));
}

}  // namespace detail

// modified Kloosterman sum at cusp L of Gamma_0(N); m is the pole index, n the target index
// weight 0 trivial: sum e((a(-m+kappa)/t + d n)/c); weight 1/2 eta: the eta-twisted form
inline cplx kloosterman_sum(const rational& weight, std::int64_t N, const IntMatrix& L, const MultiplierSystem& mult,
                            const rational& mu, const rational& nu, std::int64_t c, std::int64_t t, bool* empty = nullptr)
{
  if (c < 1) throw std::invalid_argument("kloosterman_sum: c < 1");
  auto pairs = detail::kloosterman_pairs(N, L, t, c);
  if (empty) *empty = pairs.empty();
  cplx s;
  if (weight == 0 && mult.tag == Multiplier::trivial) {
    for (auto [a, d] : pairs) s += root_of_unity::from_phase((mu * a + nu * d) / c).value();
    return s;
  }
  if (weight != rational(1, 2) || mult.tag != Multiplier::eta) throw std::invalid_argument("kloosterman_sum: unsupported weight/multiplier");
  IntMatrix Li = L.inverse();
  for (auto [a, d] : pairs) {
    IntMatrix S{a, (a * d - 1) / c, c, d};
    IntMatrix G = L * S;
    if (G.c % N) throw std::logic_error("kloosterman_sum: L S not in Gamma_0(N)");
    root_of_unity f = eta_multiplier(G).inverse() * root_of_unity::from_phase((-mu * a + nu * d) / c);
    // note mu here is |principal exponent|
    int w = sqrt_cocycle(Li, G);
    cplx v = f.value();
    s += (w == 1) ? v : v * real(-1);
  }
  return s;
}

// entry point by pole and target index: mu = (-m + kappa_rho)/t_rho, nu = n + kappa_inf
inline cplx kloosterman_sum(const rational& weight, std::int64_t N, const IntMatrix& L, const MultiplierSystem& mult,
                            std::int64_t m, std::int64_t n, std::int64_t c)
{
  Cusp cu{-L.d, L.c};
  std::int64_t t = cusp_width(N, cu.gamma);
  rational kr = 0, ki = 0;
  if (mult.tag == Multiplier::eta) {
    kr = rational(t % 24, 24);
    ki = rational(1, 24);
  }
  rational mu = (rational(-m) + kr) / t, nu = rational(n) + ki;
  if (mult.tag == Multiplier::eta) return kloosterman_sum(weight, N, L, mult, -mu, nu, c, t);
  return kloosterman_sum(weight, N, L, mult, mu, nu, c, t);
}

// classical Rademacher series for the coefficients of J; partial sums at each threshold
inline std::vector<CoefficientEstimate> classical_c_partial(std::int64_t n, const std::vector<std::int64_t>& thresholds, const PrecisionConfig& cfg)
{
  cfg.validate();
  if (n < 1) throw std::invalid_argument("classical_c: n < 1");
  precision_scope ps(cfg.working_bits);
  std::int64_t cm = 0;
  for (auto t : thresholds) cm = std::max(cm, t);
  real sn = mp::sqrt(real(n)), twopi = 2 * pi();
  real acc = 0, last = 0;
  std::vector<CoefficientEstimate> out;
  std::size_t ti = 0;
  std::vector<std::int64_t> th = thresholds;
  std::sort(th.begin(), th.end());
  for (std::int64_t c = 1; c <= cm; ++c) {
    // S(-1, n; c) is real
    real k = 0;
    for (std::int64_t a = 0; a < c; ++a) {
      if (gcd(a, c) != 1) continue;
      std::int64_t d = c == 1 ? 0 : inv_mod(a, c);
      k += unit_phase(mod(-a + n * d, c), c).re;
    }
    last = twopi / sn * k / c * bessel_i(1, 4 * pi() * sn / c);
    acc += last;
    while (ti < th.size() && th[ti] == c) {
      out.push_back({cplx(acc), c, mp::abs(last)});
      ++ti;
    }
  }
  return out;
}

inline CoefficientEstimate classical_c(std::int64_t n, const PrecisionConfig& cfg)
{
  return classical_c_partial(n, {cfg.c_max}, cfg).front();
}

namespace detail {

// contribution of one pole cusp to T_g^{(-m)} coefficients, all n and thresholds at once
struct TgAccumulator {
  std::vector<std::int64_t> ns, thresholds;
  std::vector<std::vector<cplx>> acc;   // [n][threshold]
  std::vector<std::vector<real>> tail;  // last nonzero c-block size
};

inline void tg_accumulate(const GroupSymbol& s, std::int64_t m, const PoleCusp& pc, TgAccumulator& A, std::int64_t cmax)
{
  const std::int64_t M = s.level();
  const IntMatrix& L = pc.cusp.scaling;
  const std::int64_t t = pc.cusp.width;
  rational mu = -rational(m) * pc.eps.pole_order;  // principal exponent
  std::int64_t p = static_cast<std::int64_t>(mp::numerator(mu)), q = static_cast<std::int64_t>(mp::denominator(mu));
  cplx epsm = pc.eps.eps.pow(m).value();
  real amu = to_real(-mu);
  std::vector<real> pref, arg;
  for (auto n : A.ns) {
    pref.push_back(2 * pi() * mp::sqrt(amu / n));
    arg.push_back(4 * pi() * mp::sqrt(amu * n));
  }
  std::vector<cplx> run(A.ns.size());
  std::vector<real> last(A.ns.size(), real(0));
  std::size_t ti = 0;
  for (std::int64_t c = 1; c <= cmax; ++c) {
    auto pairs = kloosterman_pairs(M, L, t, c);
    if (!pairs.empty()) {
      std::int64_t D = q * c;
      for (std::size_t in = 0; in < A.ns.size(); ++in) {
        std::int64_t n = A.ns[in];
        std::map<std::int64_t, std::int64_t> counts;
        for (auto [a, d] : pairs) counts[mod(p * a + q * mod(n * d, c), D)]++;
        real b = pref[in] * bessel_i(1, arg[in] / c) / c;
        // double-precision phases are enough unless the Bessel weight is large
        bool exact = (b * real(pairs.size()) > real(1e-4)) || D <= 4;
        cplx term = epsm * phase_sum(counts, D, exact) * b;
        run[in] += term;
        last[in] = term.abs();
      }
    }
    while (ti < A.thresholds.size() && A.thresholds[ti] == c) {
      for (std::size_t in = 0; in < A.ns.size(); ++in) {
        A.acc[in][ti] += run[in];
        A.tail[in][ti] += last[in];
      }
      ++ti;
    }
  }
}

}  // namespace detail

// partial sums of the n-th coefficient of T_g^{(-m)} at each threshold, for each n
inline std::vector<std::vector<CoefficientEstimate>> tg_partial(const GroupSymbol& s, std::int64_t m, const std::vector<std::int64_t>& ns,
                                                                std::vector<std::int64_t> thresholds, const PrecisionConfig& cfg)
{
  cfg.validate();
  if (m < 1) throw std::invalid_argument("tg_coefficient: m < 1");
  for (auto n : ns)
    if (n < 1) throw std::invalid_argument("tg_coefficient: n < 1");
  precision_scope ps(cfg.working_bits);
  std::sort(thresholds.begin(), thresholds.end());
  detail::TgAccumulator A;
  A.ns = ns;
  A.thresholds = thresholds;
  A.acc.assign(ns.size(), std::vector<cplx>(thresholds.size()));
  A.tail.assign(ns.size(), std::vector<real>(thresholds.size(), real(0)));
  for (auto& pc : pole_cusps(s)) detail::tg_accumulate(s, m, pc, A, thresholds.back());
  std::vector<std::vector<CoefficientEstimate>> out(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i)
    for (std::size_t j = 0; j < thresholds.size(); ++j) out[i].push_back({A.acc[i][j], thresholds[j], A.tail[i][j]});
  return out;
}

inline CoefficientEstimate tg_coefficient(const GroupSymbol& s, std::int64_t m, std::int64_t n, const PrecisionConfig& cfg)
{
  return tg_partial(s, m, {n}, {cfg.c_max}, cfg)[0][0];
}

// coefficient of q^{n+1/24} in eta T_g
inline CoefficientEstimate ug_hat_coefficient(const GroupSymbol& s, std::int64_t n, const PrecisionConfig& cfg)
{
  cfg.validate();
  if (n < 0) throw std::invalid_argument("ug_hat_coefficient: n < 0");
  precision_scope ps(cfg.working_bits);
  const std::int64_t M = s.level();
  const MultiplierSystem eta{Multiplier::eta, rational(1, 2)};
  rational nu = rational(n) + rational(1, 24);
  cplx total;
  real tail = 0;
  for (auto& pc : pole_cusps(s)) {
    rational amu = pc.eps.pole_order - rational(1, 24);
    if (amu <= 0) continue;  // no growing term
    // weight 1/2 needs the representative with d > 0 at infinity
    IntMatrix L = pc.cusp.scaling;
    if (L.c == 0 && L.d < 0) L = -L;
    cplx lead = (pc.eps.eps * eta_multiplier(L) * root_of_unity(-1, 8)).value();
    real ra = to_real(amu), rn = to_real(nu);
    real pref = 2 * pi() * mp::pow(ra / rn, real(0.25));
    real arg = 4 * pi() * mp::sqrt(ra * rn);
    real last = 0;
    for (std::int64_t c = 1; c <= cfg.c_max; ++c) {
      bool empty = false;
      cplx k = kloosterman_sum(rational(1, 2), M, L, eta, amu, nu, c, pc.cusp.width, &empty);
      if (empty) continue;
      cplx term = lead * k * (pref * bessel_i(rational(1, 2), arg / c) / c);
      total += term;
      last = term.abs();
    }
    tail += last;
  }
  return {total, cfg.c_max, tail};
}

struct RoundedSeries {
  ZSeries series;                       // q^-1 + 0 + a(1) q + ... + a(prec) q^prec
  std::vector<double> distance;         // distance[n-1] = |value - round| at q^n
};

inline RoundedSeries round_estimates(const std::vector<CoefficientEstimate>& est)
{
  RoundedSeries r;
  r.series = ZSeries::zero(-1, static_cast<std::int64_t>(est.size()) + 2);
  r.series.at(-1) = 1;
  for (std::size_t i = 0; i < est.size(); ++i) {
    bigint z = nearest_integer(est[i].value.re);
    real dist = mp::abs(est[i].value.re - real(z));
    double dd = std::max(static_cast<double>(dist), static_cast<double>(mp::abs(est[i].value.im)));
    r.distance.push_back(dd);
    r.series.at(static_cast<std::int64_t>(i) + 1) = z;
    if (!(dd < 0.25))
      throw certificate_error("rounding distance " + std::to_string(dd) + " at q^" + std::to_string(i + 1));
  }
  return r;
}

inline RoundedSeries rounded_tg_series(const GroupSymbol& s, std::int64_t prec, const PrecisionConfig& cfg)
{
  if (prec < 1) throw std::invalid_argument("rounded_tg_series: prec < 1");
  std::vector<std::int64_t> ns;
  for (std::int64_t n = 1; n <= prec; ++n) ns.push_back(n);
  auto est = tg_partial(s, 1, ns, {cfg.c_max}, cfg);
  std::vector<CoefficientEstimate> flat;
  for (auto& e : est) flat.push_back(e[0]);
  precision_scope ps(cfg.working_bits);
  return round_estimates(flat);
}

} // namespace moonshine
