#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

namespace moonshine {

namespace mp = boost::multiprecision;

using bigint = mp::mpz_int;
using rational = mp::mpq_rational;
using real = mp::mpfr_float;

inline unsigned bits_to_digits10(unsigned bits)
{
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

// RAII: sets the default mpfr precision for new reals in this scope
class precision_scope {
public:
  explicit precision_scope(unsigned bits) : old_(real::default_precision())
  {
    real::default_precision(bits_to_digits10(bits));
  }
  ~precision_scope() { real::default_precision(old_); }
  precision_scope(const precision_scope&) = delete;
  precision_scope& operator=(const precision_scope&) = delete;

private:
  unsigned old_;
};

inline real pi()
{
  real p;
  mpfr_const_pi(p.backend().data(), MPFR_RNDN);
  return p;
}

struct cplx {
  real re, im;
  cplx() : re(0), im(0) {}
  cplx(real r, real i = real(0)) : re(std::move(r)), im(std::move(i)) {}

  cplx& operator+=(const cplx& o)
  {
    re += o.re;
    im += o.im;
    return *this;
  }
  cplx& operator-=(const cplx& o)
  {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  cplx& operator*=(const real& s)
  {
    re *= s;
    im *= s;
    return *this;
  }
  cplx conj() const { return cplx(re, -im); }
  real norm() const { return re * re + im * im; }
  real abs() const { return mp::sqrt(norm()); }
};

inline cplx operator+(cplx a, const cplx& b) { return a += b; }
inline cplx operator-(cplx a, const cplx& b) { return a -= b; }
inline cplx operator*(const cplx& a, const cplx& b)
{
  return cplx(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}
inline cplx operator*(cplx a, const real& s) { return a *= s; }
inline cplx operator*(const real& s, cplx a) { return a *= s; }

inline std::int64_t mod(std::int64_t a, std::int64_t m)
{
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
inline std::int64_t lcm(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

// inverse of a mod m (gcd must be 1); m == 1 -> 0
inline std::int64_t inv_mod(std::int64_t a, std::int64_t m)
{
  if (m == 1) return 0;
  std::int64_t r0 = m, r1 = mod(a, m), s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1, t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) throw std::domain_error("inv_mod: not invertible");
  return mod(s0, m);
}

// exp(2 pi i k / n), kept exact
struct root_of_unity {
  std::int64_t k = 0, n = 1;

  root_of_unity() = default;
  root_of_unity(std::int64_t k_, std::int64_t n_) : k(k_), n(n_) { normalize(); }
  static root_of_unity from_phase(const rational& ph)
  {
    auto num = mp::numerator(ph), den = mp::denominator(ph);
    return root_of_unity(static_cast<std::int64_t>(num % den), static_cast<std::int64_t>(den));
  }

  void normalize()
  {
    if (n < 0) {
      n = -n;
      k = -k;
    }
    k = mod(k, n);
    std::int64_t g = gcd(k, n);
    if (g > 1) {
      k /= g;
      n /= g;
    }
    if (k == 0) n = 1;
  }
  root_of_unity operator*(const root_of_unity& o) const
  {
    std::int64_t L = lcm(n, o.n);
    return root_of_unity(k * (L / n) + o.k * (L / o.n), L);
  }
  root_of_unity pow(std::int64_t e) const { return root_of_unity(k * e, n); }
  root_of_unity inverse() const { return root_of_unity(-k, n); }
  rational phase() const { return rational(k, n); }
  bool operator==(const root_of_unity& o) const { return k == o.k && n == o.n; }
  bool operator!=(const root_of_unity& o) const { return !(*this == o); }
  cplx value() const;
  std::string str() const { return "e(" + std::to_string(k) + "/" + std::to_string(n) + ")"; }
};

// e(k/n) = exp(2 pi i k/n), exact at quarter turns
inline cplx unit_phase(std::int64_t k, std::int64_t n)
{
  k = mod(k, n);
  if (k == 0) return cplx(real(1));
  if (2 * k == n) return cplx(real(-1));
  if (4 * k == n) return cplx(real(0), real(1));
  if (4 * k == 3 * n) return cplx(real(0), real(-1));
  real x = 2 * pi() * real(k) / real(n);
  real s, c;
  s = mp::sin(x);
  c = mp::cos(x);
  return cplx(c, s);
}

inline cplx root_of_unity::value() const { return unit_phase(k, n); }

inline std::string to_decimal(const real& x, int digits)
{
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << x;
  return os.str();
}

inline real to_real(const rational& q) { return real(mp::numerator(q)) / real(mp::denominator(q)); }

inline bigint nearest_integer(const real& x)
{
  bigint z;
  mpfr_get_z(z.backend().data(), x.backend().data(), MPFR_RNDN);
  return z;
}

} // namespace moonshine
