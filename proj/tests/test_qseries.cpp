#include "moonshine/qseries.hpp"

#include <gtest/gtest.h>

using namespace moonshine;

// q^-1 prod (1+q^n)^-24 + 24
static ZSeries t2b(std::int64_t n_max)
{
  // (1+q^n)^-1 = sum (-1)^j q^{nj}
  ZSeries x = ZSeries::zero(0, n_max + 2);
  x.coeffs[0] = 1;
  for (std::int64_t n = 1; n <= n_max + 1; ++n)
    for (int r = 0; r < 24; ++r)
      for (std::int64_t k = n; k <= n_max + 1; ++k) x.coeffs[k] -= x.coeffs[k - n];
  // x now holds prod (1+q^n)^-24 via repeated division by (1 + q^n)
  x.lead = -1;
  return x.plus_constant(24);
}

TEST(QSeries, ArithmeticKeepsPrecision)
{
  ZSeries a(0, {1, 2, 3, 4});
  ZSeries b(1, {1, 1});
  auto s = a + b;
  EXPECT_EQ(s.lead, 0);
  EXPECT_EQ(s.end(), 3);
  auto p = a * b;
  EXPECT_EQ(p.lead, 1);
  EXPECT_EQ(p.prec(), 2);
  EXPECT_EQ(p[1], 1);
  EXPECT_EQ(p[2], 3);
  EXPECT_THROW(p[3], precision_error);
  EXPECT_EQ(p[0], 0);
}

TEST(QSeries, InverseAndUnits)
{
  ZSeries a(0, {1, -1, 0, 0, 0, 0});
  auto inv = a.inverse();
  for (int k = 0; k < 6; ++k) EXPECT_EQ(inv[k], 1);
  ZSeries b(0, {2, 1});
  EXPECT_THROW(b.inverse(), std::domain_error);
  RSeries c(0, {rational(2), rational(1), rational(0)});
  auto ci = c.inverse();
  EXPECT_EQ(ci[0], rational(1, 2));
  EXPECT_EQ(ci[1], rational(-1, 4));
}

TEST(QSeries, ExpLogInverse)
{
  RSeries x(1, {rational(1), rational(-3, 2), rational(5), rational(0), rational(7, 3), rational(1), rational(2), rational(-1)});
  auto y = series_log(series_exp(x));
  for (std::int64_t k = 1; k < x.end(); ++k) EXPECT_EQ(y[k], x[k]) << k;
  RSeries u(0, {rational(1), rational(2), rational(-1), rational(4), rational(1, 2), rational(3)});
  auto v = series_exp(series_log(u));
  for (std::int64_t k = 0; k < u.end(); ++k) EXPECT_EQ(v[k], u[k]) << k;
  EXPECT_THROW(series_exp(RSeries(0, {rational(1), rational(1)})), std::domain_error);
  EXPECT_THROW(series_log(RSeries(0, {rational(2), rational(1)})), std::domain_error);
}

TEST(QSeries, EtaPochhammer)
{
  auto e = eta_pochhammer(40);
  EXPECT_EQ(e[0], 1);
  EXPECT_EQ(e[1], -1);
  EXPECT_EQ(e[2], -1);
  EXPECT_EQ(e[3], 0);
  EXPECT_EQ(e[5], 1);
  // pentagonal numbers k(3k-1)/2
  std::map<std::int64_t, int> pent;
  for (std::int64_t k = -6; k <= 6; ++k) pent[k * (3 * k - 1) / 2] = (k % 2 == 0) ? 1 : -1;
  for (std::int64_t n = 0; n <= 40; ++n) EXPECT_EQ(e[n], pent.count(n) ? pent[n] : 0) << n;
}

TEST(QSeries, JSeries)
{
  auto j = j_series(200);
  EXPECT_EQ(j.lead, -1);
  EXPECT_EQ(j[-1], 1);
  EXPECT_EQ(j[0], 0);
  EXPECT_EQ(j[1], 196884);
  EXPECT_EQ(j[2], 21493760);
  EXPECT_EQ(j[3], 864299970);
  EXPECT_EQ(j[4], bigint("20245856256"));
  EXPECT_EQ(j[5], bigint("333202640600"));
  EXPECT_EQ(j[6], bigint("4252023300096"));
  for (std::int64_t n = 1; n <= 200; ++n) EXPECT_GT(j[n], 0);
}

TEST(QSeries, Mahler)
{
  auto j = j_series(802);
  std::vector<MahlerFailure> bad;
  auto ok = mahler_check(j, &bad);
  EXPECT_TRUE(bad.empty());
  EXPECT_EQ(ok.size(), 201u);
  EXPECT_EQ(j[6], j[4] + j[1] * j[2]);
  // a perturbed coefficient is caught
  j.at(10) += 1;
  bad.clear();
  mahler_check(j, &bad);
  EXPECT_FALSE(bad.empty());
}

TEST(QSeries, HeckeTower)
{
  auto h1 = hecke_tower_dims(1, 20);
  auto j = j_series(20);
  for (std::int64_t n = -1; n <= 20; ++n) EXPECT_EQ(h1[n], j[n]);
  auto h2 = hecke_tower_dims(2, 5);
  EXPECT_EQ(h2[-2], 1);
  EXPECT_EQ(h2[0], 0);
  EXPECT_EQ(h2[1], bigint("42987520"));
  EXPECT_EQ(h2[2], bigint("40491909396"));
}

TEST(QSeries, FaberEqualsHecke)
{
  auto j = j_series(40);
  for (std::int64_t m = 1; m <= 5; ++m) {
    auto f = faber_tower(j, m);
    auto h = hecke_tower_dims(m, 30);
    for (std::int64_t n = -m; n <= 30; ++n) EXPECT_EQ(f.series[n], h[n]) << m << " " << n;
    EXPECT_EQ(f.poly[m], 1);
  }
  auto f2 = faber_tower(j, 2);
  EXPECT_EQ(f2.poly, (std::vector<bigint>{-393768, 0, 1}));
  auto f1 = faber_tower(j, 1);
  EXPECT_EQ(f1.poly, (std::vector<bigint>{0, 1}));
  EXPECT_THROW(faber_tower(ZSeries(0, {1, 2, 3}), 2), std::invalid_argument);
}

TEST(QSeries, UgFromTg)
{
  auto u = ug_from_tg(j_series(10));
  EXPECT_EQ(u.lead, -1);
  EXPECT_EQ(u[-1], 1);
  EXPECT_EQ(u[0], 0);
  EXPECT_EQ(u[1], 196883);
  EXPECT_EQ(u[2], 21296876);
}

TEST(QSeries, DenominatorIdentity)
{
  EXPECT_EQ(denominator_identity_residual(2, 2), 0);
  EXPECT_EQ(denominator_identity_residual(4, 4), 0);
  // the whole window including n <= 0 rows
  auto r = denominator_identity_residual_series(3, 3);
  for (auto& c : r.c) EXPECT_EQ(c, 0);
}

TEST(QSeries, EquivariantIdentity)
{
  auto j = j_series(60);
  auto b = t2b(60);
  EXPECT_EQ(b[1], 276);
  EXPECT_EQ(b[2], -2048);
  EXPECT_EQ(b[3], 11202);
  std::map<std::int64_t, ZSeries> e{{1, j}, {2, j}, {3, j}, {4, j}, {5, j}};
  EXPECT_EQ(equivariant_denominator_check(e, 3, 3), 0);
  std::map<std::int64_t, ZSeries> g{{1, b}, {2, j}, {3, b}, {4, j}};
  EXPECT_EQ(equivariant_denominator_check(g, 3, 3), 0);
  auto full = equivariant_denominator_residual_series(g, 3, 3);
  for (auto& c : full.c) EXPECT_EQ(c, 0);
  // wrong power map is detected
  std::map<std::int64_t, ZSeries> bad{{1, b}, {2, b}, {3, b}, {4, b}};
  EXPECT_NE(equivariant_denominator_check(bad, 3, 3), 0);
}

TEST(QSeries, JsonRoundTrip)
{
  auto j = j_series(12);
  auto k = zseries_from_json(to_json(j));
  EXPECT_EQ(j, k);
}
