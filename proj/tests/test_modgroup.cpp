#include "moonshine/modgroup.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace moonshine;

TEST(GroupSymbol, ParseExamples)
{
  auto s = parse_group_symbol("1");
  EXPECT_EQ(s.N, 1);
  EXPECT_EQ(s.h, 1);
  EXPECT_EQ(s.wset, (std::set<std::int64_t>{1}));

  s = parse_group_symbol("4||2+");
  EXPECT_EQ(s.N, 4);
  EXPECT_EQ(s.h, 2);
  EXPECT_EQ(s.wset, (std::set<std::int64_t>{1, 2}));
  EXPECT_EQ(s.level(), 8);

  s = parse_group_symbol("30+6,10,15");
  EXPECT_EQ(s.wset, (std::set<std::int64_t>{1, 6, 10, 15}));

  s = parse_group_symbol("6+");
  EXPECT_EQ(s.wset, (std::set<std::int64_t>{1, 2, 3, 6}));
}

TEST(GroupSymbol, ParseErrors)
{
  EXPECT_THROW(parse_group_symbol(""), std::invalid_argument);
  EXPECT_THROW(parse_group_symbol("4|2+"), std::invalid_argument);
  EXPECT_THROW(parse_group_symbol("10||5"), std::invalid_argument);  // 5 does not divide 24
  EXPECT_THROW(parse_group_symbol("12+4,6"), std::invalid_argument);  // 6 is not an exact divisor of 12
  EXPECT_THROW(parse_group_symbol("abc"), std::invalid_argument);
}

TEST(GroupSymbol, ClosureUnderComposition)
{
  auto s = parse_group_symbol("30+6");
  for (auto e : s.wset)
    for (auto f : s.wset) EXPECT_TRUE(s.wset.count(al_compose(e, f)));
}

TEST(GroupSymbol, MonsterTable)
{
  auto m = load_monster_symbols();
  EXPECT_EQ(m.size(), 194u);
  EXPECT_EQ(m.at("2A").text, "2+");
  EXPECT_EQ(m.at("27A").text, "27+");
  EXPECT_EQ(m.at("27B").text, "27+");
  EXPECT_EQ(m.at("119A").text, "119+");
  EXPECT_EQ(m.at("119B").text, "119+");
  EXPECT_EQ(m.at("4B").text, "4||2+");
  std::set<std::string> distinct;
  for (auto& [k, v] : m) distinct.insert(v.text);
  EXPECT_EQ(distinct.size(), 171u);
  for (auto& [k, v] : m) {
    EXPECT_EQ(24 % v.h, 0);
    EXPECT_EQ(v.N % v.h, 0);
    EXPECT_TRUE(v.wset.count(1));
    for (auto e : v.wset) EXPECT_TRUE(exact_divisor(e, v.N / v.h)) << k;
  }
}

TEST(GroupSymbol, MissingFile)
{
  EXPECT_THROW(load_monster_symbols("/nonexistent/monster_groups.txt"), data_error);
}

TEST(Cusps, Gamma0Of8)
{
  auto cs = cusps_of_gamma0(8);
  std::map<std::string, std::int64_t> w;
  for (auto& c : cs) w[c.cusp.str()] = c.width;
  EXPECT_EQ(w, (std::map<std::string, std::int64_t>{{"inf", 1}, {"0", 8}, {"1/2", 2}, {"1/4", 1}}));
  for (auto& c : cs) {
    EXPECT_EQ(c.scaling.det(), 1);
    EXPECT_EQ(c.scaling.c, c.cusp.gamma);
    if (!c.cusp.is_infinity()) EXPECT_EQ(c.scaling.d, -c.cusp.alpha);
  }
}

TEST(Cusps, SmallLevels)
{
  auto one = cusps_of_gamma0(1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_TRUE(one[0].cusp.is_infinity());
  EXPECT_EQ(one[0].width, 1);
  auto six = cusps_of_gamma0(6);
  EXPECT_EQ(six.size(), 4u);
  std::int64_t s = 0;
  for (auto& c : six) s += c.width;
  EXPECT_EQ(s, 12);
}

TEST(Cusps, WidthSumIsIndex)
{
  for (std::int64_t N = 1; N <= 30; ++N) {
    std::int64_t s = 0;
    for (auto& c : cusps_of_gamma0(N)) s += c.width;
    EXPECT_EQ(s, gamma0_index(N)) << N;
  }
}

// orbit of a fraction under Gamma_0(N) by brute force over small matrices
static bool brute_equivalent(std::int64_t N, Cusp x, Cusp y)
{
  for (std::int64_t c = -4 * N; c <= 4 * N; c += N)
    for (std::int64_t a = -30; a <= 30; ++a)
      for (std::int64_t d = -30; d <= 30; ++d) {
        std::int64_t num = a * d - 1;  // b c = a d - 1
        if (c == 0) {
          if (num != 0) continue;
          for (std::int64_t b = -30; b <= 30; ++b) {
            std::int64_t p = a * x.alpha + b * x.gamma, q = c * x.alpha + d * x.gamma;
            if (p * y.gamma == q * y.alpha) return true;
          }
          continue;
        }
        if (num % c) continue;
        std::int64_t b = num / c;
        std::int64_t p = a * x.alpha + b * x.gamma, q = c * x.alpha + d * x.gamma;
        if (p * y.gamma == q * y.alpha) return true;
      }
  return false;
}

TEST(Cusps, Inequivalent)
{
  for (std::int64_t N : {4, 6, 8, 9, 12, 16, 18, 25}) {
    auto cs = cusps_of_gamma0(N);
    for (std::size_t i = 0; i < cs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) {
        auto w = cusp_equivalent(N, cs[i].cusp, cs[j].cusp);
        EXPECT_EQ(w.has_value(), i == j) << N << " " << cs[i].cusp.str() << " " << cs[j].cusp.str();
      }
  }
}

TEST(Cusps, EquivalenceExamples)
{
  EXPECT_TRUE(cusp_equivalent(1, {0, 1}, {1, 0}).has_value());
  EXPECT_FALSE(cusp_equivalent(8, {0, 1}, {1, 0}).has_value());
  auto w = cusp_equivalent(4, {1, 2}, {3, 2});
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->M.c % 4, 0);
  EXPECT_EQ(w->M.det(), 1);
  EXPECT_TRUE(brute_equivalent(4, {1, 2}, {3, 2}));
  EXPECT_FALSE(brute_equivalent(8, {0, 1}, {1, 0}));
}

TEST(Cusps, EquivalenceIsAnEquivalenceRelation)
{
  const std::int64_t N = 12;
  std::vector<Cusp> pts;
  for (std::int64_t g = 1; g <= 12; ++g)
    for (std::int64_t a = -6; a <= 6; ++a)
      if (gcd(a, g) == 1) pts.push_back({a, g});
  pts.push_back({1, 0});
  for (auto& x : pts)
    for (auto& y : pts) {
      auto xy = cusp_equivalent(N, x, y), yx = cusp_equivalent(N, y, x);
      EXPECT_EQ(xy.has_value(), yx.has_value());
      if (xy) {
        // L_x = M^{-1} L_y T^r
        IntMatrix Lx = scaling_matrix(x.alpha, x.gamma), Ly = scaling_matrix(y.alpha, y.gamma);
        EXPECT_EQ(xy->M.inverse() * Ly * IntMatrix::T(xy->r), Lx);
      }
    }
  EXPECT_TRUE(cusp_equivalent(N, {1, 1}, {1, 1}).has_value());
}

TEST(AtkinLehner, Shapes)
{
  EXPECT_EQ(atkin_lehner_matrix(1, 1), (IntMatrix{1, 0, 0, 1}));
  for (auto [N, e] : std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 2}, {6, 2}, {6, 3}, {30, 10}, {119, 7}, {24, 8}}) {
    IntMatrix W = atkin_lehner_matrix(N, e);
    EXPECT_EQ(W.det(), e);
    EXPECT_EQ(W.a % e, 0);
    EXPECT_EQ(W.d % e, 0);
    EXPECT_EQ(W.c % N, 0);
  }
  EXPECT_THROW(atkin_lehner_matrix(12, 2), std::invalid_argument);
}

TEST(Sigma, GeneratorValues)
{
  for (auto txt : {"4||2+", "4||2", "3||3", "6||3", "8||4+", "24||12", "12||2+6", "60||6+10"}) {
    auto s = parse_group_symbol(txt);
    const std::int64_t h = s.h;
    // (a) Gamma_0(Nh)
    EXPECT_EQ(sigma_g(s, {1, 0, 0, 1, 1}), root_of_unity(0, 1)) << txt;
    EXPECT_EQ(sigma_g(s, {1, 0, h, 1, 1}), root_of_unity(0, 1)) << txt;
    // (b) Atkin-Lehner involutions of Gamma_0(Nh) inside the eigengroup
    for (auto e : s.wset) {
      if (!exact_divisor(e, s.N * h)) continue;
      IntMatrix W = atkin_lehner_matrix(s.N * h, e);
      EigengroupElement w{1, W.b * h, h, W.d / e, e};
      if (e == 1) w = {1, 0, 0, 1, 1};
      ASSERT_TRUE(in_shape(s, w)) << txt << " e=" << e;
      EXPECT_EQ(sigma_g(s, w), root_of_unity(0, 1)) << txt << " e=" << e;
    }
    // (c) [[1, 1/h],[0,1]]
    EXPECT_EQ(sigma_g(s, {1, 1, 0, 1, 1}), root_of_unity(-1, h)) << txt;
    // (d) [[1,0],[N,1]]
    EXPECT_EQ(sigma_g(s, {1, 0, 1, 1, 1}), root_of_unity(-s.lambda(), h)) << txt;
  }
}

TEST(Sigma, Multiplicative)
{
  std::mt19937 rng(7);
  for (auto txt : {"4||2+", "3||3", "6||3", "8||4", "12||6", "20||2+5"}) {
    auto s = parse_group_symbol(txt);
    const std::int64_t h = s.h, N = s.N;
    // random words in the generators of the e = 1 part
    auto gen = [&](int k) -> IntMatrix {
      switch (k) {
        case 0: return {1, 1, 0, 1};       // h * (1/h) in b
        case 1: return {1, -1, 0, 1};
        case 2: return {1, 0, N, 1};
        default: return {1, 0, -N, 1};
      }
    };
    // matrices written in units where b is scaled by h
    auto to_el = [&](const IntMatrix& M) { return EigengroupElement{M.a, M.b, M.c / N, M.d, 1}; };
    auto mul = [&](const IntMatrix& x, const IntMatrix& y) {
      // [[a, b/h],[c, d]] products in scaled form
      return IntMatrix{x.a * y.a + x.b * y.c / h, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b / h + x.d * y.d};
    };
    for (int trial = 0; trial < 20; ++trial) {
      IntMatrix A{1, 0, 0, 1}, B{1, 0, 0, 1};
      for (int k = 0; k < 3; ++k) A = mul(A, gen(rng() % 4));
      for (int k = 0; k < 3; ++k) B = mul(B, gen(rng() % 4));
      IntMatrix AB = mul(A, B);
      auto sa = sigma_g(s, to_el(A)), sb = sigma_g(s, to_el(B)), sab = sigma_g(s, to_el(AB));
      EXPECT_EQ(sab, sa * sb) << txt;
    }
  }
}

TEST(Epsilon, FourB)
{
  auto s = parse_group_symbol("4||2+");
  std::map<std::string, std::tuple<root_of_unity, std::int64_t, std::int64_t>> got;
  for (auto& p : pole_cusps(s)) got[p.cusp.cusp.str()] = {p.eps.eps, p.eps.e, p.cusp.width};
  ASSERT_EQ(got.size(), 4u);
  EXPECT_EQ(got["inf"], std::make_tuple(root_of_unity(0, 1), 1, 1));
  EXPECT_EQ(got["0"], std::make_tuple(root_of_unity(0, 1), 2, 8));
  EXPECT_EQ(got["1/4"], std::make_tuple(root_of_unity(1, 2), 1, 1));
  // representative -1/2 of the cusp 1/2: L T
  auto c = cusps_of_gamma0(8);
  for (auto& cd : c)
    if (cd.cusp.str() == "1/2") {
      auto e = epsilon_g(s, cd.scaling * IntMatrix::T(1));
      ASSERT_TRUE(e);
      EXPECT_EQ(e->eps, root_of_unity(1, 4));
      EXPECT_EQ(e->e, 2);
      EXPECT_EQ(std::get<0>(got["1/2"]), root_of_unity(3, 4));
    }
}

TEST(Epsilon, Basic)
{
  auto one = parse_group_symbol("1");
  auto e = epsilon_g(one, {1, 0, 0, 1});
  ASSERT_TRUE(e);
  EXPECT_EQ(e->eps, root_of_unity(0, 1));
  EXPECT_EQ(e->pole_order, 1);
  EXPECT_EQ(e->e, 1);

  // 2B: no Atkin-Lehner, holomorphic at 0
  auto two = parse_group_symbol("2");
  EXPECT_FALSE(epsilon_g(two, {0, -1, 1, 0}).has_value());
  auto twoA = parse_group_symbol("2+");
  auto e0 = epsilon_g(twoA, {0, -1, 1, 0});
  ASSERT_TRUE(e0);
  EXPECT_EQ(e0->e, 2);
  EXPECT_EQ(e0->pole_order, rational(1, 2));
}

TEST(Epsilon, EveryMonsterSymbol)
{
  for (auto& [name, s] : load_monster_symbols()) {
    auto pcs = pole_cusps(s);
    ASSERT_FALSE(pcs.empty()) << name;
    bool inf = false;
    for (auto& p : pcs) {
      EXPECT_EQ(p.cusp.scaling.det(), 1);
      EXPECT_GT(p.eps.pole_order, 0);
      // pole order in the local parameter is a positive integer
      rational local = p.eps.pole_order * p.cusp.width;
      EXPECT_EQ(mp::denominator(local), 1) << name << " " << p.cusp.cusp.str();
      EXPECT_EQ((p.eps.e * s.h * s.h * s.h) % p.eps.eps.n, 0) << name;
      if (p.cusp.cusp.is_infinity()) {
        inf = true;
        EXPECT_EQ(p.eps.pole_order, 1);
        EXPECT_EQ(p.eps.eps, root_of_unity(0, 1));
      }
    }
    EXPECT_TRUE(inf) << name;
  }
}
