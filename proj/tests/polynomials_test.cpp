#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lll/polynomials.hpp"
#include "support.hpp"

using namespace lll;
using lll::testing::brute_breve;
using lll::testing::brute_q;
using lll::testing::random_graph;
using lll::testing::random_region_point;

namespace {

constexpr double kTol = 1e-12;

DependencyGraph edge() { return DependencyGraph::path(2); }

}  // namespace

TEST(PolynomialTable, EmptyGraphHalfHalf) {
  PolynomialTable<double> t(DependencyGraph::empty(2), {0.5, 0.5});
  EXPECT_NEAR(t.breve(0b11), 0.25, kTol);
  EXPECT_NEAR(t.q_empty(), 0.25, kTol);
  EXPECT_NEAR(t.q(0b01), 0.25, kTol);
  EXPECT_EQ(t.breve(0), 1.0);
}

TEST(PolynomialTable, Triangle) {
  PolynomialTable<double> t(DependencyGraph::complete(3), {0.1, 0.1, 0.1});
  EXPECT_NEAR(t.breve(0b111), 0.7, kTol);
  EXPECT_EQ(t.q(0b011), 0.0);  // dependent set
}

TEST(PolynomialTable, CapAndLength) {
  EXPECT_THROW(PolynomialTable<double>(DependencyGraph::empty(3), {0.1, 0.1}), InputError);
  EXPECT_THROW(PolynomialTable<double>(DependencyGraph::empty(6), std::vector<double>(6, 0.1), 5), CapExceeded);
}

TEST(ShearerRegion, Examples) {
  EXPECT_TRUE(PolynomialTable<double>(DependencyGraph::empty(1), {0.999}).in_region());
  PolynomialTable<double> quarter(edge(), {0.25, 0.25});
  EXPECT_TRUE(quarter.in_region());
  EXPECT_NEAR(quarter.breve(0b11), 0.5, kTol);
  PolynomialTable<Rational> half(edge(), {Rational(1, 2), Rational(1, 2)});
  EXPECT_FALSE(half.in_region());
  EXPECT_EQ(half.breve(0b11), Rational(0));
  auto rep = PolynomialTable<double>(edge(), {0.5, 0.5}).region();
  EXPECT_FALSE(rep.in_region);
  EXPECT_EQ(rep.boundary_count, 1u);
  EXPECT_EQ(rep.argmin, Mask{0b11});
}

TEST(CheckGll, Examples) {
  EXPECT_TRUE(check_gll(DependencyGraph::empty(3), std::vector<double>{0.2, 0.3, 0.4}, std::vector<double>{0.2, 0.5, 0.4}));
  EXPECT_TRUE(check_gll(DependencyGraph::empty(1), std::vector<double>{0.5}, std::vector<double>{0.5}));
  EXPECT_FALSE(check_gll(edge(), std::vector<double>{0.3, 0.3}, std::vector<double>{0.5, 0.5}));
}

TEST(CheckCll, EmptyGraphReducesToRatio) {
  auto g = DependencyGraph::empty(3);
  std::vector<double> y{0.5, 1.0, 3.0};
  std::vector<double> at{0.5 / 1.5, 0.5, 0.75};
  EXPECT_TRUE(check_cll(g, at, y));
  at[1] += 1e-9;
  EXPECT_FALSE(check_cll(g, at, y));
}

TEST(CheckCll, FollowsFromGll) {
  std::mt19937_64 rng(5);
  int passes = 0;
  for (int rep = 0; rep < 300; ++rep) {
    auto g = random_graph(7, 0.4, rng);
    std::uniform_real_distribution<double> U(0.02, 0.4);
    std::vector<double> x(7), p(7), y(7);
    for (int i = 0; i < 7; ++i) x[static_cast<std::size_t>(i)] = U(rng);
    for (int i = 0; i < 7; ++i) {
      double rhs = x[static_cast<std::size_t>(i)];
      for (int j : g.neighbors(i)) rhs *= 1 - x[static_cast<std::size_t>(j)];
      p[static_cast<std::size_t>(i)] = rhs * std::uniform_real_distribution<double>(0.5, 1.0)(rng);
      y[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] / (1 - x[static_cast<std::size_t>(i)]);
    }
    ASSERT_TRUE(check_gll(g, p, x));
    EXPECT_TRUE(check_cll(g, p, y, 1e-12));
    ++passes;
  }
  EXPECT_EQ(passes, 300);
}

TEST(ShearerSlack, Examples) {
  PolynomialTable<double> one(DependencyGraph::empty(1), {0.5});
  EXPECT_NEAR(one.q_empty(), 0.5, kTol);
  EXPECT_NEAR(one.q(1), 0.5, kTol);
  EXPECT_NEAR(shearer_slack(one), 0.5, kTol);
  EXPECT_NEAR(shearer_slack(PolynomialTable<double>(DependencyGraph::empty(2), {0.5, 0.5})), 0.25, kTol);
  EXPECT_THROW(shearer_slack(PolynomialTable<double>(edge(), {0.6, 0.6})), Error);
}

TEST(SingletonRatio, Examples) {
  PolynomialTable<double> one(DependencyGraph::empty(1), {0.5});
  EXPECT_NEAR(one.singleton_ratio(0), 1.0, kTol);
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 50; ++rep) {
    auto g = random_graph(6, 0.5, rng);
    PolynomialTable<double> t(g, random_region_point(g, rng));
    for (int i = 0; i < 6; ++i) EXPECT_NEAR(t.singleton_ratio(i), t.q(bit(i)) / t.q_empty(), 1e-9);
    const double eps = shearer_slack(t);
    if (PolynomialTable<double>(g, scaled(t.p(), 1 + eps)).in_region()) {
      for (int i = 0; i < 6; ++i) EXPECT_LE(t.singleton_ratio(i), 1 / eps + kTol);
    }
  }
}

TEST(PredictedBound, Formulas) {
  const double t = 2.0;
  CriterionParams gll{CriterionKind::kGLL, {0.5}, {}, 0};
  EXPECT_NEAR(predicted_bound(gll, DependencyGraph::empty(1), {0.5}, t), 4 * 1 * (std::log(2.0) + 1 + t), 1e-12);
  gll.epsilon = 0.2;
  EXPECT_NEAR(predicted_bound(gll, DependencyGraph::empty(1), {0.4}, t), (t + std::log(2.0)) / 0.2, 1e-12);
  EXPECT_THROW(predicted_bound(gll, DependencyGraph::empty(1), {0.45}, t), Error);

  CriterionParams sh{CriterionKind::kShearer, {}, {}, 0.25};
  const double q0s = 1 - 0.4 * 1.25;
  EXPECT_NEAR(predicted_bound(sh, DependencyGraph::empty(1), {0.4}, t), 2 / 0.25 * (std::log(1 / q0s) + t), 1e-12);
  sh.epsilon = 0;
  const double r = 0.4 / 0.6;
  EXPECT_NEAR(predicted_bound(sh, DependencyGraph::empty(1), {0.4}, t), 4 * r * (std::log1p(r) + 1 + t), 1e-12);

  CriterionParams cll{CriterionKind::kCLL, {}, {1.0}, 0};
  EXPECT_NEAR(predicted_bound(cll, DependencyGraph::empty(1), {0.5}, t), 4 * (std::log(2.0) + 1 + t), 1e-12);
  cll.epsilon = 0.1;
  EXPECT_THROW(predicted_bound(cll, DependencyGraph::empty(1), {0.5}, t), Error);
  EXPECT_NEAR(predicted_bound(cll, DependencyGraph::empty(1), {0.45}, t), 2 / 0.1 * (std::log(2.0) + t), 1e-12);
}

// Identities on random in-region instances, against brute-force alternating sums.
class RandomInstances : public ::testing::TestWithParam<int> {};

TEST_P(RandomInstances, IdentitiesHold) {
  std::mt19937_64 rng(1000 + static_cast<unsigned>(GetParam()));
  const int n = 2 + GetParam() % 7;
  auto g = random_graph(n, 0.45, rng);
  auto p = random_region_point(g, rng);
  PolynomialTable<double> t(g, p);
  ASSERT_TRUE(t.in_region());
  const Mask all = t.all();
  double qsum = 0;
  for (Mask S = 0; S <= all; ++S) {
    EXPECT_NEAR(t.breve(S), brute_breve(g, p, S), kTol);
    EXPECT_NEAR(t.q(S), brute_q(g, p, S), kTol);
    for (Mask m = S; m; m &= m - 1) {
      const int a = lowest_bit(m);
      EXPECT_NEAR(t.breve(S), t.breve(S & ~bit(a)) - p[static_cast<std::size_t>(a)] * t.breve(S & ~g.closed_mask(a)), kTol);
    }
    // breve_q(S) = sum of q_Y over Y outside S.
    double outside = 0;
    const Mask comp = all & ~S;
    for (Mask Y = comp;; Y = (Y - 1) & comp) {
      outside += t.q(Y);
      if (Y == 0) break;
    }
    EXPECT_NEAR(t.breve(S), outside, kTol);
    if (S == all) break;
  }
  for (double v : t.q_values()) qsum += v;
  EXPECT_NEAR(qsum, 1.0, kTol);
  // q_I = p^I * sum_{S inside closed(I)} q_S.
  for (Mask I : t.independent_sets()) {
    const Mask reach = g.closed_mask_of(I);
    double inner = 0;
    for (Mask S = reach;; S = (S - 1) & reach) {
      inner += t.q(S);
      if (S == 0) break;
    }
    EXPECT_NEAR(t.q(I), t.power(I) * inner, kTol);
  }
}

TEST_P(RandomInstances, ExactModeAgrees) {
  std::mt19937_64 rng(5000 + static_cast<unsigned>(GetParam()));
  const int n = 2 + GetParam() % 6;
  auto g = random_graph(n, 0.4, rng);
  auto p = random_region_point(g, rng);
  PolynomialTable<double> t(g, p);
  PolynomialTable<Rational> exact(g, lll::testing::to_rational(p));
  Rational sum = 0;
  for (const auto& v : exact.q_values()) sum += v;
  EXPECT_EQ(sum, Rational(1));
  for (Mask S = 0; S <= t.all(); ++S) {
    EXPECT_NEAR(t.breve(S), to_double(exact.breve(S)), kTol);
    EXPECT_EQ(exact.breve(S), brute_breve(g, exact.p(), S));
    if (S == t.all()) break;
  }
}

TEST_P(RandomInstances, MonotoneAndLogSubmodular) {
  std::mt19937_64 rng(9000 + static_cast<unsigned>(GetParam()));
  const int n = 2 + GetParam() % 6;
  auto g = random_graph(n, 0.4, rng);
  auto p = random_region_point(g, rng);
  auto lower = p;
  for (auto& v : lower) v *= std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  PolynomialTable<double> t(g, p), tl(g, lower);
  const Mask all = t.all();
  for (Mask S = 0; S <= all; ++S) {
    EXPECT_GE(tl.breve(S), t.breve(S) - kTol);
    if (S == all) break;
  }
  for (Mask A = 0; A <= all; ++A) {
    for (Mask B = 0; B <= all; ++B) {
      EXPECT_GE(t.q(A) * t.q(B), t.q(A | B) * t.q(A & B) - kTol);
      if (B == all) break;
    }
    if (A == all) break;
  }
  // sum_{J inside S} q_J / q_empty <= prod_{j in S} (1 + q_{j} / q_empty).
  for (Mask S = 0; S <= all; ++S) {
    double lhs = 0;
    for (Mask J = S;; J = (J - 1) & S) {
      lhs += t.q(J) / t.q_empty();
      if (J == 0) break;
    }
    double rhs = 1;
    for (Mask m = S; m; m &= m - 1) rhs *= 1 + t.singleton_ratio(lowest_bit(m));
    EXPECT_LE(lhs, rhs * (1 + 1e-12));
    if (S == all) break;
  }
}

INSTANTIATE_TEST_SUITE_P(Polynomials, RandomInstances, ::testing::Range(0, 24));

TEST(Criteria, GllImpliesShearerRatioBounds) {
  std::mt19937_64 rng(77);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 2 + rep % 7;
    auto g = random_graph(n, 0.4, rng);
    std::uniform_real_distribution<double> U(0.01, 0.6);
    std::vector<double> x(static_cast<std::size_t>(n)), p(static_cast<std::size_t>(n));
    for (auto& v : x) v = U(rng);
    for (int i = 0; i < n; ++i) {
      double rhs = x[static_cast<std::size_t>(i)];
      for (int j : g.neighbors(i)) rhs *= 1 - x[static_cast<std::size_t>(j)];
      p[static_cast<std::size_t>(i)] = rhs;
    }
    ASSERT_TRUE(check_gll(g, p, x));
    PolynomialTable<double> t(g, p);
    EXPECT_TRUE(t.in_region());
    for (Mask S = 1; S <= t.all(); ++S) {
      for (Mask m = S; m; m &= m - 1) {
        const int a = lowest_bit(m);
        EXPECT_GE(t.breve(S) / t.breve(S & ~bit(a)), 1 - x[static_cast<std::size_t>(a)] - 1e-12);
      }
      if (S == t.all()) break;
    }
    for (int a = 0; a < n; ++a)
      EXPECT_LE(t.singleton_ratio(a), x[static_cast<std::size_t>(a)] / (1 - x[static_cast<std::size_t>(a)]) + 1e-12);
  }
}

TEST(Criteria, CllImpliesShearerRatioBoundsAndYIdentities) {
  std::mt19937_64 rng(78);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 2 + rep % 7;
    auto g = random_graph(n, 0.4, rng);
    std::uniform_real_distribution<double> U(0.01, 1.5);
    std::vector<double> y(static_cast<std::size_t>(n)), p(static_cast<std::size_t>(n));
    for (auto& v : y) v = U(rng);
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(i)] / closed_neighborhood_y(g, y, i);
    ASSERT_TRUE(check_cll(g, p, y, 1e-12));
    PolynomialTable<double> t(g, p);
    EXPECT_TRUE(t.in_region());
    auto Y = y_table(g, y);
    const Mask all = t.all();
    for (Mask S = 1; S <= all; ++S) {
      for (Mask m = S; m; m &= m - 1) {
        const int a = lowest_bit(m);
        EXPECT_NEAR(Y[S], Y[S & ~bit(a)] + y[static_cast<std::size_t>(a)] * Y[S & ~g.closed_mask(a)], 1e-9);
        const double ratio = t.breve(S) / t.breve(S & ~bit(a));
        EXPECT_GE(ratio, Y[all & ~S] / Y[all & ~(S & ~bit(a))] - 1e-12);
      }
      if (S == all) break;
    }
    for (Mask A = 0; A <= all; ++A) {
      for (Mask B = 0; B <= all; ++B) {
        EXPECT_LE(Y[A | B], Y[A] * Y[B] * (1 + 1e-12));
        if (B == all) break;
      }
      if (A == all) break;
    }
    for (int a = 0; a < n; ++a) EXPECT_LE(t.singleton_ratio(a), y[static_cast<std::size_t>(a)] + 1e-12);
    // Truncated sequence mass from any independent J stays below y^J.
    if (n <= 5)
      for (Mask J : t.independent_sets()) {
        if (J == 0) continue;
        double yJ = 1;
        for (Mask m = J; m; m &= m - 1) yJ *= y[static_cast<std::size_t>(lowest_bit(m))];
        EXPECT_LE(sequence_mass(g, p, J, 12), yJ + 1e-12);
      }
  }
}

TEST(SequenceMass, Examples) {
  auto g = DependencyGraph::path(3);
  std::vector<double> p{0.1, 0.2, 0.3};
  EXPECT_DOUBLE_EQ(sequence_mass(g, p, 0b001, 1), 0.1);
  EXPECT_DOUBLE_EQ(sequence_mass(g, p, 0b101, 1), 0.0);
  EXPECT_DOUBLE_EQ(sequence_mass(g, p, 0, 5), 1.0);
  // Single vertex: partial geometric sums towards p / (1 - p).
  auto one = DependencyGraph::empty(1);
  const double q = 0.3;
  double partial = 0;
  for (int b = 1; b <= 30; ++b) {
    partial += std::pow(q, b);
    EXPECT_NEAR(sequence_mass(one, std::vector<double>{q}, 1, b), partial, 1e-15);
  }
  EXPECT_NEAR(sequence_mass(one, std::vector<double>{q}, 1, 60), q / (1 - q), 1e-12);
  EXPECT_THROW(sequence_mass(g, p, 0b011, 3), InputError);
}

TEST(SequenceMass, MonotoneAndBelowRatio) {
  std::mt19937_64 rng(99);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 1 + rep % 4;
    auto g = random_graph(n, 0.5, rng);
    auto p = random_region_point(g, rng, 0.2);
    PolynomialTable<double> t(g, p);
    for (Mask J : t.independent_sets()) {
      if (J == 0) continue;
      double prev = 0;
      for (int b = 1; b <= 40; ++b) {
        const double m = sequence_mass(g, p, J, b);
        EXPECT_GE(m, prev - 1e-15);
        EXPECT_LE(m, t.q(J) / t.q_empty() + 1e-12);
        prev = m;
      }
      EXPECT_GE(prev, 0.99 * t.q(J) / t.q_empty());
    }
  }
}

TEST(ProperMassByLength, SingleVertexIsPower) {
  auto one = DependencyGraph::empty(1);
  EXPECT_NEAR(proper_mass_by_length(one, std::vector<double>{0.4}, 3), 0.064, 1e-15);
  // Path 0-1 with p = (a, b): sequences of length 2 are pairs (I, J), J inside closed(I).
  auto path = DependencyGraph::path(2);
  const double a = 0.2, b = 0.3;
  EXPECT_NEAR(proper_mass_by_length(path, std::vector<double>{a, b}, 2), (a + b) * (a + b), 1e-15);
}
