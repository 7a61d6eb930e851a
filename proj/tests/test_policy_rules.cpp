#include "fiscmon/policy_rules.hpp"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

namespace fiscmon {
namespace {

ModelParamsd Beta(double beta) {
  ModelParamsd p;
  p.beta = beta;
  p.y = 1;
  p.g = 0.2;
  p.b_star = 1;
  return p;
}

AdHocRuled Rule(double f_pi, double g_b) {
  AdHocRuled r;
  r.f_pi = f_pi;
  r.g_b = g_b;
  return r;
}

// Numerical eigenvalues of A + B diag(f_pi, g_b), sorted as (pi row, b row)
// by matching against the diagonal position of the eigenvectors.
std::pair<double, double> NumericalRoots(double beta, double f_pi, double g_b) {
  const auto sys = build_linear_system(Beta(beta), Variant::Linear);
  Eigen::EigenSolver<Matrix2<double>> es(sys.closed_loop_matrix(f_pi, g_b));
  double pi = 0, b = 0;
  for (int k = 0; k < 2; ++k) {
    const auto v = es.eigenvectors().col(k);
    (std::abs(v[0]) > std::abs(v[1]) ? pi : b) = es.eigenvalues()[k].real();
  }
  return {pi, b};
}

TEST(ClosedLoopEigenvalues, MatchNumericalEigenvalues) {
  const auto roots = closed_loop_eigenvalues(Beta(0.99), Rule(1.5, 0.1));
  const auto [pi, b] = NumericalRoots(0.99, 1.5, 0.1);
  EXPECT_NEAR(roots.lambda_pi, pi, 1e-14);
  EXPECT_NEAR(roots.lambda_b, b, 1e-14);
  EXPECT_NEAR(roots.lambda_pi, 1.485, 1e-14);
  EXPECT_NEAR(roots.lambda_b, 0.9101010101010101, 1e-14);
}

TEST(ClosedLoopEigenvalues, PegWithoutFiscalFeedback) {
  const auto roots = closed_loop_eigenvalues(Beta(0.99), Rule(0, 0));
  EXPECT_EQ(roots.lambda_pi, 0.0);
  EXPECT_NEAR(roots.lambda_b, 1.0101010101010102, 1e-15);
}

TEST(ClosedLoopEigenvalues, InflationRootOnUnitCircle) {
  const auto roots = closed_loop_eigenvalues(Beta(0.5), Rule(2, 0.5));
  EXPECT_EQ(roots.lambda_pi, 1.0);
  EXPECT_EQ(roots.lambda_b, 1.5);
  EXPECT_EQ(classify_regime(Beta(0.5), Rule(2, 0.5)).label, Regime::Boundary);
}

TEST(ClosedLoopEigenvalues, RandomRulesAgreeWithEigenSolver) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> beta(0.05, 0.999), coef(-5, 5);
  for (int i = 0; i < 300; ++i) {
    const double bt = beta(rng), f = coef(rng), g = coef(rng);
    const auto roots = closed_loop_eigenvalues(Beta(bt), Rule(f, g));
    const auto [pi, b] = NumericalRoots(bt, f, g);
    EXPECT_NEAR(roots.lambda_pi, pi, 1e-12 * std::max(1.0, std::abs(pi)));
    EXPECT_NEAR(roots.lambda_b, b, 1e-12 * std::max(1.0, std::abs(b)));
  }
}

TEST(ClassifyRegime, Examples) {
  EXPECT_EQ(classify_regime(Beta(0.99), Rule(1.5, 0.1)).label, Regime::ActiveMPassiveF);
  const auto pmaf = classify_regime(Beta(0.99), Rule(0.5, -0.5));
  EXPECT_EQ(pmaf.label, Regime::PassiveMActiveF);
  EXPECT_NEAR(pmaf.abs_lambda_b, 1.5101010101010102, 1e-15);
  EXPECT_EQ(classify_regime(Beta(0.99), Rule(0.5, 0.1)).label, Regime::Indeterminate);
  EXPECT_EQ(classify_regime(Beta(0.99), Rule(1.5, -0.5)).label, Regime::Explosive);
}

TEST(ClassifyRegime, ToleranceBandIsBoundary) {
  const double beta = 0.99;
  const double f_near = (1 + 5e-10) / beta;
  EXPECT_EQ(classify_regime(Beta(beta), Rule(f_near, 0.1)).label, Regime::Boundary);
  EXPECT_EQ(classify_regime(Beta(beta), Rule(f_near, 0.1), 1e-12).label,
            Regime::ActiveMPassiveF);
  EXPECT_THROW(classify_regime(Beta(beta), Rule(1, 1), -1.0), InvalidParameter);
}

TEST(ClassifyRegime, ShockMomentsDoNotMatter) {
  AdHocRuled r = Rule(1.5, 0.1);
  r.sigma_R = 3;
  r.sigma_s = 2;
  r.rho_R = 0.9;
  r.rho_s = -0.5;
  EXPECT_EQ(classify_regime(Beta(0.99), r).label, Regime::ActiveMPassiveF);
  r.rho_R = 1.0;
  EXPECT_THROW(classify_regime(Beta(0.99), r), InvalidParameter);
}

TEST(ClassifyRegime, PartitionWithZeroTolerance) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> beta(0.05, 0.999), coef(-5, 5);
  for (int i = 0; i < 2000; ++i) {
    const double bt = beta(rng), f = coef(rng), g = coef(rng);
    const auto cls = classify_regime(Beta(bt), Rule(f, g), 0.0);
    const double mp = std::abs(bt * f), mb = std::abs(1 / bt - g);
    ASSERT_NE(cls.label, Regime::Boundary);
    int matches = 0;
    matches += (mp > 1 && mb < 1) == (cls.label == Regime::ActiveMPassiveF);
    matches += (mp < 1 && mb > 1) == (cls.label == Regime::PassiveMActiveF);
    matches += (mp < 1 && mb < 1) == (cls.label == Regime::Indeterminate);
    matches += (mp > 1 && mb > 1) == (cls.label == Regime::Explosive);
    EXPECT_EQ(matches, 4);
  }
}

TEST(ClassifyRegime, DependsOnlyOnRootMagnitudes) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> beta(0.05, 0.999), coef(-5, 5);
  for (int i = 0; i < 500; ++i) {
    const double bt = beta(rng), f = coef(rng), g = coef(rng);
    // f -> -f flips the sign of beta f; g -> 2/beta - g flips 1/beta - g.
    const auto a = classify_regime(Beta(bt), Rule(f, g));
    const auto b = classify_regime(Beta(bt), Rule(-f, 2 / bt - g));
    EXPECT_EQ(a.label, b.label);
  }
}

TEST(Stance, PerBlockLabels) {
  EXPECT_EQ(stance(1.5, 1e-9), Stance::Active);
  EXPECT_EQ(stance(0.5, 1e-9), Stance::Passive);
  EXPECT_EQ(stance(1.0 + 1e-12, 1e-9), Stance::Boundary);
}

TEST(RegimeGrid, MatchesPointwiseClassifier) {
  const auto params = Beta(0.99);
  const auto grid = regime_grid(params, Interval<double>{0, 2}, Interval<double>{-1, 2}, 3, 4);
  ASSERT_EQ(grid.cells.size(), 12u);
  const std::vector<double> fs = {0, 1, 2}, gs = {-1, 0, 1, 2};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const auto& cell = grid.at(i, j);
      EXPECT_EQ(cell.f_pi, fs[i]);
      EXPECT_EQ(cell.g_b, gs[j]);
      EXPECT_EQ(cell.regime.label, classify_regime(params, Rule(fs[i], gs[j])).label);
    }
}

TEST(RegimeGrid, UnitRootNodeIsBoundary) {
  const auto params = Beta(0.99);
  const auto grid =
      regime_grid(params, Interval<double>{0, 2 / 0.99}, Interval<double>{0, 1}, 3, 2);
  EXPECT_EQ(grid.at(1, 0).regime.label, Regime::Boundary);
  EXPECT_EQ(grid.at(1, 1).regime.label, Regime::Boundary);

  const auto exact = regime_grid(Beta(0.5), Interval<double>{0, 4}, Interval<double>{0, 1}, 3, 2);
  EXPECT_EQ(exact.at(1, 0).f_pi, 2.0);
  EXPECT_EQ(exact.at(1, 0).regime.label, Regime::Boundary);
}

TEST(RegimeGrid, ActiveMonetaryRectangle) {
  for (std::size_t n : {2u, 7u, 31u}) {
    const auto grid =
        regime_grid(Beta(0.99), Interval<double>{1.2, 2}, Interval<double>{0.1, 1.9}, n, n + 1);
    for (const auto& cell : grid.cells)
      EXPECT_EQ(cell.regime.label, Regime::ActiveMPassiveF);
  }
}

TEST(RegimeGrid, RejectsBadRanges) {
  const auto p = Beta(0.99);
  EXPECT_THROW(regime_grid(p, Interval<double>{1, 1}, Interval<double>{0, 1}, 3, 3), InvalidRange);
  EXPECT_THROW(regime_grid(p, Interval<double>{2, 1}, Interval<double>{0, 1}, 3, 3), InvalidRange);
  EXPECT_THROW(regime_grid(p, Interval<double>{0, 1}, Interval<double>{0, 1}, 1, 3), InvalidRange);
  EXPECT_THROW(regime_grid(p, Interval<double>{0, INFINITY}, Interval<double>{0, 1}, 3, 3),
               InvalidRange);
}

}  // namespace
}  // namespace fiscmon
