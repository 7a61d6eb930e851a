#include "fiscmon/model.hpp"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

namespace fiscmon {
namespace {

ModelParamsd Params(double beta, double y, double g, double b_star) {
  ModelParamsd p;
  p.beta = beta;
  p.y = y;
  p.g = g;
  p.b_star = b_star;
  return p;
}

ModelParamsd RandomParams(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> beta(0.01, 0.9999);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double y = 0.1 + 10 * unit(rng);
  ModelParamsd p = Params(beta(rng), y, y * 0.99 * unit(rng), 50 * unit(rng));
  p.q = 0.001 + 0.999 * unit(rng);
  return p;
}

TEST(SteadyState, BaselineValues) {
  const auto ss = compute_steady_state(Params(0.99, 1, 0.2, 1));
  EXPECT_NEAR(ss.R_star, 1.0101010101010102, 1e-15);
  EXPECT_NEAR(ss.tau_star, 0.2101010101010101, 1e-15);
  EXPECT_NEAR(ss.s_star, 0.0101010101010101, 1e-15);
  EXPECT_DOUBLE_EQ(ss.c, 0.8);
  EXPECT_NEAR(ss.r, 0.0101010101010101, 1e-15);
}

TEST(SteadyState, ZeroDebtForcesZeroSurplus) {
  const auto ss = compute_steady_state(Params(0.5, 1, 0.3, 0));
  EXPECT_EQ(ss.R_star, 2.0);
  EXPECT_DOUBLE_EQ(ss.tau_star, 0.3);
  EXPECT_EQ(ss.s_star, 0.0);
  EXPECT_DOUBLE_EQ(ss.c, 0.7);
}

TEST(SteadyState, RejectsBoundaryDiscountFactor) {
  EXPECT_THROW(compute_steady_state(Params(1.0, 1, 0.2, 1)), InvalidParameter);
  EXPECT_THROW(compute_steady_state(Params(0.0, 1, 0.2, 1)), InvalidParameter);
}

TEST(SteadyState, NamesEveryViolation) {
  ModelParamsd p = Params(1.5, 0.1, 0.2, -1);
  p.q = 0;
  p.pi_star = 1.02;
  try {
    compute_steady_state(p);
    FAIL() << "expected InvalidParameter";
  } catch (const InvalidParameter& e) {
    ASSERT_EQ(e.violations().size(), 5u);
    const std::string what = e.what();
    for (const char* name : {"beta", "q ", "y ", "b_star", "pi_star"})
      EXPECT_NE(what.find(name), std::string::npos) << name;
  }
}

TEST(SteadyState, NegativeSpendingRejected) {
  EXPECT_THROW(compute_steady_state(Params(0.9, 1, -0.1, 0)), InvalidParameter);
}

TEST(SteadyState, IdentitiesHoldForRandomParams) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const auto p = RandomParams(rng);
    const auto ss = compute_steady_state(p);
    const double eps = 4 * std::numeric_limits<double>::epsilon();
    EXPECT_NEAR(ss.R_star * p.beta, 1.0, eps);
    EXPECT_NEAR(ss.tau_star - p.g - (1 / p.beta - 1) * p.b_star, 0.0,
                eps * std::max(1.0, ss.tau_star));
    EXPECT_EQ(ss.c, p.y - p.g);
    EXPECT_GT(ss.c, 0.0);
  }
}

TEST(LinearSystem, LinearVariantEntries) {
  const auto sys = build_linear_system(Params(0.99, 1, 0.2, 1), Variant::Linear);
  Matrix2<double> A, B;
  A << 0, 0, 0, 1 / 0.99;
  B << 0.99, 0, 0, -1;
  EXPECT_EQ(sys.state_matrix(), A);
  EXPECT_EQ(sys.input_matrix(), B);
  EXPECT_EQ(sys.variant, Variant::Linear);

  const auto half = build_linear_system(Params(0.5, 1, 0.2, 1), Variant::Linear);
  EXPECT_EQ(half.a_b, 2.0);
  EXPECT_EQ(half.b_piR, 0.5);
}

TEST(LinearSystem, LogLinearVariantEntries) {
  const auto sys = build_linear_system(Params(0.99, 1, 0.2, 1), Variant::LogLinear);
  EXPECT_EQ(sys.b_piR, 1.0);
  EXPECT_EQ(sys.b_pis, 0.0);
  EXPECT_EQ(sys.b_bR, 0.0);
  EXPECT_NEAR(sys.b_bs, -0.010101010101010102, 1e-16);
  EXPECT_EQ(sys.a_b, 1 / 0.99);
}

TEST(LinearSystem, LogLinearNeedsPositiveDebt) {
  try {
    build_linear_system(Params(0.99, 1, 0.2, 0), Variant::LogLinear);
    FAIL() << "expected InvalidParameter";
  } catch (const InvalidParameter& e) {
    EXPECT_NE(std::string(e.what()).find("linear variant"), std::string::npos);
  }
  EXPECT_NO_THROW(build_linear_system(Params(0.99, 1, 0.2, 0), Variant::Linear));
}

TEST(LinearSystem, SpectrumIsZeroAndInverseDiscount) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto p = RandomParams(rng);
    for (auto variant : {Variant::Linear, Variant::LogLinear}) {
      const auto sys = build_linear_system(p, variant);
      const Matrix2<double> A = sys.state_matrix();
      EXPECT_EQ(A(0, 1), 0.0);
      EXPECT_EQ(A(1, 0), 0.0);
      Eigen::EigenSolver<Matrix2<double>> es(A);
      int outside = 0;
      for (int k = 0; k < 2; ++k) {
        const auto ev = es.eigenvalues()[k];
        EXPECT_EQ(ev.imag(), 0.0);
        if (std::abs(ev) > 1) ++outside;
      }
      EXPECT_EQ(outside, 1);
      const double lo = std::min(es.eigenvalues()[0].real(), es.eigenvalues()[1].real());
      const double hi = std::max(es.eigenvalues()[0].real(), es.eigenvalues()[1].real());
      EXPECT_EQ(lo, 0.0);
      EXPECT_NEAR(hi, 1 / p.beta, 1e-14 / p.beta);
    }
  }
}

TEST(LinearSystem, WorksWithLongDouble) {
  ModelParams<long double> p;
  p.beta = 0.99L;
  p.b_star = 1;
  const auto ss = compute_steady_state(p);
  EXPECT_NEAR(static_cast<double>(ss.R_star * p.beta), 1.0, 1e-18);
  const auto sys = build_linear_system(p, Variant::LogLinear);
  EXPECT_EQ(sys.b_piR, 1.0L);
}

}  // namespace
}  // namespace fiscmon
