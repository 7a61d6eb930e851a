#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "fiscmon/errors.hpp"

namespace fiscmon {

template <typename Scalar>
using Matrix2 = Eigen::Matrix<Scalar, 2, 2>;

template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;

/// Deviation convention. Linear deviations are plain differences from the
/// steady state, log-linear deviations are relative differences.
enum class Variant { Linear, LogLinear };

inline std::string_view to_string(Variant v) {
  return v == Variant::Linear ? "linear" : "loglinear";
}

/// Structural primitives of the constant-endowment economy.
template <typename Scalar>
struct ModelParams {
  Scalar beta{0.99};   ///< household discount factor
  Scalar y{1};         ///< endowment per period
  Scalar g{0};         ///< government purchases per period
  Scalar b_star{0};    ///< steady-state real debt
  Scalar pi_star{1};   ///< gross inflation target, must be exactly 1
  Scalar q{1};         ///< probability the incumbent policymaker stays on
};

using ModelParamsd = ModelParams<double>;

/// Returns one human-readable message per violated bound; empty when valid.
template <typename Scalar>
std::vector<std::string> violations(const ModelParams<Scalar>& p) {
  using std::isfinite;
  std::vector<std::string> out;
  if (!isfinite(p.beta) || !(p.beta > 0 && p.beta < 1))
    out.emplace_back("beta must satisfy 0 < beta < 1");
  if (!isfinite(p.q) || !(p.q > 0 && p.q <= 1))
    out.emplace_back("q must satisfy 0 < q <= 1 (q = 0 is not a valid "
                     "credibility level)");
  if (!isfinite(p.g) || !(p.g >= 0)) out.emplace_back("g must satisfy g >= 0");
  if (!isfinite(p.y) || !(p.y > p.g))
    out.emplace_back("y must exceed g so that consumption y - g > 0");
  if (!isfinite(p.b_star) || !(p.b_star >= 0))
    out.emplace_back("b_star must satisfy b_star >= 0");
  if (p.pi_star != Scalar(1))
    out.emplace_back("pi_star must equal 1");
  return out;
}

template <typename Scalar>
void validate(const ModelParams<Scalar>& p) {
  auto v = violations(p);
  if (!v.empty()) throw InvalidParameter(std::move(v));
}

template <typename Scalar>
struct SteadyState {
  Scalar R_star;    ///< gross nominal rate
  Scalar tau_star;  ///< lump-sum tax
  Scalar s_star;    ///< primary surplus
  Scalar c;         ///< consumption
  Scalar r;         ///< net real rate
};

using SteadyStated = SteadyState<double>;

template <typename Scalar>
SteadyState<Scalar> compute_steady_state(const ModelParams<Scalar>& p) {
  validate(p);
  const Scalar R_star = Scalar(1) / p.beta;
  const Scalar r = R_star - Scalar(1);
  const Scalar s_star = r * p.b_star;
  return {R_star, s_star + p.g, s_star, p.y - p.g, r};
}

/// Transmission mechanism in deviations:
///   [E pi'; E b'] = A [pi; b] + B [R; s'].
/// The system is decoupled, so only the diagonal of A and B is populated.
template <typename Scalar>
struct LinearSystem {
  Scalar a_pi{0}, a_pib{0}, a_bpi{0}, a_b{0};
  Scalar b_piR{0}, b_pis{0}, b_bR{0}, b_bs{0};
  Variant variant{Variant::Linear};

  Matrix2<Scalar> state_matrix() const {
    Matrix2<Scalar> A;
    A << a_pi, a_pib, a_bpi, a_b;
    return A;
  }

  Matrix2<Scalar> input_matrix() const {
    Matrix2<Scalar> B;
    B << b_piR, b_pis, b_bR, b_bs;
    return B;
  }

  /// A + B diag(f_pi, g_b): the system once the interest rate responds to
  /// inflation with f_pi and the surplus responds to lagged debt with g_b.
  Matrix2<Scalar> closed_loop_matrix(Scalar f_pi, Scalar g_b) const {
    return state_matrix() +
           input_matrix() * Vector2<Scalar>(f_pi, g_b).asDiagonal();
  }
};

using LinearSystemd = LinearSystem<double>;

template <typename Scalar>
LinearSystem<Scalar> build_linear_system(const ModelParams<Scalar>& p,
                                         Variant variant) {
  validate(p);
  LinearSystem<Scalar> sys;
  sys.variant = variant;
  sys.a_b = Scalar(1) / p.beta;
  if (variant == Variant::Linear) {
    sys.b_piR = p.beta;
    sys.b_bs = Scalar(-1);
  } else {
    if (!(p.b_star > 0))
      throw InvalidParameter(
          {"log-linear system needs b_star > 0 (relative deviations are "
           "undefined at a zero base); use the linear variant instead"});
    sys.b_piR = Scalar(1);
    sys.b_bs = -(Scalar(1) / p.beta - Scalar(1));
  }
  return sys;
}

}  // namespace fiscmon
