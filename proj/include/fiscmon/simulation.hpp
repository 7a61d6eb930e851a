#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "fiscmon/model.hpp"
#include "fiscmon/policy_rules.hpp"
#include "fiscmon/ramsey.hpp"

namespace fiscmon {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
struct PathRow {
  long t;
  Scalar pi_dev;
  Scalar b_dev;
  Scalar R_dev;
  Scalar s_dev;
  Scalar fisher_residual;  ///< E_t pi_{t+1} - B_piR R_t
  Scalar budget_residual;  ///< b_t - A_b b_{t-1} - B_bs s_t
};

/// Trajectory of deviations, rows t = 0..horizon. Row 0 carries the initial
/// debt b0_dev adjusted by the period-0 surplus shock; fiscal feedback on
/// lagged debt starts at t = 1.
template <typename Scalar>
struct Path {
  Variant variant{Variant::Linear};
  long horizon{0};
  std::vector<PathRow<Scalar>> rows;
  std::vector<std::string> warnings;

  Scalar max_abs_residual() const {
    using std::abs;
    using std::max;
    Scalar m(0);
    for (const auto& r : rows)
      m = max(m, max(abs(r.fisher_residual), abs(r.budget_residual)));
    return m;
  }
};

using Pathd = Path<double>;

template <typename Scalar>
struct ShockSequence {
  long horizon{0};
  VectorX<Scalar> eps_R;
  VectorX<Scalar> eps_s;

  static ShockSequence zeros(long horizon) {
    return {horizon, VectorX<Scalar>::Zero(horizon + 1),
            VectorX<Scalar>::Zero(horizon + 1)};
  }
};

using ShockSequenced = ShockSequence<double>;

namespace detail {
inline void check_horizon(long horizon) {
  if (horizon < 1) throw InvalidParameter({"horizon must be >= 1"});
}
}  // namespace detail

/// Seeded Gaussian shocks. sigma is the innovation standard deviation; with
/// rho != 0 the series follows eps_t = rho eps_{t-1} + sigma u_t and starts
/// from its stationary distribution. Draws alternate R, s within a period.
template <typename Scalar>
ShockSequence<Scalar> draw_shocks(Scalar sigma_R, Scalar sigma_s, Scalar rho_R,
                                  Scalar rho_s, long horizon, std::uint64_t seed) {
  detail::check_horizon(horizon);
  AdHocRule<Scalar> moments;
  moments.sigma_R = sigma_R;
  moments.sigma_s = sigma_s;
  moments.rho_R = rho_R;
  moments.rho_s = rho_s;
  validate(moments);

  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto out = ShockSequence<Scalar>::zeros(horizon);
  using std::sqrt;
  const Scalar start_R = sigma_R / sqrt(Scalar(1) - rho_R * rho_R);
  const Scalar start_s = sigma_s / sqrt(Scalar(1) - rho_s * rho_s);
  for (long t = 0; t <= horizon; ++t) {
    const Scalar u_R = Scalar(normal(engine));
    const Scalar u_s = Scalar(normal(engine));
    if (t == 0) {
      out.eps_R[0] = start_R * u_R + Scalar(0);
      out.eps_s[0] = start_s * u_s + Scalar(0);
    } else {
      out.eps_R[t] = rho_R * out.eps_R[t - 1] + sigma_R * u_R + Scalar(0);
      out.eps_s[t] = rho_s * out.eps_s[t - 1] + sigma_s * u_s + Scalar(0);
    }
  }
  return out;
}

/// Deterministic path under the optimal policy: interest rate pegged,
/// inflation at target, debt decaying at rate lambda_b_opt, surplus backed
/// out of the budget constraint.
template <typename Scalar>
Path<Scalar> simulate_ramsey(const RamseySolution<Scalar>& sol,
                             const ModelParams<Scalar>& params, Scalar b0_dev,
                             long horizon) {
  detail::check_horizon(horizon);
  if (!std::isfinite(b0_dev)) throw InvalidParameter({"b0_dev must be finite"});
  const auto sys = build_linear_system(params, Variant::Linear);

  Path<Scalar> path;
  path.variant = Variant::Linear;
  path.horizon = horizon;
  path.rows.reserve(horizon + 1);
  if (sol.degenerate)
    path.warnings.emplace_back("degenerate solution (q_b = 0): debt follows a "
                               "unit root");

  const Scalar pi(0), R(0);
  const Scalar fisher = pi - sys.b_piR * R + Scalar(0);
  path.rows.push_back({0, pi, b0_dev, R, Scalar(0), fisher, Scalar(0)});
  Scalar b_prev = b0_dev;
  for (long t = 1; t <= horizon; ++t) {
    const Scalar b = sol.lambda_b_opt * b_prev;
    const Scalar s = (b - sys.a_b * b_prev) / sys.b_bs + Scalar(0);
    const Scalar budget = b - (sys.a_b * b_prev + sys.b_bs * s);
    path.rows.push_back({t, pi, b, R, s, fisher, budget});
    b_prev = b;
  }
  return path;
}

/// Path under ad-hoc rules in the active-monetary / passive-fiscal regime.
/// Inflation is the forward (bounded) solution of the Fisher block,
///   pi_t = -eps_R_t / (f_pi - rho_R / B_piR),
/// and debt follows the stable closed-loop recursion.
template <typename Scalar>
Path<Scalar> simulate_adhoc(const ModelParams<Scalar>& params,
                            const AdHocRule<Scalar>& rule,
                            const ShockSequence<Scalar>& shocks, Scalar b0_dev,
                            Variant variant = Variant::Linear,
                            Scalar tol = Scalar(kDefaultBoundaryTol)) {
  using std::abs;
  validate(rule);
  detail::check_horizon(shocks.horizon);
  if (shocks.eps_R.size() != shocks.horizon + 1 ||
      shocks.eps_s.size() != shocks.horizon + 1)
    throw InvalidParameter({"shock sequences must have horizon + 1 entries"});
  if (!std::isfinite(b0_dev)) throw InvalidParameter({"b0_dev must be finite"});

  const auto sys = build_linear_system(params, variant);
  const auto roots = closed_loop_eigenvalues(sys, rule);
  const auto cls = classify_roots(abs(roots.lambda_pi), abs(roots.lambda_b), tol);
  if (cls.label != Regime::ActiveMPassiveF)
    throw UnsupportedRegime(
        std::string(to_string(cls.label)) +
        " has no bounded solution with predetermined debt in the linearized "
        "model; only ActiveMPassiveF can be simulated");
  // Active monetary policy gives |rho_R| < 1 < |B_piR f_pi|, so the forward
  // sum converges.
  const Scalar forward = rule.f_pi - rule.rho_R / sys.b_piR;
  Path<Scalar> path;
  path.variant = variant;
  path.horizon = shocks.horizon;
  path.rows.reserve(shocks.horizon + 1);
  Scalar b_prev = b0_dev;
  for (long t = 0; t <= shocks.horizon; ++t) {
    const Scalar eR = shocks.eps_R[t];
    const Scalar es = shocks.eps_s[t];
    const Scalar pi = -eR / forward + Scalar(0);
    const Scalar R = rule.f_pi * pi + eR + Scalar(0);
    const Scalar expected_pi_next = rule.rho_R * pi;
    const Scalar fisher = expected_pi_next - sys.b_piR * R + Scalar(0);

    // Reduced form for debt, checked against the structural budget row.
    Scalar s, b, budget;
    if (t == 0) {
      s = es;
      b = b0_dev + sys.b_bs * es;
      budget = b - (b0_dev + sys.b_bs * s);
    } else {
      s = rule.g_b * b_prev + es;
      b = roots.lambda_b * b_prev + sys.b_bs * es;
      budget = b - (sys.a_b * b_prev + sys.b_bs * s);
    }
    path.rows.push_back({t, pi, b + Scalar(0), R, s + Scalar(0), fisher, budget});
    b_prev = b;
  }
  return path;
}

}  // namespace fiscmon
