#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "fiscmon/model.hpp"

namespace fiscmon {

/// Quadratic loss weights of the policymaker:
///   1/2 (q_pi pi^2 + q_b b^2 + mu_R R^2 + mu_s s^2)  in deviations.
template <typename Scalar>
struct PolicyPreferences {
  Scalar q_pi{1};
  Scalar q_b{1};
  Scalar mu_R{1};
  Scalar mu_s{1};
};

using PolicyPreferencesd = PolicyPreferences<double>;

template <typename Scalar>
std::vector<std::string> violations(const PolicyPreferences<Scalar>& p) {
  using std::isfinite;
  std::vector<std::string> out;
  if (!isfinite(p.q_pi) || !(p.q_pi >= 0))
    out.emplace_back("q_pi must satisfy q_pi >= 0");
  if (!isfinite(p.q_b) || !(p.q_b >= 0))
    out.emplace_back("q_b must satisfy q_b >= 0");
  if (!isfinite(p.mu_R) || !(p.mu_R > 0))
    out.emplace_back("mu_R must satisfy mu_R > 0");
  if (!isfinite(p.mu_s) || !(p.mu_s > 0))
    out.emplace_back("mu_s must satisfy mu_s > 0");
  return out;
}

template <typename Scalar>
void validate(const PolicyPreferences<Scalar>& p) {
  auto v = violations(p);
  if (!v.empty()) throw InvalidParameter(std::move(v));
}

// ---------------------------------------------------------------------------
// Scalar discounted Riccati recursion (the verification oracle)

template <typename Scalar>
struct DareResult {
  Scalar p;          ///< fixed point of the recursion
  Scalar k_gain;     ///< instrument = k_gain * state
  Scalar lambda_cl;  ///< a + b * k_gain
  long iterations;
};

/// One application of the discounted scalar Riccati map
///   P -> q_w + d a P a - (d a P b)^2 / (r_w + d b P b).
template <typename Scalar>
Scalar riccati_step(Scalar a, Scalar b, Scalar q_w, Scalar r_w, Scalar discount,
                    Scalar p) {
  // q + d a^2 P - (d a P b)^2 / (r + d b^2 P), rearranged so nothing cancels.
  return q_w + discount * a * a * p * r_w / (r_w + discount * b * p * b);
}

template <typename Scalar>
Scalar riccati_gain(Scalar a, Scalar b, Scalar r_w, Scalar discount, Scalar p) {
  // Adding zero turns a signed zero into +0.
  return -(discount * b * p * a) / (r_w + discount * b * p * b) + Scalar(0);
}

/// Iterates the Riccati map from P_0 = q_w. Stops when the step is below
/// `tol`, or when it has shrunk to a few ulps of P (the absolute threshold is
/// unreachable in double precision once P is large).
template <typename Scalar>
DareResult<Scalar> dare_value_iteration(Scalar a, Scalar b, Scalar q_w,
                                        Scalar r_w, Scalar discount,
                                        Scalar tol = Scalar(1e-12),
                                        long max_iter = 1'000'000) {
  using std::abs;
  using std::isfinite;
  std::vector<std::string> bad;
  if (!isfinite(a) || !isfinite(b)) bad.emplace_back("a and b must be finite");
  if (!isfinite(q_w) || !(q_w >= 0)) bad.emplace_back("q_w must satisfy q_w >= 0");
  if (!isfinite(r_w) || !(r_w > 0)) bad.emplace_back("r_w must satisfy r_w > 0");
  if (!(discount > 0 && discount <= 1))
    bad.emplace_back("discount must satisfy 0 < discount <= 1");
  if (!(tol > 0)) bad.emplace_back("tol must satisfy tol > 0");
  if (max_iter < 1) bad.emplace_back("max_iter must be >= 1");
  if (!bad.empty()) throw InvalidParameter(std::move(bad));

  const Scalar ulps = Scalar(4) * std::numeric_limits<Scalar>::epsilon();
  Scalar p = q_w;
  Scalar step = std::numeric_limits<Scalar>::infinity();
  for (long k = 1; k <= max_iter; ++k) {
    const Scalar next = riccati_step(a, b, q_w, r_w, discount, p);
    if (!isfinite(next))
      throw NoConvergence(double(p), double(step), k);
    step = abs(next - p);
    p = next;
    if (step < tol || step <= ulps * abs(p)) {
      const Scalar k_gain = riccati_gain(a, b, r_w, discount, p);
      // a + b k without the cancellation.
      return {p, k_gain, a * r_w / (r_w + discount * b * p * b), k};
    }
  }
  throw NoConvergence(double(p), double(step), max_iter);
}

// ---------------------------------------------------------------------------
// Closed-form blocks

template <typename Scalar>
struct InflationBlock {
  Scalar p_pi;
  Scalar f_opt;
  Scalar pi0_anchor;
  bool pi0_indeterminate;
};

/// The inflation block has A_pi = 0, so the Riccati map is constant at q_pi
/// and the optimal interest-rate feedback vanishes.
template <typename Scalar>
InflationBlock<Scalar> solve_inflation_block(const PolicyPreferences<Scalar>& prefs,
                                             const ModelParams<Scalar>& params) {
  validate(prefs);
  const auto sys = build_linear_system(params, Variant::Linear);
  const Scalar discount = params.beta * params.q;
  const Scalar p_pi =
      riccati_step(sys.a_pi, sys.b_piR, prefs.q_pi, prefs.mu_R, discount, prefs.q_pi);
  const Scalar f_opt = riccati_gain(sys.a_pi, sys.b_piR, prefs.mu_R, discount, p_pi);
  // First-order condition P_pi pi0 + P_pib b0 = 0 with P_pib = 0. When
  // P_pi = 0 any pi0 is optimal; zero is the reported convention.
  return {p_pi, f_opt, Scalar(0), !(p_pi > 0)};
}

template <typename Scalar>
struct DebtBlock {
  Scalar s_sum;         ///< trace of the Hamiltonian
  Scalar lambda_b_opt;  ///< stable root
  Scalar lambda_2;      ///< unstable root
  Scalar g_b_opt;
  Scalar p_b;
  bool degenerate;      ///< q_b = 0: unit-root debt, zero loss weight
};

/// Debt block under quasi-commitment: state coefficient 1/(beta q),
/// instrument coefficient B_bs, discount beta q. The Hamiltonian polynomial is
///   lambda^2 - S lambda + 1/(beta q),  S = 1 + 1/(beta q) + B^2 beta q q_b / mu_s.
template <typename Scalar>
DebtBlock<Scalar> solve_debt_block(const PolicyPreferences<Scalar>& prefs,
                                   const ModelParams<Scalar>& params) {
  using std::sqrt;
  validate(prefs);
  const auto sys = build_linear_system(params, Variant::Linear);
  const Scalar d = params.beta * params.q;
  const Scalar c = Scalar(1) / d;  // root product, also the state coefficient
  const Scalar b = sys.b_bs;
  const Scalar ratio = b * b * d * prefs.q_b / prefs.mu_s;
  const Scalar s_sum = Scalar(1) + c + ratio;

  if (prefs.q_b == Scalar(0)) {
    // (lambda - 1)(lambda - 1/(beta q)); value iteration from zero stays at zero.
    return {s_sum, Scalar(1), c, (Scalar(1) - c) / b, Scalar(0), true};
  }

  // S^2 - 4c = (S - 2 sqrt c)(S + 2 sqrt c) with S - 2 sqrt c written as a sum
  // of non-negative terms, so the discriminant never cancels.
  const Scalar root_c = sqrt(c);
  const Scalar gap = (Scalar(1) - root_c) * (Scalar(1) - root_c) + ratio;
  const Scalar disc = sqrt(gap * (s_sum + Scalar(2) * root_c));
  const Scalar lambda_2 = (s_sum + disc) / Scalar(2);
  const Scalar lambda = c / lambda_2;
  const Scalar g_b = (lambda - c) / b;
  // P_b = q_b / (1 - lambda); with p(1) = (1 - lambda)(1 - lambda_2) = -ratio
  // this is mu_s (lambda_2 - 1) / (B^2 d), free of the 1 - lambda cancellation.
  const Scalar p_b = prefs.mu_s * (lambda_2 - Scalar(1)) / (b * b * d);
  return {s_sum, lambda, lambda_2, g_b, p_b, false};
}

// ---------------------------------------------------------------------------
// Full solution

inline constexpr double kMinimalCost = 1e-7;
inline constexpr double kOracleTolerance = 1e-8;
inline constexpr double kOracleFailure = 1e-6;

template <typename Scalar>
struct RamseySolution {
  PolicyPreferences<Scalar> prefs;
  Scalar discount;  ///< beta q

  Scalar p_pi, p_pib, p_b;
  Scalar lambda_pi_opt;
  Scalar lambda_b_opt;
  Scalar lambda_2;
  Scalar s_sum;
  Scalar f_opt;
  Scalar g_b_opt;
  Scalar rho_R_opt;
  Scalar sigma2_R_opt;
  Scalar pi0_anchor;
  bool pi0_indeterminate;
  bool degenerate;

  Scalar oracle_p;
  Scalar oracle_lambda_cl;
  Scalar oracle_p_residual;       ///< |oracle P - p_b|
  Scalar oracle_lambda_residual;  ///< NaN when degenerate (not comparable)
  long oracle_iterations;

  std::vector<std::string> warnings;

  Matrix2<Scalar> loss_matrix() const {
    Matrix2<Scalar> P;
    P << p_pi, p_pib, p_pib, p_b;
    return P;
  }

  Variant variant() const { return Variant::Linear; }
};

using RamseySolutiond = RamseySolution<double>;

template <typename Scalar>
RamseySolution<Scalar> ramsey_solution(const ModelParams<Scalar>& params,
                                       const PolicyPreferences<Scalar>& prefs) {
  using std::abs;
  using std::max;
  validate(params);
  validate(prefs);

  const auto infl = solve_inflation_block(prefs, params);
  const auto debt = solve_debt_block(prefs, params);
  const auto sys = build_linear_system(params, Variant::Linear);
  const Scalar d = params.beta * params.q;

  RamseySolution<Scalar> sol;
  sol.prefs = prefs;
  sol.discount = d;
  sol.p_pi = infl.p_pi;
  sol.p_pib = Scalar(0);
  sol.p_b = debt.p_b;
  sol.lambda_pi_opt = sys.a_pi + sys.b_piR * infl.f_opt;
  sol.lambda_b_opt = debt.lambda_b_opt;
  sol.lambda_2 = debt.lambda_2;
  sol.s_sum = debt.s_sum;
  sol.f_opt = infl.f_opt;
  sol.g_b_opt = debt.g_b_opt;
  sol.rho_R_opt = Scalar(0);
  sol.sigma2_R_opt = Scalar(0);
  sol.pi0_anchor = infl.pi0_anchor;
  sol.pi0_indeterminate = infl.pi0_indeterminate;
  sol.degenerate = debt.degenerate;

  const auto oracle = dare_value_iteration(Scalar(1) / d, sys.b_bs, prefs.q_b,
                                           prefs.mu_s, d);
  sol.oracle_p = oracle.p;
  sol.oracle_lambda_cl = oracle.lambda_cl;
  sol.oracle_iterations = oracle.iterations;
  sol.oracle_p_residual = abs(oracle.p - debt.p_b);
  sol.oracle_lambda_residual =
      debt.degenerate ? std::numeric_limits<Scalar>::quiet_NaN()
                      : abs(oracle.lambda_cl - debt.lambda_b_opt);

  const Scalar p_scale = max(Scalar(1), abs(debt.p_b));
  const Scalar p_err = sol.oracle_p_residual / p_scale;
  const Scalar l_err = debt.degenerate ? Scalar(0) : sol.oracle_lambda_residual;
  if (p_err > Scalar(kOracleFailure) || l_err > Scalar(kOracleFailure))
    throw CrossCheckFailure("closed-form debt block (lambda_b = " +
                            std::to_string(double(debt.lambda_b_opt)) +
                            ", p_b = " + std::to_string(double(debt.p_b)) +
                            ") disagrees with value iteration (lambda = " +
                            std::to_string(double(oracle.lambda_cl)) +
                            ", p = " + std::to_string(double(oracle.p)) + ")");
  if (p_err > Scalar(kOracleTolerance) || l_err > Scalar(kOracleTolerance))
    sol.warnings.emplace_back("oracle agreement above 1e-8 (still below 1e-6)");

  if (prefs.mu_R < Scalar(kMinimalCost))
    sol.warnings.emplace_back("mu_R below 1e-7: results rely on a nearly "
                              "negligible interest-rate smoothing cost");
  if (prefs.mu_s < Scalar(kMinimalCost))
    sol.warnings.emplace_back("mu_s below 1e-7: results rely on a nearly "
                              "negligible tax smoothing cost");
  if (params.q < Scalar(kMinimalCost))
    sol.warnings.emplace_back("q below 1e-7: credibility is nearly zero");
  if (sol.degenerate)
    sol.warnings.emplace_back("q_b = 0: debt persistence is one (unit root), "
                              "p_b set to 0");
  if (sol.pi0_indeterminate)
    sol.warnings.emplace_back("q_pi = 0: initial inflation is indeterminate, "
                              "anchor reported as 0 by convention");
  return sol;
}

/// Optimal value -1/2 x' P x at x = (pi0_dev, b0_dev).
template <typename Scalar>
Scalar loss_value(const RamseySolution<Scalar>& sol, Scalar b0_dev,
                  Scalar pi0_dev = Scalar(0)) {
  if (sol.prefs.q_pi > Scalar(0) && pi0_dev != sol.pi0_anchor)
    throw AnchorViolation("with q_pi > 0 initial inflation must equal the "
                          "optimal anchor " + std::to_string(double(sol.pi0_anchor)));
  const Vector2<Scalar> x(pi0_dev, b0_dev);
  return Scalar(-0.5) * x.dot(sol.loss_matrix() * x) + Scalar(0);
}

template <typename Scalar>
struct SweepPoint {
  Scalar mu_s;
  Scalar lambda_b_opt;
  Scalar g_b_opt;
  Scalar p_b;
};

/// Debt persistence as the tax-smoothing cost varies; every node is
/// cross-checked against value iteration.
template <typename Scalar>
std::vector<SweepPoint<Scalar>> persistence_sweep(
    const PolicyPreferences<Scalar>& base, const ModelParams<Scalar>& params,
    const std::vector<Scalar>& mu_s_grid) {
  if (mu_s_grid.empty()) throw InvalidRange("mu_s grid is empty");
  for (std::size_t i = 0; i < mu_s_grid.size(); ++i) {
    if (!(mu_s_grid[i] > 0) || !std::isfinite(mu_s_grid[i]))
      throw InvalidRange("mu_s grid values must be finite and > 0");
    if (i > 0 && !(mu_s_grid[i] > mu_s_grid[i - 1]))
      throw InvalidRange("mu_s grid must be strictly ascending");
  }
  std::vector<SweepPoint<Scalar>> out;
  out.reserve(mu_s_grid.size());
  for (Scalar mu : mu_s_grid) {
    auto prefs = base;
    prefs.mu_s = mu;
    const auto sol = ramsey_solution(params, prefs);
    out.push_back({mu, sol.lambda_b_opt, sol.g_b_opt, sol.p_b});
  }
  return out;
}

}  // namespace fiscmon
