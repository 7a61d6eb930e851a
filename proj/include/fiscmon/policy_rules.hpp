#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fiscmon/model.hpp"

namespace fiscmon {

/// Ad-hoc feedback rules
///   R_t - R* = f_pi (pi_t - pi*) + eps_R,   s_t - s* = g_b (b_{t-1} - b*) + eps_s
/// together with the moments of the two policy shocks.
template <typename Scalar>
struct AdHocRule {
  Scalar f_pi{0};
  Scalar g_b{0};
  Scalar sigma_R{0};
  Scalar sigma_s{0};
  Scalar rho_R{0};
  Scalar rho_s{0};
};

using AdHocRuled = AdHocRule<double>;

template <typename Scalar>
std::vector<std::string> violations(const AdHocRule<Scalar>& r) {
  using std::abs;
  using std::isfinite;
  std::vector<std::string> out;
  if (!isfinite(r.f_pi)) out.emplace_back("f_pi must be finite");
  if (!isfinite(r.g_b)) out.emplace_back("g_b must be finite");
  if (!isfinite(r.sigma_R) || !(r.sigma_R >= 0))
    out.emplace_back("sigma_R must satisfy sigma_R >= 0");
  if (!isfinite(r.sigma_s) || !(r.sigma_s >= 0))
    out.emplace_back("sigma_s must satisfy sigma_s >= 0");
  if (!(abs(r.rho_R) < 1)) out.emplace_back("rho_R must satisfy |rho_R| < 1");
  if (!(abs(r.rho_s) < 1)) out.emplace_back("rho_s must satisfy |rho_s| < 1");
  return out;
}

template <typename Scalar>
void validate(const AdHocRule<Scalar>& r) {
  auto v = violations(r);
  if (!v.empty()) throw InvalidParameter(std::move(v));
}

enum class Regime {
  ActiveMPassiveF,  ///< |beta f_pi| > 1, |1/beta - g_b| < 1
  PassiveMActiveF,  ///< |beta f_pi| < 1, |1/beta - g_b| > 1
  Indeterminate,    ///< no unstable root
  Explosive,        ///< two unstable roots
  Boundary,         ///< a root within tolerance of the unit circle
};

inline std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::ActiveMPassiveF: return "ActiveMPassiveF";
    case Regime::PassiveMActiveF: return "PassiveMActiveF";
    case Regime::Indeterminate: return "Indeterminate";
    case Regime::Explosive: return "Explosive";
    case Regime::Boundary: return "Boundary";
  }
  return "?";
}

template <typename Scalar>
struct RegimeClass {
  Regime label;
  Scalar abs_lambda_pi;
  Scalar abs_lambda_b;
};

/// Per-block stance: a block is active when its feedback leaves the
/// block's root outside the unit circle.
enum class Stance { Active, Passive, Boundary };

template <typename Scalar>
Stance stance(Scalar abs_lambda, Scalar tol) {
  using std::abs;
  if (abs(abs_lambda - Scalar(1)) <= tol) return Stance::Boundary;
  return abs_lambda > Scalar(1) ? Stance::Active : Stance::Passive;
}

template <typename Scalar>
struct ClosedLoopRoots {
  Scalar lambda_pi;
  Scalar lambda_b;
};

/// Roots of the rule-augmented system for an arbitrary variant. For the linear
/// variant these are (beta f_pi, 1/beta - g_b).
template <typename Scalar>
ClosedLoopRoots<Scalar> closed_loop_eigenvalues(const LinearSystem<Scalar>& sys,
                                                const AdHocRule<Scalar>& rule) {
  // The system is diagonal, so the roots sit on the diagonal of A + B K.
  return {sys.a_pi + sys.b_piR * rule.f_pi, sys.a_b + sys.b_bs * rule.g_b};
}

template <typename Scalar>
ClosedLoopRoots<Scalar> closed_loop_eigenvalues(const ModelParams<Scalar>& params,
                                                const AdHocRule<Scalar>& rule) {
  validate(params);
  validate(rule);
  return {params.beta * rule.f_pi, Scalar(1) / params.beta - rule.g_b};
}

/// Labels a pair of root magnitudes. Any magnitude within `tol` of one is a
/// Boundary case; with tol = 0 only exact unit roots are.
template <typename Scalar>
RegimeClass<Scalar> classify_roots(Scalar abs_pi, Scalar abs_b, Scalar tol) {
  const Stance m = stance(abs_pi, tol);
  const Stance f = stance(abs_b, tol);
  Regime label;
  if (m == Stance::Boundary || f == Stance::Boundary)
    label = Regime::Boundary;
  else if (m == Stance::Active && f == Stance::Passive)
    label = Regime::ActiveMPassiveF;
  else if (m == Stance::Passive && f == Stance::Active)
    label = Regime::PassiveMActiveF;
  else if (m == Stance::Passive)
    label = Regime::Indeterminate;
  else
    label = Regime::Explosive;
  return {label, abs_pi, abs_b};
}

inline constexpr double kDefaultBoundaryTol = 1e-9;

template <typename Scalar>
RegimeClass<Scalar> classify_regime(const ModelParams<Scalar>& params,
                                    const AdHocRule<Scalar>& rule,
                                    Scalar tol = Scalar(kDefaultBoundaryTol)) {
  using std::abs;
  if (!(tol >= 0) || !std::isfinite(tol))
    throw InvalidParameter({"tol must be finite and >= 0"});
  const auto roots = closed_loop_eigenvalues(params, rule);
  return classify_roots(abs(roots.lambda_pi), abs(roots.lambda_b), tol);
}

template <typename Scalar>
struct Interval {
  Scalar lo;
  Scalar hi;
};

template <typename Scalar>
struct RegimeCell {
  Scalar f_pi;
  Scalar g_b;
  RegimeClass<Scalar> regime;
};

/// Row-major table: row i holds f_pi = f_values[i], column j holds
/// g_b = g_values[j].
template <typename Scalar>
struct RegimeGrid {
  std::vector<Scalar> f_values;
  std::vector<Scalar> g_values;
  std::vector<RegimeCell<Scalar>> cells;

  const RegimeCell<Scalar>& at(std::size_t i, std::size_t j) const {
    return cells[i * g_values.size() + j];
  }
};

/// n evenly spaced points from lo to hi inclusive; the last point is hi
/// exactly.
template <typename Scalar>
std::vector<Scalar> linspace(const Interval<Scalar>& range, std::size_t n) {
  std::vector<Scalar> out(n);
  const Scalar step = (range.hi - range.lo) / Scalar(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) out[i] = range.lo + Scalar(i) * step;
  out[n - 1] = range.hi;
  return out;
}

template <typename Scalar>
RegimeGrid<Scalar> regime_grid(const ModelParams<Scalar>& params,
                               const Interval<Scalar>& f_range,
                               const Interval<Scalar>& g_range, std::size_t n_f,
                               std::size_t n_g,
                               Scalar tol = Scalar(kDefaultBoundaryTol)) {
  using std::isfinite;
  auto check = [](const Interval<Scalar>& r, std::size_t n,
                  std::string_view name) {
    if (!isfinite(r.lo) || !isfinite(r.hi))
      throw InvalidRange(std::string(name) + " bounds must be finite");
    if (!(r.lo < r.hi))
      throw InvalidRange(std::string(name) +
                         " must satisfy lo < hi (empty or degenerate)");
    if (n < 2)
      throw InvalidRange(std::string(name) + " needs at least 2 points");
  };
  check(f_range, n_f, "f_pi range");
  check(g_range, n_g, "g_b range");
  validate(params);

  RegimeGrid<Scalar> grid{linspace(f_range, n_f), linspace(g_range, n_g), {}};
  grid.cells.reserve(n_f * n_g);
  for (Scalar f : grid.f_values)
    for (Scalar gb : grid.g_values) {
      AdHocRule<Scalar> rule;
      rule.f_pi = f;
      rule.g_b = gb;
      grid.cells.push_back({f, gb, classify_regime(params, rule, tol)});
    }
  return grid;
}

}  // namespace fiscmon
