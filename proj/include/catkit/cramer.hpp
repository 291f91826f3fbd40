#pragma once

#include <optional>
#include <string>

#include "catkit/measure.hpp"

namespace catkit {

/// One point of the rate function: value = Lambda*(t), maximizer = the
/// lambda attaining the sup, absent when t is outside the open support
/// interval (at the extremes the sup is a limit, outside it is +inf).
struct RateFunctionPoint {
  double t = 0.0;
  double value = 0.0;
  std::optional<double> maximizer;
};

/// Whether a forall-quantified comparison was settled by exact rational
/// facts alone or needed adaptive floating-point sampling of the gap.
enum class DecisionQuality { Exact, GridCertified };

/// Outcome of one condition. exact marks decisions resolved purely by
/// rational arithmetic (means, extremes, extreme weights, measure equality);
/// witness_point carries a concrete violating lambda (or p, for the
/// majorization-side families) when sampling located one for a failure.
struct ConditionCheck {
  bool pass = false;
  bool exact = false;
  std::optional<double> witness_point;
  std::string detail;
};

/// Report for the exponential-moment comparison families between a and b.
///
/// Strict family (all five must hold for the eventual-domination guarantee):
///   exp_pos: for all lambda > 0, E_a(lambda) <  E_b(lambda)
///   exp_neg: for all lambda < 0, E_b(lambda) <  E_a(lambda)
///   mean_lt: mean(a) < mean(b), exact
///   max_lt:  max(a)  < max(b),  exact
///   min_lt:  min(a)  < min(b),  exact
/// Weak family (membership in the closure of the iterated-domination set):
///   weak_pos: for all lambda >= 0, E_a(lambda) <= E_b(lambda)
///   weak_neg: for all lambda <= 0, E_a(lambda) >= E_b(lambda)
struct ConditionReport {
  ConditionCheck exp_pos;
  ConditionCheck exp_neg;
  ConditionCheck mean_lt;
  ConditionCheck max_lt;
  ConditionCheck min_lt;
  ConditionCheck weak_pos;
  ConditionCheck weak_neg;
  DecisionQuality quality = DecisionQuality::GridCertified;

  bool strict_all() const {
    return exp_pos.pass && exp_neg.pass && mean_lt.pass && max_lt.pass && min_lt.pass;
  }
  bool weak_all() const { return weak_pos.pass && weak_neg.pass; }
};

/// Cumulant generating function log E[exp(lambda X)], via log-sum-exp.
double cumulant(const AtomicMeasure& a, double lambda);

/// Derivative of the cumulant: the mean of the exponentially tilted measure.
double cumulant_derivative(const AtomicMeasure& a, double lambda);

/// Convex conjugate sup_lambda (lambda t - cumulant(lambda)). Inside the
/// open support interval the maximizer is found by safeguarded Newton on
/// cumulant_derivative(lambda) = t (bracket doubling, bisection fallback,
/// relative tolerance 1e-12 on lambda). At t = min or max the value is the
/// limit -log(weight at that extreme); outside, +inf. Boundary membership
/// is decided exactly on rationals, not in floating point.
RateFunctionPoint cramer_transform(const AtomicMeasure& a, double t);

enum class TailSide { Upper, Lower };

struct LimitCheck {
  double empirical;  // (1/n) log of the exact n-fold tail probability
  double limit;      // the large-deviations limit for this t
};

/// Finite-n check of the tail asymptotics. Upper side compares
/// (1/n) log a^{*n}[tn, inf) with 0 (t <= mean) or -Lambda*(t); lower side
/// uses the mass of (-inf, tn] and t >= mean. Zero probability is reported
/// as -inf, not an error. The mean comparison is exact.
LimitCheck cramer_limit_check(const AtomicMeasure& a, double t, int n,
                              TailSide side = TailSide::Upper,
                              std::size_t atom_cap = kDefaultAtomCap);

/// Evaluates both condition families. Exact facts (means, extremes, extreme
/// weights, equality, exact domination) settle what they can; the remaining
/// forall-lambda claims are decided by adaptive sampling of the cumulant
/// difference on lambda = +-2^j, j = -20..20, refined where the gap is
/// below 1e-9. quality is Exact only if no populated check needed the grid.
ConditionReport strict_conditions(const AtomicMeasure& a, const AtomicMeasure& b);

/// Same report; use weak_pos/weak_neg (and weak_all) for the closure test.
ConditionReport closure_conditions(const AtomicMeasure& a, const AtomicMeasure& b);

}  // namespace catkit
