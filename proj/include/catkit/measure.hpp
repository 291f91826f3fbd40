#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "catkit/errors.hpp"
#include "catkit/rational.hpp"

namespace catkit {

struct Atom {
  Rational x;  // position (or value, on the multiplicative axis)
  Rational w;  // weight, always > 0 in a valid measure

  bool operator==(const Atom& o) const { return x == o.x && w == o.w; }
};

/// Finitely supported probability measure on the rational line.
/// Invariants: positions strictly increasing, weights > 0, weights sum to 1.
struct AtomicMeasure {
  std::vector<Atom> atoms;

  std::size_t size() const { return atoms.size(); }
  const Rational& min() const { return atoms.front().x; }
  const Rational& max() const { return atoms.back().x; }

  bool operator==(const AtomicMeasure& o) const { return atoms == o.atoms; }
};

struct MeasureStats {
  Rational mean;
  Rational min;
  Rational max;
};

/// Per-n record of whether a^{*n} is dominated by b^{*n} over n = 1..n_max.
/// The true set need not be upward closed; first_true is just the minimum
/// true index, and eventual_from is the start of the trailing all-true run
/// within the scanned window (absent when the last index is false).
struct DominanceScan {
  std::vector<bool> dominated;  // index i holds the result for n = i+1
  std::optional<int> first_true;
  std::optional<int> eventual_from;
};

/// Witness of a failed domination: a threshold where the tail of a exceeds
/// the tail of b. The walk is over merged atom positions in descending
/// order, so t is the largest violating threshold.
struct DominanceWitness {
  Rational t;
  Rational tail_a;
  Rational tail_b;
};

/// Validating constructor: merges duplicate positions, drops zero weights.
/// Throws EmptySupport if nothing remains, NotNormalized if the weights sum
/// to something other than 1 and normalize is false.
AtomicMeasure make_measure(std::vector<Atom> pairs, bool normalize = false);

/// Point mass at x.
AtomicMeasure dirac(const Rational& x);

/// Uniform measure on the subdivisions+1 equally spaced points of [lo, hi].
AtomicMeasure discrete_uniform(const Rational& lo, const Rational& hi, int subdivisions);

/// Law of the sum of independent draws from a and b. Exact, merged.
AtomicMeasure convolve(const AtomicMeasure& a, const AtomicMeasure& b,
                       std::size_t atom_cap = kDefaultAtomCap);

/// n-fold convolution by binary powering with merging. Throws SizeLimit if
/// an intermediate result exceeds atom_cap.
AtomicMeasure convolve_power(const AtomicMeasure& a, int n,
                             std::size_t atom_cap = kDefaultAtomCap);

/// Mixture sum(c_i * m_i). Coefficients must be >= 0 and sum to 1.
AtomicMeasure mix(const std::vector<std::pair<Rational, AtomicMeasure>>& parts);

/// Mass of [t, +inf): sum of weights at positions >= t.
Rational tail(const AtomicMeasure& a, const Rational& t);

/// Mass of (t, +inf): sum of weights at positions strictly above t.
Rational mass_above(const AtomicMeasure& a, const Rational& t);

/// True iff a is stochastically dominated by b: tail(a,t) <= tail(b,t) for
/// every t. Decided exactly at the union of atom positions.
bool dominates(const AtomicMeasure& a, const AtomicMeasure& b);

/// Largest violating threshold with both tails, or nullopt iff dominates.
std::optional<DominanceWitness> dominance_witness(const AtomicMeasure& a,
                                                  const AtomicMeasure& b);

/// Integral of exp(lambda x) against a. Exactly 1 at lambda = 0.
double exp_moment(const AtomicMeasure& a, double lambda);

/// Exact mean and extreme positions.
MeasureStats stats(const AtomicMeasure& a);

/// Scans n = 1..n_max for dominates(a^{*n}, b^{*n}), all exact.
DominanceScan scan_dominance(const AtomicMeasure& a, const AtomicMeasure& b, int n_max,
                             std::size_t atom_cap = kDefaultAtomCap);

/// Builds first_true/eventual_from from a filled results vector.
DominanceScan finalize_scan(std::vector<bool> dominated);

struct SeparatingEpsilon {
  Rational epsilon;
  DominanceScan scan;  // window 1..n
};

/// Searches rational epsilon (denominator <= max_denominator, ascending) for
/// which mu = eps*d_{-2n} + (1-eps)*d_1 against the discrete uniform measure
/// on {0, 2/m, ..., 2} is dominated at power n but at no smaller power.
std::optional<SeparatingEpsilon> find_separating_epsilon(int n, int m, int max_denominator);

}  // namespace catkit
