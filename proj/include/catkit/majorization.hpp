#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "catkit/measure.hpp"

namespace catkit {

/// Finitely supported probability vector: entries >= 0 summing exactly to 1.
/// Appending zeros changes nothing for any order relation in this module;
/// canonical() is the nonincreasing form with trailing zeros dropped.
struct ProbVector {
  std::vector<Rational> p;

  std::size_t dim() const { return p.size(); }

  bool operator==(const ProbVector& o) const { return p == o.p; }
};

/// The embedding of a probability vector as a measure, kept on the
/// multiplicative axis so everything stays rational-exact: an atom (v, w)
/// stands for weight w sitting at position log v. For embedded vectors and
/// their convolutions, w / v is always the integer multiplicity of the
/// entry v in the expanded vector.
struct MultiplicativeMeasure {
  std::vector<Atom> atoms;  // values strictly increasing and > 0, weights > 0

  std::size_t size() const { return atoms.size(); }

  bool operator==(const MultiplicativeMeasure& o) const { return atoms == o.atoms; }
};

/// Witness of a failed vector dominance: a threshold u where the mass of
/// x-entries >= u exceeds the mass of y-entries >= u (largest such u).
struct VectorDominanceWitness {
  Rational u;
  Rational mass_x;
  Rational mass_y;
};

/// Validating constructor. Throws EmptySupport / NotNormalized like
/// make_measure. Entry order is preserved (not canonicalized).
ProbVector make_vector(std::vector<Rational> entries, bool normalize = false);

/// Nonincreasing rearrangement of the nonzero entries.
ProbVector sort_desc(const ProbVector& x);

/// Number of nonzero entries (the N_0 functional).
std::size_t support_size(const ProbVector& x);

/// Smallest nonzero entry.
Rational min_entry(const ProbVector& x);

/// Largest entry.
Rational max_entry(const ProbVector& x);

/// True iff x is majorized by y: every prefix sum of the decreasing
/// rearrangement of x is <= the matching prefix sum for y (padding with
/// zeros to a common length). Exact.
bool majorizes(const ProbVector& x, const ProbVector& y);

/// Equivalent characterizations, decided exactly at the kinks of the
/// piecewise-linear sides (the union of entry values, plus 0):
///   form 2: sum |x_i - t| <= sum |y_i - t| for all real t
///   form 3: sum (x_i - t)^+ <= sum (y_i - t)^+ for all real t
bool majorizes_alt(const ProbVector& x, const ProbVector& y, int form);

/// All pairwise products, canonical descending form.
ProbVector tensor(const ProbVector& x, const ProbVector& y,
                  std::size_t entry_cap = kDefaultAtomCap);

/// n-fold tensor power routed through merged multiplicative powering, then
/// expanded to a sorted vector (the expansion is what the cap guards).
ProbVector tensor_power(const ProbVector& x, int n, std::size_t entry_cap = kDefaultAtomCap);

/// Concatenation of coefficient-scaled vectors. Coefficients must be >= 0
/// and sum to 1.
ProbVector direct_sum_mix(const std::vector<std::pair<Rational, ProbVector>>& parts);

/// N_p functional sum x_i^p over nonzero entries, in floating point.
/// N_1 = 1 and N_0 = support count hold exactly.
double n_p(const ProbVector& x, double p);

/// Exact N_p for integer p (negative allowed), over nonzero entries.
Rational n_p_exact(const ProbVector& x, long p);

/// log N_p via log-sum-exp; usable far outside double range of N_p itself.
double log_n_p(const ProbVector& x, double p);

/// Shannon entropy, natural log, over nonzero entries.
double entropy(const ProbVector& x);

/// The measure embedding of z on the multiplicative axis: one atom per
/// distinct nonzero value v with weight v * multiplicity(v).
MultiplicativeMeasure embed(const ProbVector& z);

/// Convolution of embedded measures: positions multiply, weights multiply.
MultiplicativeMeasure multiplicative_convolve(const MultiplicativeMeasure& a,
                                              const MultiplicativeMeasure& b,
                                              std::size_t atom_cap = kDefaultAtomCap);

/// n-fold multiplicative convolution by binary powering, merged throughout.
MultiplicativeMeasure multiplicative_power(const MultiplicativeMeasure& a, int n,
                                           std::size_t atom_cap = kDefaultAtomCap);

/// Expands a merged form back to the canonical descending vector.
ProbVector expand(const MultiplicativeMeasure& m, std::size_t entry_cap = kDefaultAtomCap);

/// Majorization decided directly on merged forms: the prefix-sum functions
/// are concave piecewise-linear with integer breakpoints at the cumulative
/// multiplicities, so comparing at the union of breakpoints is exact.
bool majorizes_merged(const MultiplicativeMeasure& mx, const MultiplicativeMeasure& my);

/// Stochastic domination of the embedded measures, decided on the
/// multiplicative axis (log is monotone, so thresholds never need it).
bool dominates_merged(const MultiplicativeMeasure& mx, const MultiplicativeMeasure& my);

/// True iff the embedded measure of x is stochastically dominated by that
/// of y: for every u > 0, mass of x-entries >= u is <= the y mass.
/// Implies majorizes(x, y); the converse fails.
bool vector_dominates(const ProbVector& x, const ProbVector& y);

/// Largest violating threshold with both masses, or nullopt iff dominated.
std::optional<VectorDominanceWitness> vector_dominance_witness(const ProbVector& x,
                                                               const ProbVector& y);

/// Floating-point approximation of the embedding as a measure on the log
/// axis (positions are double-rounded logs). For analytic cross-checks
/// only; every order decision should use the multiplicative forms.
AtomicMeasure log_embedding(const ProbVector& z);

}  // namespace catkit
