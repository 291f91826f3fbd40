#pragma once

#include <optional>
#include <string>

#include "catkit/cramer.hpp"
#include "catkit/majorization.hpp"
#include "catkit/measure.hpp"

namespace catkit {

/// The five sufficient conditions for eventual multi-copy majorization of
/// x by y (canonical forms, zeros dropped):
///   (1) min x < min y            exact
///   (2) max x < max y            exact
///   (3) H(x) > H(y)              floating point
///   (4) N_p(x) < N_p(y) for every p in (1, inf)    certified on a grid
///   (5) N_p(x) > N_p(y) for every p in (-inf, 1)   certified on a grid
/// Exact endpoint facts back the grid where possible: extremes with their
/// multiplicities settle p -> +-inf, support counts settle p = 0 (so a
/// pass needs strictly more nonzero entries in x than in y), and exact
/// vector dominance of x by y settles (4) and (5) outright.
struct LemmaMainReport {
  ConditionCheck min_lt;
  ConditionCheck max_lt;
  ConditionCheck entropy_gt;
  ConditionCheck np_above;
  ConditionCheck np_below;
  DecisionQuality quality = DecisionQuality::GridCertified;

  bool all() const {
    return min_lt.pass && max_lt.pass && entropy_gt.pass && np_above.pass && np_below.pass;
  }
};

LemmaMainReport lemma_main_conditions(const ProbVector& x, const ProbVector& y);

/// Majorization of the n-fold tensor powers for n = 1..n_max, decided on
/// merged multiplicative forms (never expanded).
DominanceScan scan_multicopy(const ProbVector& x, const ProbVector& y, int n_max,
                             std::size_t atom_cap = kDefaultAtomCap);

/// Smallest n <= n_max with tensor-power majorization, if any.
std::optional<int> find_multicopy_witness(const ProbVector& x, const ProbVector& y, int n_max,
                                          std::size_t atom_cap = kDefaultAtomCap);

enum class CertificateKind { MeasureCatalyst, VectorCatalyst, MulticopyWitness };

/// A self-contained, exactly re-checkable claim:
///   MeasureCatalyst:  mu * pi <=_st nu * pi          (mu, nu, pi set)
///   VectorCatalyst:   x (+) z is majorized by y (+) z under tensoring,
///                     via embedded stochastic dominance  (x, y, z set)
///   MulticopyWitness: x^(x)n is majorized by y^(x)n    (x, y, n set)
struct CatalystCertificate {
  CertificateKind kind = CertificateKind::MeasureCatalyst;
  std::optional<AtomicMeasure> mu, nu, pi;
  std::optional<ProbVector> x, y, z;
  std::optional<int> n;
  std::string statement;
  bool verified = false;
};

/// Recomputes the certified relation from scratch, exactly.
bool reverify(const CatalystCertificate& cert, std::size_t atom_cap = kDefaultAtomCap);

/// Cesaro-average catalyst pi = (1/n) sum_{k=0}^{n-1} mu^{*k} * nu^{*(n-1-k)}.
/// Requires mu^{*n} <=_st nu^{*n} (PreconditionFailed otherwise); then
/// mu * pi <=_st nu * pi holds because the two sides differ from the shared
/// remainder rho exactly by mu^{*n}/n and nu^{*n}/n, which is also checked
/// as the identity n(mu*pi) - mu^{*n} = n(nu*pi) - nu^{*n}.
CatalystCertificate build_catalyst(const AtomicMeasure& mu, const AtomicMeasure& nu, int n,
                                   std::size_t atom_cap = kDefaultAtomCap);

/// Vector analogue: z = direct sum over k < n of (1/n) x^(x)k (x) y^(x)(n-1-k).
/// Requires both majorization and embedded dominance of the n-th tensor
/// powers (PreconditionFailed otherwise); the certificate asserts embedded
/// dominance of x (x) z by y (x) z, which implies the majorization.
CatalystCertificate build_vector_catalyst(const ProbVector& x, const ProbVector& y, int n,
                                          std::size_t atom_cap = kDefaultAtomCap);

struct ApproxParams {
  int n_max = 14;
  std::size_t atom_cap = kDefaultAtomCap;
};

/// Perturbation with a slim extra coordinate split k ways:
///   x_eps   = (x_1 - eps/d, ..., x_d - eps/d, eps)
///   x_eps_k = (x_1 - eps/d, ..., x_d - eps/d, eps/k, ..., eps/k)   (k parts)
/// d is the support size of x (y may have any support size). Requires
/// N_p(x) <= N_p(y) for all p >= 1 and 0 < eps < (d/(d+1)) min x. p_eps
/// is the smallest grid point in (0, 1) from which N_p(x_eps) >= N_p(y)
/// is certified up to 1; k exceeds
/// max{d^{1/(1-p_eps)} eps^{-p_eps/(1-p_eps)}, eps/min y, d}.
/// l1_distance = |x_eps_k - x|_1 = 2 eps exactly. The certificate is the
/// smallest tensor-power witness n <= n_max (WitnessNotFound otherwise).
struct Th1Result {
  ProbVector x_eps;
  ProbVector x_eps_k;
  int k = 0;
  double p_eps = 0.0;
  Rational l1_distance;
  LemmaMainReport conditions;
  CatalystCertificate certificate;
};

Th1Result approx_th1(const ProbVector& x, const ProbVector& y, Rational eps,
                     const ApproxParams& params = {});

/// Variant keeping the extra coordinate whole: x_eps as above, dimension
/// d + 1. Requires N_p(x) <= N_p(y) for p >= 1 and N_p(x) >= N_p(y) for
/// 0 <= p <= 1. p_0 < 0 is chosen independently of eps with N_p(y) < d + 1
/// on [p_0, 0] (largest magnitude certified first, which loosens the eps
/// bound); then eps must satisfy eps < (d/(d+1)) min x and
/// eps < d^{1/p_0} min y.
struct Th2Result {
  ProbVector x_eps;
  double p_0 = 0.0;
  Rational l1_distance;
  LemmaMainReport conditions;
  CatalystCertificate certificate;
};

Th2Result approx_th2(const ProbVector& x, const ProbVector& y, Rational eps,
                     const ApproxParams& params = {});

/// Vector with an exact geometric tail: entries are the head entries
/// followed by tail_first * ratio^i for i >= 0. tail_first == 0 encodes a
/// finite vector (then ratio is ignored). Head entries must be positive
/// and nonincreasing, the last head entry at least the first tail entry,
/// and the total mass exactly 1.
struct TailModelVector {
  std::vector<Rational> head;
  Rational tail_first;
  Rational ratio;
};

TailModelVector make_tail_model(std::vector<Rational> head_entries, const Rational& tail_first,
                                const Rational& ratio);

/// Exact mass of entries strictly after the first `keep` ones.
Rational tail_mass_after(const TailModelVector& v, std::size_t keep);

/// The split-count functional phi(p) = [S^p / sum_{i>M} x_i^p]^{1/(p-1)}
/// for a geometric tail with the given ratio; S and the sum share the
/// leading factor, so phi depends only on the ratio:
/// phi(p) = [(1 - r^p) / (1 - r)^p]^{1/(p-1)}.
double phi_geometric(const Rational& ratio, double p);

/// Limit of phi_geometric as p -> 1+: exp(-r log r / (1-r) - log(1-r)).
double phi_geometric_limit_at_one(const Rational& ratio);

/// Truncation of (possibly) infinite vectors to finite ones at l1 cost
/// <= 2 eps each, preserving N_p(x_eps) <= N_p(y_eps) for all p >= 1
/// (grid-certified; PreconditionFailed when the check fails, the result is
/// never clamped to force it):
///   x: keep M entries with tail mass S = S(M) <= eps (the cut always lands
///      inside the geometric tail, so the remainder stays geometric), split
///      S into k equal parts with k the least integer >= sup_{p>1} phi(p);
///   y: keep M' entries with remainder R <= eps added onto the largest one.
/// A finite x passes through with k = 1; a finite y with R = 0.
struct TruncationResult {
  ProbVector x_eps;
  ProbVector y_eps;
  int k = 1;
  std::size_t kept_x = 0;  // M
  std::size_t kept_y = 0;  // M'
  Rational tail_mass_x;    // S
  Rational remainder_y;    // R
  Rational l1_x;           // |x - x_eps|_1, exact
  Rational l1_y;           // |y - y_eps|_1, exact
  double sup_phi = 1.0;
};

TruncationResult truncate_infinite(const TailModelVector& x, const TailModelVector& y,
                                   Rational eps);

}  // namespace catkit
