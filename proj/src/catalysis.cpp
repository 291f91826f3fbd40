#include "catkit/catalysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "grid_sampling.hpp"

namespace catkit {

namespace {

// Exact nonnegative integer power of a rational.
Rational rational_pow_ui(const Rational& base, unsigned long e) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), e);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::size_t count_of(const ProbVector& canon, const Rational& v) {
  return static_cast<std::size_t>(std::count(canon.p.begin(), canon.p.end(), v));
}

// One N_p comparison family, p ranging over (1, inf) when above, else over
// (-inf, 1). The comparison that must hold is N_p(x) < N_p(y) above and
// N_p(x) > N_p(y) below (<= / >= when weak). Exact facts settle equality,
// embedded dominance, the p -> +-inf regimes (extreme entries with their
// multiplicities) and p = 0 (support counts); the rest is grid-certified.
ConditionCheck check_np_family(const ProbVector& xc, const ProbVector& yc, bool above,
                               bool strict) {
  ConditionCheck c;
  if (xc == yc) {
    c.pass = !strict;
    c.exact = true;
    c.detail = strict ? "vectors are equal, so no strict inequality holds" : "vectors are equal";
    if (strict) c.witness_point = above ? 2.0 : 0.0;
    return c;
  }
  if (vector_dominates(xc, yc)) {
    c.pass = true;
    c.exact = true;
    c.detail = "implied by exact dominance of the embedded measures";
    return c;
  }

  auto gap_at = [&](double p) {
    const double d = log_n_p(yc, p) - log_n_p(xc, p);
    return above ? d : -d;
  };

  std::string exact_fail;
  if (above) {
    const Rational xmax = xc.p.front();
    const Rational ymax = yc.p.front();
    if (xmax > ymax || (xmax == ymax && count_of(xc, xmax) > count_of(yc, ymax)))
      exact_fail = "fails as p -> inf by the exact largest entries";
  } else {
    const std::size_t dx = xc.dim();
    const std::size_t dy = yc.dim();
    if (strict ? dx <= dy : dx < dy) {
      c.pass = false;
      c.exact = true;
      c.witness_point = 0.0;
      c.detail = "fails at p=0 by the exact support counts N_0(x)=" + std::to_string(dx) +
                 ", N_0(y)=" + std::to_string(dy);
      return c;
    }
    const Rational xmin = xc.p.back();
    const Rational ymin = yc.p.back();
    if (xmin > ymin || (xmin == ymin && count_of(xc, xmin) < count_of(yc, ymin)))
      exact_fail = "fails as p -> -inf by the exact smallest entries";
  }

  const detail::GridOutcome g = detail::sample_offset_gap(1.0, above ? 1.0 : -1.0, gap_at);
  if (!exact_fail.empty()) {
    c.pass = false;
    c.exact = true;
    c.detail = exact_fail;
    if (g.min_gap < 0) c.witness_point = g.argmin;
    return c;
  }
  c.pass = strict ? g.min_gap > 0 : g.min_gap >= 0;
  c.exact = false;
  c.detail = detail::gap_detail(g, "p");
  if (!c.pass) c.witness_point = g.argmin;
  return c;
}

// Weak N_p(x) >= N_p(y) over [0, 1] only (p = 1 - 2^j, j <= 0, plus the
// exact support-count fact at p = 0).
ConditionCheck check_np_range01(const ProbVector& xc, const ProbVector& yc) {
  ConditionCheck c;
  if (xc == yc) {
    c.pass = true;
    c.exact = true;
    c.detail = "vectors are equal";
    return c;
  }
  if (vector_dominates(xc, yc)) {
    c.pass = true;
    c.exact = true;
    c.detail = "implied by exact dominance of the embedded measures";
    return c;
  }
  if (xc.dim() < yc.dim()) {
    c.pass = false;
    c.exact = true;
    c.witness_point = 0.0;
    c.detail = "fails at p=0 by the exact support counts N_0(x)=" + std::to_string(xc.dim()) +
               ", N_0(y)=" + std::to_string(yc.dim());
    return c;
  }
  const detail::GridOutcome g = detail::sample_offset_gap(
      1.0, -1.0, [&](double p) { return log_n_p(xc, p) - log_n_p(yc, p); }, -20, 0);
  c.pass = g.min_gap >= 0;
  c.exact = false;
  c.detail = detail::gap_detail(g, "p");
  if (!c.pass) c.witness_point = g.argmin;
  return c;
}

std::string summarize(const LemmaMainReport& r) {
  auto mark = [](const ConditionCheck& c) { return c.pass ? std::string("pass") : "FAIL"; };
  return "min " + mark(r.min_lt) + ", max " + mark(r.max_lt) + ", entropy " +
         mark(r.entropy_gt) + ", N_p above " + mark(r.np_above) + ", N_p below " +
         mark(r.np_below);
}

MultiplicativeMeasure multiplicative_identity() {
  return MultiplicativeMeasure{{Atom{Rational(1), Rational(1)}}};
}

std::map<Rational, Rational> scaled_difference(const AtomicMeasure& product, int n,
                                               const AtomicMeasure& power) {
  std::map<Rational, Rational> m;
  for (const auto& a : product.atoms) m[a.x] += n * a.w;
  for (const auto& a : power.atoms) m[a.x] -= a.w;
  for (auto it = m.begin(); it != m.end();) it = it->second == 0 ? m.erase(it) : std::next(it);
  return m;
}

}  // namespace

LemmaMainReport lemma_main_conditions(const ProbVector& x, const ProbVector& y) {
  const ProbVector xc = sort_desc(x);
  const ProbVector yc = sort_desc(y);
  if (xc.dim() == 0 || yc.dim() == 0) throw EmptySupport("conditions need nonzero vectors");
  LemmaMainReport r;
  const Rational xmin = xc.p.back();
  const Rational ymin = yc.p.back();
  const Rational xmax = xc.p.front();
  const Rational ymax = yc.p.front();
  r.min_lt = {xmin < ymin, true, std::nullopt,
              "min(x)=" + to_fraction_string(xmin) + ", min(y)=" + to_fraction_string(ymin)};
  r.max_lt = {xmax < ymax, true, std::nullopt,
              "max(x)=" + to_fraction_string(xmax) + ", max(y)=" + to_fraction_string(ymax)};
  if (xc == yc) {
    r.entropy_gt = {false, true, std::nullopt, "vectors are equal"};
  } else {
    const double hx = entropy(xc);
    const double hy = entropy(yc);
    r.entropy_gt = {hx > hy, false, std::nullopt,
                    "H(x)=" + std::to_string(hx) + ", H(y)=" + std::to_string(hy)};
  }
  r.np_above = check_np_family(xc, yc, true, true);
  r.np_below = check_np_family(xc, yc, false, true);
  const bool all_exact = r.min_lt.exact && r.max_lt.exact && r.entropy_gt.exact &&
                         r.np_above.exact && r.np_below.exact;
  r.quality = all_exact ? DecisionQuality::Exact : DecisionQuality::GridCertified;
  return r;
}

DominanceScan scan_multicopy(const ProbVector& x, const ProbVector& y, int n_max,
                             std::size_t atom_cap) {
  if (n_max < 1) throw PreconditionFailed("scan needs n_max >= 1");
  const MultiplicativeMeasure mx = embed(x);
  const MultiplicativeMeasure my = embed(y);
  std::vector<bool> results;
  results.reserve(static_cast<std::size_t>(n_max));
  MultiplicativeMeasure px = mx;
  MultiplicativeMeasure py = my;
  for (int n = 1; n <= n_max; ++n) {
    if (n > 1) {
      px = multiplicative_convolve(px, mx, atom_cap);
      py = multiplicative_convolve(py, my, atom_cap);
    }
    results.push_back(majorizes_merged(px, py));
  }
  return finalize_scan(results);
}

std::optional<int> find_multicopy_witness(const ProbVector& x, const ProbVector& y, int n_max,
                                          std::size_t atom_cap) {
  if (n_max < 1) throw PreconditionFailed("witness search needs n_max >= 1");
  const MultiplicativeMeasure mx = embed(x);
  const MultiplicativeMeasure my = embed(y);
  MultiplicativeMeasure px = mx;
  MultiplicativeMeasure py = my;
  for (int n = 1; n <= n_max; ++n) {
    if (n > 1) {
      px = multiplicative_convolve(px, mx, atom_cap);
      py = multiplicative_convolve(py, my, atom_cap);
    }
    if (majorizes_merged(px, py)) return n;
  }
  return std::nullopt;
}

bool reverify(const CatalystCertificate& cert, std::size_t atom_cap) {
  switch (cert.kind) {
    case CertificateKind::MeasureCatalyst: {
      if (!cert.mu || !cert.nu || !cert.pi)
        throw PreconditionFailed("measure-catalyst certificate is missing mu, nu, or pi");
      return dominates(convolve(*cert.mu, *cert.pi, atom_cap),
                       convolve(*cert.nu, *cert.pi, atom_cap));
    }
    case CertificateKind::VectorCatalyst: {
      if (!cert.x || !cert.y || !cert.z)
        throw PreconditionFailed("vector-catalyst certificate is missing x, y, or z");
      const MultiplicativeMeasure mz = embed(*cert.z);
      const MultiplicativeMeasure mxz = multiplicative_convolve(embed(*cert.x), mz, atom_cap);
      const MultiplicativeMeasure myz = multiplicative_convolve(embed(*cert.y), mz, atom_cap);
      return dominates_merged(mxz, myz) && majorizes_merged(mxz, myz);
    }
    case CertificateKind::MulticopyWitness: {
      if (!cert.x || !cert.y || !cert.n)
        throw PreconditionFailed("multicopy certificate is missing x, y, or n");
      return majorizes_merged(multiplicative_power(embed(*cert.x), *cert.n, atom_cap),
                              multiplicative_power(embed(*cert.y), *cert.n, atom_cap));
    }
  }
  throw Error("unknown certificate kind");
}

CatalystCertificate build_catalyst(const AtomicMeasure& mu, const AtomicMeasure& nu, int n,
                                   std::size_t atom_cap) {
  if (n < 1) throw PreconditionFailed("catalyst construction needs n >= 1");
  std::vector<AtomicMeasure> mup(static_cast<std::size_t>(n) + 1);
  std::vector<AtomicMeasure> nup(static_cast<std::size_t>(n) + 1);
  mup[0] = dirac(0);
  nup[0] = dirac(0);
  for (int k = 1; k <= n; ++k) {
    mup[k] = convolve(mup[k - 1], mu, atom_cap);
    nup[k] = convolve(nup[k - 1], nu, atom_cap);
  }
  if (!dominates(mup[n], nup[n])) {
    const auto w = dominance_witness(mup[n], nup[n]);
    throw PreconditionFailed("mu^{*" + std::to_string(n) + "} is not dominated by nu^{*" +
                             std::to_string(n) + "}: at t=" + to_human_string(w->t) + " the tails are " +
                             to_human_string(w->tail_a) + " > " + to_human_string(w->tail_b));
  }
  std::vector<std::pair<Rational, AtomicMeasure>> parts;
  parts.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    parts.emplace_back(Rational(1, n), convolve(mup[k], nup[n - 1 - k], atom_cap));
  AtomicMeasure pi = mix(parts);

  const AtomicMeasure mu_pi = convolve(mu, pi, atom_cap);
  const AtomicMeasure nu_pi = convolve(nu, pi, atom_cap);
  if (!dominates(mu_pi, nu_pi)) throw Error("catalyst failed its own domination check");
  if (scaled_difference(mu_pi, n, mup[n]) != scaled_difference(nu_pi, n, nup[n]))
    throw Error("catalyst failed the decomposition identity");

  CatalystCertificate cert;
  cert.kind = CertificateKind::MeasureCatalyst;
  cert.mu = mu;
  cert.nu = nu;
  cert.pi = std::move(pi);
  cert.n = n;
  cert.statement = "mu*pi <=_st nu*pi, with pi the average of mu^{*k} * nu^{*(n-1-k)} over k < " +
                   std::to_string(n);
  cert.verified = true;
  return cert;
}

CatalystCertificate build_vector_catalyst(const ProbVector& x, const ProbVector& y, int n,
                                          std::size_t atom_cap) {
  if (n < 1) throw PreconditionFailed("vector catalyst construction needs n >= 1");
  const ProbVector xc = sort_desc(x);
  const ProbVector yc = sort_desc(y);
  const MultiplicativeMeasure mx = embed(xc);
  const MultiplicativeMeasure my = embed(yc);
  std::vector<MultiplicativeMeasure> xp(static_cast<std::size_t>(n) + 1);
  std::vector<MultiplicativeMeasure> yp(static_cast<std::size_t>(n) + 1);
  xp[0] = multiplicative_identity();
  yp[0] = multiplicative_identity();
  for (int k = 1; k <= n; ++k) {
    xp[k] = multiplicative_convolve(xp[k - 1], mx, atom_cap);
    yp[k] = multiplicative_convolve(yp[k - 1], my, atom_cap);
  }
  if (!majorizes_merged(xp[n], yp[n]))
    throw PreconditionFailed("x^(x)" + std::to_string(n) + " is not majorized by y^(x)" +
                             std::to_string(n));
  if (!dominates_merged(xp[n], yp[n]))
    throw PreconditionFailed(
        "the embedded measure of x^(x)" + std::to_string(n) + " is not dominated by that of y^(x)" +
        std::to_string(n) + ", so the averaging construction does not apply");

  std::vector<std::pair<Rational, ProbVector>> parts;
  parts.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    parts.emplace_back(Rational(1, n),
                       expand(multiplicative_convolve(xp[k], yp[n - 1 - k], atom_cap), atom_cap));
  const ProbVector z = sort_desc(direct_sum_mix(parts));

  const MultiplicativeMeasure mz = embed(z);
  const MultiplicativeMeasure mxz = multiplicative_convolve(mx, mz, atom_cap);
  const MultiplicativeMeasure myz = multiplicative_convolve(my, mz, atom_cap);
  if (!dominates_merged(mxz, myz) || !majorizes_merged(mxz, myz))
    throw Error("vector catalyst failed its own checks");

  CatalystCertificate cert;
  cert.kind = CertificateKind::VectorCatalyst;
  cert.x = xc;
  cert.y = yc;
  cert.z = z;
  cert.n = n;
  cert.statement = "x (x) z is majorized by y (x) z, via dominance of the embedded measures";
  cert.verified = true;
  return cert;
}

namespace {

// Smallest grid point p in (0, 1) from which the weak comparison
// N_p(x_eps) >= N_p(y) is certified on [p, 1). The grid is 2^-j from below
// and 1 - 2^-j from above.
double find_p_eps(const ProbVector& x_eps, const ProbVector& y) {
  std::vector<double> pts;
  for (int j = 20; j >= 1; --j) pts.push_back(std::ldexp(1.0, -j));
  for (int j = 2; j <= 20; ++j) pts.push_back(1.0 - std::ldexp(1.0, -j));
  std::vector<double> gaps(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    gaps[i] = log_n_p(x_eps, pts[i]) - log_n_p(y, pts[i]);
  std::size_t first_ok = pts.size();
  for (std::size_t i = pts.size(); i-- > 0;) {
    if (gaps[i] < 0) break;
    first_ok = i;
  }
  if (first_ok == pts.size())
    throw PreconditionFailed("could not certify N_p(x_eps) >= N_p(y) on any band [p, 1)");
  return pts[first_ok];
}

ProbVector perturbed(const ProbVector& xc, const Rational& eps) {
  const Rational delta = eps / Rational(static_cast<unsigned long>(xc.dim()));
  ProbVector out;
  out.p.reserve(xc.dim() + 1);
  for (const auto& e : xc.p) out.p.push_back(e - delta);
  out.p.push_back(eps);
  return out;
}

void require_same_support_dim(const ProbVector& xc, const ProbVector& yc) {
  if (xc.dim() != yc.dim())
    throw PreconditionFailed("inputs must have the same number of nonzero entries, got " +
                             std::to_string(xc.dim()) + " and " + std::to_string(yc.dim()));
}

void require_eps_range(const Rational& eps, const Rational& bound) {
  if (!(eps > 0 && eps < bound))
    throw PreconditionFailed("eps must lie in (0, " + to_fraction_string(bound) + "), got " +
                             to_fraction_string(eps));
}

CatalystCertificate multicopy_certificate(const ProbVector& x, const ProbVector& y, int n) {
  CatalystCertificate cert;
  cert.kind = CertificateKind::MulticopyWitness;
  cert.x = sort_desc(x);
  cert.y = sort_desc(y);
  cert.n = n;
  cert.statement =
      "x^(x)" + std::to_string(n) + " is majorized by y^(x)" + std::to_string(n);
  cert.verified = true;
  return cert;
}

}  // namespace

Th1Result approx_th1(const ProbVector& x, const ProbVector& y, Rational eps,
                     const ApproxParams& params) {
  eps.canonicalize();
  const ProbVector xc = sort_desc(x);
  const ProbVector yc = sort_desc(y);
  const std::size_t d = xc.dim();

  const ConditionCheck c1 = check_np_family(xc, yc, true, false);
  if (!c1.pass)
    throw PreconditionFailed("N_p(x) <= N_p(y) fails for some p >= 1: " + c1.detail);

  const Rational xmin = xc.p.back();
  const Rational bound =
      Rational(static_cast<unsigned long>(d), static_cast<unsigned long>(d + 1)) * xmin;
  require_eps_range(eps, bound);

  Th1Result res;
  res.x_eps = perturbed(xc, eps);
  res.p_eps = find_p_eps(res.x_eps, yc);

  const double pe = res.p_eps;
  const double dd = static_cast<double>(d);
  const double ed = to_double(eps);
  const double b1 = std::pow(dd, 1.0 / (1.0 - pe)) * std::pow(ed, -pe / (1.0 - pe));
  const double b2 = to_double(eps / yc.p.back());
  const int k = static_cast<int>(std::ceil(std::max({b1, b2, dd}))) + 1;
  res.k = k;

  const Rational delta = eps / Rational(static_cast<unsigned long>(d));
  const Rational part = eps / Rational(k);
  res.x_eps_k.p.reserve(d + static_cast<std::size_t>(k));
  Rational l1 = 0;
  for (const auto& e : xc.p) {
    res.x_eps_k.p.push_back(e - delta);
    l1 += delta;
  }
  for (int i = 0; i < k; ++i) {
    res.x_eps_k.p.push_back(part);
    l1 += part;
  }
  res.l1_distance = l1;

  res.conditions = lemma_main_conditions(res.x_eps_k, yc);
  const auto witness = find_multicopy_witness(res.x_eps_k, yc, params.n_max, params.atom_cap);
  if (!witness)
    throw WitnessNotFound("no tensor-power witness up to n_max=" + std::to_string(params.n_max) +
                          "; conditions: " + summarize(res.conditions));
  res.certificate = multicopy_certificate(res.x_eps_k, yc, *witness);
  return res;
}

Th2Result approx_th2(const ProbVector& x, const ProbVector& y, Rational eps,
                     const ApproxParams& params) {
  eps.canonicalize();
  const ProbVector xc = sort_desc(x);
  const ProbVector yc = sort_desc(y);
  require_same_support_dim(xc, yc);
  const std::size_t d = xc.dim();

  const ConditionCheck c1 = check_np_family(xc, yc, true, false);
  if (!c1.pass)
    throw PreconditionFailed("N_p(x) <= N_p(y) fails for some p >= 1: " + c1.detail);
  const ConditionCheck c2 = check_np_range01(xc, yc);
  if (!c2.pass)
    throw PreconditionFailed("N_p(x) >= N_p(y) fails for some p in [0, 1]: " + c2.detail);

  // N_p(y) is nonincreasing in p up to 0 (entries are at most 1), so the
  // whole band [p_0, 0] is controlled by its left endpoint. Prefer the
  // most negative certified p_0: the eps bound d^{1/p_0} min y grows with
  // the magnitude of p_0.
  Th2Result res;
  bool found = false;
  const double log_bound = std::log(static_cast<double>(d) + 1.0);
  for (int j = 10; j >= -20 && !found; --j) {
    const double cand = -std::ldexp(1.0, j);
    if (log_n_p(yc, cand) < log_bound) {
      res.p_0 = cand;
      found = true;
    }
  }
  if (!found) throw Error("no p_0 certified though N_0(y) stays below d + 1");

  const Rational xmin = xc.p.back();
  const Rational bound1 =
      Rational(static_cast<unsigned long>(d), static_cast<unsigned long>(d + 1)) * xmin;
  require_eps_range(eps, bound1);
  const double bound2 =
      std::pow(static_cast<double>(d), 1.0 / res.p_0) * to_double(yc.p.back());
  if (!(to_double(eps) < bound2))
    throw PreconditionFailed("eps must also be below d^{1/p_0} min y = " +
                             std::to_string(bound2) + ", got " + to_fraction_string(eps));

  res.x_eps = perturbed(xc, eps);
  res.l1_distance = 2 * eps;
  res.conditions = lemma_main_conditions(res.x_eps, yc);
  const auto witness = find_multicopy_witness(res.x_eps, yc, params.n_max, params.atom_cap);
  if (!witness)
    throw WitnessNotFound("no tensor-power witness up to n_max=" + std::to_string(params.n_max) +
                          "; conditions: " + summarize(res.conditions));
  res.certificate = multicopy_certificate(res.x_eps, yc, *witness);
  return res;
}

TailModelVector make_tail_model(std::vector<Rational> head_entries, const Rational& tail_first_in,
                                const Rational& ratio_in) {
  // repair non-canonical mpq_class(num, den) inputs before any comparison
  for (auto& e : head_entries) e.canonicalize();
  Rational tail_first = tail_first_in, ratio = ratio_in;
  tail_first.canonicalize();
  ratio.canonicalize();
  if (tail_first < 0) throw PreconditionFailed("tail_first must be nonnegative");
  if (tail_first > 0 && !(ratio > 0 && ratio < 1))
    throw PreconditionFailed("a geometric tail needs ratio strictly between 0 and 1");
  if (head_entries.empty() && tail_first == 0) throw EmptySupport("empty tail model");
  Rational total = 0;
  for (std::size_t i = 0; i < head_entries.size(); ++i) {
    if (head_entries[i] <= 0)
      throw PreconditionFailed("head entries must be positive, got " +
                               to_fraction_string(head_entries[i]) + " at position " +
                               std::to_string(i));
    if (i > 0 && head_entries[i] > head_entries[i - 1])
      throw PreconditionFailed("head entries must be nonincreasing");
    total += head_entries[i];
  }
  if (tail_first > 0) {
    if (!head_entries.empty() && tail_first > head_entries.back())
      throw PreconditionFailed("the tail must start no higher than the last head entry");
    total += tail_first / (1 - ratio);
  }
  if (total != 1)
    throw NotNormalized("tail model mass is " + to_fraction_string(total) + ", not 1");
  return TailModelVector{std::move(head_entries), tail_first, ratio};
}

Rational tail_mass_after(const TailModelVector& v, std::size_t keep) {
  const std::size_t h = v.head.size();
  Rational s = 0;
  for (std::size_t i = keep; i < h; ++i) s += v.head[i];
  if (v.tail_first > 0) {
    const std::size_t skip = keep > h ? keep - h : 0;
    s += v.tail_first * rational_pow_ui(v.ratio, static_cast<unsigned long>(skip)) /
         (1 - v.ratio);
  }
  return s;
}

double phi_geometric(const Rational& ratio, double p) {
  const double lr = log_to_double(ratio);
  const double l1r = log_to_double(1 - ratio);
  const double lnum = std::log1p(-std::exp(p * lr));
  return std::exp((lnum - p * l1r) / (p - 1.0));
}

double phi_geometric_limit_at_one(const Rational& ratio) {
  const double r = to_double(ratio);
  return std::exp(-r * std::log(r) / (1.0 - r) - std::log(1.0 - r));
}

TruncationResult truncate_infinite(const TailModelVector& x, const TailModelVector& y,
                                   Rational eps) {
  eps.canonicalize();
  if (eps <= 0) throw PreconditionFailed("eps must be positive");
  TruncationResult res;

  if (x.tail_first == 0) {
    res.x_eps = ProbVector{x.head};
    res.k = 1;
    res.kept_x = x.head.size();
    res.tail_mass_x = 0;
    res.l1_x = 0;
    res.sup_phi = 1.0;
  } else {
    const std::size_t h = x.head.size();
    std::size_t m = h;
    Rational s = x.tail_first / (1 - x.ratio);
    while (s > eps) {
      s *= x.ratio;
      ++m;
    }
    res.kept_x = m;
    res.tail_mass_x = s;

    double sup = phi_geometric_limit_at_one(x.ratio);
    sup = std::max(sup, 1.0 / (1.0 - to_double(x.ratio)));
    for (int j = -20; j <= 20; ++j)
      sup = std::max(sup, phi_geometric(x.ratio, 1.0 + std::ldexp(1.0, j)));
    res.sup_phi = sup;
    const double rounded = std::nearbyint(sup);
    int k = std::abs(sup - rounded) <= 1e-9 ? static_cast<int>(rounded)
                                            : static_cast<int>(std::ceil(sup));
    if (k < 1) k = 1;
    res.k = k;

    res.x_eps.p.reserve(m + static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < m; ++i)
      res.x_eps.p.push_back(i < h ? x.head[i]
                                  : x.tail_first * rational_pow_ui(
                                                       x.ratio, static_cast<unsigned long>(i - h)));
    const Rational part = s / Rational(k);
    for (int i = 0; i < k; ++i) res.x_eps.p.push_back(part);

    Rational l1 = 0;
    for (int i = 0; i < k; ++i) {
      const Rational orig =
          x.tail_first * rational_pow_ui(x.ratio, static_cast<unsigned long>(m - h + i));
      l1 += abs(part - orig);
    }
    l1 += tail_mass_after(x, m + static_cast<std::size_t>(k));
    res.l1_x = l1;
  }

  if (y.tail_first == 0) {
    res.y_eps = ProbVector{y.head};
    res.kept_y = y.head.size();
    res.remainder_y = 0;
    res.l1_y = 0;
  } else {
    const std::size_t h = y.head.size();
    std::size_t m = h;
    Rational r = y.tail_first / (1 - y.ratio);
    while (r > eps) {
      r *= y.ratio;
      ++m;
    }
    if (m == 0) throw PreconditionFailed("eps leaves no y entry to keep");
    res.kept_y = m;
    res.remainder_y = r;
    res.y_eps.p.reserve(m);
    for (std::size_t i = 0; i < m; ++i)
      res.y_eps.p.push_back(i < h ? y.head[i]
                                  : y.tail_first * rational_pow_ui(
                                                       y.ratio, static_cast<unsigned long>(i - h)));
    res.y_eps.p.front() += r;
    res.l1_y = 2 * r;
  }

  const ConditionCheck post =
      check_np_family(sort_desc(res.x_eps), sort_desc(res.y_eps), true, false);
  if (!post.pass)
    throw PreconditionFailed("truncation does not preserve N_p(x) <= N_p(y) for p >= 1: " +
                             post.detail);
  return res;
}

}  // namespace catkit
