#include "catkit/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace catkit {

namespace {

std::vector<Atom> merge_sorted(std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.x < b.x; });
  std::vector<Atom> out;
  out.reserve(atoms.size());
  for (auto& a : atoms) {
    if (!out.empty() && out.back().x == a.x) {
      out.back().w += a.w;
    } else {
      out.push_back(std::move(a));
    }
  }
  std::erase_if(out, [](const Atom& a) { return a.w == 0; });
  return out;
}

}  // namespace

AtomicMeasure make_measure(std::vector<Atom> pairs, bool normalize) {
  for (auto& a : pairs) {
    // mpq_class(num, den) skips canonicalization; repair here so callers
    // cannot smuggle in values that break exact comparison downstream
    a.x.canonicalize();
    a.w.canonicalize();
    if (a.w < 0) throw PreconditionFailed("negative weight at position " + to_fraction_string(a.x));
  }
  std::vector<Atom> atoms = merge_sorted(std::move(pairs));
  if (atoms.empty()) throw EmptySupport("measure has no positive weight");
  Rational total = 0;
  for (const auto& a : atoms) total += a.w;
  if (total != 1) {
    if (!normalize) {
      throw NotNormalized("weights sum to " + to_fraction_string(total) + ", not 1");
    }
    for (auto& a : atoms) a.w /= total;
  }
  return AtomicMeasure{std::move(atoms)};
}

AtomicMeasure dirac(const Rational& x) {
  Rational pos = x;
  pos.canonicalize();
  return AtomicMeasure{{Atom{std::move(pos), 1}}};
}

AtomicMeasure discrete_uniform(const Rational& lo, const Rational& hi, int subdivisions) {
  Rational l = lo, h = hi;
  l.canonicalize();
  h.canonicalize();
  if (subdivisions < 1 || l >= h) throw PreconditionFailed("bad uniform grid");
  std::vector<Atom> atoms;
  const Rational step = (h - l) / subdivisions;
  const Rational w(1, subdivisions + 1);
  for (int i = 0; i <= subdivisions; ++i) atoms.push_back({l + i * step, w});
  return AtomicMeasure{std::move(atoms)};
}

AtomicMeasure convolve(const AtomicMeasure& a, const AtomicMeasure& b, std::size_t atom_cap) {
  if (a.size() > atom_cap || b.size() > atom_cap) {
    throw SizeLimit("convolution input exceeds the atom cap");
  }
  std::map<Rational, Rational> acc;
  for (const auto& pa : a.atoms) {
    for (const auto& pb : b.atoms) {
      acc[pa.x + pb.x] += pa.w * pb.w;
    }
    if (acc.size() > atom_cap) throw SizeLimit("convolution result exceeds the atom cap");
  }
  std::vector<Atom> atoms;
  atoms.reserve(acc.size());
  for (auto& [x, w] : acc) atoms.push_back({x, std::move(w)});
  return AtomicMeasure{std::move(atoms)};
}

AtomicMeasure convolve_power(const AtomicMeasure& a, int n, std::size_t atom_cap) {
  if (n < 1) throw PreconditionFailed("convolution power needs n >= 1");
  AtomicMeasure base = a;
  std::optional<AtomicMeasure> acc;
  int e = n;
  while (e > 0) {
    if (e & 1) acc = acc ? convolve(*acc, base, atom_cap) : base;
    e >>= 1;
    if (e > 0) base = convolve(base, base, atom_cap);
  }
  return *acc;
}

AtomicMeasure mix(const std::vector<std::pair<Rational, AtomicMeasure>>& parts) {
  std::vector<Rational> coeffs;
  coeffs.reserve(parts.size());
  Rational total = 0;
  for (const auto& [c, m] : parts) {
    coeffs.push_back(c);
    coeffs.back().canonicalize();
    if (coeffs.back() < 0)
      throw BadCoefficients("negative mixture coefficient " + to_fraction_string(coeffs.back()));
    total += coeffs.back();
  }
  if (total != 1) {
    throw BadCoefficients("mixture coefficients sum to " + to_fraction_string(total));
  }
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Rational& c = coeffs[i];
    if (c == 0) continue;
    for (const auto& a : parts[i].second.atoms) atoms.push_back({a.x, c * a.w});
  }
  auto merged = merge_sorted(std::move(atoms));
  if (merged.empty()) throw EmptySupport("mixture has no positive weight");
  return AtomicMeasure{std::move(merged)};
}

Rational tail(const AtomicMeasure& a, const Rational& t) {
  Rational s = 0;
  for (auto it = a.atoms.rbegin(); it != a.atoms.rend() && it->x >= t; ++it) s += it->w;
  return s;
}

Rational mass_above(const AtomicMeasure& a, const Rational& t) {
  Rational s = 0;
  for (auto it = a.atoms.rbegin(); it != a.atoms.rend() && it->x > t; ++it) s += it->w;
  return s;
}

std::optional<DominanceWitness> dominance_witness(const AtomicMeasure& a,
                                                  const AtomicMeasure& b) {
  // Walk the merged positions downward, maintaining both suffix sums. The
  // tails change only at atoms, so checking there decides all thresholds.
  auto ia = a.atoms.rbegin();
  auto ib = b.atoms.rbegin();
  Rational ta = 0;
  Rational tb = 0;
  while (ia != a.atoms.rend() || ib != b.atoms.rend()) {
    Rational t;
    if (ib == b.atoms.rend() || (ia != a.atoms.rend() && ia->x > ib->x)) {
      t = ia->x;
    } else {
      t = ib->x;
    }
    while (ia != a.atoms.rend() && ia->x >= t) ta += (ia++)->w;
    while (ib != b.atoms.rend() && ib->x >= t) tb += (ib++)->w;
    if (ta > tb) return DominanceWitness{t, ta, tb};
  }
  return std::nullopt;
}

bool dominates(const AtomicMeasure& a, const AtomicMeasure& b) {
  return !dominance_witness(a, b).has_value();
}

double exp_moment(const AtomicMeasure& a, double lambda) {
  if (lambda == 0.0) return 1.0;
  double s = 0.0;
  for (const auto& atom : a.atoms) s += to_double(atom.w) * std::exp(lambda * to_double(atom.x));
  return s;
}

MeasureStats stats(const AtomicMeasure& a) {
  Rational mean = 0;
  for (const auto& atom : a.atoms) mean += atom.x * atom.w;
  return {mean, a.min(), a.max()};
}

DominanceScan finalize_scan(std::vector<bool> dominated) {
  DominanceScan scan;
  scan.dominated = std::move(dominated);
  for (std::size_t i = 0; i < scan.dominated.size(); ++i) {
    if (scan.dominated[i]) {
      scan.first_true = static_cast<int>(i) + 1;
      break;
    }
  }
  if (!scan.dominated.empty() && scan.dominated.back()) {
    std::size_t start = scan.dominated.size() - 1;
    while (start > 0 && scan.dominated[start - 1]) --start;
    scan.eventual_from = static_cast<int>(start) + 1;
  }
  return scan;
}

DominanceScan scan_dominance(const AtomicMeasure& a, const AtomicMeasure& b, int n_max,
                             std::size_t atom_cap) {
  if (n_max < 1) throw PreconditionFailed("scan needs n_max >= 1");
  std::vector<bool> results;
  AtomicMeasure pa = a;
  AtomicMeasure pb = b;
  for (int n = 1; n <= n_max; ++n) {
    if (n > 1) {
      pa = convolve(pa, a, atom_cap);
      pb = convolve(pb, b, atom_cap);
    }
    results.push_back(dominates(pa, pb));
  }
  return finalize_scan(std::move(results));
}

std::optional<SeparatingEpsilon> find_separating_epsilon(int n, int m, int max_denominator) {
  if (n < 1 || m < 1 || max_denominator < 2) throw PreconditionFailed("bad search parameters");
  const AtomicMeasure nu = discrete_uniform(0, 2, m);
  std::vector<AtomicMeasure> nu_pow;
  nu_pow.push_back(nu);
  for (int k = 2; k <= n; ++k) nu_pow.push_back(convolve(nu_pow.back(), nu));

  for (int q = 2; q <= max_denominator; ++q) {
    for (int p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const Rational eps(p, q);
      const AtomicMeasure mu =
          make_measure({{Rational(-2 * n), eps}, {Rational(1), 1 - eps}});
      std::vector<bool> results;
      AtomicMeasure mu_k = mu;
      bool ok = true;
      for (int k = 1; k <= n; ++k) {
        if (k > 1) mu_k = convolve(mu_k, mu);
        const bool dom = dominates(mu_k, nu_pow[k - 1]);
        results.push_back(dom);
        if (dom != (k == n)) {
          ok = false;
          break;
        }
      }
      if (ok) return SeparatingEpsilon{eps, finalize_scan(std::move(results))};
    }
  }
  return std::nullopt;
}

}  // namespace catkit
