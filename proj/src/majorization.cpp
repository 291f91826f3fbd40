#include "catkit/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "catkit/errors.hpp"

namespace catkit {

namespace {

Rational sum_entries(const std::vector<Rational>& v) {
  Rational s = 0;
  for (const auto& e : v) s += e;
  return s;
}

// Exact integer power of a rational; e may be negative.
Rational rational_pow(const Rational& base, long e) {
  if (e == 0) return Rational(1);
  if (base == 0) throw Error("rational_pow: zero base with nonpositive exponent");
  const unsigned long mag = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), mag);
  mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), mag);
  Rational r(num, den);
  r.canonicalize();
  if (e < 0) r = 1 / r;
  return r;
}

// Blocks of a merged form in descending value order: (value, multiplicity,
// block weight). Multiplicity w / v is checked to be a true integer.
struct Block {
  Rational value;
  mpz_class count;
  Rational weight;
};

std::vector<Block> descending_blocks(const MultiplicativeMeasure& m) {
  std::vector<Block> out;
  out.reserve(m.atoms.size());
  for (auto it = m.atoms.rbegin(); it != m.atoms.rend(); ++it) {
    Rational mult = it->w / it->x;
    if (mult.get_den() != 1)
      throw Error("merged form has non-integer multiplicity " + to_fraction_string(mult) +
                  " at value " + to_fraction_string(it->x));
    out.push_back(Block{it->x, mult.get_num(), it->w});
  }
  return out;
}

}  // namespace

ProbVector make_vector(std::vector<Rational> entries, bool normalize) {
  if (entries.empty()) throw EmptySupport("probability vector needs at least one entry");
  Rational total = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    // repair non-canonical mpq_class(num, den) inputs before any comparison
    entries[i].canonicalize();
    if (entries[i] < 0)
      throw PreconditionFailed("negative entry " + to_fraction_string(entries[i]) +
                               " at position " + std::to_string(i));
    total += entries[i];
  }
  if (total == 0) throw EmptySupport("all entries are zero");
  if (total != 1) {
    if (!normalize)
      throw NotNormalized("entries sum to " + to_fraction_string(total) +
                          ", not 1 (pass normalize to rescale)");
    for (auto& e : entries) e /= total;
  }
  return ProbVector{std::move(entries)};
}

ProbVector sort_desc(const ProbVector& x) {
  ProbVector out;
  out.p.reserve(x.p.size());
  for (const auto& e : x.p)
    if (e != 0) out.p.push_back(e);
  std::sort(out.p.begin(), out.p.end(), std::greater<Rational>());
  return out;
}

std::size_t support_size(const ProbVector& x) {
  std::size_t n = 0;
  for (const auto& e : x.p)
    if (e != 0) ++n;
  return n;
}

Rational min_entry(const ProbVector& x) {
  std::optional<Rational> m;
  for (const auto& e : x.p)
    if (e != 0 && (!m || e < *m)) m = e;
  if (!m) throw EmptySupport("min_entry of an all-zero vector");
  return *m;
}

Rational max_entry(const ProbVector& x) {
  std::optional<Rational> m;
  for (const auto& e : x.p)
    if (!m || e > *m) m = e;
  if (!m) throw EmptySupport("max_entry of an empty vector");
  return *m;
}

bool majorizes(const ProbVector& x, const ProbVector& y) {
  const ProbVector xs = sort_desc(x);
  const ProbVector ys = sort_desc(y);
  const std::size_t d = std::max(xs.dim(), ys.dim());
  Rational px = 0, py = 0;
  for (std::size_t k = 0; k < d; ++k) {
    if (k < xs.dim()) px += xs.p[k];
    if (k < ys.dim()) py += ys.p[k];
    if (px > py) return false;
  }
  return true;
}

bool majorizes_alt(const ProbVector& x, const ProbVector& y, int form) {
  if (form != 2 && form != 3) throw Error("majorizes_alt: form must be 2 or 3");
  const std::size_t d = std::max(x.dim(), y.dim());
  std::vector<Rational> kinks;
  kinks.reserve(x.dim() + y.dim() + 1);
  kinks.push_back(Rational(0));  // padded zeros are entries too
  for (const auto& e : x.p) kinks.push_back(e);
  for (const auto& e : y.p) kinks.push_back(e);
  std::sort(kinks.begin(), kinks.end());
  kinks.erase(std::unique(kinks.begin(), kinks.end()), kinks.end());

  const auto side = [&](const ProbVector& v, const Rational& t) {
    Rational s = 0;
    for (const auto& e : v.p) {
      if (form == 2)
        s += abs(e - t);
      else if (e > t)
        s += e - t;
    }
    // implicit zero padding up to the common length
    const Rational zero_term = form == 2 ? abs(t) : (t < 0 ? -t : Rational(0));
    s += Rational(static_cast<unsigned long>(d - v.dim())) * zero_term;
    return s;
  };

  for (const auto& t : kinks)
    if (side(x, t) > side(y, t)) return false;
  return true;
}

ProbVector tensor(const ProbVector& x, const ProbVector& y, std::size_t entry_cap) {
  if (x.dim() == 0 || y.dim() == 0) throw EmptySupport("tensor of an empty vector");
  if (x.dim() > entry_cap / y.dim())
    throw SizeLimit("tensor product would have " + std::to_string(x.dim()) + " * " +
                    std::to_string(y.dim()) + " entries, over the cap of " +
                    std::to_string(entry_cap));
  ProbVector out;
  out.p.reserve(x.dim() * y.dim());
  for (const auto& a : x.p)
    for (const auto& b : y.p) out.p.push_back(a * b);
  std::sort(out.p.begin(), out.p.end(), std::greater<Rational>());
  while (!out.p.empty() && out.p.back() == 0) out.p.pop_back();
  if (out.p.empty()) throw EmptySupport("tensor of zero vectors");
  return out;
}

ProbVector tensor_power(const ProbVector& x, int n, std::size_t entry_cap) {
  if (n < 0) throw Error("tensor_power: negative exponent");
  if (n == 0) return ProbVector{{Rational(1)}};
  return expand(multiplicative_power(embed(x), n, entry_cap), entry_cap);
}

ProbVector direct_sum_mix(const std::vector<std::pair<Rational, ProbVector>>& parts) {
  if (parts.empty()) throw BadCoefficients("mix of zero parts");
  std::vector<Rational> coeffs;
  coeffs.reserve(parts.size());
  Rational total = 0;
  for (const auto& [c, v] : parts) {
    coeffs.push_back(c);
    coeffs.back().canonicalize();
    if (coeffs.back() < 0)
      throw BadCoefficients("negative coefficient " + to_fraction_string(coeffs.back()));
    total += coeffs.back();
  }
  if (total != 1)
    throw BadCoefficients("coefficients sum to " + to_fraction_string(total) + ", not 1");
  ProbVector out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Rational& c = coeffs[i];
    if (c == 0) continue;
    for (const auto& e : parts[i].second.p) out.p.push_back(c * e);
  }
  if (out.p.empty()) throw BadCoefficients("all coefficients are zero");
  return out;
}

double n_p(const ProbVector& x, double p) {
  if (p == 0.0) return static_cast<double>(support_size(x));
  if (p == 1.0) return 1.0;
  double s = 0.0;
  for (const auto& e : x.p)
    if (e != 0) s += std::exp(p * log_to_double(e));
  return s;
}

Rational n_p_exact(const ProbVector& x, long p) {
  if (p == 0) return Rational(static_cast<unsigned long>(support_size(x)));
  Rational s = 0;
  for (const auto& e : x.p)
    if (e != 0) s += rational_pow(e, p);
  return s;
}

double log_n_p(const ProbVector& x, double p) {
  if (p == 0.0) return std::log(static_cast<double>(support_size(x)));
  if (p == 1.0) return 0.0;
  double mx = -std::numeric_limits<double>::infinity();
  std::vector<double> terms;
  terms.reserve(x.p.size());
  for (const auto& e : x.p) {
    if (e == 0) continue;
    terms.push_back(p * log_to_double(e));
    mx = std::max(mx, terms.back());
  }
  if (terms.empty()) throw EmptySupport("log_n_p of an all-zero vector");
  double s = 0.0;
  for (double t : terms) s += std::exp(t - mx);
  return mx + std::log(s);
}

double entropy(const ProbVector& x) {
  double h = 0.0;
  for (const auto& e : x.p)
    if (e != 0) h -= to_double(e) * log_to_double(e);
  return h;
}

MultiplicativeMeasure embed(const ProbVector& z) {
  std::map<Rational, mpz_class> mult;
  for (const auto& e : z.p)
    if (e != 0) mult[e] += 1;
  if (mult.empty()) throw EmptySupport("embed of an all-zero vector");
  MultiplicativeMeasure m;
  m.atoms.reserve(mult.size());
  for (const auto& [v, c] : mult) m.atoms.push_back(Atom{v, v * Rational(c)});
  return m;
}

MultiplicativeMeasure multiplicative_convolve(const MultiplicativeMeasure& a,
                                              const MultiplicativeMeasure& b,
                                              std::size_t atom_cap) {
  if (a.atoms.empty() || b.atoms.empty()) throw EmptySupport("convolution of an empty measure");
  if (a.size() > atom_cap || b.size() > atom_cap)
    throw SizeLimit("convolution input exceeds the atom cap of " + std::to_string(atom_cap));
  std::map<Rational, Rational> acc;
  for (const auto& pa : a.atoms) {
    for (const auto& pb : b.atoms) acc[pa.x * pb.x] += pa.w * pb.w;
    if (acc.size() > atom_cap)
      throw SizeLimit("convolution support exceeds the atom cap of " + std::to_string(atom_cap));
  }
  MultiplicativeMeasure out;
  out.atoms.reserve(acc.size());
  for (const auto& [v, w] : acc)
    if (w != 0) out.atoms.push_back(Atom{v, w});
  return out;
}

MultiplicativeMeasure multiplicative_power(const MultiplicativeMeasure& a, int n,
                                           std::size_t atom_cap) {
  if (n < 0) throw Error("multiplicative_power: negative exponent");
  if (n == 0) return MultiplicativeMeasure{{Atom{Rational(1), Rational(1)}}};
  std::optional<MultiplicativeMeasure> acc;
  MultiplicativeMeasure base = a;
  for (int e = n; e > 0; e >>= 1) {
    if (e & 1) acc = acc ? multiplicative_convolve(*acc, base, atom_cap) : base;
    if (e > 1) base = multiplicative_convolve(base, base, atom_cap);
  }
  return *acc;
}

ProbVector expand(const MultiplicativeMeasure& m, std::size_t entry_cap) {
  const auto blocks = descending_blocks(m);
  mpz_class total = 0;
  for (const auto& b : blocks) total += b.count;
  if (total > entry_cap)
    throw SizeLimit("expansion would have " + total.get_str() + " entries, over the cap of " +
                    std::to_string(entry_cap));
  ProbVector out;
  out.p.reserve(total.get_ui());
  for (const auto& b : blocks)
    for (unsigned long i = 0, c = b.count.get_ui(); i < c; ++i) out.p.push_back(b.value);
  return out;
}

bool majorizes_merged(const MultiplicativeMeasure& mx, const MultiplicativeMeasure& my) {
  // Both prefix-sum functions are concave piecewise linear in the count k,
  // with kinks only at their own cumulative multiplicities, so x <= y
  // everywhere iff it holds at the union of those integer breakpoints.
  const auto bx = descending_blocks(mx);
  const auto by = descending_blocks(my);
  std::size_t ix = 0, iy = 0;
  mpz_class cx = 0, cy = 0;  // counts consumed
  Rational wx = 0, wy = 0;   // weight consumed
  while (ix < bx.size() || iy < by.size()) {
    std::optional<mpz_class> next;
    if (ix < bx.size()) next = cx + bx[ix].count;
    if (iy < by.size()) {
      mpz_class ey = cy + by[iy].count;
      if (!next || ey < *next) next = ey;
    }
    const Rational k(*next);
    const Rational px = ix < bx.size() ? wx + bx[ix].value * (k - Rational(cx)) : wx;
    const Rational py = iy < by.size() ? wy + by[iy].value * (k - Rational(cy)) : wy;
    if (px > py) return false;
    if (ix < bx.size() && cx + bx[ix].count == *next) {
      wx += bx[ix].weight;
      cx += bx[ix].count;
      ++ix;
    }
    if (iy < by.size() && cy + by[iy].count == *next) {
      wy += by[iy].weight;
      cy += by[iy].count;
      ++iy;
    }
  }
  return wx <= wy;
}

namespace {

std::optional<VectorDominanceWitness> merged_dominance_witness(const MultiplicativeMeasure& mx,
                                                               const MultiplicativeMeasure& my) {
  // Walk thresholds downward through the union of values; ta / tb track the
  // mass at values >= the current threshold. The first (largest) threshold
  // where x-mass exceeds y-mass is returned.
  auto ia = mx.atoms.rbegin();
  auto ib = my.atoms.rbegin();
  Rational ta = 0, tb = 0;
  while (ia != mx.atoms.rend() || ib != my.atoms.rend()) {
    Rational u;
    if (ia != mx.atoms.rend() && (ib == my.atoms.rend() || ia->x >= ib->x))
      u = ia->x;
    else
      u = ib->x;
    while (ia != mx.atoms.rend() && ia->x >= u) ta += (ia++)->w;
    while (ib != my.atoms.rend() && ib->x >= u) tb += (ib++)->w;
    if (ta > tb) return VectorDominanceWitness{u, ta, tb};
  }
  return std::nullopt;
}

}  // namespace

bool dominates_merged(const MultiplicativeMeasure& mx, const MultiplicativeMeasure& my) {
  return !merged_dominance_witness(mx, my).has_value();
}

bool vector_dominates(const ProbVector& x, const ProbVector& y) {
  return dominates_merged(embed(x), embed(y));
}

std::optional<VectorDominanceWitness> vector_dominance_witness(const ProbVector& x,
                                                               const ProbVector& y) {
  return merged_dominance_witness(embed(x), embed(y));
}

AtomicMeasure log_embedding(const ProbVector& z) {
  const MultiplicativeMeasure m = embed(z);
  std::map<Rational, Rational> acc;
  for (const auto& a : m.atoms) acc[rational_from_double(log_to_double(a.x))] += a.w;
  std::vector<Atom> atoms;
  atoms.reserve(acc.size());
  for (const auto& [x, w] : acc) atoms.push_back(Atom{x, w});
  return make_measure(std::move(atoms));
}

}  // namespace catkit
