#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "catkit/catalysis.hpp"

using namespace catkit;

namespace {

AtomicMeasure example_mu() {
  return make_measure({{Rational(0), Rational(2, 5)}, {Rational(2), Rational(3, 5)}});
}

AtomicMeasure example_nu() {
  return make_measure({{Rational(1), Rational(4, 5)}, {Rational(3), Rational(1, 5)}});
}

ProbVector coin() { return make_vector({Rational(1, 2), Rational(1, 2)}); }

// Not majorized at one or two copies, majorized from three copies on.
ProbVector stepping_x() {
  return make_vector({Rational(2, 5), Rational(2, 5), Rational(1, 10), Rational(1, 10)});
}
ProbVector stepping_y() {
  return make_vector({Rational(1, 2), Rational(1, 4), Rational(1, 4)});
}

// Majorized at exactly two copies within a window of three.
ProbVector gap_x() {
  std::vector<Rational> e(6, Rational(1, 10));
  e.insert(e.end(), 16, Rational(1, 40));
  return make_vector(std::move(e));
}
ProbVector gap_y() {
  std::vector<Rational> e{Rational(1, 5)};
  e.insert(e.end(), 16, Rational(1, 20));
  return make_vector(std::move(e));
}

}  // namespace

TEST_SUITE_BEGIN("catalysis");

TEST_CASE("sufficient conditions for eventual majorization") {
  SUBCASE("pass outright under exact dominance") {
    const ProbVector x = make_vector({Rational(9, 20), Rational(9, 20), Rational(1, 10)});
    const LemmaMainReport r = lemma_main_conditions(x, coin());
    CHECK(r.all());
    CHECK(r.min_lt.pass);
    CHECK(r.min_lt.exact);
    CHECK(r.max_lt.pass);
    CHECK(r.entropy_gt.pass);
    CHECK_FALSE(r.entropy_gt.exact);
    CHECK(r.np_above.pass);
    CHECK(r.np_above.exact);
    CHECK(r.np_below.pass);
    CHECK(r.np_below.exact);
    CHECK(r.quality == DecisionQuality::GridCertified);  // entropy is floating point
  }
  SUBCASE("equal vectors fail every strict condition") {
    const LemmaMainReport r = lemma_main_conditions(coin(), coin());
    CHECK_FALSE(r.all());
    CHECK_FALSE(r.min_lt.pass);
    CHECK_FALSE(r.max_lt.pass);
    CHECK_FALSE(r.entropy_gt.pass);
    CHECK(r.entropy_gt.exact);
    CHECK_FALSE(r.np_above.pass);
    CHECK_FALSE(r.np_below.pass);
    CHECK(r.quality == DecisionQuality::Exact);
  }
  SUBCASE("equal support counts break the below-one family at p = 0") {
    const ProbVector x = coin();
    const ProbVector y = make_vector({Rational(3, 4), Rational(1, 4)});
    const LemmaMainReport r = lemma_main_conditions(x, y);
    CHECK_FALSE(r.min_lt.pass);
    CHECK_FALSE(r.np_below.pass);
    CHECK(r.np_below.exact);
    REQUIRE(r.np_below.witness_point.has_value());
    CHECK(*r.np_below.witness_point == 0.0);
    CHECK_FALSE(r.all());
  }
  SUBCASE("ordering of extremes is checked exactly") {
    // min(x) = min(y) fails the strict min condition even with dominance.
    const ProbVector x = make_vector({Rational(1, 2), Rational(1, 4), Rational(1, 4)});
    const ProbVector y = make_vector({Rational(3, 4), Rational(1, 4)});
    const LemmaMainReport r = lemma_main_conditions(x, y);
    CHECK_FALSE(r.min_lt.pass);
    CHECK(r.max_lt.pass);
  }
}

TEST_CASE("multicopy scans") {
  SUBCASE("majorization can first appear at three copies") {
    const DominanceScan s = scan_multicopy(stepping_x(), stepping_y(), 6);
    REQUIRE(s.dominated.size() == 6);
    CHECK_FALSE(s.dominated[0]);
    CHECK_FALSE(s.dominated[1]);
    for (int n = 3; n <= 6; ++n) CHECK(s.dominated[n - 1]);
    CHECK(*s.first_true == 3);
    CHECK(*s.eventual_from == 3);
    CHECK(find_multicopy_witness(stepping_x(), stepping_y(), 6) == 3);
    CHECK_FALSE(find_multicopy_witness(stepping_x(), stepping_y(), 2).has_value());
  }
  SUBCASE("the true set can have gaps") {
    const DominanceScan s = scan_multicopy(gap_x(), gap_y(), 3);
    REQUIRE(s.dominated.size() == 3);
    CHECK_FALSE(s.dominated[0]);
    CHECK(s.dominated[1]);
    CHECK_FALSE(s.dominated[2]);
    CHECK(*s.first_true == 2);
    CHECK_FALSE(s.eventual_from.has_value());
    CHECK(find_multicopy_witness(gap_x(), gap_y(), 3) == 2);
  }
  SUBCASE("a uniform left side is majorized at every power") {
    const DominanceScan s = scan_multicopy(
        make_vector(std::vector<Rational>(3, Rational(1, 3))), stepping_y(), 4);
    for (bool b : s.dominated) CHECK(b);
    CHECK(*s.first_true == 1);
  }
  SUBCASE("embedded dominance makes every power true") {
    const ProbVector y =
        make_vector({Rational(4, 5), Rational(1, 10), Rational(1, 10)});
    REQUIRE(vector_dominates(stepping_x(), y));
    const DominanceScan s = scan_multicopy(stepping_x(), y, 5);
    for (bool b : s.dominated) CHECK(b);
  }
  SUBCASE("window must be positive") {
    CHECK_THROWS_AS(scan_multicopy(coin(), coin(), 0), PreconditionFailed);
  }
}

TEST_CASE("measure catalyst construction") {
  const AtomicMeasure mu = example_mu();
  const AtomicMeasure nu = example_nu();

  SUBCASE("the averaged catalyst works at the first dominated power") {
    const CatalystCertificate cert = build_catalyst(mu, nu, 2);
    CHECK(cert.kind == CertificateKind::MeasureCatalyst);
    CHECK(cert.verified);
    CHECK(cert.n == 2);
    REQUIRE(cert.pi.has_value());
    const AtomicMeasure expected_pi =
        mix({{Rational(1, 2), mu}, {Rational(1, 2), nu}});
    CHECK(*cert.pi == expected_pi);
    CHECK(dominates(convolve(mu, *cert.pi), convolve(nu, *cert.pi)));
    CHECK_FALSE(dominates(mu, nu));  // the catalyst is doing real work
    CHECK(reverify(cert));
    CHECK(!cert.statement.empty());
  }
  SUBCASE("powers outside the dominated set are rejected") {
    CHECK_THROWS_AS(build_catalyst(mu, nu, 1), PreconditionFailed);
    CHECK_THROWS_AS(build_catalyst(mu, nu, 3), PreconditionFailed);
    CHECK_THROWS_AS(build_catalyst(mu, nu, 0), PreconditionFailed);
  }
  SUBCASE("any dominated power yields a working catalyst") {
    const CatalystCertificate cert = build_catalyst(mu, nu, 4);
    CHECK(cert.verified);
    CHECK(reverify(cert));
    REQUIRE(cert.pi.has_value());
    CHECK(cert.pi->size() > 0);
  }
  SUBCASE("tampered certificates fail reverification") {
    CatalystCertificate cert = build_catalyst(mu, nu, 2);
    std::swap(cert.mu, cert.nu);
    CHECK_FALSE(reverify(cert));
    cert.mu.reset();
    CHECK_THROWS_AS(reverify(cert), PreconditionFailed);
  }
}

TEST_CASE("vector catalyst construction") {
  SUBCASE("embedded dominance at two copies produces a catalyst") {
    const ProbVector x = gap_x();
    const ProbVector y = gap_y();
    REQUIRE(dominates_merged(multiplicative_power(embed(x), 2),
                             multiplicative_power(embed(y), 2)));
    const CatalystCertificate cert = build_vector_catalyst(x, y, 2);
    CHECK(cert.kind == CertificateKind::VectorCatalyst);
    CHECK(cert.verified);
    REQUIRE(cert.z.has_value());
    CHECK(cert.z->dim() == 39);  // dim y + dim x: one block per mixture summand
    CHECK(reverify(cert));
    // The certified relation really is a majorization of the products.
    CHECK(majorizes(tensor(x, *cert.z), tensor(y, *cert.z)));
    CHECK_FALSE(majorizes(x, y));

    CatalystCertificate bad = cert;
    bad.z = make_vector({Rational(1)});
    CHECK_FALSE(reverify(bad));
  }
  SUBCASE("bare multicopy majorization is not enough") {
    // Majorized at three copies, but the embedded measures stay
    // incomparable, so the mixture argument does not transport.
    REQUIRE(majorizes(tensor_power(stepping_x(), 3), tensor_power(stepping_y(), 3)));
    CHECK_THROWS_AS(build_vector_catalyst(stepping_x(), stepping_y(), 3),
                    PreconditionFailed);
  }
  SUBCASE("majorization without dominance is rejected at one copy") {
    const ProbVector x = coin();
    const ProbVector y = make_vector({Rational(9, 10), Rational(1, 10)});
    REQUIRE(majorizes(x, y));
    CHECK_THROWS_AS(build_vector_catalyst(x, y, 1), PreconditionFailed);
  }
}

TEST_CASE("flat-split approximation pipeline") {
  SUBCASE("identical coins, the pinned walkthrough") {
    const Th1Result r = approx_th1(coin(), coin(), Rational(1, 10));
    REQUIRE(r.x_eps.dim() == 3);
    CHECK(r.x_eps.p[0] == Rational(9, 20));
    CHECK(r.x_eps.p[1] == Rational(9, 20));
    CHECK(r.x_eps.p[2] == Rational(1, 10));
    CHECK(r.p_eps == std::ldexp(1.0, -20));
    CHECK(r.k == 4);
    REQUIRE(r.x_eps_k.dim() == 6);
    CHECK(r.x_eps_k.p[0] == Rational(9, 20));
    for (int i = 2; i < 6; ++i) CHECK(r.x_eps_k.p[i] == Rational(1, 40));
    CHECK(r.l1_distance == Rational(1, 5));
    CHECK(r.conditions.all());
    CHECK(r.certificate.kind == CertificateKind::MulticopyWitness);
    CHECK(r.certificate.n == 1);
    CHECK(reverify(r.certificate));

    // The perturbations are strictly more mixed than the input.
    CHECK(majorizes(r.x_eps, coin()));
    CHECK(majorizes(r.x_eps_k, r.x_eps));
    CHECK_FALSE(majorizes(coin(), r.x_eps));
  }
  SUBCASE("the l1 budget is exactly 2 eps for any valid input") {
    const Th1Result r = approx_th1(stepping_x(), stepping_y(), Rational(1, 100));
    CHECK(r.l1_distance == Rational(1, 50));
    CHECK(r.conditions.all());
    CHECK(reverify(r.certificate));
    REQUIRE(r.certificate.n.has_value());
    CHECK(*r.certificate.n > 1);  // not majorized in one copy
  }
  SUBCASE("eps outside the admissible interval") {
    CHECK_THROWS_AS(approx_th1(coin(), coin(), Rational(1, 3)), PreconditionFailed);
    CHECK_THROWS_AS(approx_th1(coin(), coin(), Rational(0)), PreconditionFailed);
    CHECK_THROWS_AS(approx_th1(coin(), coin(), Rational(-1, 10)), PreconditionFailed);
  }
  SUBCASE("the moment precondition is enforced") {
    const ProbVector x = make_vector({Rational(3, 4), Rational(1, 4)});
    CHECK_THROWS_AS(approx_th1(x, coin(), Rational(1, 100)), PreconditionFailed);
  }
  SUBCASE("a too-small search window reports honestly") {
    ApproxParams p;
    p.n_max = 1;
    CHECK_THROWS_AS(approx_th1(stepping_x(), stepping_y(), Rational(1, 100), p),
                    WitnessNotFound);
  }
}

TEST_CASE("single-coordinate approximation pipeline") {
  SUBCASE("identical coins, the pinned walkthrough") {
    const Th2Result r = approx_th2(coin(), coin(), Rational(1, 20));
    REQUIRE(r.x_eps.dim() == 3);
    CHECK(r.x_eps.p[0] == Rational(19, 40));
    CHECK(r.x_eps.p[1] == Rational(19, 40));
    CHECK(r.x_eps.p[2] == Rational(1, 20));
    CHECK(r.p_0 == -0.5);
    CHECK(r.l1_distance == Rational(1, 10));
    CHECK(r.conditions.all());
    CHECK(r.certificate.n == 1);
    CHECK(reverify(r.certificate));
  }
  SUBCASE("result dimension is always d + 1") {
    // here the certified band only reaches p_0 = -1/8, so the eps bound
    // 4^{-8} min y = 1/327680 is far tighter than the generic 4/25
    const ProbVector x = make_vector(
        {Rational(3, 10), Rational(3, 10), Rational(1, 5), Rational(1, 5)});
    CHECK_THROWS_AS(approx_th2(x, x, Rational(1, 50)), PreconditionFailed);
    const Th2Result r = approx_th2(x, x, Rational(1, 400000));
    CHECK(r.p_0 == -0.125);
    CHECK(r.x_eps.dim() == 5);
    CHECK(r.certificate.n == 1);
    CHECK(reverify(r.certificate));
  }
  SUBCASE("the eps bound from p_0 is the binding one") {
    // For the coin pair the p_0 = -1/2 band forces eps < 1/8 even though
    // the generic bound would allow up to 1/3.
    CHECK_THROWS_AS(approx_th2(coin(), coin(), Rational(13, 100)), PreconditionFailed);
    CHECK_NOTHROW(approx_th2(coin(), coin(), Rational(12, 100)));
  }
  SUBCASE("support sizes must match") {
    CHECK_THROWS_AS(approx_th2(coin(), stepping_y(), Rational(1, 100)),
                    PreconditionFailed);
  }
  SUBCASE("the below-one moment family is required") {
    // N_p(x) dips under N_p(y) near p = 0 (x has a much smaller entry
    // product), while the p >= 1 family still holds.
    const ProbVector x = make_vector({Rational(37, 100), Rational(33, 100),
                                      Rational(2999, 10000), Rational(1, 10000)});
    const ProbVector y = make_vector(
        {Rational(3, 5), Rational(1, 5), Rational(1, 10), Rational(1, 10)});
    CHECK_THROWS_AS(approx_th2(x, y, Rational(1, 100000)), PreconditionFailed);
  }
}

TEST_CASE("geometric tail models") {
  SUBCASE("validation") {
    // 1/2 + 1/4 + 1/8 + ... with head (1/2, 1/4) and tail from 1/8.
    const TailModelVector v =
        make_tail_model({Rational(1, 2), Rational(1, 4)}, Rational(1, 8), Rational(1, 2));
    CHECK(v.head.size() == 2);
    CHECK(tail_mass_after(v, 2) == Rational(1, 4));
    CHECK(tail_mass_after(v, 3) == Rational(1, 8));
    CHECK(tail_mass_after(v, 1) == Rational(1, 2));

    CHECK_THROWS_AS(
        make_tail_model({Rational(1, 2)}, Rational(1, 8), Rational(1, 2)),
        NotNormalized);
    CHECK_THROWS_AS(
        make_tail_model({Rational(1, 4), Rational(1, 2)}, Rational(1, 4), Rational(1, 2)),
        Error);
    CHECK_THROWS_AS(
        make_tail_model({Rational(1, 2), Rational(1, 4)}, Rational(1, 8), Rational(3, 2)),
        Error);
  }
  SUBCASE("finite vectors encode with an empty tail") {
    const TailModelVector v =
        make_tail_model({Rational(1, 2), Rational(1, 2)}, Rational(0), Rational(0));
    CHECK(tail_mass_after(v, 2) == Rational(0));
    CHECK(tail_mass_after(v, 5) == Rational(0));
  }
}

TEST_CASE("split-count functional for geometric tails") {
  SUBCASE("closed form against partial sums") {
    // phi(p) = [S^p / sum_i x_i^p]^{1/(p-1)} over the tail x_i = r^i; 300
    // terms of both series is far past double precision for r = 1/2.
    const Rational r(1, 2);
    for (double p : {1.01, 2.0, 10.0}) {
      double mass = 0.0;
      double mass_p = 0.0;
      for (int i = 0; i < 300; ++i) {
        mass += std::pow(0.5, i);
        mass_p += std::pow(0.5, p * i);
      }
      const double direct = std::pow(std::pow(mass, p) / mass_p, 1.0 / (p - 1.0));
      CHECK(phi_geometric(r, p) == doctest::Approx(direct).epsilon(1e-9));
    }
  }
  SUBCASE("limits") {
    const Rational r(1, 2);
    // p -> 1+ limit: exp(-r log r / (1-r) - log(1-r)).
    const double lim1 = std::exp(-0.5 * std::log(0.5) / 0.5 - std::log(0.5));
    CHECK(phi_geometric_limit_at_one(r) == doctest::Approx(lim1).epsilon(1e-12));
    CHECK(phi_geometric(r, 1.0 + 1e-9) == doctest::Approx(lim1).epsilon(1e-6));
    // p -> inf limit: 1 / (1 - r).
    CHECK(phi_geometric(r, 1e9) == doctest::Approx(2.0).epsilon(1e-6));
    // For r = 1/2 the supremum is the p -> 1+ end: 4.
    CHECK(lim1 == doctest::Approx(4.0).epsilon(1e-12));
  }
}

TEST_CASE("truncation of geometric-tail vectors") {
  SUBCASE("the pinned geometric walkthrough") {
    // x purely geometric with ratio 1/2; y the two-point coin.
    const TailModelVector x = make_tail_model({}, Rational(1, 2), Rational(1, 2));
    const TailModelVector y =
        make_tail_model({Rational(1, 2), Rational(1, 2)}, Rational(0), Rational(0));
    const TruncationResult t = truncate_infinite(x, y, Rational(1, 100));
    CHECK(t.kept_x == 7);
    CHECK(t.tail_mass_x == Rational(1, 128));
    CHECK(t.k == 4);
    CHECK(t.sup_phi == doctest::Approx(4.0).epsilon(1e-12));
    REQUIRE(t.x_eps.dim() == 11);
    CHECK(t.x_eps.p[0] == Rational(1, 2));
    CHECK(t.x_eps.p[6] == Rational(1, 128));
    for (int i = 7; i < 11; ++i) CHECK(t.x_eps.p[i] == Rational(1, 512));
    CHECK(t.l1_x == Rational(5, 1024));
    CHECK(t.l1_x <= 2 * Rational(1, 100));
    // y is already finite: untouched.
    CHECK(t.remainder_y == Rational(0));
    CHECK(t.l1_y == Rational(0));
    CHECK(t.y_eps.dim() == 2);
    // The truncated pair satisfies the p >= 1 family exactly at p = 2.
    CHECK(n_p_exact(t.x_eps, 2) <= n_p_exact(t.y_eps, 2));
  }
  SUBCASE("an infinite right side gains its remainder on top") {
    const TailModelVector x = make_tail_model({}, Rational(1, 2), Rational(1, 2));
    const TailModelVector y = make_tail_model({}, Rational(2, 3), Rational(1, 3));
    const TruncationResult t = truncate_infinite(x, y, Rational(1, 100));
    CHECK(t.remainder_y > 0);
    CHECK(t.remainder_y <= Rational(1, 100));
    CHECK(t.y_eps.p[0] == Rational(2, 3) + t.remainder_y);
    CHECK(t.l1_y == 2 * t.remainder_y);
    CHECK(n_p_exact(t.x_eps, 2) <= n_p_exact(t.y_eps, 2));
  }
  SUBCASE("finite inputs pass through") {
    const TailModelVector x =
        make_tail_model(std::vector<Rational>(4, Rational(1, 4)), Rational(0), Rational(0));
    const TailModelVector y = make_tail_model({}, Rational(1, 2), Rational(1, 2));
    const TruncationResult t = truncate_infinite(x, y, Rational(1, 100));
    CHECK(t.k == 1);
    CHECK(t.tail_mass_x == Rational(0));
    CHECK(t.l1_x == Rational(0));
    CHECK(t.x_eps.dim() == 4);
  }
  SUBCASE("the moment postcondition is never forced") {
    // (1/2, 1/2) against the geometric: N_2 = 1/2 > 1/3, so the truncated
    // pair cannot satisfy the p >= 1 family and the call must refuse.
    const TailModelVector x =
        make_tail_model({Rational(1, 2), Rational(1, 2)}, Rational(0), Rational(0));
    const TailModelVector y = make_tail_model({}, Rational(1, 2), Rational(1, 2));
    CHECK_THROWS_AS(truncate_infinite(x, y, Rational(1, 100)), PreconditionFailed);
  }
}

TEST_SUITE_END();
