#include "doctest.h"
#include "gmmn/hanan.hpp"
#include "gmmn/io.hpp"
#include "gmmn/rsa.hpp"
#include "gmmn/verifier.hpp"
#include "support.hpp"

using namespace gmmn;
using namespace gmmn::testing;

namespace {

Instance pairs_2d(std::vector<TerminalPair> pairs) {
  Instance inst;
  inst.pairs = std::move(pairs);
  return inst;
}

}  // namespace

TEST_CASE("exact_gmmn examples") {
  const Instance one = pairs_2d({{P(0, 0), P(3, 2)}});
  CHECK(exact_gmmn(one).cost == Rational(5));

  const Instance crossing = pairs_2d({{P(0, 0), P(2, 2)}, {P(0, 2), P(2, 0)}});
  const GmmnOptimum opt = exact_gmmn(crossing);
  CHECK(opt.cost == Rational(6));
  CHECK(opt.horizontal + opt.vertical == opt.cost);
  CHECK(verify_instance(opt.network, crossing).feasible());
  CHECK(opt.network.length() == opt.cost);

  const Instance dup = pairs_2d({{P(0, 0), P(3, 2)}, {P(3, 2), P(0, 0)}});
  CHECK(exact_gmmn(dup).cost == Rational(5));

  CHECK(exact_gmmn(Instance{}).cost == Rational(0));
  const Instance four = pairs_2d({{P(0, 0), P(1, 1)}, {P(0, 1), P(1, 2)}, {P(2, 0), P(3, 1)}, {P(0, 3), P(1, 4)}});
  CHECK_THROWS_AS(exact_gmmn(four), std::length_error);
  Instance three_d;
  three_d.dim = 3;
  CHECK_THROWS_AS(exact_gmmn(three_d), std::invalid_argument);
}

TEST_CASE("exact_gmmn with rational coordinates") {
  const Instance inst = pairs_2d({{Point{Q(0), Q(0)}, Point{Q(1, 3), Q(1, 2)}}, {Point{Q(1, 3), Q(0)}, Point{Q(0), Q(1, 2)}}});
  const GmmnOptimum opt = exact_gmmn(inst);
  CHECK(opt.cost == Rational(1, 3) + Rational(1, 3) + Rational(1, 2));
  CHECK(verify_instance(opt.network, inst).feasible());
}

TEST_CASE("exact_gmmn agrees with the path-union oracle and exact_rsa") {
  PortableRng rng(41);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform(0, 2));
    Instance inst = small_random_instance(rng, 2, n, -3, 3);
    inst.normalize();
    const GmmnOptimum opt = exact_gmmn(inst);
    CHECK(opt.cost == brute_min_union(inst.pairs));
    CHECK(verify_instance(opt.network, inst).feasible());
    CHECK(opt.cost >= max_pair_distance(inst));
  }
  // Pairs sharing one endpoint form an arborescence problem.
  for (int trial = 0; trial < 40; ++trial) {
    const auto pts = random_points(rng, 2, 4, -3, 3);
    Instance star;
    for (std::size_t k = 1; k < pts.size(); ++k) {
      if (pts[k] != pts[0]) star.pairs.push_back({pts[0], pts[k]});
    }
    star.normalize();
    std::vector<Point> terms;
    for (const auto& p : star.pairs) terms.push_back(p.second);
    CHECK(exact_gmmn(star).cost == exact_rsa({terms, pts[0]}).length());
  }
}

TEST_CASE("exact_gmmn lower-bounds the algorithms") {
  PortableRng rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    Instance inst = small_random_instance(rng, 2, 3, -2, 3);
    inst.normalize();
    if (HananGrid::of(inst.terminals()).max_axis_size() > kExactGmmnMaxGridPerAxis) continue;
    const Rational opt = exact_gmmn(inst).cost;
    for (auto algo : {Algorithm::kRecursiveD, Algorithm::kImproved2D}) {
      CHECK(opt <= solve_gmmn(inst, {algo, SteinerBackend::kMstRectilinear, false}).length());
    }
  }
}

TEST_CASE("gen_tight") {
  const TightFamily k0 = gen_tight(0);
  CHECK(k0.instance.empty());
  CHECK(k0.certificate.empty());

  const TightFamily k1 = gen_tight(1);
  REQUIRE(k1.instance.size() == 1);
  CHECK(k1.instance.pairs[0] == TerminalPair{P(-1, -1), P(0, 0)});
  CHECK(k1.certificate.length() == Rational(2));
  CHECK(verify_instance(k1.certificate, k1.instance).feasible());

  const Rational eps(1, 16);
  const TightFamily k3 = gen_tight(3, eps);
  CHECK(k3.instance.size() == 7);
  CHECK(verify_instance(k3.certificate, k3.instance).feasible());
  // An M-path spanning the unit square's diagonal corners already has length 2;
  // the chain spans [-1, 2 eps] on both axes.
  CHECK(k3.certificate.length() == Rational(2) * (Rational(1) + Rational(2) * eps));
  Rational horizontal;
  for (const auto& s : k3.certificate.segments()) {
    if (s.axis == 0) horizontal += s.length();
  }
  CHECK(horizontal == Rational(1) + Rational(2) * eps);

  // Left copy strictly inside the square, right copy at offset eps.
  for (std::size_t i = 1; i < 4; ++i) {
    const Box b = Box::of(k3.instance.pairs[i]);
    CHECK(Rational(-1) < b.lo[0]);
    CHECK(b.hi[1] < Rational(0));
  }
  CHECK(Box::of(k3.instance.pairs[4]).lo == Point{eps, eps});

  CHECK_THROWS_AS(gen_tight(-1), std::invalid_argument);
  CHECK_THROWS_AS(gen_tight(2, Rational(1, 4)), std::invalid_argument);
  CHECK_THROWS_AS(gen_tight(2, Rational(0)), std::invalid_argument);
}

TEST_CASE("gen_tight certificates stay feasible") {
  for (int k = 0; k <= 8; ++k) {
    const TightFamily fam = gen_tight(k, Rational(1, 10));
    CHECK(fam.instance.size() == (std::size_t{1} << k) - 1);
    CHECK(verify_instance(fam.certificate, fam.instance).feasible());
  }
}

TEST_CASE("gen_random") {
  const auto a = gen_random(20, 3, -5, 5, 99);
  const auto b = gen_random(20, 3, -5, 5, 99);
  CHECK(format_instance({a.instance, a.seed, a.provenance, {}}) == format_instance({b.instance, b.seed, b.provenance, {}}));
  CHECK(a.instance.size() == 20);
  CHECK(gen_random(20, 3, -5, 5, 100).instance != a.instance);
  for (const auto& p : a.instance.pairs) {
    CHECK(p.first != p.second);
    for (int i = 0; i < 3; ++i) {
      CHECK(Rational(-5) <= p.first[i]);
      CHECK(p.first[i] <= Rational(5));
    }
  }
  CHECK(gen_random(1, 2, 0, 1, 1).instance.size() == 1);
  CHECK_THROWS_WITH_AS(gen_random(3, 2, 0, 0, 1), doctest::Contains("empty instance"), std::invalid_argument);
  CHECK_THROWS_AS(gen_random(3, 1, 0, 5, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_random(0, 2, 0, 5, 1), std::invalid_argument);
}

TEST_CASE("portable rng is pinned") {
  // std::mt19937_64 output is fixed by the standard; pin the bounded stream too.
  PortableRng rng(42);
  std::vector<std::int64_t> draws;
  for (int i = 0; i < 5; ++i) draws.push_back(rng.uniform(-32, 32));
  std::mt19937_64 ref(42);
  std::vector<std::int64_t> expect;
  for (int i = 0; i < 5; ++i) {
    std::uint64_t x;
    do {
      x = ref();
    } while (x < (0 - std::uint64_t{65}) % 65);
    expect.push_back(-32 + static_cast<std::int64_t>(x % 65));
  }
  CHECK(draws == expect);
  PortableRng full(1);
  CHECK_NOTHROW(full.uniform(std::numeric_limits<std::int64_t>::min(), std::numeric_limits<std::int64_t>::max()));
}

TEST_CASE("mmn_from_points") {
  CHECK(mmn_from_points(std::vector<Point>{P(0, 0), P(1, 2), P(3, 1)}).size() == 3);
  PortableRng rng(5);
  CHECK(mmn_from_points(random_points(rng, 2, 5, 0, 1000)).size() == 10);
  CHECK(mmn_from_points(std::vector<Point>{P(0, 0), P(1, 1), P(0, 0), P(1, 1), P(2, 0)}).size() == 3);
  CHECK_THROWS_AS(mmn_from_points(std::vector<Point>{P(0, 0), P(0, 0)}), std::invalid_argument);
  const auto gen = gen_random_mmn(5, 3, -10, 10, 7);
  CHECK(gen.instance.size() == 10);
}

TEST_CASE("ratio report") {
  const std::vector<SolverConfig> algos{{Algorithm::kRecursiveD, SteinerBackend::kMstRectilinear, false},
                                        {Algorithm::kImproved2D, SteinerBackend::kMstRectilinear, false}};
  const Instance one = pairs_2d({{P(0, 0), P(2, 5)}});
  const RatioReport r1 = ratio_report(one, algos, Reference{ReferenceKind::kLowerBound, std::nullopt});
  REQUIRE(r1.rows.size() == 2);
  CHECK(r1.rows[0].ratio == Rational(1));
  CHECK(r1.rows[1].ratio >= Rational(1));
  CHECK(r1.rows[0].algorithm == "recursive-d/mst");

  const Instance crossing = pairs_2d({{P(0, 0), P(2, 2)}, {P(0, 2), P(2, 0)}});
  const RatioReport r2 = ratio_report(crossing, algos, Reference{ReferenceKind::kOracle, std::nullopt});
  for (const auto& row : r2.rows) {
    CHECK(row.reference == Rational(6));
    CHECK(row.ratio >= Rational(1));
    CHECK_FALSE(row.flagged);
  }

  std::optional<Rational> last;
  for (int k = 2; k <= 6; ++k) {
    const TightFamily fam = gen_tight(k);
    const std::vector<SolverConfig> improved{algos[1]};
    const RatioReport r = ratio_report(fam.instance, improved, Reference{ReferenceKind::kCertificate, fam.certificate});
    if (last) CHECK(*last < r.rows[0].ratio);
    last = r.rows[0].ratio;
  }

  CHECK_THROWS_AS(ratio_report(one, algos, Reference{ReferenceKind::kCertificate, std::nullopt}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ratio_report(one, algos, Reference{ReferenceKind::kCertificate, RectilinearNetwork{}}),
                  std::invalid_argument);
  CHECK(parse_reference("oracle") == ReferenceKind::kOracle);
  CHECK(to_string(ReferenceKind::kLowerBound) == "lower-bound");
}
