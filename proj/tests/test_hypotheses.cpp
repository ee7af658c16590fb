#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "dponline/hypothesis.hpp"
#include "dponline/littlestone.hpp"
#include "dponline/noise.hpp"

using namespace dponline;

TEST_CASE("evaluate dispatches over every variant") {
  const auto p5 = Hypothesis::point(5);
  CHECK(p5(5));
  CHECK_FALSE(p5(7));

  // f_3 over [8]: 0 up to the cut, 1 after.
  const auto t3 = Hypothesis::threshold(3);
  CHECK_FALSE(t3(3));
  CHECK(t3(4));

  CHECK(Hypothesis::complement(Hypothesis::all_zero())(123456));
  CHECK_FALSE(Hypothesis::all_zero()(9));
  CHECK(Hypothesis::all_one()(9));

  const auto tbl = Hypothesis::table({false, true, true});
  CHECK_FALSE(tbl(1));
  CHECK(tbl(2));
  CHECK_THROWS_AS(tbl(4), std::domain_error);

  CHECK_THROWS_AS(p5(0), std::invalid_argument);
}

TEST_CASE("complement is an involution on values") {
  NoiseSource rng(5);
  const Hypothesis hs[] = {Hypothesis::all_zero(), Hypothesis::point(3),
                           Hypothesis::threshold(2), Hypothesis::table({true, false}),
                           sample_point_representation(4, rng)};
  for (const auto& h : hs) {
    const auto c = Hypothesis::complement(h);
    for (DomainPoint x = 1; x <= 2; ++x) CHECK(int(h(x)) + int(c(x)) == 1);
  }
}

TEST_CASE("make_point_class") {
  const auto cls = make_point_class(3);
  REQUIRE(cls.hypotheses.size() == 3);
  REQUIRE(cls.domain.has_value());
  // f_2 = (0, 1, 0)
  CHECK_FALSE(cls.hypotheses[1](1));
  CHECK(cls.hypotheses[1](2));
  CHECK_FALSE(cls.hypotheses[1](3));

  CHECK(make_point_class(1).hypotheses.size() == 1);

  const auto two = make_point_class(2);
  for (DomainPoint x = 1; x <= 2; ++x)
    CHECK(two.hypotheses[0](x) == !two.hypotheses[1](x));  // complementary pair

  CHECK_THROWS_AS(make_point_class(0), std::invalid_argument);
}

TEST_CASE("make_threshold_class") {
  const auto cls = make_threshold_class(3);
  CHECK(cls.hypotheses.size() == 4);  // f_0..f_3
  CHECK(cls.hypotheses[0](1));       // f_0 is all-one on [d]
  for (DomainPoint x = 1; x <= 3; ++x) CHECK_FALSE(cls.hypotheses[3](x));  // f_d all-zero
  CHECK_THROWS_AS(make_threshold_class(0), std::invalid_argument);
}

TEST_CASE("sample_point_representation") {
  NoiseSource rng(11);
  const auto always = sample_point_representation(1, rng);
  for (DomainPoint x : {1ull, 7ull, 100ull}) CHECK(always(x));

  const auto h = sample_point_representation(100, rng);
  const bool bit = h(12345);
  for (int i = 0; i < 5; ++i) CHECK(h(12345) == bit);  // memoized, stable

  CHECK_THROWS_AS(sample_point_representation(0, rng), std::invalid_argument);
}

TEST_CASE("sample_point_representation hits rate 1/T") {
  NoiseSource rng(21);
  const int samples = 10000;
  int ones = 0;
  for (int i = 0; i < samples; ++i) {
    if (sample_point_representation(100, rng)(1)) ++ones;
  }
  const double fraction = double(ones) / samples;
  CHECK(fraction > 0.01 - 0.0035);
  CHECK(fraction < 0.01 + 0.0035);
}

TEST_CASE("class validation") {
  CHECK_THROWS_AS(make_class({}, std::nullopt), std::invalid_argument);
  CHECK_THROWS_AS(make_class({Hypothesis::all_zero()}, std::vector<DomainPoint>{}),
                  std::invalid_argument);
  // Extensional duplicates on the domain are rejected even across variants.
  CHECK_THROWS_AS(make_class({Hypothesis::all_zero(), Hypothesis::table({false, false})},
                             std::vector<DomainPoint>{1, 2}),
                  std::invalid_argument);
}

TEST_CASE("littlestone dimension of the named classes") {
  const auto singleton = make_class({Hypothesis::point(1)}, std::vector<DomainPoint>{1, 2});
  CHECK(littlestone_dimension(singleton) == 0);
  CHECK(littlestone_dimension_exhaustive(singleton) == 0);

  CHECK(littlestone_dimension(make_point_class(3)) == 1);
  CHECK(littlestone_dimension_exhaustive(make_point_class(3)) == 1);

  CHECK(littlestone_dimension(make_threshold_class(3)) == 2);
  CHECK(littlestone_dimension_exhaustive(make_threshold_class(3)) == 2);

  FiniteClass no_domain{{Hypothesis::all_zero(), Hypothesis::all_one()}, std::nullopt};
  CHECK_THROWS_AS(littlestone_dimension(no_domain), std::invalid_argument);
}

TEST_CASE("recursive LD agrees with the exhaustive oracle on random 4-point classes") {
  NoiseSource rng(303);
  for (int trial = 0; trial < 12; ++trial) {
    // A random non-empty subset of the 16 functions over {1,2,3,4}.
    std::vector<Hypothesis> hs;
    for (int mask = 0; mask < 16; ++mask) {
      if (rng.bernoulli(0.4)) {
        hs.push_back(Hypothesis::table({(mask & 1) != 0, (mask & 2) != 0, (mask & 4) != 0,
                                        (mask & 8) != 0}));
      }
    }
    if (hs.empty()) hs.push_back(Hypothesis::table({false, false, false, false}));
    const auto cls = make_class(std::move(hs), std::vector<DomainPoint>{1, 2, 3, 4});
    CHECK(littlestone_dimension(cls) == littlestone_dimension_exhaustive(cls));
  }
}

TEST_CASE("find_non_complementary_pair on the spec classes") {
  const auto three = find_non_complementary_pair(make_point_class(3));
  REQUIRE(three.has_value());
  CHECK(three->f1_index == 0);
  CHECK(three->f2_index == 1);
  CHECK(three->u0 == 3);  // f_1(3) = f_2(3) = 0
  CHECK(three->u1 == 1);  // f_1(1) != f_2(1)

  CHECK_FALSE(find_non_complementary_pair(make_point_class(2)).has_value());
  const auto singleton = make_class({Hypothesis::point(1)}, std::vector<DomainPoint>{1});
  CHECK_FALSE(find_non_complementary_pair(singleton).has_value());
}

TEST_CASE("find_non_complementary_pair satisfies both clauses whenever found") {
  // Exhaustive over all classes of size <= 2 drawn from the 8 functions on [3].
  std::vector<Hypothesis> all;
  for (int mask = 0; mask < 8; ++mask) {
    all.push_back(
        Hypothesis::table({(mask & 1) != 0, (mask & 2) != 0, (mask & 4) != 0}));
  }
  const std::vector<DomainPoint> dom{1, 2, 3};
  for (int a = 0; a < 8; ++a) {
    for (int b = a; b < 8; ++b) {
      std::vector<Hypothesis> hs{all[a]};
      if (b != a) hs.push_back(all[b]);
      const FiniteClass cls{hs, dom};
      const auto found = find_non_complementary_pair(cls);
      if (found) {
        const auto& f1 = cls.hypotheses[found->f1_index];
        const auto& f2 = cls.hypotheses[found->f2_index];
        CHECK(found->f1_index != found->f2_index);
        CHECK(f1(found->u0) == f2(found->u0));
        CHECK(f1(found->u1) != f2(found->u1));
      } else {
        // Not-found must mean: singleton, or an exactly complementary pair.
        if (hs.size() == 2) {
          for (DomainPoint x : dom) CHECK(hs[0](x) != hs[1](x));
        } else {
          CHECK(hs.size() == 1);
        }
      }
    }
  }

  // Point classes: d >= 3 always yields a pair, d = 2 never.
  for (std::uint64_t d = 3; d <= 6; ++d)
    CHECK(find_non_complementary_pair(make_point_class(d)).has_value());
}

TEST_CASE("is_realizable for finite classes") {
  const auto cls = make_point_class(3);
  const std::vector<LabeledExample> ok{{2, true}, {3, false}};
  const auto witness = is_realizable(ok, cls);
  REQUIRE(witness.has_value());
  CHECK(*witness == 1);  // f_2

  const std::vector<LabeledExample> contradictory{{2, true}, {2, false}};
  CHECK_FALSE(is_realizable(contradictory, cls).has_value());
}

TEST_CASE("is_realizable_point_over_n") {
  const std::vector<LabeledExample> two_ones{{1, true}, {2, true}};
  CHECK_FALSE(is_realizable_point_over_n(two_ones).realizable);

  const std::vector<LabeledExample> ok{{5, true}, {3, false}, {5, true}};
  const auto r = is_realizable_point_over_n(ok);
  CHECK(r.realizable);
  CHECK(r.witness_target == 5);

  const std::vector<LabeledExample> conflict{{5, true}, {5, false}};
  CHECK_FALSE(is_realizable_point_over_n(conflict).realizable);

  const std::vector<LabeledExample> zeros{{1, false}, {2, false}};
  const auto z = is_realizable_point_over_n(zeros);
  CHECK(z.realizable);
  CHECK(*z.witness_target > 2);  // any unseen point
}

TEST_CASE("class descriptors parse") {
  CHECK(parse_class("point:d=8").hypotheses.size() == 8);
  CHECK(parse_class("threshold:d=1024").hypotheses.size() == 1025);

  const auto pair = parse_class("pair:complementary");
  CHECK(pair.hypotheses.size() == 2);
  CHECK(pair.hypotheses[0](7));
  CHECK_FALSE(pair.hypotheses[1](7));

  const auto tbl = parse_class("table:011,101");
  REQUIRE(tbl.hypotheses.size() == 2);
  CHECK_FALSE(tbl.hypotheses[0](1));
  CHECK(tbl.hypotheses[0](2));
  CHECK(tbl.hypotheses[1](1));

  CHECK_THROWS_AS(parse_class("table:011,011"), std::invalid_argument);  // duplicate
  CHECK_THROWS_AS(parse_class("table:01,011"), std::invalid_argument);   // ragged
  CHECK_THROWS_AS(parse_class("nope:d=3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_class("point:d=0"), std::invalid_argument);
}

TEST_CASE("describe round-trips the shape of a hypothesis") {
  CHECK(Hypothesis::point(5).describe() == "point:5");
  CHECK(Hypothesis::threshold(3).describe() == "threshold:3");
  CHECK(Hypothesis::all_zero().describe() == "all-zero");
  CHECK(Hypothesis::complement(Hypothesis::point(2)).describe() ==
        "complement(point:2)");
  CHECK(Hypothesis::table({true, false}).describe() == "table:10");
}

TEST_CASE("threshold shattered trees verify against the definition") {
  for (std::uint64_t d : {3ull, 7ull, 8ull, 15ull}) {
    const auto tree = threshold_shattered_tree(d);
    std::uint32_t expected_depth = 0;
    while ((1ull << (expected_depth + 1)) <= d + 1) ++expected_depth;
    CHECK(tree.depth == expected_depth);
    CHECK(is_shattered(tree, make_threshold_class(d)));
  }

  // A depth-2 tree is not shattered by the point class over [3].
  const auto tree = threshold_shattered_tree(3);
  CHECK_FALSE(is_shattered(tree, make_point_class(3)));
}
