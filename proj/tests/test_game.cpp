#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dponline/adversaries.hpp"
#include "dponline/game.hpp"
#include "dponline/learners.hpp"

using namespace dponline;

namespace {

// Adaptive test adversary: x depends only on the hypotheses revealed in
// earlier rounds, never on the current one.
class HistoryCountingAdversary : public ExampleAdversary {
 public:
  AdversaryKind kind() const override { return AdversaryKind::Adaptive; }
  LabeledExample next(std::uint64_t, const Hypothesis*) override {
    return LabeledExample{1 + past_ones_, false};
  }
  void end_round(const RoundRecord& record) override {
    if (record.hypothesis(1)) ++past_ones_;
  }
  std::string name() const override { return "history-counting"; }

 private:
  DomainPoint past_ones_ = 0;
};

// Scripted learner: all-zero except a single designated round.
class FlipOnceLearner : public OnlineLearner {
 public:
  explicit FlipOnceLearner(std::uint64_t flip_round) : flip_(flip_round) {}
  Hypothesis predict() override {
    ++t_;
    return t_ == flip_ ? Hypothesis::all_one() : Hypothesis::all_zero();
  }
  void observe(const LabeledExample&) override {}
  std::string name() const override { return "flip-once"; }

 private:
  std::uint64_t flip_, t_ = 0;
};

}  // namespace

TEST_CASE("a learner that outputs the target makes no mistakes") {
  FixedHypothesisLearner learner(Hypothesis::point(5));
  std::vector<LabeledExample> stream;
  for (int i = 0; i < 16; ++i) stream.push_back({i % 2 ? 5ull : 9ull, i % 2 == 1});
  StreamAdversary adversary(stream);
  const auto result = run_game(learner, adversary, 16);
  CHECK(result.mistakes == 0);
  CHECK(result.regret == 0);
  CHECK(result.transcript.size() == 16);
}

TEST_CASE("the all-zero learner loses every round of an all-ones stream") {
  FixedHypothesisLearner learner(Hypothesis::all_zero());
  ConstAdversary adversary(7, true);
  const auto result = run_game(learner, adversary, 32);
  CHECK(result.mistakes == 32);
  CHECK(recount_mistakes(result.transcript) == 32);
}

TEST_CASE("zero-noise complementary learner errs only in the first bucket") {
  // eps = 1 gives bucket size s = ceil(2 ln 3) = 3; with the truth being f1,
  // rounds 1..3 predict f2 and err, and every later round is correct.
  NoiseSource rng(17, true);
  ComplementaryLearner learner(Hypothesis::all_one(), Hypothesis::all_zero(), 64, 1.0,
                               rng);
  CHECK(learner.bucket_size() == 3);
  ConstAdversary adversary(4, true);  // labels follow f1 = all-one
  const auto result = run_game(learner, adversary, 64);
  CHECK(result.mistakes == 3);
  for (const auto& row : result.transcript) CHECK((row.t <= 3) == row.mistake);
}

TEST_CASE("adaptive adversaries cannot see the current hypothesis") {
  // Two learners differing only in round 5's hypothesis; the round-5 example
  // must be identical, later rounds may diverge.
  auto play = [](std::uint64_t flip_round) {
    FlipOnceLearner learner(flip_round);
    HistoryCountingAdversary adversary;
    return run_game(learner, adversary, 10).transcript;
  };
  const auto base = play(100);  // never flips within the horizon
  const auto flipped = play(5);
  for (std::size_t t = 1; t <= 5; ++t) {
    CHECK(base[t - 1].x == flipped[t - 1].x);
    CHECK(base[t - 1].y == flipped[t - 1].y);
  }
  CHECK(base[5].x != flipped[5].x);  // the flip is visible from round 6 on
}

TEST_CASE("strong-adaptive adversaries do see the current hypothesis") {
  ThresholdRevealAdversary adversary(8, 3);
  FixedHypothesisLearner learner(Hypothesis::threshold(5));
  const auto result = run_game(learner, adversary, 4);
  // target 3 < mid 5: the adversary presents (5, 1) and f_5 errs every round.
  for (const auto& row : result.transcript) {
    CHECK(row.x == 5);
    CHECK(row.y);
    CHECK(row.mistake);
  }
}

TEST_CASE("transcripts are deterministic in the seeds") {
  auto play = [](std::uint64_t seed) {
    NoiseSource master(seed);
    auto learner = make_learner("point-d:d=16", 64, 1.0, master.derive("learner"));
    auto adversary = make_example_adversary("mw:d=16", master.derive("adversary"));
    return run_game(*learner, *adversary, 64).transcript;
  };
  const auto a = play(99), b = play(99), c = play(100);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x == b[i].x);
    CHECK(a[i].y == b[i].y);
    CHECK(a[i].hypothesis == b[i].hypothesis);
  }
  bool differs = false;
  for (std::size_t i = 0; i < std::min(a.size(), c.size()); ++i)
    differs = differs || a[i].x != c[i].x || a[i].y != c[i].y;
  CHECK(differs);
}

TEST_CASE("realizability checking accepts mw streams and flags violations") {
  NoiseSource master(3);
  const auto cls = make_point_class(8);
  auto learner = make_learner("point-d:d=8", 64, 1.0, master.derive("learner"));
  auto adversary = make_example_adversary("mw:d=8,target=3", master.derive("adversary"));
  auto checker = finite_class_checker(cls);
  CHECK_NOTHROW(run_game(*learner, *adversary, 64, checker.get()));

  FixedHypothesisLearner fixed(Hypothesis::all_zero());
  StreamAdversary bad({{1, true}, {1, false}});
  auto checker2 = finite_class_checker(cls);
  CHECK_THROWS_AS(run_game(fixed, bad, 2, checker2.get()), ProtocolError);
  try {
    FixedHypothesisLearner f2(Hypothesis::all_zero());
    StreamAdversary bad2({{1, true}, {1, false}});
    auto checker3 = finite_class_checker(cls);
    run_game(f2, bad2, 2, checker3.get());
  } catch (const ProtocolError& e) {
    CHECK(e.round() == 2);
  }
}

TEST_CASE("oblivious stream length must match the round count") {
  FixedHypothesisLearner learner(Hypothesis::all_zero());
  StreamAdversary adversary({{1, false}, {2, false}});
  CHECK_THROWS_AS(run_game(learner, adversary, 3), ProtocolError);
}

TEST_CASE("compute_regret") {
  const auto cls = make_point_class(2);

  Transcript empty;
  CHECK(compute_regret(empty, cls) == 0);

  // Realizable play: the best hypothesis has zero errors.
  Transcript realizable{{1, 1, true, false, true, "all-zero"},
                        {2, 2, false, false, false, "all-zero"}};
  CHECK(compute_regret(realizable, cls) == 1);

  // (1,1), (2,1) with predictions 0: two mistakes, best hypothesis errs once.
  Transcript agnostic{{1, 1, true, false, true, "all-zero"},
                      {2, 2, true, false, true, "all-zero"}};
  CHECK(compute_regret(agnostic, cls) == 1);

  CHECK(compute_regret_point_over_n(agnostic) == 1);

  // Majority-consistent point function over N: (5,1)x3, (5,0)x1 -> best = f_5
  // with 1 error.
  Transcript maj;
  for (int i = 0; i < 3; ++i) maj.push_back({std::uint64_t(i + 1), 5, true, false, true, "h"});
  maj.push_back({4, 5, false, true, true, "h"});
  CHECK(compute_regret_point_over_n(maj) == 4 - 1);
}

TEST_CASE("run_ope_game accounting and validation") {
  // Pinned to the zero-loss expert: zero regret.
  OpeSequential pinned(1, 16, 1.0, NoiseSource(1, true));
  ZeroLossAdversary zero(1);
  const auto r1 = run_ope_game(pinned, zero, 1, 16, true);
  CHECK(r1.total_loss == 0.0);
  CHECK(r1.regret == 0.0);

  // d = 1: regret is always zero whatever the losses.
  OpeSequential single(1, 8, 1.0, NoiseSource(2, true));
  ChargeAllButAdversary all_but(1, 1);
  const auto r2 = run_ope_game(single, all_but, 1, 8);
  CHECK(r2.regret == 0.0);

  // Losses outside [0,1] violate the protocol.
  class BadLoss : public LossAdversary {
   public:
    AdversaryKind kind() const override { return AdversaryKind::Oblivious; }
    std::vector<double> next(std::uint64_t, const std::size_t*) override {
      return {1.5, 0.0};
    }
    std::string name() const override { return "bad"; }
  };
  OpeSequential alg(2, 8, 1.0, NoiseSource(3, true));
  BadLoss bad;
  CHECK_THROWS_AS(run_ope_game(alg, bad, 2, 8), ProtocolError);

  // Realizable mode requires a zero-loss expert.
  class AllCharged : public LossAdversary {
   public:
    AdversaryKind kind() const override { return AdversaryKind::Oblivious; }
    std::vector<double> next(std::uint64_t, const std::size_t*) override {
      return {1.0, 1.0};
    }
    std::string name() const override { return "all-charged"; }
  };
  OpeSequential alg2(2, 8, 1.0, NoiseSource(4, true));
  AllCharged charged;
  CHECK_THROWS_AS(run_ope_game(alg2, charged, 2, 8, true), ProtocolError);
}

TEST_CASE("charge-last-sampled adversary follows the previous choice") {
  ChargeLastSampledAdversary adversary(3, 3);
  auto l1 = adversary.next(1, nullptr);
  CHECK(l1 == std::vector<double>{1.0, 0.0, 0.0});  // round 1 charges expert 1
  adversary.end_round(2, l1);
  auto l2 = adversary.next(2, nullptr);
  CHECK(l2 == std::vector<double>{0.0, 1.0, 0.0});
  adversary.end_round(3, l2);
  auto l3 = adversary.next(3, nullptr);
  CHECK(l3 == std::vector<double>{0.0, 0.0, 0.0});  // the spare is never charged
}
