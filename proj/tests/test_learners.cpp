#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <tuple>

#include "dponline/adversaries.hpp"
#include "dponline/game.hpp"
#include "dponline/learners.hpp"

using namespace dponline;

namespace {

std::vector<LabeledExample> repeated(DomainPoint x, bool y, std::size_t n) {
  return std::vector<LabeledExample>(n, LabeledExample{x, y});
}

bool ledger_spends_exactly_epsilon(const OnlineLearner& learner) {
  const auto* acct = learner.accountant();
  return acct && acct->composed_share() == Frac(1, 1) && acct->verify_log();
}

bool ledger_spends_exactly_epsilon(const OpeAlgorithm& algorithm) {
  const auto* acct = algorithm.accountant();
  return acct && acct->composed_share() == Frac(1, 1) && acct->verify_log();
}

}  // namespace

// Zero-noise monitor threshold for the point-over-N learner at T = 64,
// eps = 40 (eps' = 20): L = [20 ln(12*64^3) + 8 ln(6*64^2)] / 20 = 19.0054,
// so the monitor halts when the 20th 1-label arrives.
TEST_CASE("golden: point-n commits after the 20th positive (eps=40, T=64)") {
  NoiseSource rng(1, true);
  PointOverNLearner learner(64, 40.0, rng);
  StreamAdversary adversary(repeated(5, true, 64));
  const auto result = run_game(learner, adversary, 64);

  CHECK(result.mistakes == 20);
  for (const auto& row : result.transcript) CHECK(row.mistake == (row.t <= 20));
  REQUIRE(learner.phase() == PointOverNLearner::Phase::Committed);
  CHECK((*learner.committed())(5));
  CHECK(ledger_spends_exactly_epsilon(learner));
}

// At eps = 1 the same formula gives L = 760.2146, above any 64-round count:
// the learner must stay in the monitor phase for a 64-round game, and on a
// longer stream halt exactly when the running 1-label count reaches 761.
TEST_CASE("golden: point-n monitor threshold at the printed formula (eps=1, T=64)") {
  {
    NoiseSource rng(2, true);
    PointOverNLearner learner(64, 1.0, rng);
    StreamAdversary adversary(repeated(5, true, 64));
    const auto result = run_game(learner, adversary, 64);
    CHECK(result.mistakes == 64);
    CHECK(learner.phase() == PointOverNLearner::Phase::Monitor);
  }
  {
    NoiseSource rng(3, true);
    PointOverNLearner learner(64, 1.0, rng);
    for (std::uint64_t t = 1; t <= 1000; ++t) {
      (void)learner.predict();
      learner.observe({5, true});
      if (t < 761) {
        CHECK(learner.phase() == PointOverNLearner::Phase::Monitor);
      }
    }
    CHECK(learner.phase() == PointOverNLearner::Phase::Committed);
  }
}

TEST_CASE("point-n commits a correct hypothesis on most runs (eps=1, T=2^12)") {
  const std::uint64_t T = 1ull << 12;
  const int reps = 200;
  int correct = 0;
  for (int rep = 0; rep < reps; ++rep) {
    NoiseSource rng(hash_combine(911, rep));
    PointOverNLearner learner(T, 1.0, rng);
    StreamAdversary adversary(repeated(7, true, T));
    (void)run_game(learner, adversary, T);
    if (learner.phase() == PointOverNLearner::Phase::Committed &&
        (*learner.committed())(7))
      ++correct;
  }
  CHECK(correct >= static_cast<int>(0.9 * reps));
}

// Zero-noise threshold for the point-over-[d] learner at d = 8, T = 64,
// eps = 20 (eps' = 10): L = [3 (ln 8 + ln 128) + 8 ln(4*64^2)] / 10 = 9.8427,
// so the 10th mistake triggers commitment and noiseless report-noisy-max
// picks f_5 outright.
TEST_CASE("golden: point-d commits f_5 at the 10th mistake (eps=20, d=8, T=64)") {
  NoiseSource rng(4, true);
  PointOverDLearner learner(8, 64, 20.0, rng);
  StreamAdversary adversary(repeated(5, true, 64));
  const auto result = run_game(learner, adversary, 64);

  CHECK(result.mistakes == 10);
  REQUIRE(learner.committed().has_value());
  CHECK(learner.committed()->describe() == "point:5");
  for (const auto& row : result.transcript) CHECK(row.mistake == (row.t <= 10));
  CHECK(ledger_spends_exactly_epsilon(learner));
}

TEST_CASE("point-d ignores labels after commitment") {
  NoiseSource rng(5, true);
  PointOverDLearner learner(8, 64, 20.0, rng);
  for (int t = 0; t < 12; ++t) {
    (void)learner.predict();
    learner.observe({5, true});
  }
  REQUIRE(learner.committed().has_value());
  // Subsequent (j, 0) with j != 5 is predicted correctly.
  CHECK_FALSE(learner.predict()(3));
  learner.observe({3, false});
  CHECK(learner.committed()->describe() == "point:5");
}

// Zero-noise epoch budget for the threshold learner at d = 8, T = 64,
// eps = 8 (eps' = 4): L = 16 ln(4*64^2) / 4 = 38.816, so each epoch closes on
// its 39th mistake. Against the revealing adversary with target cut 3 the
// first epoch plays f_4 and collects only 1-label mistakes, so the counter
// comparison moves left to [0, 3] with mid 1.
TEST_CASE("golden: threshold learner halves the interval (eps=8, d=8, T=64)") {
  NoiseSource rng(6, true);
  ThresholdLearner learner(8, 64, 8.0, rng);
  ThresholdRevealAdversary adversary(8, 3);
  const auto result = run_game(learner, adversary, 64);

  CHECK(result.mistakes == 64);  // every round errs while the search is off target
  CHECK(learner.epochs() == 1);
  CHECK(learner.lower() == 0);
  CHECK(learner.upper() == 3);
  CHECK(learner.current_mid() == 1);
  // Epoch 1: mid 4, target 3 < 4, adversary plays (4, 1), c1 counts all 39.
  for (const auto& row : result.transcript) {
    if (row.t <= 39) {
      CHECK(row.x == 4);
      CHECK(row.y);
      CHECK(row.hypothesis == "threshold:4");
    } else {
      CHECK(row.x == 2);
      CHECK_FALSE(row.y);
      CHECK(row.hypothesis == "threshold:1");
    }
  }
  // Counter reset: exactly one fresh noisy threshold per transition.
  std::size_t inits = 0, compares = 0;
  for (const auto& inv : learner.accountant()->log()) {
    if (inv.mechanism == "svt.init") ++inits;
    if (inv.mechanism == "laplace") ++compares;
  }
  CHECK(inits == 2);
  CHECK(compares == 1);
  CHECK(ledger_spends_exactly_epsilon(learner));
}

TEST_CASE("threshold learner converges and then freezes the interval") {
  NoiseSource rng(7, true);
  ThresholdLearner learner(8, 64, 8.0, rng);
  ThresholdRevealAdversary adversary(8, 3);
  // Long enough for every epoch: four epochs of 39 mistakes plus slack.
  const auto result = run_game(learner, adversary, 256);
  CHECK(learner.lower() == 3);
  CHECK(learner.upper() == 3);
  CHECK(learner.current_mid() == 3);
  // Once converged the hypothesis is the target, so late rounds are clean.
  std::uint64_t late_mistakes = 0;
  for (const auto& row : result.transcript) {
    if (row.t > 200) late_mistakes += row.mistake;
  }
  CHECK(late_mistakes == 0);
  CHECK(ledger_spends_exactly_epsilon(learner));
}

TEST_CASE("threshold learner keeps l <= r and never grows the interval") {
  NoiseSource rng(8);
  ThresholdLearner learner(16, 2048, 1.0, rng);
  ThresholdRevealAdversary adversary(16, 11);
  std::uint64_t prev_l = 0, prev_r = 16;
  for (std::uint64_t t = 1; t <= 2048; ++t) {
    const Hypothesis h = learner.predict();
    const LabeledExample ex = adversary.next(t, &h);
    learner.observe(ex);
    CHECK(learner.lower() >= prev_l);
    CHECK(learner.upper() <= prev_r);
    CHECK(learner.lower() <= learner.upper());
    prev_l = learner.lower();
    prev_r = learner.upper();
  }
}

// Bucket size at eps = 1 is ceil(2 ln 3) = 3 (and 5 at eps = 0.5 by the same
// formula). With the truth f1, rounds 1..3 predict f2 and err; after the
// first bucket vote the learner predicts f1 forever.
TEST_CASE("golden: complementary learner (eps=1, s=3)") {
  CHECK(ComplementaryLearner(Hypothesis::all_one(), Hypothesis::all_zero(), 64, 1.0,
                             NoiseSource(9, true))
            .bucket_size() == 3);
  CHECK(ComplementaryLearner(Hypothesis::all_one(), Hypothesis::all_zero(), 64, 0.5,
                             NoiseSource(10, true))
            .bucket_size() == 5);

  NoiseSource rng(11, true);
  ComplementaryLearner learner(Hypothesis::all_one(), Hypothesis::all_zero(), 64, 1.0,
                               rng);
  ConstAdversary adversary(2, true);
  const auto result = run_game(learner, adversary, 64);
  CHECK(result.mistakes == 3);
  CHECK(learner.votes_f1() == 21);  // buckets complete at t = 3, 6, ..., 63
  CHECK(learner.votes_f2() == 0);
  CHECK(ledger_spends_exactly_epsilon(learner));
}

// Zero-noise sequential OPE at d = 3, T = 64, eps = 9: the per-expert budget
// is L = 9 ln(2*64^2) / 9 = 9.0109, so a continuously charged expert is
// abandoned once its segment loss reaches 10. Charging the last-sampled
// expert (spare 3) by hand: expert 1 plays rounds 1-10 (10 loss), expert 2
// plays rounds 11-21 and is charged from round 12 (10 loss), expert 3 plays
// from round 22 with no further loss. Total loss 20.
TEST_CASE("golden: ope-seq segment switching (eps=9, d=3, T=64)") {
  NoiseSource rng(12, true);
  OpeSequential algorithm(3, 64, 9.0, rng);
  ChargeLastSampledAdversary adversary(3, 3);
  const auto result = run_ope_game(algorithm, adversary, 3, 64);

  CHECK(result.total_loss == 20.0);
  CHECK(algorithm.current_expert() == 3);
  CHECK(algorithm.switches() == 2);
  for (const auto& round : result.rounds) {
    if (round.t <= 10) CHECK(round.expert == 1);
    if (round.t >= 11 && round.t <= 21) CHECK(round.expert == 2);
    if (round.t >= 22) {
      CHECK(round.expert == 3);
      CHECK(round.loss == 0.0);
    }
  }
  CHECK(ledger_spends_exactly_epsilon(algorithm));
}

TEST_CASE("ope-seq never leaves a perfect first expert") {
  NoiseSource rng(13, true);
  OpeSequential algorithm(3, 64, 1.0, rng);
  ZeroLossAdversary adversary(3);
  const auto result = run_ope_game(algorithm, adversary, 3, 64, true);
  CHECK(result.total_loss == 0.0);
  CHECK(algorithm.current_expert() == 1);
  CHECK(algorithm.switches() == 0);
}

TEST_CASE("ope-seq mean loss stays under the per-expert budget bound") {
  // Each abandoned expert costs about one segment budget; the working bound
  // from the proof is 2 d * 9 ln(2 T^2) / eps.
  const std::size_t d = 8;
  const std::uint64_t T = 1ull << 12;
  const int reps = 200;
  double total = 0.0;
  for (int rep = 0; rep < reps; ++rep) {
    NoiseSource rng(hash_combine(515, rep));
    OpeSequential algorithm(d, T, 1.0, rng);
    ChargeLastSampledAdversary adversary(d, d);
    total += run_ope_game(algorithm, adversary, d, T).total_loss;
  }
  const double mean = total / reps;
  const double bound = 2.0 * d * 9.0 * std::log(2.0 * double(T) * double(T));
  CHECK(mean <= bound);
  CHECK(mean > 0.0);
}

// Zero-noise elimination at d = 4, T = 64, eps = 24 (eps1 = 12, eps2 = 1):
// the epoch threshold is 8 ln(2*64^2)/12 + 3 (ln 4 + ln 48) = 21.78, so with
// losses charged to every expert but 3 the epoch fires at t = 22 and the
// elimination loop removes exactly experts 1, 2, 4 (keep-test threshold
// ln 48 = 3.87, far below their total losses of 22).
TEST_CASE("golden: ope-adaptive-core eliminates the three charged experts") {
  NoiseSource rng(14, true);
  OpeAdaptiveCore algorithm(4, 64, 24.0, rng);
  ChargeAllButAdversary adversary(4, 3);
  const auto result = run_ope_game(algorithm, adversary, 4, 64, true);

  CHECK(algorithm.active_experts() == std::vector<std::size_t>{3});
  double late_loss = 0.0;
  std::uint64_t charged_rounds = 0;
  for (const auto& round : result.rounds) {
    if (round.t >= 23) {
      CHECK(round.expert == 3);
      late_loss += round.loss;
    }
    if (round.t <= 22 && round.loss > 0.0) ++charged_rounds;
  }
  CHECK(late_loss == 0.0);
  CHECK(result.total_loss == double(charged_rounds));
  CHECK(ledger_spends_exactly_epsilon(algorithm));
}

TEST_CASE("golden: ope-adaptive-core under uniform charging keeps the last expert") {
  NoiseSource rng(15, true);
  OpeAdaptiveCore algorithm(4, 64, 24.0, rng);
  StreamLossAdversary adversary(
      std::vector<std::vector<double>>(64, std::vector<double>{1, 1, 1, 1}));
  const auto result = run_ope_game(algorithm, adversary, 4, 64);
  // Ties break to the lowest index, so eliminations run 1, 2, 3 and expert 4
  // survives; every round costs 1 regardless of the choice.
  CHECK(result.total_loss == 64.0);
  CHECK(algorithm.active_experts() == std::vector<std::size_t>{4});
  for (const auto& round : result.rounds) {
    if (round.t >= 23) CHECK(round.expert == 4);
  }
}

TEST_CASE("ope-adaptive-core with a single expert invokes no mechanisms") {
  NoiseSource rng(16, true);
  OpeAdaptiveCore algorithm(1, 64, 1.0, rng);
  ZeroLossAdversary adversary(1);
  const auto before = algorithm.accountant()->log().size();
  (void)run_ope_game(algorithm, adversary, 1, 64);
  CHECK(algorithm.choose() == 1);
  // Only the construction-time threshold draw is in the log.
  CHECK(algorithm.accountant()->log().size() == before);
}

TEST_CASE("ope-adaptive core keeps the active set non-increasing") {
  NoiseSource rng(17);
  OpeAdaptiveCore algorithm(8, 4096, 8.0, rng);
  ChargeLastSampledAdversary adversary(8, 8);
  std::size_t prev = algorithm.active_count();
  for (std::uint64_t t = 1; t <= 4096; ++t) {
    const std::size_t chosen = algorithm.choose();
    auto losses = adversary.next(t, nullptr);
    algorithm.observe(losses);
    adversary.end_round(chosen, losses);
    CHECK(algorithm.active_count() <= prev);
    CHECK(algorithm.active_count() >= 1);
    prev = algorithm.active_count();
  }
}

// Wrapper golden at d = 2, T = 64, eps = 40: the outer AboveThreshold budget
// is 10.60 while the core epoch threshold is 12.93, so a constantly charged
// expert trips the outer monitor first, at a(1) = 11 (round 11), and the
// algorithm switches to the sequential fallback.
TEST_CASE("golden: ope-adaptive switches to the fallback when the outer svt halts") {
  NoiseSource rng(18, true);
  OpeAdaptive algorithm(2, 64, 40.0, rng);
  ChargeAllButAdversary adversary(2, 2);
  std::uint64_t switch_round = 0;
  for (std::uint64_t t = 1; t <= 64; ++t) {
    const std::size_t chosen = algorithm.choose();
    auto losses = adversary.next(t, nullptr);
    algorithm.observe(losses);
    adversary.end_round(chosen, losses);
    if (switch_round == 0 && algorithm.switched_to_fallback()) switch_round = t;
  }
  CHECK(switch_round == 11);
  CHECK(ledger_spends_exactly_epsilon(algorithm));
}

TEST_CASE("ope-adaptive ledger composes to epsilon before any halt") {
  NoiseSource rng(19, true);
  OpeAdaptive algorithm(16, 4096, 1.0, rng);
  CHECK(algorithm.accountant()->composed_share() == Frac(1, 1));
  ZeroLossAdversary adversary(16);
  (void)run_ope_game(algorithm, adversary, 16, 256, true);
  CHECK_FALSE(algorithm.switched_to_fallback());
  CHECK(ledger_spends_exactly_epsilon(algorithm));
}

TEST_CASE("reduction learner with a singleton consistent list never errs") {
  auto sampler = [](NoiseSource&) {
    return std::vector<Hypothesis>{Hypothesis::point(5)};
  };
  auto backend = [](std::size_t experts, NoiseSource rng) {
    return std::make_unique<OpeSequential>(experts, 64, 9.0, std::move(rng));
  };
  ReductionLearner learner(sampler, backend, 64, 9.0, NoiseSource(20, true));
  StreamAdversary adversary(repeated(5, true, 64));
  const auto result = run_game(learner, adversary, 64);
  CHECK(result.mistakes == 0);
}

// With V = {all-one, point(5)} and the stream alternating (5,1), (7,0), the
// zero-noise sequential backend charges all-one on every (7,0) round; its
// segment reaches ceil(9.0109) = 10 on round 20 and the backend moves to the
// consistent expert: 10 mistakes, within (index of v) * ceil(L).
TEST_CASE("golden: reduction learner walks to the consistent hypothesis") {
  auto sampler = [](NoiseSource&) {
    return std::vector<Hypothesis>{Hypothesis::all_one(), Hypothesis::point(5)};
  };
  auto backend = [](std::size_t experts, NoiseSource rng) {
    return std::make_unique<OpeSequential>(experts, 64, 9.0, std::move(rng));
  };
  ReductionLearner learner(sampler, backend, 64, 9.0, NoiseSource(21, true));
  std::vector<LabeledExample> stream;
  for (int i = 0; i < 64; ++i)
    stream.push_back(i % 2 == 0 ? LabeledExample{5, true} : LabeledExample{7, false});
  StreamAdversary adversary(stream);
  const auto result = run_game(learner, adversary, 64);
  CHECK(result.mistakes == 10);
  CHECK(learner.current_index() == 2);
  CHECK(result.mistakes <= 2 * 10);
  CHECK(ledger_spends_exactly_epsilon(learner));
}

TEST_CASE("reduction learner rejects an empty sample") {
  auto sampler = [](NoiseSource&) { return std::vector<Hypothesis>{}; };
  auto backend = [](std::size_t experts, NoiseSource rng) {
    return std::make_unique<OpeSequential>(experts, 64, 1.0, std::move(rng));
  };
  CHECK_THROWS_AS(ReductionLearner(sampler, backend, 64, 1.0, NoiseSource(22)),
                  std::invalid_argument);
}

// Terminal-expert consistency of the reduction at rate 1/4: in zero noise a
// bad expert is dropped after exactly 107 all-loss rounds (L = 9 ln(2*512^2)
// = 106.07), so within T = 512 rounds the backend reaches expert i iff
// (i-1) * 107 < 512, i.e. iff a consistent hypothesis sits within the first
// five of the eight samples. That event has probability 1 - (3/4)^5 = 0.7627;
// 200 replications put a 3-sigma band of +-0.0903 around it.
TEST_CASE("reduction learner terminal consistency matches the analytic rate") {
  const int reps = 200;
  int consistent = 0;
  for (int rep = 0; rep < reps; ++rep) {
    NoiseSource rng(hash_combine(7331, rep), true);  // zero noise; only V varies
    ReductionLearner learner(
        point_representation_sampler(4, 8),
        [](std::size_t experts, NoiseSource backend_rng) {
          return std::make_unique<OpeSequential>(experts, 512, 1.0,
                                                 std::move(backend_rng));
        },
        512, 1.0, rng);
    StreamAdversary adversary(repeated(5, true, 512));
    (void)run_game(learner, adversary, 512);
    const Hypothesis terminal =
        learner.sampled_hypotheses()[learner.current_index() - 1];
    if (terminal(5)) ++consistent;
  }
  const double fraction = double(consistent) / reps;
  CHECK(fraction > 0.7627 - 0.0903);
  CHECK(fraction < 0.7627 + 0.0903);
}

TEST_CASE("first-positive baseline errs once against the mw adversary") {
  const int reps = 100;
  std::uint64_t total = 0;
  for (int rep = 0; rep < reps; ++rep) {
    NoiseSource master(hash_combine(4242, rep));
    FirstPositiveLearner learner;
    MwAdversary adversary(64, 7, master.derive("adv"));
    total += run_game(learner, adversary, 256).mistakes;
  }
  CHECK(double(total) / reps <= 1.1);
}

TEST_CASE("learner descriptors") {
  NoiseSource rng(23);
  CHECK(make_learner("point-n", 64, 1.0, rng.derive(1))->name() == "point-n");
  CHECK(make_learner("point-d:d=16", 64, 1.0, rng.derive(2))->name() == "point-d");
  CHECK(make_learner("threshold:d=16", 64, 1.0, rng.derive(3))->name() == "threshold");
  CHECK(make_learner("complementary", 64, 1.0, rng.derive(4))->name() == "complementary");
  CHECK(make_learner("first-positive", 64, 1.0, rng.derive(5))->name() ==
        "first-positive");
  CHECK(make_learner("reduction:sampler=point,backend=ope-seq,size=4", 64, 1.0,
                     rng.derive(6))
            ->name() == "reduction");
  CHECK_THROWS_AS(make_learner("nope", 64, 1.0, rng.derive(7)), std::invalid_argument);
  CHECK_THROWS_AS(make_learner("point-d:d=0", 64, 1.0, rng.derive(8)),
                  std::invalid_argument);

  CHECK(make_ope_algorithm("ope-seq:d=4", 64, 1.0, rng.derive(9))->name() == "ope-seq");
  CHECK(make_ope_algorithm("ope-adaptive:d=4", 64, 1.0, rng.derive(10))->name() ==
        "ope-adaptive");
  CHECK_THROWS_AS(make_ope_algorithm("point-n", 64, 1.0, rng.derive(11)),
                  std::invalid_argument);
  CHECK(is_ope_descriptor("ope-seq:d=4"));
  CHECK_FALSE(is_ope_descriptor("point-n"));
  CHECK(ope_descriptor_dimension("ope-adaptive:d=12") == 12);
}

TEST_CASE("parameter validation") {
  NoiseSource rng(24);
  CHECK_THROWS_AS(PointOverNLearner(0, 1.0, rng.derive(1)), std::invalid_argument);
  CHECK_THROWS_AS(PointOverNLearner(8, 0.0, rng.derive(2)), std::invalid_argument);
  CHECK_THROWS_AS(ThresholdLearner(0, 8, 1.0, rng.derive(3)), std::invalid_argument);
  CHECK_THROWS_AS(OpeSequential(0, 8, 1.0, rng.derive(4)), std::invalid_argument);
  CHECK_THROWS_AS(OpeAdaptive(2, 8, -1.0, rng.derive(5)), std::invalid_argument);
}

TEST_CASE("privacy ledgers spend exactly epsilon across a full noisy game") {
  const std::uint64_t T = 256;
  NoiseSource master(77);

  for (const char* descriptor : {"point-n", "point-d:d=8", "threshold:d=8",
                                 "complementary",
                                 "reduction:sampler=point,backend=ope-seq,size=4"}) {
    auto learner = make_learner(descriptor, T, 0.75, master.derive(descriptor));
    ConstAdversary adversary(3, true);
    (void)run_game(*learner, adversary, T);
    INFO(descriptor);
    REQUIRE(learner->accountant() != nullptr);
    CHECK(learner->accountant()->composed_share() == Frac(1, 1));
    CHECK(learner->accountant()->verify_log());
    CHECK(learner->epsilon() == 0.75);
  }

  for (const char* descriptor :
       {"ope-seq:d=5", "ope-adaptive:d=5", "ope-adaptive-core:d=5"}) {
    auto algorithm = make_ope_algorithm(descriptor, T, 0.75, master.derive(descriptor));
    ChargeLastSampledAdversary adversary(5, 5);
    (void)run_ope_game(*algorithm, adversary, 5, T);
    INFO(descriptor);
    REQUIRE(algorithm->accountant() != nullptr);
    CHECK(algorithm->accountant()->composed_share() == Frac(1, 1));
    CHECK(algorithm->accountant()->verify_log());
    CHECK(algorithm->epsilon() == 0.75);
  }

  // The non-private baseline carries no ledger.
  CHECK(FirstPositiveLearner().accountant() == nullptr);
  CHECK_FALSE(FirstPositiveLearner().epsilon().has_value());
}

TEST_CASE("zero-noise learners are deterministic state machines") {
  auto run_once = [](std::uint64_t seed) {
    NoiseSource rng(seed, true);
    ThresholdLearner learner(16, 256, 2.0, rng);
    ThresholdRevealAdversary adversary(16, 5);
    const auto result = run_game(learner, adversary, 256);
    return std::make_tuple(result.mistakes, learner.lower(), learner.upper());
  };
  CHECK(run_once(1) == run_once(2));  // zero-noise: the seed is irrelevant
}
