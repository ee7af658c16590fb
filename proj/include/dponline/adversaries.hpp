#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dponline/game.hpp"
#include "dponline/hypothesis.hpp"
#include "dponline/littlestone.hpp"
#include "dponline/noise.hpp"

namespace dponline {

/// Oblivious adversary replaying a fixed stream; its length must equal the
/// number of game rounds.
class StreamAdversary : public ExampleAdversary {
 public:
  explicit StreamAdversary(std::vector<LabeledExample> stream)
      : stream_(std::move(stream)) {}
  AdversaryKind kind() const override { return AdversaryKind::Oblivious; }
  void begin(std::uint64_t rounds) override;
  LabeledExample next(std::uint64_t t, const Hypothesis*) override;
  std::string name() const override { return "stream"; }

 private:
  std::vector<LabeledExample> stream_;
};

/// Oblivious adversary repeating one example.
class ConstAdversary : public ExampleAdversary {
 public:
  ConstAdversary(DomainPoint x, bool y) : example_{x, y} {}
  AdversaryKind kind() const override { return AdversaryKind::Oblivious; }
  LabeledExample next(std::uint64_t, const Hypothesis*) override { return example_; }
  std::string name() const override;

 private:
  LabeledExample example_;
};

/// Multiplicative-weights adaptive adversary against point functions over [d].
/// Emits (target, 1) with probability 1/2, otherwise (j, 0) with j drawn
/// proportionally to exp(sum of past h_r(j)) over j != target. Every emitted
/// example is consistent with f_target. Weights live in log space as integer
/// counts, grouped by value so a step costs O(#distinct counts).
class MwAdversary : public ExampleAdversary {
 public:
  MwAdversary(std::uint64_t d, DomainPoint target, NoiseSource rng);

  AdversaryKind kind() const override { return AdversaryKind::Adaptive; }
  LabeledExample next(std::uint64_t t, const Hypothesis*) override { return step(t); }
  void end_round(const RoundRecord& record) override { update(record.hypothesis); }
  std::string name() const override;

  /// One example; throws std::logic_error if update() was skipped.
  LabeledExample step(std::uint64_t t);
  /// Multiplies every weight by e^{h(j)}; call once after each step.
  void update(const Hypothesis& h);

  DomainPoint target() const { return target_; }
  /// log w(j) as an exact integer count.
  std::int64_t log_weight(DomainPoint j) const;

 private:
  void move_count(std::uint64_t j, std::int64_t to);
  void apply(const Hypothesis& h, int sign);

  std::uint64_t d_;
  DomainPoint target_;
  NoiseSource rng_;
  bool awaiting_update_ = false;
  std::int64_t base_ = 0;            // shared offset (all-one updates)
  std::vector<std::int64_t> delta_;  // per-point count minus base_, 0-based
  std::map<std::int64_t, std::vector<std::uint32_t>> members_;  // delta -> points
  std::vector<std::uint32_t> pos_;   // position of each point in its group
};

/// Strong-adaptive adversary for the threshold class: reads the learner's
/// current cut m and presents a point where f_m and the target disagree,
/// labeled by the target (m if target < m, else m+1). At m == target it
/// presents a consistent no-mistake example.
class ThresholdRevealAdversary : public ExampleAdversary {
 public:
  ThresholdRevealAdversary(std::uint64_t d, std::uint64_t target_cut);
  AdversaryKind kind() const override { return AdversaryKind::StrongAdaptive; }
  LabeledExample next(std::uint64_t t, const Hypothesis* current) override;
  std::string name() const override;

 private:
  std::uint64_t d_, target_;
};

/// Loss adversary charging loss 1 to the expert the algorithm chose last
/// round, except the spared (perfect) expert. Round 1 charges expert 1.
class ChargeLastSampledAdversary : public LossAdversary {
 public:
  ChargeLastSampledAdversary(std::size_t d, std::size_t spare);
  AdversaryKind kind() const override { return AdversaryKind::Adaptive; }
  std::vector<double> next(std::uint64_t t, const std::size_t*) override;
  void end_round(std::size_t chosen, std::span<const double>) override { last_ = chosen; }
  std::string name() const override;

 private:
  std::size_t d_, spare_, last_ = 0;
};

/// Oblivious loss adversary charging loss 1 to every expert except the spared
/// one, every round.
class ChargeAllButAdversary : public LossAdversary {
 public:
  ChargeAllButAdversary(std::size_t d, std::size_t spare);
  AdversaryKind kind() const override { return AdversaryKind::Oblivious; }
  std::vector<double> next(std::uint64_t, const std::size_t*) override;
  std::string name() const override;

 private:
  std::size_t d_, spare_;
};

/// Oblivious all-zero losses.
class ZeroLossAdversary : public LossAdversary {
 public:
  explicit ZeroLossAdversary(std::size_t d) : d_(d) {}
  AdversaryKind kind() const override { return AdversaryKind::Oblivious; }
  std::vector<double> next(std::uint64_t, const std::size_t*) override {
    return std::vector<double>(d_, 0.0);
  }
  std::string name() const override { return "ope-zero"; }

 private:
  std::size_t d_;
};

/// Oblivious loss adversary replaying fixed loss vectors.
class StreamLossAdversary : public LossAdversary {
 public:
  explicit StreamLossAdversary(std::vector<std::vector<double>> losses)
      : losses_(std::move(losses)) {}
  AdversaryKind kind() const override { return AdversaryKind::Oblivious; }
  void begin(std::uint64_t rounds) override;
  std::vector<double> next(std::uint64_t t, const std::size_t*) override {
    return losses_[t - 1];
  }
  std::string name() const override { return "ope-stream"; }

 private:
  std::vector<std::vector<double>> losses_;
};

// ---- Packing machinery ------------------------------------------------------

using LearnerFactory = std::function<std::unique_ptr<OnlineLearner>(NoiseSource)>;

/// Access to Pr[A(S)_t(u1) = f1(u1)], either exact (mock profiles, used to
/// verify the construction) or estimated by Monte Carlo over learner replays.
class LearnerOracle {
 public:
  virtual ~LearnerOracle() = default;
  virtual double probability(const std::vector<LabeledExample>& stream,
                             std::uint64_t t) = 0;
};

class ExactMockOracle : public LearnerOracle {
 public:
  using Profile =
      std::function<double(const std::vector<LabeledExample>&, std::uint64_t)>;
  explicit ExactMockOracle(Profile profile) : profile_(std::move(profile)) {}
  double probability(const std::vector<LabeledExample>& stream,
                     std::uint64_t t) override {
    return profile_(stream, t);
  }

 private:
  Profile profile_;
};

/// Empirical frequency of h_t(u1) = target_bit over `runs` independently
/// seeded replays of the learner on the stream prefix.
double estimate_prediction_probability(const LearnerFactory& factory,
                                       const std::vector<LabeledExample>& stream,
                                       std::uint64_t t, DomainPoint u1, bool target_bit,
                                       std::uint64_t runs, NoiseSource& rng);

class MonteCarloOracle : public LearnerOracle {
 public:
  MonteCarloOracle(LearnerFactory factory, DomainPoint u1, bool target_bit,
                   std::uint64_t runs, NoiseSource rng)
      : factory_(std::move(factory)), u1_(u1), target_bit_(target_bit), runs_(runs),
        rng_(std::move(rng)) {}
  double probability(const std::vector<LabeledExample>& stream,
                     std::uint64_t t) override;

 private:
  LearnerFactory factory_;
  DomainPoint u1_;
  bool target_bit_;
  std::uint64_t runs_;
  NoiseSource rng_;
  std::uint64_t calls_ = 0;
};

/// The streams built by the packing construction. Streams are length T over
/// two possible entries: the dummy (u0, f1(u0)) everywhere except the recorded
/// insertion positions, which hold (u1, f2(u1)).
struct PackingOutput {
  bool is_witness = false;
  std::vector<std::vector<std::uint64_t>> streams;  // insertion positions, 1-based
  std::vector<std::uint64_t> timesteps;             // t_1..t_{m-1}
  std::uint64_t T = 0;
  std::uint64_t k = 0;
  LabeledExample dummy;
  LabeledExample insertion;

  std::size_t stream_count() const { return streams.size(); }
  std::vector<LabeledExample> materialize(std::size_t index) const;  // 1-based
  std::string to_json() const;
  static PackingOutput from_json(const std::string& text);
};

/// Raised when no valid distinguishing timestep exists (possible under noisy
/// Monte Carlo estimates); carries the partial family.
class ConstructionFailed : public std::runtime_error {
 public:
  ConstructionFailed(std::string what, PackingOutput partial)
      : std::runtime_error(std::move(what)), partial_(std::move(partial)) {}
  const PackingOutput& partial() const { return partial_; }

 private:
  PackingOutput partial_;
};

/// The packing-stream constructor. Starting from the all-dummy stream S_0,
/// builds m = ceil(T/k) streams: stream i inserts (u1, f2(u1)) at every
/// position from t_{i-1} on where the oracle probability is >= 1/3, where
/// t_{i-1} is the smallest timestep at which all earlier streams' oracle
/// probabilities fell below 1/3. Returns early with a witness stream if any
/// stream collects more than k insertions. `kept` optionally restricts the
/// construction to timesteps where the oracle's S_0 probability is >= 1/2.
PackingOutput build_packing_streams(LearnerOracle& oracle, std::uint64_t T,
                                    std::uint64_t k, const Hypothesis& f1,
                                    const Hypothesis& f2, DomainPoint u0, DomainPoint u1,
                                    const std::vector<bool>* kept = nullptr);

/// Preprocessing pass over S_0 probabilities: swap f1/f2 if needed so at least
/// half the timesteps satisfy Pr >= 1/2, and mark those timesteps kept.
struct WlogFilterResult {
  bool swapped;
  std::vector<bool> kept;  // index t-1
};
WlogFilterResult wlog_filter(LearnerOracle& oracle, std::uint64_t T,
                             const LabeledExample& dummy);

/// The biased-walk half of the distinguisher, separated so tests can
/// enumerate it exactly: binary search over [1, m] where each comparison asks
/// whether the mid-timestep prediction count fell below 150 of 360 and moves
/// to the indicated side with probability 3/4.
std::size_t smoothed_binary_search_walk(std::size_t m,
                                        const std::function<bool(std::size_t)>& below,
                                        NoiseSource& rng);

/// Full distinguisher: runs the learner 360 times on S, counts per timestep
/// how many copies predict f1(u1) at u1, and walks. Returns an index in
/// [1, m]. With m == 1 no learner runs are consulted.
std::size_t smoothed_binary_search(const LearnerFactory& factory,
                                   const std::vector<LabeledExample>& stream,
                                   const std::vector<std::uint64_t>& timesteps,
                                   DomainPoint u1, bool f1_at_u1, NoiseSource& rng);

// ---- Shattered-tree sequence composer -----------------------------------------

struct LdSegment {
  std::size_t pair_f1, pair_f2;  // hypothesis indices in the class
  DomainPoint u0, u1;
  PackingOutput packing;
  std::size_t chosen_stream;  // 1-based index materialized into the output
};

struct LdComposition {
  std::vector<LdSegment> segments;
  std::vector<LabeledExample> stream;  // concatenation of the segments
};

/// Walks a shattered tree root-to-left-child pair by pair: per pair runs the
/// packing constructor on a segment of length floor(T / floor(depth/2)) and
/// descends into u1's subtree on the side of the label the segment revealed.
/// Depth < 2 falls back to a single find_non_complementary_pair segment.
/// Oracles are built per segment by the supplied factory.
using SegmentOracleFactory = std::function<std::unique_ptr<LearnerOracle>(
    const Hypothesis& f1, const Hypothesis& f2, DomainPoint u0, DomainPoint u1)>;

LdComposition compose_ld_sequences(const FiniteClass& cls, const ExampleTree& tree,
                                   const SegmentOracleFactory& oracle_factory,
                                   std::uint64_t T, std::uint64_t k);

/// Example-adversary factory for CLI descriptors: "const:x=1,y=1",
/// "mw:d=1024[,target=i]", "threshold-reveal:d=8,target=3".
std::unique_ptr<ExampleAdversary> make_example_adversary(const std::string& descriptor,
                                                         NoiseSource rng);

/// Loss-adversary factory: "ope-charge-last:d=16,spare=16",
/// "ope-charge-allbut:d=4,spare=3", "ope-zero:d=4".
std::unique_ptr<LossAdversary> make_loss_adversary(const std::string& descriptor);

}  // namespace dponline
