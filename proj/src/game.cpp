#include "dponline/game.hpp"

#include <algorithm>
#include <map>

namespace dponline {

namespace {

class FiniteClassChecker : public RealizabilityChecker {
 public:
  explicit FiniteClassChecker(const FiniteClass& cls) : cls_(cls) {
    alive_.resize(cls.hypotheses.size(), true);
    alive_count_ = alive_.size();
  }

  void observe(std::uint64_t t, const LabeledExample& example) override {
    for (std::size_t i = 0; i < alive_.size(); ++i) {
      if (alive_[i] && cls_.hypotheses[i](example.x) != example.y) {
        alive_[i] = false;
        --alive_count_;
      }
    }
    if (alive_count_ == 0)
      throw ProtocolError(t, "stream is no longer realizable by the class");
  }

 private:
  const FiniteClass& cls_;
  std::vector<bool> alive_;
  std::size_t alive_count_;
};

class PointOverNChecker : public RealizabilityChecker {
 public:
  void observe(std::uint64_t t, const LabeledExample& example) override {
    stream_.push_back(example);
    if (!is_realizable_point_over_n(stream_).realizable)
      throw ProtocolError(t, "stream is no longer realizable by point functions over N");
  }

 private:
  std::vector<LabeledExample> stream_;
};

}  // namespace

std::unique_ptr<RealizabilityChecker> finite_class_checker(const FiniteClass& cls) {
  return std::make_unique<FiniteClassChecker>(cls);
}

std::unique_ptr<RealizabilityChecker> point_over_n_checker() {
  return std::make_unique<PointOverNChecker>();
}

GameResult run_game(OnlineLearner& learner, ExampleAdversary& adversary,
                    std::uint64_t rounds, RealizabilityChecker* checker,
                    const FiniteClass* regret_class) {
  if (rounds < 1) throw std::invalid_argument("run_game: rounds must be >= 1");
  adversary.begin(rounds);
  GameResult result;
  result.transcript.reserve(rounds);
  for (std::uint64_t t = 1; t <= rounds; ++t) {
    Hypothesis h = learner.predict();
    const bool strong = adversary.kind() == AdversaryKind::StrongAdaptive;
    const LabeledExample example = adversary.next(t, strong ? &h : nullptr);
    if (checker) checker->observe(t, example);
    const bool prediction = h(example.x);
    const bool mistake = prediction != example.y;
    if (mistake) ++result.mistakes;
    learner.observe(example);
    RoundRecord record{t, example, prediction, mistake, h};
    adversary.end_round(record);
    result.transcript.push_back(
        TranscriptRow{t, example.x, example.y, prediction, mistake, h.describe()});
  }
  result.regret = regret_class
                      ? compute_regret(result.transcript, *regret_class)
                      : static_cast<long long>(result.mistakes);
  return result;
}

long long compute_regret(const Transcript& transcript, const FiniteClass& cls) {
  std::uint64_t mistakes = 0;
  for (const auto& row : transcript) mistakes += row.mistake ? 1 : 0;
  std::uint64_t best = transcript.size();
  bool first = true;
  for (const auto& h : cls.hypotheses) {
    std::uint64_t errors = 0;
    for (const auto& row : transcript) errors += h(row.x) != row.y ? 1 : 0;
    if (first || errors < best) {
      best = errors;
      first = false;
    }
  }
  if (first) best = 0;
  return static_cast<long long>(mistakes) - static_cast<long long>(best);
}

long long compute_regret_point_over_n(const Transcript& transcript) {
  std::uint64_t mistakes = 0;
  std::uint64_t total_ones = 0;
  std::map<DomainPoint, long long> advantage;  // ones(x) - zeros(x)
  for (const auto& row : transcript) {
    mistakes += row.mistake ? 1 : 0;
    if (row.y) {
      ++total_ones;
      ++advantage[row.x];
    } else {
      --advantage[row.x];
    }
  }
  long long best_advantage = 0;  // an unseen point yields errors = total_ones
  for (const auto& [x, adv] : advantage) best_advantage = std::max(best_advantage, adv);
  const long long best_errors = static_cast<long long>(total_ones) - best_advantage;
  return static_cast<long long>(mistakes) - best_errors;
}

std::uint64_t recount_mistakes(const Transcript& transcript) {
  std::uint64_t n = 0;
  for (const auto& row : transcript) n += row.mistake ? 1 : 0;
  return n;
}

OpeGameResult run_ope_game(OpeAlgorithm& algorithm, LossAdversary& adversary,
                           std::size_t d, std::uint64_t rounds, bool realizable_mode) {
  if (d < 1) throw std::invalid_argument("run_ope_game: d must be >= 1");
  if (rounds < 1) throw std::invalid_argument("run_ope_game: rounds must be >= 1");
  adversary.begin(rounds);
  OpeGameResult result;
  result.rounds.reserve(rounds);
  std::vector<double> cumulative(d, 0.0);
  for (std::uint64_t t = 1; t <= rounds; ++t) {
    const std::size_t chosen = algorithm.choose();
    if (chosen < 1 || chosen > d)
      throw ProtocolError(t, "algorithm chose an expert outside [d]");
    const bool strong = adversary.kind() == AdversaryKind::StrongAdaptive;
    std::vector<double> losses = adversary.next(t, strong ? &chosen : nullptr);
    if (losses.size() != d) throw ProtocolError(t, "loss vector has wrong dimension");
    for (double v : losses) {
      if (!(v >= 0.0 && v <= 1.0)) throw ProtocolError(t, "loss outside [0, 1]");
    }
    for (std::size_t i = 0; i < d; ++i) cumulative[i] += losses[i];
    if (realizable_mode &&
        *std::min_element(cumulative.begin(), cumulative.end()) > 0.0)
      throw ProtocolError(t, "no zero-loss expert remains in realizable mode");
    const double loss = losses[chosen - 1];
    result.total_loss += loss;
    algorithm.observe(losses);
    adversary.end_round(chosen, losses);
    result.rounds.push_back(OpeRoundRecord{t, chosen, loss, std::move(losses)});
  }
  result.regret =
      result.total_loss - *std::min_element(cumulative.begin(), cumulative.end());
  return result;
}

}  // namespace dponline
