#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dponline/budget.hpp"
#include "dponline/hypothesis.hpp"

namespace dponline {

enum class AdversaryKind { Oblivious, Adaptive, StrongAdaptive };

/// Raised when a party violates the protocol (realizability, stream length,
/// loss range). Carries the offending 1-based round.
class ProtocolError : public std::runtime_error {
 public:
  ProtocolError(std::uint64_t round, const std::string& what)
      : std::runtime_error("round " + std::to_string(round) + ": " + what), round_(round) {}
  std::uint64_t round() const { return round_; }

 private:
  std::uint64_t round_;
};

struct RoundRecord {
  std::uint64_t t;  // 1-based
  LabeledExample example;
  bool prediction;
  bool mistake;
  Hypothesis hypothesis;
};

struct TranscriptRow {
  std::uint64_t t;
  DomainPoint x;
  bool y;
  bool prediction;
  bool mistake;
  std::string hypothesis;
};
using Transcript = std::vector<TranscriptRow>;

struct GameResult {
  std::uint64_t mistakes = 0;
  long long regret = 0;
  Transcript transcript;
  std::uint64_t seed = 0;
};

/// The learner side of the sequential game. predict() yields h_t before the
/// round-t example is revealed; observe() ingests it afterwards.
class OnlineLearner {
 public:
  virtual ~OnlineLearner() = default;
  virtual Hypothesis predict() = 0;
  virtual void observe(const LabeledExample& example) = 0;
  virtual std::string name() const = 0;
  /// Budget ledger; nullptr for non-private learners.
  virtual const PrivacyAccountant* accountant() const { return nullptr; }
  /// Constructor epsilon; nullopt for non-private learners.
  virtual std::optional<double> epsilon() const { return std::nullopt; }
};

/// The example-producing side. Only strong-adaptive adversaries receive the
/// current hypothesis in next(); (non-strong) adaptive adversaries learn h_t
/// through end_round, i.e. from round t+1 on.
class ExampleAdversary {
 public:
  virtual ~ExampleAdversary() = default;
  virtual AdversaryKind kind() const = 0;
  virtual void begin(std::uint64_t rounds) {}
  virtual LabeledExample next(std::uint64_t t, const Hypothesis* current) = 0;
  virtual void end_round(const RoundRecord& record) {}
  virtual std::string name() const = 0;
};

/// Optional per-round realizability validation.
class RealizabilityChecker {
 public:
  virtual ~RealizabilityChecker() = default;
  /// Throws ProtocolError when the stream so far becomes unrealizable.
  virtual void observe(std::uint64_t t, const LabeledExample& example) = 0;
};

std::unique_ptr<RealizabilityChecker> finite_class_checker(const FiniteClass& cls);
std::unique_ptr<RealizabilityChecker> point_over_n_checker();

/// Plays `rounds` rounds of the sequential game, returning the full
/// transcript. regret is filled from regret_class when given, otherwise set
/// to the mistake count (the realizable-mode value).
GameResult run_game(OnlineLearner& learner, ExampleAdversary& adversary,
                    std::uint64_t rounds, RealizabilityChecker* checker = nullptr,
                    const FiniteClass* regret_class = nullptr);

/// Mistakes minus the best-in-hindsight error count over a finite class.
long long compute_regret(const Transcript& transcript, const FiniteClass& cls);
/// Same for point functions over the naturals (closed form: the best point
/// function is the majority-consistent one).
long long compute_regret_point_over_n(const Transcript& transcript);

/// Recount of the transcript's mistake flags.
std::uint64_t recount_mistakes(const Transcript& transcript);

// ---- Online prediction from experts -----------------------------------

struct OpeRoundRecord {
  std::uint64_t t;
  std::size_t expert;              // 1-based
  double loss;                     // loss of the chosen expert
  std::vector<double> loss_vector; // full vector, [0,1]^d
};

struct OpeGameResult {
  double total_loss = 0.0;
  double regret = 0.0;
  std::vector<OpeRoundRecord> rounds;
  std::uint64_t seed = 0;
};

class OpeAlgorithm {
 public:
  virtual ~OpeAlgorithm() = default;
  virtual std::size_t choose() = 0;  // expert in [1, d]
  virtual void observe(std::span<const double> losses) = 0;
  virtual std::string name() const = 0;
  virtual const PrivacyAccountant* accountant() const { return nullptr; }
  virtual std::optional<double> epsilon() const { return std::nullopt; }
};

class LossAdversary {
 public:
  virtual ~LossAdversary() = default;
  virtual AdversaryKind kind() const = 0;
  virtual void begin(std::uint64_t rounds) {}
  /// chosen is non-null only for strong-adaptive adversaries.
  virtual std::vector<double> next(std::uint64_t t, const std::size_t* chosen) = 0;
  virtual void end_round(std::size_t chosen, std::span<const double> losses) {}
  virtual std::string name() const = 0;
};

/// realizable_mode additionally enforces a zero-loss expert each round.
OpeGameResult run_ope_game(OpeAlgorithm& algorithm, LossAdversary& adversary,
                           std::size_t d, std::uint64_t rounds,
                           bool realizable_mode = false);

}  // namespace dponline
