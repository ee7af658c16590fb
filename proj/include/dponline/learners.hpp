#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dponline/budget.hpp"
#include "dponline/game.hpp"
#include "dponline/hypothesis.hpp"
#include "dponline/mechanisms.hpp"
#include "dponline/noise.hpp"

namespace dponline {

/// Learner for point functions over the naturals. Outputs all-zero while an
/// AboveThreshold instance (epsilon/2) watches the running count of 1-labels;
/// on halt it draws a noisy error budget and rejection-samples lazy-random
/// hypotheses (rate 1/T) against a second AboveThreshold instance (epsilon/2)
/// until one fits the observed 1-labeled data, then commits to it. The
/// sampling loop is capped at 3T^2 iterations, falling back to all-zero.
class PointOverNLearner : public OnlineLearner {
 public:
  enum class Phase { Monitor, Committed };

  PointOverNLearner(std::uint64_t T, double epsilon, NoiseSource rng,
                    BudgetScope scope = {});

  Hypothesis predict() override;
  void observe(const LabeledExample& example) override;
  std::string name() const override { return "point-n"; }
  const PrivacyAccountant* accountant() const override { return accountant_; }
  std::optional<double> epsilon() const override { return epsilon_; }

  Phase phase() const { return committed_ ? Phase::Committed : Phase::Monitor; }
  const std::optional<Hypothesis>& committed() const { return committed_; }
  std::uint64_t sampling_iterations() const { return sampling_iterations_; }

 private:
  std::uint64_t T_;
  double epsilon_;
  std::unique_ptr<PrivacyAccountant> owned_;
  PrivacyAccountant* accountant_;
  PrivacyAccountant::NodeId monitor_res_, sampler_res_;
  NoiseSource rng_;
  std::optional<SvtInstance> monitor_;
  std::uint64_t sum_labels_ = 0;
  std::vector<std::pair<DomainPoint, std::uint64_t>> positive_counts_;
  std::optional<Hypothesis> committed_;
  std::uint64_t sampling_iterations_ = 0;
};

/// Learner for point functions over [d] against strong adaptive adversaries:
/// all-zero plus AboveThreshold on the mistake count; on halt report-noisy-max
/// over the per-point counts of (i, 1) examples picks the committed point
/// function.
class PointOverDLearner : public OnlineLearner {
 public:
  PointOverDLearner(std::uint64_t d, std::uint64_t T, double epsilon, NoiseSource rng,
                    BudgetScope scope = {});

  Hypothesis predict() override;
  void observe(const LabeledExample& example) override;
  std::string name() const override { return "point-d"; }
  const PrivacyAccountant* accountant() const override { return accountant_; }
  std::optional<double> epsilon() const override { return epsilon_; }

  const std::optional<Hypothesis>& committed() const { return committed_; }

 private:
  std::uint64_t d_, T_;
  double epsilon_;
  std::unique_ptr<PrivacyAccountant> owned_;
  PrivacyAccountant* accountant_;
  PrivacyAccountant::NodeId svt_res_, rnm_res_;
  NoiseSource rng_;
  std::optional<SvtInstance> monitor_;
  std::uint64_t mistakes_ = 0;
  std::vector<double> positive_counts_;
  std::optional<Hypothesis> committed_;
};

/// Noisy binary search for threshold functions over [d]. Plays f_mid, counts
/// mistakes per true label, and when an epoch's AboveThreshold fires compares
/// the counters under Laplace noise to decide the half to keep. Counters and
/// the noisy threshold reset on every move, so epochs act on disjoint data.
class ThresholdLearner : public OnlineLearner {
 public:
  ThresholdLearner(std::uint64_t d, std::uint64_t T, double epsilon, NoiseSource rng,
                   BudgetScope scope = {});

  Hypothesis predict() override;
  void observe(const LabeledExample& example) override;
  std::string name() const override { return "threshold"; }
  const PrivacyAccountant* accountant() const override { return accountant_; }
  std::optional<double> epsilon() const override { return epsilon_; }

  std::uint64_t lower() const { return l_; }
  std::uint64_t upper() const { return r_; }
  std::uint64_t current_mid() const { return mid_; }
  std::uint64_t epochs() const { return epochs_; }
  std::uint64_t label0_mistakes() const { return c0_; }
  std::uint64_t label1_mistakes() const { return c1_; }

 private:
  void open_epoch();

  std::uint64_t d_, T_;
  double epsilon_;
  std::unique_ptr<PrivacyAccountant> owned_;
  PrivacyAccountant* accountant_;
  Frac scale_;
  PrivacyAccountant::NodeId epochs_group_;
  PrivacyAccountant::NodeId svt_res_ = 0, compare_res_ = 0;
  NoiseSource rng_;
  std::optional<SvtInstance> monitor_;
  std::uint64_t l_, r_, mid_;
  std::uint64_t c0_ = 0, c1_ = 0;
  std::uint64_t epochs_ = 0;
};

/// Learner for a complementary pair {f1, f2 = 1 - f1}: majority vote over
/// per-bucket Laplace checks of f1's error count, bucket length
/// ceil(2 ln 3 / epsilon).
class ComplementaryLearner : public OnlineLearner {
 public:
  /// f1 and f2 must be complementary (caller contract; not validated, the
  /// domain may be infinite).
  ComplementaryLearner(Hypothesis f1, Hypothesis f2, std::uint64_t T, double epsilon,
                       NoiseSource rng, BudgetScope scope = {});

  Hypothesis predict() override;
  void observe(const LabeledExample& example) override;
  std::string name() const override { return "complementary"; }
  const PrivacyAccountant* accountant() const override { return accountant_; }
  std::optional<double> epsilon() const override { return epsilon_; }

  std::uint64_t bucket_size() const { return s_; }
  std::uint64_t votes_f1() const { return c1_; }
  std::uint64_t votes_f2() const { return c2_; }

 private:
  Hypothesis f1_, f2_;
  double epsilon_;
  std::uint64_t s_;
  std::unique_ptr<PrivacyAccountant> owned_;
  PrivacyAccountant* accountant_;
  Frac scale_;
  PrivacyAccountant::NodeId buckets_group_;
  PrivacyAccountant::NodeId bucket_res_;
  NoiseSource rng_;
  std::uint64_t t_ = 0;
  std::uint64_t c1_ = 0, c2_ = 0;
  std::uint64_t bucket_errors_ = 0;
};

/// Non-private baseline: all-zero until the first 1-labeled example, then the
/// point function at that example forever.
class FirstPositiveLearner : public OnlineLearner {
 public:
  Hypothesis predict() override;
  void observe(const LabeledExample& example) override;
  std::string name() const override { return "first-positive"; }

 private:
  std::optional<Hypothesis> committed_;
};

/// Emits a fixed hypothesis every round; test and baseline plumbing.
class FixedHypothesisLearner : public OnlineLearner {
 public:
  explicit FixedHypothesisLearner(Hypothesis h) : h_(std::move(h)) {}
  Hypothesis predict() override { return h_; }
  void observe(const LabeledExample&) override {}
  std::string name() const override { return "fixed"; }

 private:
  Hypothesis h_;
};

/// Realizable DP-OPE by trying experts in order: the current expert keeps
/// playing while a fresh AboveThreshold (parameter epsilon, threshold
/// 9 ln(2T^2)/epsilon) watches its segment loss; on halt the next expert
/// starts a new segment. Segments are disjoint, so the whole run is
/// epsilon-DP. Wraps around if every expert's segment exhausts.
class OpeSequential : public OpeAlgorithm {
 public:
  OpeSequential(std::size_t d, std::uint64_t T, double epsilon, NoiseSource rng,
                BudgetScope scope = {});

  std::size_t choose() override { return current_; }
  void observe(std::span<const double> losses) override;
  std::string name() const override { return "ope-seq"; }
  const PrivacyAccountant* accountant() const override { return accountant_; }
  std::optional<double> epsilon() const override { return epsilon_; }

  std::size_t current_expert() const { return current_; }
  std::uint64_t switches() const { return switches_; }

 private:
  void open_segment();

  std::size_t d_;
  std::uint64_t T_;
  double epsilon_;
  std::unique_ptr<PrivacyAccountant> owned_;
  PrivacyAccountant* accountant_;
  Frac scale_;
  PrivacyAccountant::NodeId segments_group_;
  PrivacyAccountant::NodeId svt_res_ = 0;
  NoiseSource rng_;
  std::optional<SvtInstance> monitor_;
  std::size_t current_ = 1;
  double segment_loss_ = 0.0;
  std::uint64_t switches_ = 0;
};

/// DP-OPE against adaptive adversaries (uniform sampling over an active set
/// with report-noisy-max elimination): eps1 = epsilon/2 for the epoch
/// AboveThreshold on the max epoch loss, eps2 = epsilon/(6d) for at most 3d
/// elimination mechanisms (two report-noisy-max sites plus the keep test).
class OpeAdaptiveCore : public OpeAlgorithm {
 public:
  OpeAdaptiveCore(std::size_t d, std::uint64_t T, double epsilon, NoiseSource rng,
                  BudgetScope scope = {});

  std::size_t choose() override;
  void observe(std::span<const double> losses) override;
  std::string name() const override { return "ope-adaptive-core"; }
  const PrivacyAccountant* accountant() const override { return accountant_; }
  std::optional<double> epsilon() const override { return epsilon_; }

  std::vector<std::size_t> active_experts() const;
  std::size_t active_count() const { return active_count_; }
  const std::vector<double>& total_losses() const { return a_; }
  double max_active_total_loss() const;

 private:
  void open_epoch();

  std::size_t d_;
  std::uint64_t T_;
  double epsilon_;
  std::unique_ptr<PrivacyAccountant> owned_;
  PrivacyAccountant* accountant_;
  Frac scale_;
  PrivacyAccountant::NodeId epochs_group_, elim_res_;
  PrivacyAccountant::NodeId svt_res_ = 0;
  std::uint64_t epoch_count_ = 0;
  NoiseSource rng_;
  std::optional<SvtInstance> monitor_;
  std::vector<bool> active_;
  std::size_t active_count_;
  std::vector<double> a_, c_;
  double keep_threshold_;
};

/// OpeAdaptiveCore run at epsilon/2, with an epsilon/2 AboveThreshold watching
/// the maximum active total loss; once it halts the algorithm switches to
/// OpeSequential with the full epsilon on the remaining (disjoint) rounds.
/// This trades the core's with-high-probability bound for one in expectation.
class OpeAdaptive : public OpeAlgorithm {
 public:
  OpeAdaptive(std::size_t d, std::uint64_t T, double epsilon, NoiseSource rng);

  std::size_t choose() override;
  void observe(std::span<const double> losses) override;
  std::string name() const override { return "ope-adaptive"; }
  const PrivacyAccountant* accountant() const override { return accountant_.get(); }
  std::optional<double> epsilon() const override { return epsilon_; }

  bool switched_to_fallback() const { return fallback_ != nullptr; }
  const OpeAdaptiveCore& core() const { return *core_; }

 private:
  std::size_t d_;
  std::uint64_t T_;
  double epsilon_;
  std::unique_ptr<PrivacyAccountant> accountant_;
  PrivacyAccountant::NodeId phase2_group_;
  PrivacyAccountant::NodeId outer_res_;
  NoiseSource rng_;
  std::unique_ptr<OpeAdaptiveCore> core_;
  std::optional<SvtInstance> outer_;
  std::unique_ptr<OpeSequential> fallback_;
};

using RepresentationSampler = std::function<std::vector<Hypothesis>(NoiseSource&)>;
using OpeBackendFactory =
    std::function<std::unique_ptr<OpeAlgorithm>(std::size_t num_experts, NoiseSource rng)>;

/// size i.i.d. lazy-random hypotheses with per-point rate 1/rate_denom.
RepresentationSampler point_representation_sampler(std::uint64_t rate_denom,
                                                   std::size_t size);

/// Reduction from online learning to OPE: sample a finite hypothesis list V
/// once, then play the expert the backend selects, charging each v its 0/1
/// error as loss.
class ReductionLearner : public OnlineLearner {
 public:
  ReductionLearner(const RepresentationSampler& sampler,
                   const OpeBackendFactory& backend_factory, std::uint64_t T,
                   double epsilon, NoiseSource rng);

  Hypothesis predict() override;
  void observe(const LabeledExample& example) override;
  std::string name() const override { return "reduction"; }
  const PrivacyAccountant* accountant() const override { return backend_->accountant(); }
  std::optional<double> epsilon() const override { return epsilon_; }

  const std::vector<Hypothesis>& sampled_hypotheses() const { return V_; }
  std::size_t current_index() const { return current_; }

 private:
  double epsilon_;
  NoiseSource rng_;
  std::vector<Hypothesis> V_;
  std::unique_ptr<OpeAlgorithm> backend_;
  std::size_t current_ = 1;
};

/// Learner descriptors: "point-n", "point-d:d=1024", "threshold:d=1024",
/// "complementary", "first-positive",
/// "reduction:sampler=point,backend=ope-seq,size=R".
std::unique_ptr<OnlineLearner> make_learner(const std::string& descriptor,
                                            std::uint64_t T, double epsilon,
                                            NoiseSource rng);

/// OPE descriptors: "ope-seq:d=16", "ope-adaptive:d=16".
std::unique_ptr<OpeAlgorithm> make_ope_algorithm(const std::string& descriptor,
                                                 std::uint64_t T, double epsilon,
                                                 NoiseSource rng);

/// True when the descriptor names an OPE algorithm rather than a hypothesis
/// learner.
bool is_ope_descriptor(const std::string& descriptor);

/// Number of experts d named by an OPE descriptor.
std::size_t ope_descriptor_dimension(const std::string& descriptor);

}  // namespace dponline
