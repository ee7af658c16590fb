#include "dponline/learners.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace dponline {

namespace {

struct Binding {
  std::unique_ptr<PrivacyAccountant> owned;
  PrivacyAccountant* acct;
  PrivacyAccountant::NodeId parent;
  Frac scale;
};

Binding bind_scope(const BudgetScope& scope, double epsilon,
                   PrivacyAccountant::Combine root_kind) {
  Binding b;
  if (scope.accountant) {
    b.acct = scope.accountant;
    b.parent = scope.parent;
    b.scale = scope.scale;
  } else {
    b.owned = std::make_unique<PrivacyAccountant>(epsilon, root_kind);
    b.acct = b.owned.get();
    b.parent = b.owned->root();
    b.scale = Frac(1, 1);
  }
  return b;
}

void require_positive(double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("learner: epsilon must be positive");
}

void require_rounds(std::uint64_t T) {
  if (T < 1) throw std::invalid_argument("learner: T must be >= 1");
}

std::map<std::string, std::string> parse_fields(const std::string& body) {
  std::map<std::string, std::string> fields;
  std::size_t pos = 0;
  while (pos < body.size()) {
    const auto comma = body.find(',', pos);
    const std::string item =
        body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument("descriptor: expected key=value, got " + item);
    fields[item.substr(0, eq)] = item.substr(eq + 1);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return fields;
}

std::uint64_t field_u64(const std::map<std::string, std::string>& fields,
                        const std::string& key) {
  auto it = fields.find(key);
  if (it == fields.end())
    throw std::invalid_argument("descriptor: missing field " + key);
  if (it->second.empty() || it->second.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("descriptor: bad value for " + key);
  return std::stoull(it->second);
}

}  // namespace

// ---- PointOverNLearner -------------------------------------------------

PointOverNLearner::PointOverNLearner(std::uint64_t T, double epsilon, NoiseSource rng,
                                     BudgetScope scope)
    : T_(T), epsilon_(epsilon), rng_(std::move(rng)) {
  require_rounds(T);
  require_positive(epsilon);
  Binding b = bind_scope(scope, epsilon, PrivacyAccountant::Combine::Sum);
  owned_ = std::move(b.owned);
  accountant_ = b.acct;
  monitor_res_ = accountant_->reserve(b.parent, "monitor-svt", b.scale * Frac(1, 2));
  sampler_res_ = accountant_->reserve(b.parent, "sampler-svt", b.scale * Frac(1, 2));
  const double ep = accountant_->epsilon_for(monitor_res_);
  const double Td = static_cast<double>(T_);
  const double threshold =
      20.0 * std::log(12.0 * Td * Td * Td) / ep + 8.0 * std::log(6.0 * Td * Td) / ep;
  accountant_->charge(monitor_res_, "svt.init");
  monitor_.emplace(threshold, ep, rng_);
}

Hypothesis PointOverNLearner::predict() {
  return committed_ ? *committed_ : Hypothesis::all_zero();
}

void PointOverNLearner::observe(const LabeledExample& example) {
  if (committed_) return;
  if (example.y) {
    ++sum_labels_;
    bool found = false;
    for (auto& [x, count] : positive_counts_) {
      if (x == example.x) {
        ++count;
        found = true;
        break;
      }
    }
    if (!found) positive_counts_.emplace_back(example.x, 1);
  }
  accountant_->note(monitor_res_, "svt.query");
  if (monitor_->query(static_cast<double>(sum_labels_), rng_) !=
      SvtInstance::Answer::AboveAndHalt)
    return;

  // Rejection-sample a hypothesis consistent with the observed 1-labels. The
  // acceptance test "err(h) + Lap(4/ep) <= Rhat" is AboveThreshold on -err
  // with threshold -R (Laplace noise is symmetric).
  const double ep = accountant_->epsilon_for(sampler_res_);
  const double Td = static_cast<double>(T_);
  const double budget = 12.0 * std::log(12.0 * Td * Td * Td) / ep;
  accountant_->charge(sampler_res_, "svt.init");
  SvtInstance sampler(-budget, ep, rng_);
  const std::uint64_t cap = 3 * T_ * T_;
  for (std::uint64_t iter = 0; iter < cap; ++iter) {
    ++sampling_iterations_;
    Hypothesis h = sample_point_representation(T_, rng_);
    std::uint64_t errors = 0;
    for (const auto& [x, count] : positive_counts_) {
      if (!h(x)) errors += count;
    }
    accountant_->note(sampler_res_, "svt.query");
    if (sampler.query(-static_cast<double>(errors), rng_) ==
        SvtInstance::Answer::AboveAndHalt) {
      committed_ = std::move(h);
      return;
    }
  }
  committed_ = Hypothesis::all_zero();  // sampling cap exhausted
}

// ---- PointOverDLearner -------------------------------------------------

PointOverDLearner::PointOverDLearner(std::uint64_t d, std::uint64_t T, double epsilon,
                                     NoiseSource rng, BudgetScope scope)
    : d_(d), T_(T), epsilon_(epsilon), rng_(std::move(rng)) {
  if (d < 1) throw std::invalid_argument("point-d learner: d must be >= 1");
  require_rounds(T);
  require_positive(epsilon);
  Binding b = bind_scope(scope, epsilon, PrivacyAccountant::Combine::Sum);
  owned_ = std::move(b.owned);
  accountant_ = b.acct;
  svt_res_ = accountant_->reserve(b.parent, "mistake-svt", b.scale * Frac(1, 2));
  rnm_res_ = accountant_->reserve(b.parent, "noisy-max", b.scale * Frac(1, 2));
  positive_counts_.assign(d_, 0.0);
  const double ep = accountant_->epsilon_for(svt_res_);
  const double Td = static_cast<double>(T_);
  const double threshold = 3.0 * (std::log(static_cast<double>(d_)) + std::log(2.0 * Td)) / ep +
                           8.0 * std::log(4.0 * Td * Td) / ep;
  accountant_->charge(svt_res_, "svt.init");
  monitor_.emplace(threshold, ep, rng_);
}

Hypothesis PointOverDLearner::predict() {
  return committed_ ? *committed_ : Hypothesis::all_zero();
}

void PointOverDLearner::observe(const LabeledExample& example) {
  if (committed_) return;
  if (example.y) {
    ++mistakes_;  // the all-zero hypothesis errs exactly on 1-labels
    if (example.x <= d_) positive_counts_[example.x - 1] += 1.0;
  }
  accountant_->note(svt_res_, "svt.query");
  if (monitor_->query(static_cast<double>(mistakes_), rng_) !=
      SvtInstance::Answer::AboveAndHalt)
    return;
  accountant_->charge(rnm_res_, "report-noisy-max");
  const std::size_t index =
      report_noisy_max(positive_counts_, accountant_->epsilon_for(rnm_res_), rng_);
  committed_ = Hypothesis::point(static_cast<DomainPoint>(index + 1));
}

// ---- ThresholdLearner ---------------------------------------------------

ThresholdLearner::ThresholdLearner(std::uint64_t d, std::uint64_t T, double epsilon,
                                   NoiseSource rng, BudgetScope scope)
    : d_(d), T_(T), epsilon_(epsilon), rng_(std::move(rng)) {
  if (d < 1) throw std::invalid_argument("threshold learner: d must be >= 1");
  require_rounds(T);
  require_positive(epsilon);
  Binding b = bind_scope(scope, epsilon, PrivacyAccountant::Combine::Max);
  owned_ = std::move(b.owned);
  accountant_ = b.acct;
  scale_ = b.scale;
  epochs_group_ = accountant_->add_group(b.parent, "epochs", PrivacyAccountant::Combine::Max);
  l_ = 0;
  r_ = d_;
  mid_ = (l_ + r_) / 2;
  open_epoch();
}

void ThresholdLearner::open_epoch() {
  const std::string tag = std::to_string(epochs_);
  const auto group =
      accountant_->add_group(epochs_group_, "epoch-" + tag, PrivacyAccountant::Combine::Sum);
  svt_res_ = accountant_->reserve(group, "epoch-svt-" + tag, scale_ * Frac(1, 2));
  compare_res_ = accountant_->reserve(group, "epoch-compare-" + tag, scale_ * Frac(1, 2));
  const double ep = accountant_->epsilon_for(svt_res_);
  const double Td = static_cast<double>(T_);
  accountant_->charge(svt_res_, "svt.init");
  monitor_.emplace(16.0 * std::log(4.0 * Td * Td) / ep, ep, rng_);
}

Hypothesis ThresholdLearner::predict() { return Hypothesis::threshold(mid_); }

void ThresholdLearner::observe(const LabeledExample& example) {
  const bool prediction = example.x > mid_;
  if (prediction != example.y) {
    if (example.y)
      ++c1_;
    else
      ++c0_;
  }
  if (l_ >= r_) return;  // interval pinned; no further moves
  accountant_->note(svt_res_, "svt.query");
  if (monitor_->query(static_cast<double>(c0_ + c1_), rng_) !=
      SvtInstance::Answer::AboveAndHalt)
    return;
  accountant_->charge(compare_res_, "laplace");
  const double noisy_c0 =
      laplace_mechanism(static_cast<double>(c0_), 1.0, accountant_->epsilon_for(compare_res_), rng_);
  if (noisy_c0 > static_cast<double>(c1_)) {
    l_ = std::min(mid_ + 1, r_);
  } else {
    // mid-1 can undershoot l when the interval has length 2; clamp so the
    // invariant l <= r always holds.
    r_ = mid_ > l_ ? mid_ - 1 : l_;
  }
  mid_ = (l_ + r_) / 2;
  c0_ = 0;
  c1_ = 0;
  ++epochs_;
  open_epoch();
}

// ---- ComplementaryLearner ------------------------------------------------

ComplementaryLearner::ComplementaryLearner(Hypothesis f1, Hypothesis f2, std::uint64_t T,
                                           double epsilon, NoiseSource rng,
                                           BudgetScope scope)
    : f1_(std::move(f1)), f2_(std::move(f2)), epsilon_(epsilon), rng_(std::move(rng)) {
  require_rounds(T);
  require_positive(epsilon);
  s_ = static_cast<std::uint64_t>(std::ceil(2.0 * std::log(3.0) / epsilon));
  Binding b = bind_scope(scope, epsilon, PrivacyAccountant::Combine::Max);
  owned_ = std::move(b.owned);
  accountant_ = b.acct;
  scale_ = b.scale;
  buckets_group_ = accountant_->add_group(b.parent, "buckets", PrivacyAccountant::Combine::Max);
  bucket_res_ = accountant_->reserve(buckets_group_, "bucket-0", scale_);
}

Hypothesis ComplementaryLearner::predict() { return c1_ > c2_ ? f1_ : f2_; }

void ComplementaryLearner::observe(const LabeledExample& example) {
  ++t_;
  if (f1_(example.x) != example.y) ++bucket_errors_;
  if (t_ % s_ != 0) return;
  accountant_->charge(bucket_res_, "laplace");
  const double noisy = laplace_mechanism(static_cast<double>(bucket_errors_), 1.0,
                                         accountant_->epsilon_for(bucket_res_), rng_);
  if (noisy < static_cast<double>(s_) / 2.0)
    ++c1_;
  else
    ++c2_;
  bucket_errors_ = 0;
  bucket_res_ = accountant_->reserve(buckets_group_,
                                     "bucket-" + std::to_string(t_ / s_), scale_);
}

// ---- FirstPositiveLearner --------------------------------------------------

Hypothesis FirstPositiveLearner::predict() {
  return committed_ ? *committed_ : Hypothesis::all_zero();
}

void FirstPositiveLearner::observe(const LabeledExample& example) {
  if (!committed_ && example.y) committed_ = Hypothesis::point(example.x);
}

// ---- OpeSequential ----------------------------------------------------------

OpeSequential::OpeSequential(std::size_t d, std::uint64_t T, double epsilon,
                             NoiseSource rng, BudgetScope scope)
    : d_(d), T_(T), epsilon_(epsilon), rng_(std::move(rng)) {
  if (d < 1) throw std::invalid_argument("ope-seq: d must be >= 1");
  require_rounds(T);
  require_positive(epsilon);
  Binding b = bind_scope(scope, epsilon, PrivacyAccountant::Combine::Max);
  owned_ = std::move(b.owned);
  accountant_ = b.acct;
  scale_ = b.scale;
  segments_group_ =
      accountant_->add_group(b.parent, "segments", PrivacyAccountant::Combine::Max);
  open_segment();
}

void OpeSequential::open_segment() {
  svt_res_ = accountant_->reserve(segments_group_,
                                  "segment-" + std::to_string(switches_), scale_);
  const double ep = accountant_->epsilon_for(svt_res_);
  const double Td = static_cast<double>(T_);
  accountant_->charge(svt_res_, "svt.init");
  monitor_.emplace(9.0 * std::log(2.0 * Td * Td) / ep, ep, rng_);
}

void OpeSequential::observe(std::span<const double> losses) {
  segment_loss_ += losses[current_ - 1];
  accountant_->note(svt_res_, "svt.query");
  if (monitor_->query(segment_loss_, rng_) != SvtInstance::Answer::AboveAndHalt) return;
  ++switches_;
  current_ = current_ % d_ + 1;
  segment_loss_ = 0.0;
  open_segment();
}

// ---- OpeAdaptiveCore ---------------------------------------------------------

OpeAdaptiveCore::OpeAdaptiveCore(std::size_t d, std::uint64_t T, double epsilon,
                                 NoiseSource rng, BudgetScope scope)
    : d_(d), T_(T), epsilon_(epsilon), rng_(std::move(rng)) {
  if (d < 1) throw std::invalid_argument("ope-adaptive: d must be >= 1");
  require_rounds(T);
  require_positive(epsilon);
  Binding b = bind_scope(scope, epsilon, PrivacyAccountant::Combine::Sum);
  owned_ = std::move(b.owned);
  accountant_ = b.acct;
  scale_ = b.scale;
  epochs_group_ = accountant_->add_group(b.parent, "svt-epochs", PrivacyAccountant::Combine::Max);
  elim_res_ = accountant_->reserve(b.parent, "elimination",
                                   scale_ * Frac(1, 6 * static_cast<std::int64_t>(d_)),
                                   3 * d_);
  active_.assign(d_, true);
  active_count_ = d_;
  a_.assign(d_, 0.0);
  c_.assign(d_, 0.0);
  keep_threshold_ = std::log(3.0 * static_cast<double>(d_) * static_cast<double>(d_)) /
                    accountant_->epsilon_for(elim_res_);
  open_epoch();
}

void OpeAdaptiveCore::open_epoch() {
  svt_res_ = accountant_->reserve(epochs_group_, "epoch-" + std::to_string(epoch_count_++),
                                  scale_ * Frac(1, 2));
  const double eps1 = accountant_->epsilon_for(svt_res_);
  const double eps2 = accountant_->epsilon_for(elim_res_);
  const double Td = static_cast<double>(T_);
  const double dd = static_cast<double>(d_);
  const double threshold = 8.0 * std::log(2.0 * Td * Td) / eps1 +
                           3.0 * (std::log(dd) + std::log(3.0 * dd * dd)) / eps2;
  accountant_->charge(svt_res_, "svt.init");
  monitor_.emplace(threshold, eps1, rng_);
}

std::size_t OpeAdaptiveCore::choose() {
  if (active_count_ == 1) {
    for (std::size_t j = 0; j < d_; ++j) {
      if (active_[j]) return j + 1;
    }
  }
  std::uint64_t pick = rng_.uniform_below(active_count_);
  for (std::size_t j = 0; j < d_; ++j) {
    if (active_[j] && pick-- == 0) return j + 1;
  }
  throw std::logic_error("ope-adaptive: empty active set");
}

void OpeAdaptiveCore::observe(std::span<const double> losses) {
  for (std::size_t j = 0; j < d_; ++j) {
    a_[j] += losses[j];
    c_[j] += losses[j];
  }
  if (active_count_ <= 1) return;
  double max_epoch_loss = 0.0;
  for (std::size_t j = 0; j < d_; ++j) {
    if (active_[j]) max_epoch_loss = std::max(max_epoch_loss, c_[j]);
  }
  accountant_->note(svt_res_, "svt.query");
  if (monitor_->query(max_epoch_loss, rng_) != SvtInstance::Answer::AboveAndHalt) return;

  const double eps2 = accountant_->epsilon_for(elim_res_);
  auto rnm_pick = [&]() {
    std::vector<double> values;
    std::vector<std::size_t> index;
    values.reserve(active_count_);
    index.reserve(active_count_);
    for (std::size_t j = 0; j < d_; ++j) {
      if (active_[j]) {
        values.push_back(a_[j]);
        index.push_back(j);
      }
    }
    accountant_->charge(elim_res_, "report-noisy-max");
    return index[report_noisy_max(values, eps2, rng_)];
  };

  std::size_t i = rnm_pick();
  active_[i] = false;
  --active_count_;
  while (!active_[i] && active_count_ > 1) {
    i = rnm_pick();
    accountant_->charge(elim_res_, "laplace");
    if (laplace_mechanism(a_[i], 1.0, eps2, rng_) > keep_threshold_) {
      active_[i] = false;
      --active_count_;
    }
  }
  std::fill(c_.begin(), c_.end(), 0.0);
  open_epoch();
}

std::vector<std::size_t> OpeAdaptiveCore::active_experts() const {
  std::vector<std::size_t> out;
  out.reserve(active_count_);
  for (std::size_t j = 0; j < d_; ++j) {
    if (active_[j]) out.push_back(j + 1);
  }
  return out;
}

double OpeAdaptiveCore::max_active_total_loss() const {
  double best = 0.0;
  for (std::size_t j = 0; j < d_; ++j) {
    if (active_[j]) best = std::max(best, a_[j]);
  }
  return best;
}

// ---- OpeAdaptive (wrapped) -----------------------------------------------------

OpeAdaptive::OpeAdaptive(std::size_t d, std::uint64_t T, double epsilon, NoiseSource rng)
    : d_(d), T_(T), epsilon_(epsilon), rng_(std::move(rng)) {
  if (d < 1) throw std::invalid_argument("ope-adaptive: d must be >= 1");
  require_rounds(T);
  require_positive(epsilon);
  accountant_ =
      std::make_unique<PrivacyAccountant>(epsilon, PrivacyAccountant::Combine::Max);
  const auto phase1 =
      accountant_->add_group(accountant_->root(), "phase1", PrivacyAccountant::Combine::Sum);
  phase2_group_ =
      accountant_->add_group(accountant_->root(), "phase2", PrivacyAccountant::Combine::Sum);
  outer_res_ = accountant_->reserve(phase1, "outer-svt", Frac(1, 2));
  core_ = std::make_unique<OpeAdaptiveCore>(
      d, T, epsilon / 2.0, rng_.derive("core"),
      BudgetScope{accountant_.get(), phase1, Frac(1, 2)});
  const double ep = accountant_->epsilon_for(outer_res_);
  const double Td = static_cast<double>(T_);
  const double dd = static_cast<double>(d_);
  const double threshold = 2.0 * std::log(3.0 * dd * dd) / ep +
                           3.0 * (std::log(dd) + std::log(3.0 * dd * dd)) / ep +
                           16.0 * std::log(2.0 * Td * Td) / ep + 1.0 +
                           4.0 * std::log(Td * Td) / ep;
  accountant_->charge(outer_res_, "svt.init");
  outer_.emplace(threshold, ep, rng_);
}

std::size_t OpeAdaptive::choose() {
  return fallback_ ? fallback_->choose() : core_->choose();
}

void OpeAdaptive::observe(std::span<const double> losses) {
  if (fallback_) {
    fallback_->observe(losses);
    return;
  }
  core_->observe(losses);
  accountant_->note(outer_res_, "svt.query");
  if (outer_->query(core_->max_active_total_loss(), rng_) ==
      SvtInstance::Answer::AboveAndHalt) {
    fallback_ = std::make_unique<OpeSequential>(
        d_, T_, epsilon_, rng_.derive("fallback"),
        BudgetScope{accountant_.get(), phase2_group_, Frac(1, 1)});
  }
}

// ---- ReductionLearner -----------------------------------------------------------

RepresentationSampler point_representation_sampler(std::uint64_t rate_denom,
                                                   std::size_t size) {
  if (rate_denom < 1)
    throw std::invalid_argument("point sampler: rate denominator must be >= 1");
  return [rate_denom, size](NoiseSource& rng) {
    std::vector<Hypothesis> out;
    out.reserve(size);
    for (std::size_t i = 0; i < size; ++i)
      out.push_back(sample_point_representation(rate_denom, rng));
    return out;
  };
}

ReductionLearner::ReductionLearner(const RepresentationSampler& sampler,
                                   const OpeBackendFactory& backend_factory,
                                   std::uint64_t T, double epsilon, NoiseSource rng)
    : epsilon_(epsilon), rng_(std::move(rng)) {
  require_rounds(T);
  require_positive(epsilon);
  NoiseSource sample_rng = rng_.derive("representation");
  V_ = sampler(sample_rng);
  if (V_.empty())
    throw std::invalid_argument("reduction learner: sampler yielded no hypotheses");
  backend_ = backend_factory(V_.size(), rng_.derive("backend"));
}

Hypothesis ReductionLearner::predict() {
  current_ = backend_->choose();
  return V_[current_ - 1];
}

void ReductionLearner::observe(const LabeledExample& example) {
  std::vector<double> losses(V_.size());
  for (std::size_t i = 0; i < V_.size(); ++i)
    losses[i] = V_[i](example.x) != example.y ? 1.0 : 0.0;
  backend_->observe(losses);
}

// ---- Descriptor factories ---------------------------------------------------------

namespace {

std::pair<std::string, std::map<std::string, std::string>> split_descriptor(
    const std::string& descriptor) {
  const auto colon = descriptor.find(':');
  const std::string head = descriptor.substr(0, colon);
  const std::string body = colon == std::string::npos ? "" : descriptor.substr(colon + 1);
  return {head, body.empty() ? std::map<std::string, std::string>{} : parse_fields(body)};
}

}  // namespace

std::unique_ptr<OnlineLearner> make_learner(const std::string& descriptor,
                                            std::uint64_t T, double epsilon,
                                            NoiseSource rng) {
  const auto [head, fields] = split_descriptor(descriptor);
  if (head == "point-n") return std::make_unique<PointOverNLearner>(T, epsilon, std::move(rng));
  if (head == "point-d")
    return std::make_unique<PointOverDLearner>(field_u64(fields, "d"), T, epsilon,
                                               std::move(rng));
  if (head == "threshold")
    return std::make_unique<ThresholdLearner>(field_u64(fields, "d"), T, epsilon,
                                              std::move(rng));
  if (head == "complementary")
    return std::make_unique<ComplementaryLearner>(Hypothesis::all_one(),
                                                  Hypothesis::all_zero(), T, epsilon,
                                                  std::move(rng));
  if (head == "first-positive") return std::make_unique<FirstPositiveLearner>();
  if (head == "reduction") {
    const auto sampler_it = fields.find("sampler");
    if (sampler_it == fields.end() || sampler_it->second != "point")
      throw std::invalid_argument("reduction descriptor: only sampler=point is available");
    const auto backend_it = fields.find("backend");
    if (backend_it == fields.end() || backend_it->second != "ope-seq")
      throw std::invalid_argument("reduction descriptor: only backend=ope-seq is available");
    const std::size_t size =
        fields.count("size") ? static_cast<std::size_t>(field_u64(fields, "size"))
                             : static_cast<std::size_t>(T);
    return std::make_unique<ReductionLearner>(
        point_representation_sampler(T, size),
        [T, epsilon](std::size_t experts, NoiseSource backend_rng) {
          return std::make_unique<OpeSequential>(experts, T, epsilon,
                                                 std::move(backend_rng));
        },
        T, epsilon, std::move(rng));
  }
  throw std::invalid_argument("unknown learner descriptor: " + descriptor);
}

std::unique_ptr<OpeAlgorithm> make_ope_algorithm(const std::string& descriptor,
                                                 std::uint64_t T, double epsilon,
                                                 NoiseSource rng) {
  const auto [head, fields] = split_descriptor(descriptor);
  if (head == "ope-seq")
    return std::make_unique<OpeSequential>(field_u64(fields, "d"), T, epsilon,
                                           std::move(rng));
  if (head == "ope-adaptive")
    return std::make_unique<OpeAdaptive>(field_u64(fields, "d"), T, epsilon,
                                         std::move(rng));
  if (head == "ope-adaptive-core")
    return std::make_unique<OpeAdaptiveCore>(field_u64(fields, "d"), T, epsilon,
                                             std::move(rng));
  throw std::invalid_argument("unknown OPE descriptor: " + descriptor);
}

bool is_ope_descriptor(const std::string& descriptor) {
  const std::string head = descriptor.substr(0, descriptor.find(':'));
  return head == "ope-seq" || head == "ope-adaptive" || head == "ope-adaptive-core";
}

std::size_t ope_descriptor_dimension(const std::string& descriptor) {
  const auto [head, fields] = split_descriptor(descriptor);
  return static_cast<std::size_t>(field_u64(fields, "d"));
}

}  // namespace dponline
