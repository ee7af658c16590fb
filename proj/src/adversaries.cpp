#include "dponline/adversaries.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace dponline {

namespace {

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
  if (it == fields.end()) throw std::invalid_argument("descriptor: missing field " + key);
  if (it->second.empty() || it->second.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("descriptor: bad value for " + key);
  return std::stoull(it->second);
}

}  // namespace

void StreamAdversary::begin(std::uint64_t rounds) {
  if (stream_.size() != rounds)
    throw ProtocolError(0, "oblivious stream length " + std::to_string(stream_.size()) +
                               " does not match round count " + std::to_string(rounds));
}

LabeledExample StreamAdversary::next(std::uint64_t t, const Hypothesis*) {
  return stream_[t - 1];
}

std::string ConstAdversary::name() const {
  return "const:x=" + std::to_string(example_.x) + ",y=" + (example_.y ? "1" : "0");
}

// ---- MwAdversary ---------------------------------------------------------

MwAdversary::MwAdversary(std::uint64_t d, DomainPoint target, NoiseSource rng)
    : d_(d), target_(target), rng_(std::move(rng)) {
  if (d < 2) throw std::invalid_argument("mw adversary: d must be >= 2");
  if (target < 1 || target > d)
    throw std::invalid_argument("mw adversary: target outside [d]");
  delta_.assign(d_, 0);
  members_.emplace(0, std::vector<std::uint32_t>());
  auto& zero_group = members_[0];
  zero_group.reserve(d_);
  pos_.resize(d_);
  for (std::uint32_t j = 0; j < d_; ++j) {
    zero_group.push_back(j);
    pos_[j] = j;
  }
}

std::string MwAdversary::name() const { return "mw:d=" + std::to_string(d_); }

std::int64_t MwAdversary::log_weight(DomainPoint j) const {
  if (j < 1 || j > d_) throw std::invalid_argument("mw adversary: point outside [d]");
  return base_ + delta_[j - 1];
}

void MwAdversary::move_count(std::uint64_t j, std::int64_t to) {
  const std::int64_t from = delta_[j];
  auto& old_group = members_[from];
  const std::uint32_t back = old_group.back();
  old_group[pos_[j]] = back;
  pos_[back] = pos_[j];
  old_group.pop_back();
  if (old_group.empty()) members_.erase(from);
  auto& new_group = members_[to];
  pos_[j] = static_cast<std::uint32_t>(new_group.size());
  new_group.push_back(static_cast<std::uint32_t>(j));
  delta_[j] = to;
}

LabeledExample MwAdversary::step(std::uint64_t) {
  if (awaiting_update_)
    throw std::logic_error("mw adversary: step called twice without update");
  awaiting_update_ = true;
  if (rng_.bernoulli(0.5)) return LabeledExample{target_, true};

  // Sample j != target with probability proportional to e^{delta(j)}.
  const std::uint32_t target_index = static_cast<std::uint32_t>(target_ - 1);
  std::int64_t vmax = 0;
  bool have_max = false;
  for (const auto& [v, group] : members_) {
    std::size_t size = group.size();
    if (delta_[target_index] == v) --size;
    if (size == 0) continue;
    if (!have_max || v > vmax) {
      vmax = v;
      have_max = true;
    }
  }
  double total = 0.0;
  for (const auto& [v, group] : members_) {
    std::size_t size = group.size();
    if (delta_[target_index] == v) --size;
    if (size == 0) continue;
    total += static_cast<double>(size) * std::exp(static_cast<double>(v - vmax));
  }
  double draw = rng_.next_uniform() * total;
  for (const auto& [v, group] : members_) {
    std::size_t size = group.size();
    const bool has_target = delta_[target_index] == v;
    if (has_target) --size;
    if (size == 0) continue;
    const double weight = static_cast<double>(size) * std::exp(static_cast<double>(v - vmax));
    if (draw >= weight) {
      draw -= weight;
      continue;
    }
    std::uint64_t pick = rng_.uniform_below(size);
    std::uint32_t member = group[pick];
    if (has_target && member == target_index) member = group[size];  // last slot
    return LabeledExample{static_cast<DomainPoint>(member) + 1, false};
  }
  // Rounding left us past the last group; take its last eligible member.
  for (auto it = members_.rbegin(); it != members_.rend(); ++it) {
    for (auto jt = it->second.rbegin(); jt != it->second.rend(); ++jt) {
      if (*jt != target_index) return LabeledExample{static_cast<DomainPoint>(*jt) + 1, false};
    }
  }
  throw std::logic_error("mw adversary: no eligible point");
}

void MwAdversary::apply(const Hypothesis& h, int sign) {
  switch (h.kind()) {
    case Hypothesis::Kind::AllZero:
      return;
    case Hypothesis::Kind::AllOne:
      base_ += sign;
      return;
    case Hypothesis::Kind::Point: {
      const DomainPoint t = h.point_target();
      if (t >= 1 && t <= d_) move_count(t - 1, delta_[t - 1] + sign);
      return;
    }
    case Hypothesis::Kind::Threshold: {
      const std::uint64_t cut = std::min(h.threshold_cut(), d_);
      if (d_ - cut <= cut) {
        for (std::uint64_t j = cut; j < d_; ++j) move_count(j, delta_[j] + sign);
      } else {
        base_ += sign;
        for (std::uint64_t j = 0; j < cut; ++j) move_count(j, delta_[j] - sign);
      }
      return;
    }
    case Hypothesis::Kind::Complement:
      base_ += sign;
      apply(h.inner(), -sign);
      return;
    default:
      for (std::uint64_t j = 1; j <= d_; ++j) {
        if (h(j)) move_count(j - 1, delta_[j - 1] + sign);
      }
  }
}

void MwAdversary::update(const Hypothesis& h) {
  if (!awaiting_update_) throw std::logic_error("mw adversary: update before step");
  apply(h, +1);
  awaiting_update_ = false;
}

// ---- ThresholdRevealAdversary ----------------------------------------------

ThresholdRevealAdversary::ThresholdRevealAdversary(std::uint64_t d, std::uint64_t target_cut)
    : d_(d), target_(target_cut) {
  if (d < 1) throw std::invalid_argument("threshold-reveal: d must be >= 1");
  if (target_cut > d) throw std::invalid_argument("threshold-reveal: target outside [0, d]");
}

std::string ThresholdRevealAdversary::name() const {
  return "threshold-reveal:d=" + std::to_string(d_) + ",target=" + std::to_string(target_);
}

LabeledExample ThresholdRevealAdversary::next(std::uint64_t, const Hypothesis* current) {
  if (current && current->kind() == Hypothesis::Kind::Threshold) {
    const std::uint64_t m = current->threshold_cut();
    if (target_ < m) return LabeledExample{m, true};        // f_target(m) = 1, f_m(m) = 0
    if (target_ > m) return LabeledExample{m + 1, false};   // f_target(m+1) = 0, f_m(m+1) = 1
    const DomainPoint x = m >= 1 ? m : 1;
    return LabeledExample{x, x > target_};
  }
  // Generic learner: scan for a disagreement with the target labeling.
  if (current) {
    for (DomainPoint x = 1; x <= d_; ++x) {
      const bool truth = x > target_;
      if ((*current)(x) != truth) return LabeledExample{x, truth};
    }
  }
  return LabeledExample{1, 1 > target_};
}

// ---- Loss adversaries ---------------------------------------------------------

ChargeLastSampledAdversary::ChargeLastSampledAdversary(std::size_t d, std::size_t spare)
    : d_(d), spare_(spare) {
  if (spare < 1 || spare > d)
    throw std::invalid_argument("charge-last adversary: spare outside [d]");
}

std::string ChargeLastSampledAdversary::name() const {
  return "ope-charge-last:d=" + std::to_string(d_) + ",spare=" + std::to_string(spare_);
}

std::vector<double> ChargeLastSampledAdversary::next(std::uint64_t t, const std::size_t*) {
  std::vector<double> losses(d_, 0.0);
  const std::size_t charged = t == 1 ? 1 : last_;
  if (charged != spare_) losses[charged - 1] = 1.0;
  return losses;
}

ChargeAllButAdversary::ChargeAllButAdversary(std::size_t d, std::size_t spare)
    : d_(d), spare_(spare) {
  if (spare < 1 || spare > d)
    throw std::invalid_argument("charge-allbut adversary: spare outside [d]");
}

std::string ChargeAllButAdversary::name() const {
  return "ope-charge-allbut:d=" + std::to_string(d_) + ",spare=" + std::to_string(spare_);
}

std::vector<double> ChargeAllButAdversary::next(std::uint64_t, const std::size_t*) {
  std::vector<double> losses(d_, 1.0);
  losses[spare_ - 1] = 0.0;
  return losses;
}

void StreamLossAdversary::begin(std::uint64_t rounds) {
  if (losses_.size() != rounds)
    throw ProtocolError(0, "oblivious loss stream length does not match round count");
}

// ---- Oracles --------------------------------------------------------------------

double estimate_prediction_probability(const LearnerFactory& factory,
                                       const std::vector<LabeledExample>& stream,
                                       std::uint64_t t, DomainPoint u1, bool target_bit,
                                       std::uint64_t runs, NoiseSource& rng) {
  if (runs < 1) throw std::invalid_argument("estimate_prediction_probability: runs must be >= 1");
  if (t < 1 || stream.size() + 1 < t)
    throw std::invalid_argument("estimate_prediction_probability: t outside the stream");
  std::uint64_t hits = 0;
  for (std::uint64_t w = 0; w < runs; ++w) {
    auto learner = factory(rng.derive(w));
    for (std::uint64_t r = 1; r < t; ++r) {
      (void)learner->predict();
      learner->observe(stream[r - 1]);
    }
    if (learner->predict()(u1) == target_bit) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(runs);
}

double MonteCarloOracle::probability(const std::vector<LabeledExample>& stream,
                                     std::uint64_t t) {
  NoiseSource call_rng = rng_.derive(calls_++);
  return estimate_prediction_probability(factory_, stream, t, u1_, target_bit_, runs_,
                                         call_rng);
}

// ---- Packing construction --------------------------------------------------------

std::vector<LabeledExample> PackingOutput::materialize(std::size_t index) const {
  if (index < 1 || index > streams.size())
    throw std::invalid_argument("packing output: stream index out of range");
  std::vector<LabeledExample> out(T, dummy);
  for (std::uint64_t pos : streams[index - 1]) out[pos - 1] = insertion;
  return out;
}

std::string PackingOutput::to_json() const {
  nlohmann::json j;
  j["kind"] = is_witness ? "witness" : "family";
  j["T"] = T;
  j["k"] = k;
  j["dummy"] = {{"x", dummy.x}, {"y", dummy.y ? 1 : 0}};
  j["insertion"] = {{"x", insertion.x}, {"y", insertion.y ? 1 : 0}};
  j["streams"] = streams;
  j["timesteps"] = timesteps;
  return j.dump(2);
}

PackingOutput PackingOutput::from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  PackingOutput out;
  out.is_witness = j.at("kind").get<std::string>() == "witness";
  out.T = j.at("T").get<std::uint64_t>();
  out.k = j.at("k").get<std::uint64_t>();
  out.dummy = LabeledExample{j.at("dummy").at("x").get<DomainPoint>(),
                             j.at("dummy").at("y").get<int>() != 0};
  out.insertion = LabeledExample{j.at("insertion").at("x").get<DomainPoint>(),
                                 j.at("insertion").at("y").get<int>() != 0};
  out.streams = j.at("streams").get<std::vector<std::vector<std::uint64_t>>>();
  out.timesteps = j.at("timesteps").get<std::vector<std::uint64_t>>();
  return out;
}

PackingOutput build_packing_streams(LearnerOracle& oracle, std::uint64_t T,
                                    std::uint64_t k, const Hypothesis& f1,
                                    const Hypothesis& f2, DomainPoint u0, DomainPoint u1,
                                    const std::vector<bool>* kept) {
  if (k < 1 || k >= T)
    throw std::invalid_argument("build_packing_streams: need 1 <= k < T");
  if (kept && kept->size() != T)
    throw std::invalid_argument("build_packing_streams: kept mask length mismatch");
  PackingOutput out;
  out.T = T;
  out.k = k;
  out.dummy = LabeledExample{u0, f1(u0)};
  out.insertion = LabeledExample{u1, f2(u1)};
  const std::uint64_t m = (T + k - 1) / k;

  auto is_kept = [&](std::uint64_t t) { return !kept || (*kept)[t - 1]; };

  std::vector<std::vector<LabeledExample>> materialized;  // finished streams
  // Cached oracle probabilities on finished streams, -1 when not yet queried.
  std::vector<std::vector<double>> cached;

  auto prob_on = [&](std::size_t j, std::uint64_t t) {
    double& slot = cached[j][t - 1];
    if (slot < 0.0) slot = oracle.probability(materialized[j], t);
    return slot;
  };

  for (std::uint64_t i = 1; i <= m; ++i) {
    // Smallest kept t where every earlier stream's probability dropped below 1/3.
    std::optional<std::uint64_t> t_start;
    for (std::uint64_t t = 1; t <= T && !t_start; ++t) {
      if (!is_kept(t)) continue;
      bool all_low = true;
      for (std::size_t j = 0; j + 1 < i && all_low; ++j) {
        if (prob_on(j, t) >= 1.0 / 3.0) all_low = false;
      }
      if (all_low) t_start = t;
    }
    if (!t_start)
      throw ConstructionFailed(
          "no distinguishing timestep for stream " + std::to_string(i), out);
    if (i >= 2) out.timesteps.push_back(*t_start);

    std::vector<LabeledExample> stream(T, out.dummy);
    std::vector<std::uint64_t> insertions;
    for (std::uint64_t t = *t_start; t <= T; ++t) {
      if (!is_kept(t)) continue;
      if (oracle.probability(stream, t) >= 1.0 / 3.0) {
        stream[t - 1] = out.insertion;
        insertions.push_back(t);
      }
    }
    const bool witness = insertions.size() > k;
    out.streams.push_back(std::move(insertions));
    materialized.push_back(stream);
    cached.emplace_back(T, -1.0);
    if (witness) {
      out.is_witness = true;
      out.streams = {std::move(out.streams.back())};
      out.timesteps.clear();
      return out;
    }
  }
  return out;
}

WlogFilterResult wlog_filter(LearnerOracle& oracle, std::uint64_t T,
                             const LabeledExample& dummy) {
  const std::vector<LabeledExample> s0(T, dummy);
  WlogFilterResult result;
  result.kept.assign(T, false);
  std::vector<double> probs(T);
  std::uint64_t n1 = 0;
  for (std::uint64_t t = 1; t <= T; ++t) {
    probs[t - 1] = oracle.probability(s0, t);
    if (probs[t - 1] >= 0.5) ++n1;
  }
  result.swapped = n1 * 2 < T;
  for (std::uint64_t t = 1; t <= T; ++t)
    result.kept[t - 1] = result.swapped ? probs[t - 1] <= 0.5 : probs[t - 1] >= 0.5;
  return result;
}

std::size_t smoothed_binary_search_walk(std::size_t m,
                                        const std::function<bool(std::size_t)>& below,
                                        NoiseSource& rng) {
  std::size_t l = 1, r = m;
  while (l < r) {
    const std::size_t mid = (l + r) / 2;
    if (below(mid)) {
      if (rng.bernoulli(0.75))
        r = mid;
      else
        l = mid + 1;
    } else {
      if (rng.bernoulli(0.75))
        l = mid + 1;
      else
        r = mid;
    }
  }
  return l;
}

std::size_t smoothed_binary_search(const LearnerFactory& factory,
                                   const std::vector<LabeledExample>& stream,
                                   const std::vector<std::uint64_t>& timesteps,
                                   DomainPoint u1, bool f1_at_u1, NoiseSource& rng) {
  const std::size_t m = timesteps.size() + 1;
  if (m == 1) return 1;
  std::map<std::uint64_t, std::uint32_t> counts;
  for (std::uint64_t t : timesteps) counts[t] = 0;
  for (int w = 0; w < 360; ++w) {
    auto learner = factory(rng.derive(static_cast<std::uint64_t>(w)));
    for (std::uint64_t t = 1; t <= stream.size(); ++t) {
      const Hypothesis h = learner->predict();
      auto it = counts.find(t);
      if (it != counts.end() && h(u1) == f1_at_u1) ++it->second;
      learner->observe(stream[t - 1]);
    }
  }
  return smoothed_binary_search_walk(
      m, [&](std::size_t mid) { return counts.at(timesteps[mid - 1]) < 150; }, rng);
}

// ---- Shattered-tree composer -------------------------------------------------------

LdComposition compose_ld_sequences(const FiniteClass& cls, const ExampleTree& tree,
                                   const SegmentOracleFactory& oracle_factory,
                                   std::uint64_t T, std::uint64_t k) {
  LdComposition out;

  auto find_consistent = [&](const std::vector<std::pair<DomainPoint, bool>>& constraints)
      -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < cls.hypotheses.size(); ++i) {
      bool ok = true;
      for (const auto& [x, y] : constraints) {
        if (cls.hypotheses[i](x) != y) {
          ok = false;
          break;
        }
      }
      if (ok) return i;
    }
    return std::nullopt;
  };

  auto run_segment = [&](std::size_t f1_idx, std::size_t f2_idx, DomainPoint u0,
                         DomainPoint u1, std::uint64_t segment_T) {
    const Hypothesis& f1 = cls.hypotheses[f1_idx];
    const Hypothesis& f2 = cls.hypotheses[f2_idx];
    auto oracle = oracle_factory(f1, f2, u0, u1);
    PackingOutput packing = build_packing_streams(*oracle, segment_T, k, f1, f2, u0, u1);
    // Witnesses are the strongest attack; otherwise take the stream with the
    // most insertions.
    std::size_t chosen = 1;
    if (!packing.is_witness) {
      for (std::size_t s = 1; s < packing.streams.size(); ++s) {
        if (packing.streams[s].size() > packing.streams[chosen - 1].size()) chosen = s + 1;
      }
    }
    const auto segment = packing.materialize(chosen);
    out.stream.insert(out.stream.end(), segment.begin(), segment.end());
    const bool b = !packing.streams[chosen - 1].empty();
    out.segments.push_back(LdSegment{f1_idx, f2_idx, u0, u1, std::move(packing), chosen});
    return b;
  };

  if (tree.depth < 2) {
    const auto pair = find_non_complementary_pair(cls);
    if (!pair)
      throw std::invalid_argument(
          "compose_ld_sequences: class has no non-complementary pair");
    run_segment(pair->f1_index, pair->f2_index, pair->u0, pair->u1, T);
    return out;
  }

  const std::uint64_t num_segments = tree.depth / 2;
  const std::uint64_t segment_T = T / num_segments;
  if (segment_T <= k)
    throw std::invalid_argument("compose_ld_sequences: T too small for the tree depth");

  std::vector<std::pair<DomainPoint, bool>> constraints;
  std::size_t node = 0;
  for (std::uint64_t seg = 0; seg < num_segments; ++seg) {
    const DomainPoint u0 = tree.labels[node];
    const std::size_t u1_node = 2 * node + 1;
    const DomainPoint u1 = tree.labels[u1_node];

    auto with = [&](bool u1_label) {
      auto c = constraints;
      c.emplace_back(u0, false);
      c.emplace_back(u1, u1_label);
      return c;
    };
    const auto f1_idx = find_consistent(with(false));
    const auto f2_idx = find_consistent(with(true));
    if (!f1_idx || !f2_idx)
      throw std::logic_error("compose_ld_sequences: tree is not shattered by the class");

    const bool b = run_segment(*f1_idx, *f2_idx, u0, u1, segment_T);
    constraints.emplace_back(u0, false);
    constraints.emplace_back(u1, b);
    node = 2 * u1_node + (b ? 2 : 1);
  }
  return out;
}

// ---- Factories -------------------------------------------------------------------

std::unique_ptr<ExampleAdversary> make_example_adversary(const std::string& descriptor,
                                                         NoiseSource rng) {
  const auto colon = descriptor.find(':');
  const std::string head = descriptor.substr(0, colon);
  const auto fields =
      colon == std::string::npos ? std::map<std::string, std::string>{}
                                 : parse_fields(descriptor.substr(colon + 1));
  if (head == "const") {
    const auto y = field_u64(fields, "y");
    if (y > 1) throw std::invalid_argument("const adversary: y must be 0 or 1");
    return std::make_unique<ConstAdversary>(field_u64(fields, "x"), y == 1);
  }
  if (head == "mw") {
    const std::uint64_t d = field_u64(fields, "d");
    const DomainPoint target =
        fields.count("target") ? field_u64(fields, "target") : 1 + rng.uniform_below(d);
    return std::make_unique<MwAdversary>(d, target, std::move(rng));
  }
  if (head == "threshold-reveal") {
    return std::make_unique<ThresholdRevealAdversary>(field_u64(fields, "d"),
                                                      field_u64(fields, "target"));
  }
  throw std::invalid_argument("unknown adversary descriptor: " + descriptor);
}

std::unique_ptr<LossAdversary> make_loss_adversary(const std::string& descriptor) {
  const auto colon = descriptor.find(':');
  const std::string head = descriptor.substr(0, colon);
  const auto fields =
      colon == std::string::npos ? std::map<std::string, std::string>{}
                                 : parse_fields(descriptor.substr(colon + 1));
  if (head == "ope-charge-last")
    return std::make_unique<ChargeLastSampledAdversary>(field_u64(fields, "d"),
                                                        field_u64(fields, "spare"));
  if (head == "ope-charge-allbut")
    return std::make_unique<ChargeAllButAdversary>(field_u64(fields, "d"),
                                                   field_u64(fields, "spare"));
  if (head == "ope-zero") return std::make_unique<ZeroLossAdversary>(field_u64(fields, "d"));
  throw std::invalid_argument("unknown loss adversary descriptor: " + descriptor);
}

}  // namespace dponline
