#include "dponline/sweep.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "dponline/adversaries.hpp"
#include "dponline/learners.hpp"

namespace dponline {

namespace {

std::string substitute_d(const std::string& descriptor, std::uint64_t d) {
  std::string out = descriptor;
  const std::string token = "{d}";
  std::size_t pos;
  while ((pos = out.find(token)) != std::string::npos)
    out.replace(pos, token.size(), std::to_string(d));
  return out;
}

}  // namespace

std::string ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["learner"] = learner;
  j["adversary"] = adversary;
  j["epsilon"] = epsilon;
  j["delta"] = delta;
  j["rounds"] = rounds;
  j["dims"] = dims;
  j["replications"] = replications;
  j["seed"] = seed;
  j["out_dir"] = out_dir;
  j["zero_noise"] = zero_noise;
  j["emit_rounds"] = emit_rounds;
  j["realizable"] = realizable;
  return j.dump(2);
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  ExperimentConfig c;
  c.learner = j.at("learner").get<std::string>();
  c.adversary = j.at("adversary").get<std::string>();
  c.epsilon = j.value("epsilon", 1.0);
  c.delta = j.value("delta", 0.0);
  c.rounds = j.at("rounds").get<std::vector<std::uint64_t>>();
  c.dims = j.value("dims", std::vector<std::uint64_t>{});
  c.replications = j.value("replications", std::uint64_t{1});
  c.seed = j.value("seed", std::uint64_t{0});
  c.out_dir = j.value("out_dir", std::string{"out"});
  c.zero_noise = j.value("zero_noise", false);
  c.emit_rounds = j.value("emit_rounds", true);
  c.realizable = j.value("realizable", false);
  if (c.rounds.empty()) throw std::invalid_argument("config: rounds must be non-empty");
  for (std::uint64_t T : c.rounds) {
    if (T < 1) throw std::invalid_argument("config: rounds must be positive");
  }
  if (c.replications < 1) throw std::invalid_argument("config: replications must be >= 1");
  return c;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t T, std::uint64_t d,
                          std::uint64_t rep) {
  std::uint64_t h = hash_combine(master, hash_bytes("cell"));
  h = hash_combine(h, T);
  h = hash_combine(h, d);
  h = hash_combine(h, hash_bytes("rep"));
  h = hash_combine(h, rep);
  return h;
}

namespace {

Transcript ope_rounds_to_transcript(const std::vector<OpeRoundRecord>& rounds) {
  Transcript t;
  t.reserve(rounds.size());
  for (const auto& r : rounds) {
    const bool mistake = r.loss > 0.0;
    t.push_back(TranscriptRow{r.t, static_cast<DomainPoint>(r.expert), mistake, false,
                              mistake, "expert:" + std::to_string(r.expert)});
  }
  return t;
}

struct CellOutcome {
  std::vector<double> scores;
  std::vector<double> regrets;
};

CellOutcome run_cell(const ExperimentConfig& config, std::uint64_t T, std::uint64_t d,
                     const GameSink* sink) {
  const std::string learner_desc = substitute_d(config.learner, d);
  const std::string adversary_desc = substitute_d(config.adversary, d);
  const bool ope = is_ope_descriptor(learner_desc);
  CellOutcome outcome;
  outcome.scores.reserve(config.replications);
  outcome.regrets.reserve(config.replications);
  for (std::uint64_t rep = 0; rep < config.replications; ++rep) {
    const std::uint64_t seed = derive_seed(config.seed, T, d, rep);
    NoiseSource master(seed, config.zero_noise);
    GameRecord record;
    record.learner = learner_desc;
    record.adversary = adversary_desc;
    record.T = T;
    record.d = d;
    record.rep = rep;
    record.seed = seed;
    Transcript transcript;
    if (ope) {
      auto algorithm =
          make_ope_algorithm(learner_desc, T, config.epsilon, master.derive("learner"));
      auto adversary = make_loss_adversary(adversary_desc);
      const std::size_t experts = ope_descriptor_dimension(learner_desc);
      OpeGameResult result =
          run_ope_game(*algorithm, *adversary, experts, T, config.realizable);
      record.score = result.total_loss;
      record.regret = result.regret;
      if (sink) transcript = ope_rounds_to_transcript(result.rounds);
    } else {
      auto learner =
          make_learner(learner_desc, T, config.epsilon, master.derive("learner"));
      auto adversary = make_example_adversary(adversary_desc, master.derive("adversary"));
      std::unique_ptr<RealizabilityChecker> checker;
      if (config.realizable) checker = point_over_n_checker();
      GameResult result = run_game(*learner, *adversary, T, checker.get());
      record.score = static_cast<double>(result.mistakes);
      record.regret = static_cast<double>(result.regret);
      if (sink) transcript = std::move(result.transcript);
    }
    outcome.scores.push_back(record.score);
    outcome.regrets.push_back(record.regret);
    if (sink) (*sink)(record, transcript);
  }
  return outcome;
}

}  // namespace

std::vector<SummaryStats> run_sweep(const ExperimentConfig& config, const GameSink* sink) {
  if (config.rounds.empty()) throw std::invalid_argument("run_sweep: rounds must be non-empty");
  // Validate descriptors before any games run.
  {
    const std::uint64_t probe_d = config.dims.empty() ? 1 : config.dims.front();
    NoiseSource probe(0);
    const std::string learner_desc = substitute_d(config.learner, probe_d);
    if (is_ope_descriptor(learner_desc)) {
      (void)make_ope_algorithm(learner_desc, config.rounds.front(), config.epsilon,
                               probe.derive("l"));
      (void)make_loss_adversary(substitute_d(config.adversary, probe_d));
    } else {
      (void)make_learner(learner_desc, config.rounds.front(), config.epsilon,
                         probe.derive("l"));
      (void)make_example_adversary(substitute_d(config.adversary, probe_d),
                                   probe.derive("a"));
    }
  }

  const std::vector<std::uint64_t> dims = config.dims.empty()
                                              ? std::vector<std::uint64_t>{0}
                                              : config.dims;
  std::vector<SummaryStats> all;
  for (std::uint64_t T : config.rounds) {
    for (std::uint64_t d : dims) {
      const CellOutcome outcome = run_cell(config, T, d, sink);
      SummaryStats stats;
      stats.learner = substitute_d(config.learner, d);
      stats.adversary = substitute_d(config.adversary, d);
      stats.epsilon = config.epsilon;
      stats.delta = config.delta;
      stats.rounds = T;
      stats.dimension = d;
      stats.replications = config.replications;
      stats.mean = mean_of(outcome.scores);
      stats.stderr_mean = stderr_of(outcome.scores);
      stats.hoeffding_halfwidth =
          hoeffding_halfwidth(config.replications, static_cast<double>(T), 0.95);
      stats.mean_regret = mean_of(outcome.regrets);
      all.push_back(std::move(stats));
    }
  }
  return all;
}

std::string summaries_to_json(const std::vector<SummaryStats>& stats) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : stats) {
    arr.push_back({{"learner", s.learner},
                   {"adversary", s.adversary},
                   {"epsilon", s.epsilon},
                   {"delta", s.delta},
                   {"T", s.rounds},
                   {"d", s.dimension},
                   {"replications", s.replications},
                   {"mean", s.mean},
                   {"stderr", s.stderr_mean},
                   {"hoeffding_halfwidth", s.hoeffding_halfwidth},
                   {"mean_regret", s.mean_regret}});
  }
  return arr.dump(2);
}

std::vector<SummaryStats> emit_outputs(const ExperimentConfig& config) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec)
    throw std::runtime_error("emit_outputs: cannot create " + config.out_dir + ": " +
                             ec.message());

  std::ofstream games(fs::path(config.out_dir) / "games.jsonl");
  if (!games) throw std::runtime_error("emit_outputs: cannot write games.jsonl");

  // One rounds CSV per cell, opened lazily in deterministic order.
  std::string open_key;
  std::ofstream rounds_csv;
  GameSink sink = [&](const GameRecord& record, const Transcript& transcript) {
    nlohmann::json j{{"learner", record.learner}, {"adversary", record.adversary},
                     {"epsilon", config.epsilon}, {"delta", config.delta},
                     {"T", record.T},             {"d", record.d},
                     {"seed", record.seed},       {"mistakes", record.score},
                     {"regret", record.regret}};
    games << j.dump() << "\n";
    if (!config.emit_rounds) return;
    const std::string key = "rounds_T" + std::to_string(record.T) + "_d" +
                            std::to_string(record.d) + ".csv";
    if (key != open_key) {
      if (rounds_csv.is_open()) rounds_csv.close();
      rounds_csv.open(fs::path(config.out_dir) / key);
      if (!rounds_csv)
        throw std::runtime_error("emit_outputs: cannot write " + key);
      rounds_csv << "rep,t,x,y,pred,mistake,hypothesis\n";
      open_key = key;
    }
    for (const auto& row : transcript) {
      rounds_csv << record.rep << ',' << row.t << ',' << row.x << ',' << (row.y ? 1 : 0)
                 << ',' << (row.prediction ? 1 : 0) << ',' << (row.mistake ? 1 : 0) << ','
                 << row.hypothesis << "\n";
    }
  };

  const auto stats = run_sweep(config, &sink);
  if (rounds_csv.is_open()) rounds_csv.close();
  games.close();

  std::ofstream summary(fs::path(config.out_dir) / "summary.json");
  if (!summary) throw std::runtime_error("emit_outputs: cannot write summary.json");
  summary << summaries_to_json(stats) << "\n";
  summary.close();

  // Plot data: mean vs T, one curve per dimension value.
  std::vector<std::uint64_t> dims = config.dims.empty() ? std::vector<std::uint64_t>{0}
                                                        : config.dims;
  for (std::uint64_t d : dims) {
    const std::string name = "plot_mean_vs_T_d" + std::to_string(d) + ".tsv";
    std::ofstream plot(fs::path(config.out_dir) / name);
    if (!plot) throw std::runtime_error("emit_outputs: cannot write " + name);
    plot << "T\tmean\tstderr\n";
    for (const auto& s : stats) {
      if (s.dimension == d)
        plot << s.rounds << '\t' << s.mean << '\t' << s.stderr_mean << "\n";
    }
  }
  return stats;
}

std::string SeparationConfig::to_json() const {
  nlohmann::json j;
  j["confidence"] = confidence;
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& row : rows) {
    rows_json.push_back({{"label", row.label},
                         {"config", nlohmann::json::parse(row.config.to_json())}});
  }
  j["rows"] = rows_json;
  return j.dump(2);
}

SeparationConfig SeparationConfig::from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  SeparationConfig c;
  c.confidence = j.value("confidence", 0.95);
  for (const auto& row : j.at("rows")) {
    c.rows.push_back(SeparationRow{row.at("label").get<std::string>(),
                                   ExperimentConfig::from_json(row.at("config").dump())});
  }
  if (c.rows.empty()) throw std::invalid_argument("separation config: rows must be non-empty");
  return c;
}

std::string separation_report(const SeparationConfig& config) {
  std::ostringstream out;
  out << "regime                          slope    slope-lcb  r^2    finite mistakes?\n";
  out << "------------------------------------------------------------------------\n";
  for (const auto& row : config.rows) {
    const auto stats = run_sweep(row.config);
    std::vector<std::pair<double, double>> points;
    std::vector<double> halfwidths;
    for (const auto& s : stats) {
      points.emplace_back(static_cast<double>(s.rounds), s.mean);
      halfwidths.push_back(hoeffding_halfwidth(s.replications,
                                               static_cast<double>(s.rounds),
                                               config.confidence));
    }
    const LineFit fit = fit_log_slope(points);
    // slope = sum w_i y_i with w_i = (x_i - xbar)/Sxx; the per-point Hoeffding
    // halfwidths propagate to sqrt(sum (w_i hw_i)^2).
    double mx = 0.0;
    for (const auto& [T, y] : points) mx += std::log(T);
    mx /= static_cast<double>(points.size());
    double sxx = 0.0;
    for (const auto& [T, y] : points) sxx += (std::log(T) - mx) * (std::log(T) - mx);
    double var = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double w = (std::log(points[i].first) - mx) / sxx;
      var += w * w * halfwidths[i] * halfwidths[i];
    }
    const double lcb = fit.slope - std::sqrt(var);
    const bool unbounded = lcb > 0.0;
    char line[160];
    std::snprintf(line, sizeof(line), "%-30s  %8.2f  %8.2f  %5.3f  %s\n", row.label.c_str(),
                  fit.slope, lcb, fit.r_squared,
                  unbounded ? "no (grows with log T)" : "yes (bounded)");
    out << line;
  }
  return out.str();
}

}  // namespace dponline
