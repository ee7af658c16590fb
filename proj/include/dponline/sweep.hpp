#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dponline/game.hpp"
#include "dponline/stats.hpp"

namespace dponline {

/// One experiment grid: a learner/adversary pair swept over (T, d) cells with
/// independent replications. "{d}" in either descriptor is substituted per
/// cell. An empty dims list means a single cell without a d parameter.
struct ExperimentConfig {
  std::string learner;
  std::string adversary;
  double epsilon = 1.0;
  double delta = 0.0;
  std::vector<std::uint64_t> rounds;
  std::vector<std::uint64_t> dims;
  std::uint64_t replications = 1;
  std::uint64_t seed = 0;
  std::string out_dir = "out";
  bool zero_noise = false;
  bool emit_rounds = true;
  bool realizable = false;

  bool operator==(const ExperimentConfig&) const = default;

  std::string to_json() const;
  static ExperimentConfig from_json(const std::string& text);
};

/// Replication r of cell (T, d) draws its seed from the master seed and the
/// cell values, so extending the grid or adding replications never perturbs
/// existing games.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t T, std::uint64_t d,
                          std::uint64_t rep);

struct GameRecord {
  std::string learner;
  std::string adversary;
  std::uint64_t T = 0;
  std::uint64_t d = 0;
  std::uint64_t rep = 0;
  std::uint64_t seed = 0;
  double score = 0.0;  // mistakes, or total OPE loss
  double regret = 0.0;
};

using GameSink = std::function<void(const GameRecord&, const Transcript&)>;

/// Runs every cell of the grid. The sink, when given, receives each game's
/// record and transcript in deterministic (cell-major, replication) order.
std::vector<SummaryStats> run_sweep(const ExperimentConfig& config,
                                    const GameSink* sink = nullptr);

/// Runs the sweep and writes per-round CSVs (schema
/// rep,t,x,y,pred,mistake,hypothesis), a per-game games.jsonl, a per-cell
/// summary.json, and tab-separated plot data under config.out_dir.
std::vector<SummaryStats> emit_outputs(const ExperimentConfig& config);

/// Serialization of summary rows (the summary.json payload).
std::string summaries_to_json(const std::vector<SummaryStats>& stats);

// ---- Separation report -------------------------------------------------------

struct SeparationRow {
  std::string label;
  ExperimentConfig config;
};

struct SeparationConfig {
  std::vector<SeparationRow> rows;
  double confidence = 0.95;

  std::string to_json() const;
  static SeparationConfig from_json(const std::string& text);
};

/// Runs each row's sweep, fits mean score against ln T, and marks the regime
/// "unbounded" when the Hoeffding-adjusted lower confidence bound of the
/// slope stays above zero. Returns the rendered text matrix.
std::string separation_report(const SeparationConfig& config);

}  // namespace dponline
