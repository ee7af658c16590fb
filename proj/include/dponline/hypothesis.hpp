#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "dponline/noise.hpp"

namespace dponline {

/// Domain element; the domain is [d] = {1..d} or the naturals, so x >= 1.
using DomainPoint = std::uint64_t;

struct LabeledExample {
  DomainPoint x = 1;
  bool y = false;

  bool operator==(const LabeledExample& o) const { return x == o.x && y == o.y; }
};

/// A boolean predictor over DomainPoint, stored as a closed descriptor so
/// transcripts stay serializable and games replayable. Variants:
///   all-zero / all-one      constants
///   point(t)                1 exactly at t
///   threshold(c)            0 for x <= c, 1 for x > c
///   table(bits)             explicit values over [bits.size()]
///   complement(h)           1 - h(x)
///   lazy-random(T, seed)    each x independently 1 with probability 1/T,
///                           deterministic per (seed, x) and memoized
class Hypothesis {
 public:
  enum class Kind { AllZero, AllOne, Point, Threshold, Table, Complement, LazyRandom };

  static Hypothesis all_zero();
  static Hypothesis all_one();
  static Hypothesis point(DomainPoint target);
  static Hypothesis threshold(std::uint64_t cut);
  static Hypothesis table(std::vector<bool> bits);
  static Hypothesis complement(Hypothesis inner);
  static Hypothesis lazy_random(std::uint64_t denom, std::uint64_t seed);

  bool operator()(DomainPoint x) const;
  Kind kind() const;
  std::string describe() const;

  DomainPoint point_target() const;     // Point only
  std::uint64_t threshold_cut() const;  // Threshold only
  const Hypothesis& inner() const;      // Complement only
  std::uint64_t table_size() const;     // Table only

 private:
  struct AllZeroTag {};
  struct AllOneTag {};
  struct PointTag {
    DomainPoint target;
  };
  struct ThresholdTag {
    std::uint64_t cut;
  };
  struct TableTag {
    std::vector<bool> bits;
  };
  struct ComplementTag {
    std::shared_ptr<const Hypothesis> inner;
  };
  struct LazyRandomState {
    std::uint64_t denom;
    std::uint64_t seed;
    mutable std::unordered_map<DomainPoint, bool> memo;
  };
  struct LazyRandomTag {
    std::shared_ptr<LazyRandomState> state;
  };

  using Repr = std::variant<AllZeroTag, AllOneTag, PointTag, ThresholdTag, TableTag,
                            ComplementTag, LazyRandomTag>;
  explicit Hypothesis(Repr repr) : repr_(std::move(repr)) {}
  Repr repr_;
};

/// Spec-facing alias for Hypothesis::operator().
bool evaluate(const Hypothesis& h, DomainPoint x);

/// A finite list of hypotheses, optionally over an explicit finite domain.
/// No duplicates (as functions on the domain) when the domain is present.
struct FiniteClass {
  std::vector<Hypothesis> hypotheses;
  std::optional<std::vector<DomainPoint>> domain;
};

/// Validating constructor; throws on empty class, empty domain, or duplicates.
FiniteClass make_class(std::vector<Hypothesis> hypotheses,
                       std::optional<std::vector<DomainPoint>> domain);

/// POINT_d: the d point functions f_1..f_d over [d].
FiniteClass make_point_class(std::uint64_t d);

/// THRESH_d: the d+1 threshold functions f_0..f_d over [d]; f_0 is all-one
/// on [d] and f_d all-zero.
FiniteClass make_threshold_class(std::uint64_t d);

/// A fresh lazy-random hypothesis with per-point rate 1/T.
Hypothesis sample_point_representation(std::uint64_t T, NoiseSource& rng);

/// Extensional equality on an explicit domain.
bool equal_on_domain(const Hypothesis& a, const Hypothesis& b,
                     const std::vector<DomainPoint>& domain);

/// Two different hypotheses agreeing somewhere (u0) and disagreeing somewhere
/// (u1). Not found exactly when |H| = 1 or H = {f, 1-f}.
struct NonComplementaryPair {
  std::size_t f1_index;
  std::size_t f2_index;
  DomainPoint u0;
  DomainPoint u1;
};
std::optional<NonComplementaryPair> find_non_complementary_pair(const FiniteClass& cls);

/// Realizability of a stream: a consistent hypothesis index, or nullopt.
std::optional<std::size_t> is_realizable(const std::vector<LabeledExample>& stream,
                                         const FiniteClass& cls);

/// Structured check for point functions over the naturals: all 1-labels share
/// one x and that x carries no 0-label. Returns a witness target when
/// realizable (any unused point works if the stream has no 1-labels).
struct PointRealizability {
  bool realizable;
  std::optional<DomainPoint> witness_target;
};
PointRealizability is_realizable_point_over_n(const std::vector<LabeledExample>& stream);

/// Class descriptors: "point:d=8", "threshold:d=1024", "pair:complementary",
/// "table:011,101".
FiniteClass parse_class(const std::string& descriptor);

}  // namespace dponline
