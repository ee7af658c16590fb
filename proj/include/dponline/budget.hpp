#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dponline {

/// An (epsilon, delta) differential-privacy guarantee.
struct PrivacyBudget {
  double epsilon = 0.0;
  double delta = 0.0;
};

/// Validates epsilon > 0 and 0 <= delta < 1.
PrivacyBudget make_budget(double epsilon, double delta = 0.0);

/// Basic composition: budgets sum component-wise. Throws on an empty list.
PrivacyBudget compose_budgets(std::span<const PrivacyBudget> budgets);

/// Group privacy for inputs differing in k entries: the multiplicative factor
/// becomes e^{k eps} and the additive term delta * (e^{k eps}-1)/(e^eps - 1).
struct GroupPrivacyBound {
  double multiplier;
  double additive;
};
GroupPrivacyBound group_privacy_bound(const PrivacyBudget& budget, std::uint64_t k);

/// Exact rational, used to account budget shares symbolically (eps/2, eps/(6d),
/// ...) without floating-point drift.
struct Frac {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Frac() = default;
  Frac(std::int64_t n, std::int64_t d);

  Frac operator+(const Frac& o) const;
  Frac operator*(const Frac& o) const;
  Frac times(std::int64_t k) const;
  bool operator==(const Frac& o) const { return num == o.num && den == o.den; }
  bool operator<(const Frac& o) const;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
};

/// Budget ledger for one learner. The learner declares, up front or as data
/// segments open, how its constructor epsilon is split across mechanisms:
///
///   - a Sum group composes children sequentially on the same data
///     (basic composition: shares add);
///   - a Max group holds children that act on pairwise disjoint data
///     (parallel composition: the worst child counts);
///   - a reservation is a leaf granting `max_uses` invocations of one
///     mechanism at `share * total_epsilon` each.
///
/// Mechanism invocations are charged against reservations and logged, so a
/// test can verify both that the declared tree composes to exactly the
/// constructor epsilon and that no invocation ran outside its reservation.
class PrivacyAccountant {
 public:
  using NodeId = std::size_t;
  enum class Combine { Sum, Max };

  struct Invocation {
    NodeId reservation;
    std::string mechanism;
    bool charged;  // false for sub-events of an already charged instance
  };

  explicit PrivacyAccountant(double total_epsilon, Combine root = Combine::Sum);

  NodeId root() const { return 0; }
  NodeId add_group(NodeId parent, std::string name, Combine how);
  NodeId reserve(NodeId parent, std::string name, Frac share, std::uint64_t max_uses = 1);

  /// Consume one use of a reservation. Throws std::logic_error if exhausted.
  void charge(NodeId reservation, std::string mechanism);
  /// Log an event under an already-charged instance (e.g. one SVT query).
  void note(NodeId reservation, std::string mechanism);

  /// Exact composed share of the declared tree; equals 1/1 when the learner
  /// spends its whole constructor epsilon.
  Frac composed_share() const;
  double total_epsilon() const { return total_epsilon_; }
  /// Per-use epsilon of a reservation (share * total).
  double epsilon_for(NodeId reservation) const;

  const std::vector<Invocation>& log() const { return log_; }
  /// Re-walks the invocation log against the reservations.
  bool verify_log() const;

 private:
  struct Node {
    std::string name;
    Combine how = Combine::Sum;
    bool leaf = false;
    Frac share;              // per use
    std::uint64_t max_uses = 0;
    std::uint64_t uses = 0;
    std::vector<NodeId> children;
  };

  Frac eval(NodeId id) const;

  double total_epsilon_;
  std::vector<Node> nodes_;
  std::vector<Invocation> log_;
};

/// Where a component learner attaches its reservations. Default: the learner
/// owns a fresh accountant and spends the full epsilon (scale 1).
struct BudgetScope {
  PrivacyAccountant* accountant = nullptr;
  PrivacyAccountant::NodeId parent = 0;
  Frac scale{1, 1};
};

}  // namespace dponline
