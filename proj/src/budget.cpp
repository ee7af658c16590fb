#include "dponline/budget.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dponline {

PrivacyBudget make_budget(double epsilon, double delta) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(delta >= 0.0 && delta < 1.0)) throw std::invalid_argument("delta must be in [0, 1)");
  return PrivacyBudget{epsilon, delta};
}

PrivacyBudget compose_budgets(std::span<const PrivacyBudget> budgets) {
  if (budgets.empty()) throw std::invalid_argument("compose_budgets: empty list");
  PrivacyBudget out{0.0, 0.0};
  for (const auto& b : budgets) {
    out.epsilon += b.epsilon;
    out.delta += b.delta;
  }
  return out;
}

GroupPrivacyBound group_privacy_bound(const PrivacyBudget& budget, std::uint64_t k) {
  if (k < 1) throw std::invalid_argument("group_privacy_bound: k must be >= 1");
  const double ke = static_cast<double>(k) * budget.epsilon;
  const double mult = std::exp(ke);
  double additive = 0.0;
  if (budget.delta > 0.0) {
    additive = budget.delta * (std::expm1(ke) / std::expm1(budget.epsilon));
  }
  return GroupPrivacyBound{mult, additive};
}

Frac::Frac(std::int64_t n, std::int64_t d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("Frac: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Frac Frac::operator+(const Frac& o) const {
  return Frac(num * o.den + o.num * den, den * o.den);
}

Frac Frac::operator*(const Frac& o) const { return Frac(num * o.num, den * o.den); }

Frac Frac::times(std::int64_t k) const { return Frac(num * k, den); }

bool Frac::operator<(const Frac& o) const { return num * o.den < o.num * den; }

std::string Frac::str() const {
  return std::to_string(num) + "/" + std::to_string(den);
}

PrivacyAccountant::PrivacyAccountant(double total_epsilon, Combine root)
    : total_epsilon_(total_epsilon) {
  Node n;
  n.name = "root";
  n.how = root;
  nodes_.push_back(std::move(n));
}

PrivacyAccountant::NodeId PrivacyAccountant::add_group(NodeId parent, std::string name,
                                                       Combine how) {
  if (parent >= nodes_.size() || nodes_[parent].leaf)
    throw std::logic_error("accountant: bad parent group");
  Node n;
  n.name = std::move(name);
  n.how = how;
  nodes_.push_back(std::move(n));
  const NodeId id = nodes_.size() - 1;
  nodes_[parent].children.push_back(id);
  return id;
}

PrivacyAccountant::NodeId PrivacyAccountant::reserve(NodeId parent, std::string name,
                                                     Frac share, std::uint64_t max_uses) {
  if (parent >= nodes_.size() || nodes_[parent].leaf)
    throw std::logic_error("accountant: bad parent group");
  if (max_uses == 0) throw std::invalid_argument("accountant: max_uses must be >= 1");
  Node n;
  n.name = std::move(name);
  n.leaf = true;
  n.share = share;
  n.max_uses = max_uses;
  nodes_.push_back(std::move(n));
  const NodeId id = nodes_.size() - 1;
  nodes_[parent].children.push_back(id);
  return id;
}

void PrivacyAccountant::charge(NodeId reservation, std::string mechanism) {
  if (reservation >= nodes_.size() || !nodes_[reservation].leaf)
    throw std::logic_error("accountant: charge on non-reservation");
  Node& n = nodes_[reservation];
  if (n.uses >= n.max_uses)
    throw std::logic_error("accountant: budget overdraw on " + n.name);
  ++n.uses;
  log_.push_back(Invocation{reservation, std::move(mechanism), true});
}

void PrivacyAccountant::note(NodeId reservation, std::string mechanism) {
  if (reservation >= nodes_.size() || !nodes_[reservation].leaf)
    throw std::logic_error("accountant: note on non-reservation");
  if (nodes_[reservation].uses == 0)
    throw std::logic_error("accountant: note before charge on " + nodes_[reservation].name);
  log_.push_back(Invocation{reservation, std::move(mechanism), false});
}

Frac PrivacyAccountant::eval(NodeId id) const {
  const Node& n = nodes_[id];
  if (n.leaf) return n.share.times(static_cast<std::int64_t>(n.max_uses));
  Frac acc{0, 1};
  if (n.how == Combine::Sum) {
    for (NodeId c : n.children) acc = acc + eval(c);
  } else {
    for (NodeId c : n.children) {
      const Frac v = eval(c);
      if (acc < v) acc = v;
    }
  }
  return acc;
}

Frac PrivacyAccountant::composed_share() const { return eval(0); }

double PrivacyAccountant::epsilon_for(NodeId reservation) const {
  if (reservation >= nodes_.size() || !nodes_[reservation].leaf)
    throw std::logic_error("accountant: epsilon_for on non-reservation");
  return total_epsilon_ * nodes_[reservation].share.value();
}

bool PrivacyAccountant::verify_log() const {
  std::vector<std::uint64_t> counts(nodes_.size(), 0);
  for (const auto& inv : log_) {
    if (inv.reservation >= nodes_.size() || !nodes_[inv.reservation].leaf) return false;
    if (inv.charged) ++counts[inv.reservation];
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].leaf && counts[i] != nodes_[i].uses) return false;
    if (nodes_[i].leaf && counts[i] > nodes_[i].max_uses) return false;
  }
  return true;
}

}  // namespace dponline
