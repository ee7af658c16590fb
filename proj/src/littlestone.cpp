#include "dponline/littlestone.hpp"

#include <map>
#include <stdexcept>

namespace dponline {

namespace {

struct EvalTable {
  std::size_t num_hypotheses;
  std::size_t num_points;
  std::vector<bool> values;  // h * num_points + x_index

  bool at(std::size_t h, std::size_t x) const { return values[h * num_points + x]; }
};

EvalTable build_table(const FiniteClass& cls) {
  if (!cls.domain)
    throw std::invalid_argument("littlestone: explicit finite domain required");
  EvalTable t;
  t.num_hypotheses = cls.hypotheses.size();
  t.num_points = cls.domain->size();
  t.values.resize(t.num_hypotheses * t.num_points);
  for (std::size_t h = 0; h < t.num_hypotheses; ++h) {
    for (std::size_t x = 0; x < t.num_points; ++x) {
      t.values[h * t.num_points + x] = cls.hypotheses[h]((*cls.domain)[x]);
    }
  }
  return t;
}

std::uint64_t ld_recurse(const EvalTable& table, const std::vector<std::uint32_t>& subset,
                         std::map<std::vector<std::uint32_t>, std::uint64_t>& memo) {
  if (subset.size() <= 1) return 0;
  auto it = memo.find(subset);
  if (it != memo.end()) return it->second;
  std::uint64_t best = 0;
  std::vector<std::uint32_t> zeros, ones;
  for (std::size_t x = 0; x < table.num_points; ++x) {
    zeros.clear();
    ones.clear();
    for (std::uint32_t h : subset) {
      (table.at(h, x) ? ones : zeros).push_back(h);
    }
    if (zeros.empty() || ones.empty()) continue;
    const std::uint64_t cand =
        1 + std::min(ld_recurse(table, zeros, memo), ld_recurse(table, ones, memo));
    if (cand > best) best = cand;
  }
  memo.emplace(subset, best);
  return best;
}

}  // namespace

bool is_shattered(const ExampleTree& tree, const FiniteClass& cls) {
  if (tree.depth == 0) return true;
  if (tree.labels.size() != (std::size_t{1} << tree.depth) - 1)
    throw std::invalid_argument("is_shattered: label count does not match depth");
  const std::uint64_t paths = std::uint64_t{1} << tree.depth;
  std::vector<DomainPoint> xs(tree.depth);
  for (std::uint64_t pattern = 0; pattern < paths; ++pattern) {
    std::size_t node = 0;
    for (std::uint32_t level = 0; level < tree.depth; ++level) {
      xs[level] = tree.labels[node];
      const bool y = (pattern >> level) & 1;
      node = 2 * node + (y ? 2 : 1);
    }
    bool found = false;
    for (const auto& h : cls.hypotheses) {
      bool ok = true;
      for (std::uint32_t level = 0; level < tree.depth; ++level) {
        const bool y = (pattern >> level) & 1;
        if (h(xs[level]) != y) {
          ok = false;
          break;
        }
      }
      if (ok) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

std::uint64_t littlestone_dimension(const FiniteClass& cls) {
  const EvalTable table = build_table(cls);
  std::vector<std::uint32_t> all(table.num_hypotheses);
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<std::uint32_t>(i);
  std::map<std::vector<std::uint32_t>, std::uint64_t> memo;
  return ld_recurse(table, all, memo);
}

namespace {

bool any_shattered_tree(std::uint32_t depth, const FiniteClass& cls) {
  const auto& dom = *cls.domain;
  const std::size_t nodes = (std::size_t{1} << depth) - 1;

  // Level-uniform trees first: cheap and they catch the common witnesses.
  {
    std::vector<std::size_t> pick(depth, 0);
    while (true) {
      ExampleTree tree;
      tree.depth = depth;
      tree.labels.resize(nodes);
      std::size_t node = 0;
      for (std::uint32_t level = 0; level < depth; ++level) {
        const std::size_t level_width = std::size_t{1} << level;
        for (std::size_t i = 0; i < level_width; ++i) tree.labels[node++] = dom[pick[level]];
      }
      if (is_shattered(tree, cls)) return true;
      std::size_t i = 0;
      for (; i < depth; ++i) {
        if (++pick[i] < dom.size()) break;
        pick[i] = 0;
      }
      if (i == depth) break;
    }
  }

  // Full scan over all label assignments.
  std::vector<std::size_t> pick(nodes, 0);
  ExampleTree tree;
  tree.depth = depth;
  tree.labels.resize(nodes);
  while (true) {
    for (std::size_t n = 0; n < nodes; ++n) tree.labels[n] = dom[pick[n]];
    if (is_shattered(tree, cls)) return true;
    std::size_t i = 0;
    for (; i < nodes; ++i) {
      if (++pick[i] < dom.size()) break;
      pick[i] = 0;
    }
    if (i == nodes) break;
  }
  return false;
}

}  // namespace

std::uint64_t littlestone_dimension_exhaustive(const FiniteClass& cls) {
  if (!cls.domain)
    throw std::invalid_argument("littlestone: explicit finite domain required");
  // A shattered depth-D tree needs 2^D pairwise distinct hypotheses.
  std::uint32_t cap = 0;
  while ((std::size_t{1} << (cap + 1)) <= cls.hypotheses.size()) ++cap;
  std::uint64_t best = 0;
  for (std::uint32_t depth = 1; depth <= cap; ++depth) {
    if (!any_shattered_tree(depth, cls)) break;
    best = depth;
  }
  return best;
}

namespace {

void build_bisection(std::uint64_t lo, std::uint64_t hi, std::uint32_t depth,
                     std::size_t node, ExampleTree& tree) {
  if (depth == 0) return;
  const std::uint64_t size = hi - lo + 1;
  const std::uint64_t x = lo + size / 2;  // in [1, d] whenever size >= 2
  tree.labels[node] = x;
  build_bisection(x, hi, depth - 1, 2 * node + 1, tree);       // label 0: cut >= x
  build_bisection(lo, x - 1, depth - 1, 2 * node + 2, tree);   // label 1: cut < x
}

}  // namespace

ExampleTree threshold_shattered_tree(std::uint64_t d) {
  if (d < 1) throw std::invalid_argument("threshold_shattered_tree: d must be >= 1");
  std::uint32_t depth = 0;
  while ((std::uint64_t{1} << (depth + 1)) <= d + 1) ++depth;
  ExampleTree tree;
  tree.depth = depth;
  tree.labels.resize((std::size_t{1} << depth) - 1);
  build_bisection(0, d, depth, 0, tree);
  return tree;
}

}  // namespace dponline
