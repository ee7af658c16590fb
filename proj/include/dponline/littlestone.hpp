#pragma once

#include <cstdint>
#include <vector>

#include "dponline/hypothesis.hpp"

namespace dponline {

/// A full binary example tree in heap order: labels[0] is the root, node n has
/// children 2n+1 (label 0 branch) and 2n+2 (label 1 branch).
/// labels.size() == 2^depth - 1.
struct ExampleTree {
  std::uint32_t depth = 0;
  std::vector<DomainPoint> labels;
};

/// Definition-level check: every root-to-leaf label pattern has a consistent
/// hypothesis in the class.
bool is_shattered(const ExampleTree& tree, const FiniteClass& cls);

/// Exact Littlestone dimension by the label-restriction recursion
///   LD(H) = max over splitting x of 1 + min(LD(H_{x,0}), LD(H_{x,1})),
/// memoized on hypothesis subsets. Requires an explicit finite domain.
std::uint64_t littlestone_dimension(const FiniteClass& cls);

/// Independent oracle: searches full example trees per the shattering
/// definition (with the |H| >= 2^depth pigeonhole cap). Exponential; intended
/// for small classes in tests.
std::uint64_t littlestone_dimension_exhaustive(const FiniteClass& cls);

/// A depth floor(log2(d+1)) tree over [d] shattered by the threshold class,
/// built by bisecting the candidate cut interval.
ExampleTree threshold_shattered_tree(std::uint64_t d);

}  // namespace dponline
