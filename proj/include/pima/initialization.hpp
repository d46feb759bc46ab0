#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pima/trace_model.hpp"

namespace pima {

enum class InitMethod {
    random_sequential,
    sorted_length,
    sorted_activity_sum,
    guide_tree,
};

std::optional<InitMethod> init_method_from_name(std::string_view name);
std::string_view init_method_name(InitMethod method);

/// A sequential merge schedule: traces are folded into the alignment in this
/// order, so trace order[0] is aligned to order[1], their profile to
/// order[2], and so on.
struct GuideOrder {
    std::vector<std::size_t> order;
    InitMethod method = InitMethod::random_sequential;
};

/// Uniform random permutation; identical seeds give identical orders.
GuideOrder order_random(const Log& log, std::uint64_t seed);

/// Traces sorted by activity count; ties keep the original index order.
GuideOrder order_by_length(const Log& log, bool ascending = true);

/// Traces sorted by the sum of their activity numbers (id + 1); ties keep
/// the original index order.
GuideOrder order_by_activity_sum(const Log& log, bool ascending = true);

/// Left fold of pairwise profile merges over the given order. N-1 merge
/// operations total.
Alignment sequential_merge(const LogPtr& log, const GuideOrder& order);

/// Edit distance with insertions and deletions only (no substitutions):
/// |x| + |y| - 2 * LCS(x, y).
std::int64_t indel_edit_distance(std::span<const ActivityId> x, std::span<const ActivityId> y);

enum class Linkage { single_link, complete_link, average_link };

/// Strictly binary dendrogram over trace indices. Nodes 0..N-1 are leaves;
/// internal nodes follow in merge order, each referring only to
/// earlier-built nodes. The last node is the root.
struct GuideTree {
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    struct Node {
        std::size_t left = npos;
        std::size_t right = npos;
        std::size_t trace = npos;

        bool is_leaf() const { return trace != npos; }
    };

    std::vector<Node> nodes;
    std::size_t leaf_count = 0;

    std::size_t root() const { return nodes.size() - 1; }
};

/// Agglomerative clustering over the full pairwise indel-distance matrix.
/// Ties pick the lexicographically smallest active pair, so the tree is
/// deterministic.
GuideTree build_guide_tree(const Log& log, Linkage linkage = Linkage::average_link);

/// Merges profiles bottom-up per the dendrogram. Subtrees are never
/// realigned once merged.
Alignment merge_by_tree(const LogPtr& log, const GuideTree& tree);

/// The progressive edit-distance guide-tree method used as the comparison
/// baseline: O(N^2 L^2) distances, clustering, then N-1 profile merges.
Alignment guide_tree_baseline(const LogPtr& log, Linkage linkage = Linkage::average_link);

}  // namespace pima
