#include "pima/initialization.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <utility>

#include "pima/profile_align.hpp"
#include "pima/rng.hpp"

namespace pima {

std::optional<InitMethod> init_method_from_name(std::string_view name) {
    if (name == "random-sequential")
        return InitMethod::random_sequential;
    if (name == "sorted-length")
        return InitMethod::sorted_length;
    if (name == "sorted-activity-sum")
        return InitMethod::sorted_activity_sum;
    if (name == "guide-tree")
        return InitMethod::guide_tree;
    return std::nullopt;
}

std::string_view init_method_name(InitMethod method) {
    switch (method) {
        case InitMethod::random_sequential: return "random-sequential";
        case InitMethod::sorted_length: return "sorted-length";
        case InitMethod::sorted_activity_sum: return "sorted-activity-sum";
        case InitMethod::guide_tree: return "guide-tree";
    }
    return "unknown";
}

namespace {

void require_traces(const Log& log) {
    if (log.traces.empty())
        throw std::invalid_argument("log has no traces");
}

GuideOrder sorted_order(const Log& log, InitMethod method, bool ascending,
                        const std::vector<std::int64_t>& metric) {
    std::vector<std::size_t> order(log.traces.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t lhs, std::size_t rhs) {
        return ascending ? metric[lhs] < metric[rhs] : metric[lhs] > metric[rhs];
    });
    return GuideOrder{std::move(order), method};
}

}  // namespace

GuideOrder order_random(const Log& log, std::uint64_t seed) {
    require_traces(log);
    Rng rng(seed);
    return GuideOrder{rng.permutation(log.traces.size()), InitMethod::random_sequential};
}

GuideOrder order_by_length(const Log& log, bool ascending) {
    require_traces(log);
    std::vector<std::int64_t> metric;
    metric.reserve(log.traces.size());
    for (const Trace& t : log.traces)
        metric.push_back(static_cast<std::int64_t>(t.length()));
    return sorted_order(log, InitMethod::sorted_length, ascending, metric);
}

GuideOrder order_by_activity_sum(const Log& log, bool ascending) {
    require_traces(log);
    std::vector<std::int64_t> metric;
    metric.reserve(log.traces.size());
    for (const Trace& t : log.traces) {
        std::int64_t sum = 0;
        for (ActivityId act : t.activities)
            sum += static_cast<std::int64_t>(act) + 1;
        metric.push_back(sum);
    }
    return sorted_order(log, InitMethod::sorted_activity_sum, ascending, metric);
}

Alignment sequential_merge(const LogPtr& log, const GuideOrder& order) {
    if (!log)
        throw std::invalid_argument("sequential merge requires a log");
    if (order.order.empty())
        throw std::invalid_argument("empty merge order");
    Alignment acc = Alignment::from_trace(log, order.order.front());
    for (std::size_t i = 1; i < order.order.size(); ++i)
        acc = align_profiles(acc, Alignment::from_trace(log, order.order[i]));
    return acc;
}

std::int64_t indel_edit_distance(std::span<const ActivityId> x, std::span<const ActivityId> y) {
    // LCS with two rolling rows.
    const std::size_t lx = x.size();
    const std::size_t ly = y.size();
    std::vector<std::int32_t> prev(ly + 1, 0), cur(ly + 1, 0);
    for (std::size_t i = 1; i <= lx; ++i) {
        for (std::size_t j = 1; j <= ly; ++j) {
            if (x[i - 1] == y[j - 1])
                cur[j] = prev[j - 1] + 1;
            else
                cur[j] = std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    const std::int64_t lcs = prev[ly];
    return static_cast<std::int64_t>(lx) + static_cast<std::int64_t>(ly) - 2 * lcs;
}

GuideTree build_guide_tree(const Log& log, Linkage linkage) {
    const std::size_t n = log.traces.size();
    if (n < 2)
        throw std::invalid_argument("guide tree needs at least two traces");

    GuideTree tree;
    tree.leaf_count = n;
    tree.nodes.reserve(2 * n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        GuideTree::Node leaf;
        leaf.trace = i;
        tree.nodes.push_back(leaf);
    }

    // Distance matrix over all node ids that will ever exist.
    const std::size_t total = 2 * n - 1;
    std::vector<double> dist(total * total, 0.0);
    auto d = [&](std::size_t i, std::size_t j) -> double& { return dist[i * total + j]; };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = static_cast<double>(indel_edit_distance(
                log.traces[i].activities, log.traces[j].activities));
            d(i, j) = v;
            d(j, i) = v;
        }
    }

    std::vector<std::size_t> active;
    std::vector<std::size_t> cluster_size(total, 1);
    for (std::size_t i = 0; i < n; ++i)
        active.push_back(i);

    while (active.size() > 1) {
        std::size_t best_a = 0, best_b = 1;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t p = 0; p < active.size(); ++p) {
            for (std::size_t q = p + 1; q < active.size(); ++q) {
                const double v = d(active[p], active[q]);
                if (v < best) {
                    best = v;
                    best_a = p;
                    best_b = q;
                }
            }
        }

        const std::size_t left = active[best_a];
        const std::size_t right = active[best_b];
        GuideTree::Node parent;
        parent.left = left;
        parent.right = right;
        const std::size_t id = tree.nodes.size();
        tree.nodes.push_back(parent);
        cluster_size[id] = cluster_size[left] + cluster_size[right];

        // Update distances from the new cluster to every other active one.
        for (std::size_t p = 0; p < active.size(); ++p) {
            const std::size_t other = active[p];
            if (other == left || other == right)
                continue;
            double v = 0.0;
            switch (linkage) {
                case Linkage::single_link:
                    v = std::min(d(left, other), d(right, other));
                    break;
                case Linkage::complete_link:
                    v = std::max(d(left, other), d(right, other));
                    break;
                case Linkage::average_link:
                    v = (d(left, other) * static_cast<double>(cluster_size[left]) +
                         d(right, other) * static_cast<double>(cluster_size[right])) /
                        static_cast<double>(cluster_size[id]);
                    break;
            }
            d(id, other) = v;
            d(other, id) = v;
        }

        active.erase(active.begin() + static_cast<std::ptrdiff_t>(best_b));
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(best_a));
        active.push_back(id);
    }
    return tree;
}

Alignment merge_by_tree(const LogPtr& log, const GuideTree& tree) {
    if (!log)
        throw std::invalid_argument("tree merge requires a log");
    // Children always precede parents, so one forward sweep suffices.
    std::vector<Alignment> profiles(tree.nodes.size());
    for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
        const GuideTree::Node& node = tree.nodes[id];
        if (node.is_leaf()) {
            profiles[id] = Alignment::from_trace(log, node.trace);
        } else {
            profiles[id] = align_profiles(profiles[node.left], profiles[node.right]);
            profiles[node.left] = Alignment();
            profiles[node.right] = Alignment();
        }
    }
    return std::move(profiles.back());
}

Alignment guide_tree_baseline(const LogPtr& log, Linkage linkage) {
    if (!log)
        throw std::invalid_argument("baseline requires a log");
    return merge_by_tree(log, build_guide_tree(*log, linkage));
}

}  // namespace pima
