#pragma once

#include <cstdint>

#include "pima/trace_model.hpp"

namespace pima {

/// Merged alignment plus the value at the end of the dynamic-programming
/// path, which equals the negative doubled sum-of-pairs score of the merge.
struct MergeResult {
    Alignment merged;
    std::int64_t dp_end_value = 0;
};

/// Optimally interleaves the columns of two profiles over disjoint row sets
/// of the same log. Gap moves are always allowed; a diagonal merge of two
/// columns is allowed only when their activity labels match, so merged
/// columns keep a single activity type. The merged doubled score is minimal
/// over all such interleavings and each input's internal column order is
/// preserved. Ties prefer diagonal, then consuming a column of `a`, then of
/// `b`, giving deterministic layouts.
///
/// Every call verifies dp_end_value == -doubled_score(merged) and throws
/// InvariantViolation on mismatch.
MergeResult align_profiles_full(const Alignment& a, const Alignment& b);

inline Alignment align_profiles(const Alignment& a, const Alignment& b) {
    return align_profiles_full(a, b).merged;
}

/// Exhaustive test oracle: enumerates every order-preserving, match-only
/// interleaving of the two column sequences and returns the minimum
/// pairs_score over complete layouts. No memoization and no shared code with
/// the table-based path. Throws std::invalid_argument when the combined
/// length exceeds 16 columns.
std::int64_t brute_force_min_merge(const Alignment& a, const Alignment& b);

/// Number of dp_end_value identity checks performed so far in this process.
std::uint64_t merge_identity_checks();

}  // namespace pima
