#pragma once

#include <cstdint>

#include "pima/trace_model.hpp"

namespace pima {

/// Both conventions for the sum-of-pairs score. `pairs_score` counts
/// mismatching cells over unordered row pairs; `doubled_score` is the
/// columnar closed form's value, exactly 2 * pairs_score whenever every
/// column holds a single activity type. All argmin comparisons are
/// unaffected by the factor; reported numbers state which they use.
struct SpsScore {
    std::int64_t pairs_score = 0;
    std::int64_t doubled_score = 0;
};

/// Literal sum of Hamming distances over all unordered row pairs, comparing
/// cells as gap/activity. O(N^2 L); the independent reference scorer.
std::int64_t sps_pairwise(const Alignment& a);

/// Columnar form: sum over columns of f_k * (N - f_k). O(L) given the
/// frequencies; equals sps_pairwise under the single-type-column invariant.
std::int64_t sps_columnar(const Alignment& a);

inline SpsScore sps(const Alignment& a) {
    const std::int64_t pairs = sps_columnar(a);
    return SpsScore{pairs, 2 * pairs};
}

}  // namespace pima
