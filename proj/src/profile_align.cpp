#include "pima/profile_align.hpp"

#include <atomic>
#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>
#include <vector>

#include "pima/errors.hpp"
#include "pima/scoring.hpp"

namespace pima {

namespace {

std::atomic<std::uint64_t> g_identity_checks{0};

enum Move : std::uint8_t { kNone = 0, kDiag = 1, kUp = 2, kLeft = 3 };

void check_mergeable(const Alignment& a, const Alignment& b) {
    if (a.row_count() == 0 && b.row_count() == 0)
        return;
    if (a.log_ptr() != b.log_ptr())
        throw std::invalid_argument("profiles to merge must share the same log");
    std::vector<bool> seen(a.log().traces.size(), false);
    for (std::size_t trace : a.rows())
        seen[trace] = true;
    for (std::size_t trace : b.rows())
        if (seen[trace])
            throw std::invalid_argument("profiles to merge have overlapping row sets (trace " +
                                        std::to_string(trace) + ")");
}

/// Builds a merged column from an optional column of each side. Rows of `a`
/// keep their positions; rows of `b` are shifted by rows(a).
Column merge_column(const Column* ca, const Column* cb, std::size_t rows_a, std::size_t rows_total) {
    Column out;
    out.activity = ca ? ca->activity : cb->activity;
    out.members = ca ? ca->members.expanded(rows_total) : RowSet(rows_total);
    if (cb)
        out.members.or_shifted(cb->members, rows_a);
    return out;
}

}  // namespace

MergeResult align_profiles_full(const Alignment& a, const Alignment& b) {
    check_mergeable(a, b);

    const std::size_t rows_a = a.row_count();
    const std::size_t rows_total = rows_a + b.row_count();
    const auto n = static_cast<std::int64_t>(rows_total);
    const std::size_t la = a.length();
    const std::size_t lb = b.length();

    // Per-column gap costs (doubled convention) and labels.
    std::vector<std::int64_t> cost_a(la), cost_b(lb);
    std::vector<ActivityId> label_a(la), label_b(lb);
    std::vector<std::int64_t> freq_a(la), freq_b(lb);
    for (std::size_t i = 0; i < la; ++i) {
        freq_a[i] = static_cast<std::int64_t>(a.columns()[i].frequency());
        cost_a[i] = 2 * freq_a[i] * (n - freq_a[i]);
        label_a[i] = a.columns()[i].activity;
    }
    for (std::size_t j = 0; j < lb; ++j) {
        freq_b[j] = static_cast<std::int64_t>(b.columns()[j].frequency());
        cost_b[j] = 2 * freq_b[j] * (n - freq_b[j]);
        label_b[j] = b.columns()[j].activity;
    }

    // Values are rolled one row at a time; moves are kept for the whole
    // table to drive the traceback.
    std::vector<std::int64_t> prev(lb + 1), cur(lb + 1);
    std::vector<std::uint8_t> moves((la + 1) * (lb + 1), kNone);
    auto move_at = [&](std::size_t i, std::size_t j) -> std::uint8_t& {
        return moves[i * (lb + 1) + j];
    };

    prev[0] = 0;
    for (std::size_t j = 1; j <= lb; ++j) {
        prev[j] = prev[j - 1] - cost_b[j - 1];
        move_at(0, j) = kLeft;
    }
    for (std::size_t i = 1; i <= la; ++i) {
        cur[0] = prev[0] - cost_a[i - 1];
        move_at(i, 0) = kUp;
        for (std::size_t j = 1; j <= lb; ++j) {
            std::int64_t best = cur[j - 1] - cost_b[j - 1];
            std::uint8_t mv = kLeft;
            const std::int64_t up = prev[j] - cost_a[i - 1];
            if (up >= best) {
                best = up;
                mv = kUp;
            }
            if (label_a[i - 1] == label_b[j - 1]) {
                const std::int64_t joint = freq_a[i - 1] + freq_b[j - 1];
                const std::int64_t diag = prev[j - 1] - 2 * joint * (n - joint);
                if (diag >= best) {
                    best = diag;
                    mv = kDiag;
                }
            }
            cur[j] = best;
            move_at(i, j) = mv;
        }
        std::swap(prev, cur);
    }
    const std::int64_t dp_end = prev[lb];

    // Traceback, collecting merged columns back to front.
    std::vector<Column> merged_cols;
    merged_cols.reserve(la + lb);
    std::size_t i = la, j = lb;
    while (i > 0 || j > 0) {
        switch (move_at(i, j)) {
            case kDiag:
                merged_cols.push_back(
                    merge_column(&a.columns()[i - 1], &b.columns()[j - 1], rows_a, rows_total));
                --i;
                --j;
                break;
            case kUp:
                merged_cols.push_back(merge_column(&a.columns()[i - 1], nullptr, rows_a, rows_total));
                --i;
                break;
            case kLeft:
                merged_cols.push_back(merge_column(nullptr, &b.columns()[j - 1], rows_a, rows_total));
                --j;
                break;
            default:
                throw InvariantViolation("traceback reached an unfilled cell");
        }
    }
    std::reverse(merged_cols.begin(), merged_cols.end());

    std::vector<std::size_t> merged_rows = a.rows();
    merged_rows.insert(merged_rows.end(), b.rows().begin(), b.rows().end());

    LogPtr log = a.log_ptr() ? a.log_ptr() : b.log_ptr();
    MergeResult result;
    if (log) {
        result.merged =
            Alignment::unchecked(std::move(log), std::move(merged_rows), std::move(merged_cols));
    }
    result.dp_end_value = dp_end;

    // The end of the alignment path must be exactly the negative doubled
    // sum-of-pairs score of the merge.
    const std::int64_t doubled = 2 * sps_columnar(result.merged);
    g_identity_checks.fetch_add(1, std::memory_order_relaxed);
    if (-result.dp_end_value != doubled)
        throw InvariantViolation("dp end value " + std::to_string(result.dp_end_value) +
                                 " does not match merged doubled score " + std::to_string(doubled));
    return result;
}

namespace {

/// Walks every complete interleaving, carrying the chosen move per step, and
/// scores each finished layout from its merged frequency list.
void enumerate_merges(const std::vector<std::int64_t>& freq_a,
                      const std::vector<ActivityId>& label_a,
                      const std::vector<std::int64_t>& freq_b,
                      const std::vector<ActivityId>& label_b, std::int64_t n, std::size_t i,
                      std::size_t j, std::vector<std::int64_t>& layout, std::int64_t& best) {
    if (i == freq_a.size() && j == freq_b.size()) {
        std::int64_t score = 0;
        for (std::int64_t f : layout)
            score += f * (n - f);
        best = std::min(best, score);
        return;
    }
    if (i < freq_a.size()) {
        layout.push_back(freq_a[i]);
        enumerate_merges(freq_a, label_a, freq_b, label_b, n, i + 1, j, layout, best);
        layout.pop_back();
    }
    if (j < freq_b.size()) {
        layout.push_back(freq_b[j]);
        enumerate_merges(freq_a, label_a, freq_b, label_b, n, i, j + 1, layout, best);
        layout.pop_back();
    }
    if (i < freq_a.size() && j < freq_b.size() && label_a[i] == label_b[j]) {
        layout.push_back(freq_a[i] + freq_b[j]);
        enumerate_merges(freq_a, label_a, freq_b, label_b, n, i + 1, j + 1, layout, best);
        layout.pop_back();
    }
}

}  // namespace

std::int64_t brute_force_min_merge(const Alignment& a, const Alignment& b) {
    check_mergeable(a, b);
    if (a.length() + b.length() > 16)
        throw std::invalid_argument("instance too large for exhaustive merge enumeration");

    const auto n = static_cast<std::int64_t>(a.row_count() + b.row_count());
    std::vector<std::int64_t> freq_a, freq_b;
    std::vector<ActivityId> label_a, label_b;
    for (const Column& col : a.columns()) {
        freq_a.push_back(static_cast<std::int64_t>(col.frequency()));
        label_a.push_back(col.activity);
    }
    for (const Column& col : b.columns()) {
        freq_b.push_back(static_cast<std::int64_t>(col.frequency()));
        label_b.push_back(col.activity);
    }

    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::vector<std::int64_t> layout;
    enumerate_merges(freq_a, label_a, freq_b, label_b, n, 0, 0, layout, best);
    return best;
}

std::uint64_t merge_identity_checks() { return g_identity_checks.load(std::memory_order_relaxed); }

}  // namespace pima
