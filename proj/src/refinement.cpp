#include "pima/refinement.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include "pima/profile_align.hpp"
#include "pima/rng.hpp"
#include "pima/scoring.hpp"

namespace pima {

std::string_view iteration_kind_name(IterationKind kind) {
    switch (kind) {
        case IterationKind::init: return "init";
        case IterationKind::single: return "single";
        case IterationKind::multi: return "multi";
    }
    return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

std::size_t row_position_of(const Alignment& m, std::size_t trace) {
    const auto& rows = m.rows();
    const auto it = std::find(rows.begin(), rows.end(), trace);
    if (it == rows.end())
        throw std::logic_error("trace vanished from alignment rows");
    return static_cast<std::size_t>(it - rows.begin());
}

void validate_freq_range(double low, double high) {
    if (!(0.0 <= low && low < high && high <= 1.0))
        throw std::invalid_argument("frequency range must satisfy 0 <= low < high <= 1");
}

}  // namespace

PassResult single_trace_pass(const Alignment& m, std::span<const std::size_t> row_order) {
    const std::size_t n = m.row_count();
    if (n < 2)
        throw std::invalid_argument("single-trace realignment needs at least two rows");
    if (row_order.size() != n)
        throw std::invalid_argument("row order must cover every row exactly once");
    std::vector<bool> seen(n, false);
    for (std::size_t pos : row_order) {
        if (pos >= n || seen[pos])
            throw std::invalid_argument("row order is not a permutation of the rows");
        seen[pos] = true;
    }

    // Later realignments reorder rows, so remember traces, not positions.
    std::vector<std::size_t> trace_order;
    trace_order.reserve(n);
    for (std::size_t pos : row_order)
        trace_order.push_back(m.rows()[pos]);

    Alignment cur = m;
    for (std::size_t trace : trace_order) {
        const std::size_t pos = row_position_of(cur, trace);
        auto [one, rest] = cur.split(RowSet::single(cur.row_count(), pos));
        cur = align_profiles(rest, one);
    }
    return PassResult{std::move(cur), n};
}

PassResult multi_trace_pass(const Alignment& m, double freq_low, double freq_high) {
    validate_freq_range(freq_low, freq_high);
    const std::size_t n = m.row_count();
    if (n < 2)
        throw std::invalid_argument("multi-trace realignment needs at least two rows");

    // Activities that occupy more than one column.
    std::map<ActivityId, std::size_t> column_count;
    for (const Column& col : m.columns())
        ++column_count[col.activity];

    struct Candidate {
        std::vector<std::size_t> member_traces;
        std::size_t size = 0;
        std::size_t column = 0;
    };
    std::vector<Candidate> candidates;
    std::set<std::vector<std::size_t>> seen_partitions;

    for (std::size_t k = 0; k < m.length(); ++k) {
        const Column& col = m.columns()[k];
        if (column_count[col.activity] < 2)
            continue;
        const std::size_t f = col.frequency();
        const double fraction = static_cast<double>(f) / static_cast<double>(n);
        if (fraction < freq_low || fraction > freq_high)
            continue;
        if (f == 0 || f == n)
            continue;

        Candidate cand;
        cand.size = f;
        cand.column = k;
        std::vector<std::size_t> complement;
        for (std::size_t pos = 0; pos < n; ++pos) {
            if (col.members.contains(pos))
                cand.member_traces.push_back(m.rows()[pos]);
            else
                complement.push_back(m.rows()[pos]);
        }
        std::sort(cand.member_traces.begin(), cand.member_traces.end());
        std::sort(complement.begin(), complement.end());

        // Two columns inducing the same partition realign the same rows;
        // keep the first.
        std::vector<std::size_t>& key =
            cand.member_traces < complement ? cand.member_traces : complement;
        if (!seen_partitions.insert(key).second)
            continue;
        candidates.push_back(std::move(cand));
    }

    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.size > b.size; });

    Alignment cur = m;
    std::size_t ops = 0;
    for (const Candidate& cand : candidates) {
        std::unordered_set<std::size_t> members(cand.member_traces.begin(),
                                                cand.member_traces.end());
        RowSet subset(cur.row_count());
        for (std::size_t pos = 0; pos < cur.row_count(); ++pos)
            if (members.count(cur.rows()[pos]))
                subset.insert(pos);
        auto [with_side, without_side] = cur.split(subset);
        cur = align_profiles(with_side, without_side);
        ++ops;
    }
    return PassResult{std::move(cur), ops};
}

ConvergeResult converge(const LogPtr& log, InitMethod method, const ConvergencePolicy& policy,
                        const IterationObserver& observer) {
    if (!log || log->traces.empty())
        throw std::invalid_argument("cannot align an empty log");
    validate_freq_range(policy.freq_low, policy.freq_high);

    const std::size_t n = log->traces.size();
    Rng rng(policy.seed);
    ConvergeResult result;

    auto record = [&](IterationKind kind, const Alignment& m, Clock::time_point start,
                      std::size_t ops) {
        IterationRecord rec;
        rec.index = result.records.size();
        rec.kind = kind;
        rec.pairs_score = sps_columnar(m);
        rec.length = m.length();
        rec.elapsed = Clock::now() - start;
        rec.align_ops = ops;
        result.records.push_back(rec);
        if (observer)
            observer(result.records.back(), m);
        return rec.pairs_score;
    };

    auto start = Clock::now();
    Alignment m;
    switch (method) {
        case InitMethod::random_sequential:
            m = sequential_merge(log, GuideOrder{rng.permutation(n), method});
            break;
        case InitMethod::sorted_length:
            m = sequential_merge(log, order_by_length(*log));
            break;
        case InitMethod::sorted_activity_sum:
            m = sequential_merge(log, order_by_activity_sum(*log));
            break;
        case InitMethod::guide_tree:
            m = n >= 2 ? guide_tree_baseline(log) : Alignment::from_trace(log, 0);
            break;
    }
    std::int64_t prev = record(IterationKind::init, m, start, n - 1);

    if (n < 2) {
        result.alignment = std::move(m);
        return result;
    }

    auto run_single_phase = [&]() {
        for (std::size_t pass = 0; pass < policy.max_single_passes; ++pass) {
            const std::vector<std::size_t> order = rng.permutation(m.row_count());
            start = Clock::now();
            PassResult pr = single_trace_pass(m, order);
            m = std::move(pr.alignment);
            const std::int64_t cur = record(IterationKind::single, m, start, pr.align_ops);
            if (cur == prev) {
                prev = cur;
                return;
            }
            const double improvement =
                prev > 0 ? static_cast<double>(prev - cur) / static_cast<double>(prev) : 0.0;
            prev = cur;
            if (improvement < policy.min_relative_improvement)
                return;
        }
    };

    run_single_phase();
    for (std::size_t round = 0; round < policy.max_multi_rounds; ++round) {
        start = Clock::now();
        PassResult pr = multi_trace_pass(m, policy.freq_low, policy.freq_high);
        m = std::move(pr.alignment);
        const std::int64_t cur = record(IterationKind::multi, m, start, pr.align_ops);
        if (cur == prev)
            break;
        prev = cur;
        run_single_phase();
    }

    result.alignment = std::move(m);
    return result;
}

}  // namespace pima
