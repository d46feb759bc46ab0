#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "pima/initialization.hpp"
#include "pima/trace_model.hpp"

namespace pima {

enum class IterationKind { init, single, multi };

std::string_view iteration_kind_name(IterationKind kind);

/// Per-iteration telemetry. Scores are non-increasing over successive
/// records within one run.
struct IterationRecord {
    std::size_t index = 0;
    IterationKind kind = IterationKind::init;
    std::int64_t pairs_score = 0;
    std::size_t length = 0;
    std::chrono::duration<double> elapsed{0.0};
    std::size_t align_ops = 0;
};

struct ConvergencePolicy {
    /// Stop a single-pass phase once the relative score improvement falls
    /// below this fraction. 0 means run to exact convergence; 0.01 is the
    /// rapid-visualization early stop.
    double min_relative_improvement = 0.0;
    /// Cap on single passes per convergence phase.
    std::size_t max_single_passes = 1000;
    /// How many times to attempt a multi-trace round after converging.
    std::size_t max_multi_rounds = 1;
    /// Column-frequency fraction window for multi-trace candidacy,
    /// inclusive at both ends.
    double freq_low = 0.10;
    double freq_high = 0.90;
    std::uint64_t seed = 0;
};

struct PassResult {
    Alignment alignment;
    std::size_t align_ops = 0;
};

/// Removes each trace once, in the given order of current row positions,
/// and optimally realigns it against the rest. Exactly N merge operations;
/// the score never increases.
PassResult single_trace_pass(const Alignment& m, std::span<const std::size_t> row_order);

/// One multi-trace round: columns whose activity occupies more than one
/// column and whose frequency fraction lies within [freq_low, freq_high]
/// each nominate a row partition (rows with the activity vs rows without).
/// Partitions are snapshotted as trace-id sets up front, deduplicated, and
/// realigned in descending subset-size order.
PassResult multi_trace_pass(const Alignment& m, double freq_low, double freq_high);

struct ConvergeResult {
    Alignment alignment;
    std::vector<IterationRecord> records;
};

using IterationObserver = std::function<void(const IterationRecord&, const Alignment&)>;

/// Full run: initialization, single-trace passes to convergence, then up to
/// max_multi_rounds multi-trace rounds, each followed by re-convergence when
/// it lowered the score. Each single pass uses a fresh row order drawn from
/// the run seed. Score equality between consecutive passes is the
/// convergence signal.
ConvergeResult converge(const LogPtr& log, InitMethod method, const ConvergencePolicy& policy,
                        const IterationObserver& observer = {});

}  // namespace pima
