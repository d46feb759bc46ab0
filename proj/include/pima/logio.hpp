#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pima/consensus.hpp"
#include "pima/refinement.hpp"
#include "pima/trace_model.hpp"

namespace pima {

/// Plain format: one trace per non-empty line, whitespace-separated activity
/// tokens; case ids are 1-based line numbers. An activity token equal to the
/// gap token is a parse error.
Log parse_traces(std::string_view text, std::string_view gap_token = "-");
std::string serialize_traces(const Log& log);

struct CsvConfig {
    std::string case_column = "case_id";
    std::string activity_column = "activity";
    std::string order_column = "order_key";
    std::string gap_token = "-";
};

/// CSV format: header with case_id and activity columns, rows grouped by
/// case id in order of first appearance. Within-case order follows the
/// numeric order_key column when present, file order otherwise. Standard
/// quoting rules apply.
Log parse_csv(std::string_view text, const CsvConfig& config = {});
std::string serialize_csv(const Log& log);

/// Tab-separated matrix: header of 1-based column indices, then one row per
/// trace (ascending trace index) with the case id followed by L cells.
std::string write_alignment_tsv(const Alignment& a, std::string_view gap_token = "-");

/// Parses a matrix written by write_alignment_tsv (or compatible). Columns
/// mixing two activity labels raise InvariantViolation naming the column;
/// all-gap columns are accepted and contribute nothing to the score.
Alignment read_alignment_tsv(std::string_view text, std::string_view gap_token = "-");

/// Everything the stats emitter needs from a run.
struct StatsDocument {
    std::string initializer;
    std::uint64_t seed = 0;
    std::string gap_token = "-";
    ConvergencePolicy policy;
    std::vector<IterationRecord> records;
    std::int64_t final_pairs_score = 0;
    std::int64_t final_doubled_score = 0;
    std::size_t final_length = 0;
    ConsensusSequence consensus;
    /// Write elapsed_ms fields as 0 so outputs are byte-reproducible.
    bool zero_timings = false;
};

std::string write_stats_json(const StatsDocument& doc);

/// Self-contained HTML heatmap: one colored cell per non-gap entry, a fixed
/// color per activity id, a legend, and consensus-dropped columns omitted
/// when the threshold is positive. Byte-identical output for equal inputs.
std::string render_heatmap_html(const Alignment& a, double consensus_threshold);

struct SyntheticParams {
    std::size_t n_traces = 1;
    std::size_t n_activity_types = 1;
    std::size_t backbone_length = 0;
    double insertion_rate = 0.0;
    double deletion_rate = 0.0;
    double swap_rate = 0.0;
    std::uint64_t seed = 0;
};

/// Draws a random backbone sequence, then derives each trace by seeded
/// adjacent swaps, deletions, and insertions at the given rates.
Log generate_synthetic(const SyntheticParams& params);

struct LogStats {
    std::size_t trace_count = 0;
    std::int64_t total_activities = 0;
    std::size_t activity_types = 0;
    double mean_trace_length = 0.0;
    double std_trace_length = 0.0;
};

LogStats log_stats(const Log& log);

/// Spreadsheet-style label for an index: a, b, ..., z, aa, ab, ...
std::string alpha_label(std::size_t index);

}  // namespace pima
