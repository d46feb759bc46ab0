#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pima/trace_model.hpp"

namespace pima {

struct ConsensusEntry {
    std::size_t column = 0;  ///< 0-based index into the source alignment.
    std::string label;
    std::int64_t count = 0;
    double fraction = 0.0;
};

/// Columns surviving a minimum-frequency threshold, in source order.
struct ConsensusSequence {
    std::vector<ConsensusEntry> entries;
    double threshold = 0.0;
    std::size_t trace_count = 0;
    std::size_t source_length = 0;
    /// Sum of kept-column frequencies; more retained activities and a longer
    /// consensus indicate better-consolidated columns.
    std::int64_t retained_activities = 0;

    std::size_t length() const { return entries.size(); }
};

/// Keeps columns with frequency fraction >= threshold, so columns exactly at
/// the threshold survive. Raising the threshold never adds columns.
ConsensusSequence consensus(const Alignment& a, double threshold);

}  // namespace pima
