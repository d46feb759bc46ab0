#include "pima/consensus.hpp"

#include <stdexcept>

namespace pima {

ConsensusSequence consensus(const Alignment& a, double threshold) {
    if (!(threshold >= 0.0 && threshold <= 1.0))
        throw std::invalid_argument("consensus threshold must lie in [0, 1]");

    ConsensusSequence out;
    out.threshold = threshold;
    out.trace_count = a.row_count();
    out.source_length = a.length();

    const auto n = static_cast<double>(a.row_count());
    for (std::size_t k = 0; k < a.length(); ++k) {
        const Column& col = a.columns()[k];
        const auto count = static_cast<std::int64_t>(col.frequency());
        const double fraction = n > 0 ? static_cast<double>(count) / n : 0.0;
        if (fraction < threshold)
            continue;
        ConsensusEntry entry;
        entry.column = k;
        entry.label = a.log().alphabet.label(col.activity);
        entry.count = count;
        entry.fraction = fraction;
        out.retained_activities += count;
        out.entries.push_back(std::move(entry));
    }
    return out;
}

}  // namespace pima
