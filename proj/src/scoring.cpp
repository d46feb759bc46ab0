#include "pima/scoring.hpp"

#include <vector>

namespace pima {

std::int64_t sps_pairwise(const Alignment& a) {
    const std::size_t n = a.row_count();
    const std::size_t len = a.length();
    if (n < 2 || len == 0)
        return 0;

    // Expand the columnar representation into a dense cell matrix so the
    // comparison really is the cell-by-cell Hamming sum.
    constexpr ActivityId kGap = -1;
    std::vector<ActivityId> cells(n * len, kGap);
    for (std::size_t k = 0; k < len; ++k) {
        const Column& col = a.columns()[k];
        col.members.for_each([&](std::size_t row) { cells[row * len + k] = col.activity; });
    }

    std::int64_t total = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const ActivityId* ri = &cells[i * len];
        for (std::size_t j = i + 1; j < n; ++j) {
            const ActivityId* rj = &cells[j * len];
            for (std::size_t k = 0; k < len; ++k)
                total += ri[k] != rj[k];
        }
    }
    return total;
}

std::int64_t sps_columnar(const Alignment& a) {
    const auto n = static_cast<std::int64_t>(a.row_count());
    std::int64_t total = 0;
    for (const Column& col : a.columns()) {
        const auto f = static_cast<std::int64_t>(col.frequency());
        total += f * (n - f);
    }
    return total;
}

}  // namespace pima
