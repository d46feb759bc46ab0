#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace pima {

using ActivityId = std::int32_t;

/// Ordered universe of activity labels. Ids are contiguous, 0-based, and
/// assigned by order of first appearance in the log. The gap token is never
/// a member; parsers reject it before interning.
class ActivityAlphabet {
public:
    /// Returns the id for `label`, adding it if unseen.
    ActivityId intern(std::string_view label);

    std::optional<ActivityId> find(std::string_view label) const;

    const std::string& label(ActivityId id) const;

    std::size_t size() const { return list_.size(); }

    const std::vector<std::string>& labels() const { return list_; }

    bool operator==(const ActivityAlphabet& other) const { return list_ == other.list_; }

private:
    std::vector<std::string> list_;
    std::unordered_map<std::string, ActivityId> index_;
};

/// One recorded execution of the process.
struct Trace {
    std::string case_id;
    std::vector<ActivityId> activities;

    std::size_t length() const { return activities.size(); }
    bool operator==(const Trace&) const = default;
};

/// A collection of traces over a shared alphabet.
struct Log {
    ActivityAlphabet alphabet;
    std::vector<Trace> traces;

    std::size_t trace_count() const { return traces.size(); }
    bool operator==(const Log&) const = default;
};

/// Logs are immutable once built; alignments share them by pointer.
using LogPtr = std::shared_ptr<const Log>;

inline LogPtr make_log(Log log) { return std::make_shared<const Log>(std::move(log)); }

/// Set of row positions, stored as a bit vector so frequency queries are a
/// popcount and memberships are O(1).
class RowSet {
public:
    RowSet() = default;
    explicit RowSet(std::size_t universe)
        : universe_(universe), words_((universe + 63) / 64, 0) {}

    static RowSet single(std::size_t universe, std::size_t member) {
        RowSet s(universe);
        s.insert(member);
        return s;
    }

    std::size_t universe() const { return universe_; }

    void insert(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }

    bool contains(std::size_t i) const {
        return i < universe_ && (words_[i >> 6] >> (i & 63)) & 1;
    }

    std::size_t count() const {
        std::size_t n = 0;
        for (std::uint64_t w : words_)
            n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    bool empty() const {
        for (std::uint64_t w : words_)
            if (w)
                return false;
        return true;
    }

    /// Visits members in ascending order.
    template <class F>
    void for_each(F&& fn) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                fn(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
    }

    std::vector<std::size_t> to_vector() const {
        std::vector<std::size_t> v;
        v.reserve(count());
        for_each([&](std::size_t i) { v.push_back(i); });
        return v;
    }

    /// Same members over a larger universe.
    RowSet expanded(std::size_t new_universe) const {
        RowSet out(new_universe);
        std::copy(words_.begin(), words_.end(), out.words_.begin());
        return out;
    }

    /// ORs in `other` with every position shifted up by `offset`. The
    /// universe must already cover offset + other.universe().
    void or_shifted(const RowSet& other, std::size_t offset) {
        const std::size_t word_off = offset >> 6;
        const unsigned bit_off = static_cast<unsigned>(offset & 63);
        if (bit_off == 0) {
            for (std::size_t w = 0; w < other.words_.size(); ++w)
                words_[w + word_off] |= other.words_[w];
            return;
        }
        for (std::size_t w = 0; w < other.words_.size(); ++w) {
            words_[w + word_off] |= other.words_[w] << bit_off;
            const std::uint64_t high = other.words_[w] >> (64 - bit_off);
            if (high && w + word_off + 1 < words_.size())
                words_[w + word_off + 1] |= high;
        }
    }

    /// Drops position `r`; positions above it shift down by one.
    RowSet collapsed_without(std::size_t r) const {
        RowSet out(universe_ - 1);
        const std::size_t rw = r >> 6;
        const unsigned rb = static_cast<unsigned>(r & 63);
        for (std::size_t w = 0; w < rw && w < out.words_.size(); ++w)
            out.words_[w] = words_[w];
        const std::uint64_t low_mask = rb == 0 ? 0 : ~std::uint64_t{0} >> (64 - rb);
        for (std::size_t w = rw; w < out.words_.size(); ++w) {
            const std::uint64_t carry =
                w + 1 < words_.size() ? (words_[w + 1] & 1) << 63 : 0;
            if (w == rw)
                out.words_[w] = (words_[w] & low_mask) | ((words_[w] >> 1) & ~low_mask) | carry;
            else
                out.words_[w] = (words_[w] >> 1) | carry;
        }
        return out;
    }

    bool operator==(const RowSet&) const = default;

private:
    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

/// One alignment column: a single activity type plus the rows that carry it
/// at this position. Rows outside `members` hold a gap here.
struct Column {
    ActivityId activity = 0;
    RowSet members;

    std::size_t frequency() const { return members.count(); }
    bool operator==(const Column&) const = default;
};

/// An N-by-L alignment matrix in columnar form. `rows` maps row positions to
/// trace indices of the owning log. Value semantics: operations return new
/// alignments and never mutate their inputs, so instances are safe to share
/// across threads.
class Alignment {
public:
    Alignment() = default;

    /// Validating constructor; row indices must be distinct and in range,
    /// column membership universes must equal the row count.
    Alignment(LogPtr log, std::vector<std::size_t> rows, std::vector<Column> columns);

    /// Lifts one trace into a single-row alignment, one column per activity.
    static Alignment from_trace(LogPtr log, std::size_t trace_index);

    /// Assembles an alignment without validation. For internal paths where
    /// the parts are correct by construction; everything else goes through
    /// the validating constructor.
    static Alignment unchecked(LogPtr log, std::vector<std::size_t> rows,
                               std::vector<Column> columns);

    const LogPtr& log_ptr() const { return log_; }
    const Log& log() const { return *log_; }

    std::size_t row_count() const { return rows_.size(); }
    std::size_t length() const { return columns_.size(); }
    const std::vector<std::size_t>& rows() const { return rows_; }
    const std::vector<Column>& columns() const { return columns_; }

    /// Gap-stripped activity sequence of a row; equals the original trace.
    Trace project_row(std::size_t row) const;

    /// Drops zero-frequency columns. Idempotent; never changes the score.
    Alignment compact() const;

    /// Partitions rows into (subset profile, complement profile), both
    /// compacted, preserving each side's row projections and column order.
    /// The subset must be a non-empty proper subset of the rows.
    std::pair<Alignment, Alignment> split(const RowSet& subset) const;
    std::pair<Alignment, Alignment> split(const std::vector<std::size_t>& subset_positions) const;

    /// Per-column frequencies f_k = |members of column k|.
    std::vector<std::int64_t> column_frequencies() const;

    /// True when every row projects back to its originating trace.
    bool projections_match_log() const;

    /// Compares rows and columns; the owning log pointer is not compared.
    bool operator==(const Alignment& other) const {
        return rows_ == other.rows_ && columns_ == other.columns_;
    }

private:
    LogPtr log_;
    std::vector<std::size_t> rows_;
    std::vector<Column> columns_;
};

}  // namespace pima
