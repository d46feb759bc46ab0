#include "pima/trace_model.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace pima {

ActivityId ActivityAlphabet::intern(std::string_view label) {
    auto it = index_.find(std::string(label));
    if (it != index_.end())
        return it->second;
    const ActivityId id = static_cast<ActivityId>(list_.size());
    list_.emplace_back(label);
    index_.emplace(list_.back(), id);
    return id;
}

std::optional<ActivityId> ActivityAlphabet::find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

const std::string& ActivityAlphabet::label(ActivityId id) const {
    if (id < 0 || static_cast<std::size_t>(id) >= list_.size())
        throw std::out_of_range("activity id " + std::to_string(id) + " not in alphabet");
    return list_[static_cast<std::size_t>(id)];
}

Alignment::Alignment(LogPtr log, std::vector<std::size_t> rows, std::vector<Column> columns)
    : log_(std::move(log)), rows_(std::move(rows)), columns_(std::move(columns)) {
    if (!log_)
        throw std::invalid_argument("alignment requires an owning log");
    std::unordered_set<std::size_t> seen;
    for (std::size_t trace : rows_) {
        if (trace >= log_->traces.size())
            throw std::out_of_range("trace index " + std::to_string(trace) + " out of range");
        if (!seen.insert(trace).second)
            throw std::invalid_argument("duplicate trace index " + std::to_string(trace) +
                                        " in alignment rows");
    }
    const std::size_t alphabet = log_->alphabet.size();
    for (const Column& col : columns_) {
        if (col.members.universe() != rows_.size())
            throw std::invalid_argument("column membership universe does not match row count");
        if (col.activity < 0 || static_cast<std::size_t>(col.activity) >= alphabet)
            throw std::invalid_argument("column activity id not in alphabet");
    }
}

Alignment Alignment::unchecked(LogPtr log, std::vector<std::size_t> rows,
                               std::vector<Column> columns) {
    Alignment out;
    out.log_ = std::move(log);
    out.rows_ = std::move(rows);
    out.columns_ = std::move(columns);
    return out;
}

Alignment Alignment::from_trace(LogPtr log, std::size_t trace_index) {
    if (!log)
        throw std::invalid_argument("alignment requires an owning log");
    if (trace_index >= log->traces.size())
        throw std::out_of_range("trace index " + std::to_string(trace_index) + " out of range");
    const Trace& trace = log->traces[trace_index];
    std::vector<Column> columns;
    columns.reserve(trace.activities.size());
    for (ActivityId act : trace.activities)
        columns.push_back(Column{act, RowSet::single(1, 0)});
    return Alignment(std::move(log), {trace_index}, std::move(columns));
}

Trace Alignment::project_row(std::size_t row) const {
    if (row >= rows_.size())
        throw std::out_of_range("row " + std::to_string(row) + " out of range");
    Trace out;
    out.case_id = log_->traces[rows_[row]].case_id;
    for (const Column& col : columns_)
        if (col.members.contains(row))
            out.activities.push_back(col.activity);
    return out;
}

Alignment Alignment::compact() const {
    std::vector<Column> kept;
    kept.reserve(columns_.size());
    for (const Column& col : columns_)
        if (!col.members.empty())
            kept.push_back(col);
    Alignment out;
    out.log_ = log_;
    out.rows_ = rows_;
    out.columns_ = std::move(kept);
    return out;
}

std::pair<Alignment, Alignment> Alignment::split(const RowSet& subset) const {
    if (subset.universe() != rows_.size())
        throw std::invalid_argument("subset universe does not match row count");
    const std::size_t picked = subset.count();
    if (picked == 0)
        throw std::invalid_argument("cannot split off an empty row subset");
    if (picked >= rows_.size())
        throw std::invalid_argument("subset must be a proper subset of the rows");

    // Splitting off one row is the iteration hot path; handle it with
    // word-level column operations instead of the per-member remap.
    if (picked == 1) {
        std::size_t r = 0;
        subset.for_each([&](std::size_t pos) { r = pos; });

        Alignment one;
        one.log_ = log_;
        one.rows_ = {rows_[r]};
        Alignment rest;
        rest.log_ = log_;
        rest.rows_ = rows_;
        rest.rows_.erase(rest.rows_.begin() + static_cast<std::ptrdiff_t>(r));
        for (const Column& col : columns_) {
            const bool has_row = col.members.contains(r);
            const std::size_t freq = col.frequency();
            if (has_row)
                one.columns_.push_back(Column{col.activity, RowSet::single(1, 0)});
            if (freq > (has_row ? std::size_t{1} : std::size_t{0}))
                rest.columns_.push_back(Column{col.activity, col.members.collapsed_without(r)});
        }
        return {std::move(one), std::move(rest)};
    }

    // Remap old row positions to positions within each part, keeping the
    // relative order of rows.
    constexpr std::size_t kUnmapped = static_cast<std::size_t>(-1);
    std::vector<std::size_t> new_pos(rows_.size(), kUnmapped);
    std::vector<std::size_t> sub_rows, comp_rows;
    sub_rows.reserve(picked);
    comp_rows.reserve(rows_.size() - picked);
    std::vector<bool> in_subset(rows_.size(), false);
    for (std::size_t pos = 0; pos < rows_.size(); ++pos) {
        if (subset.contains(pos)) {
            in_subset[pos] = true;
            new_pos[pos] = sub_rows.size();
            sub_rows.push_back(rows_[pos]);
        } else {
            new_pos[pos] = comp_rows.size();
            comp_rows.push_back(rows_[pos]);
        }
    }

    std::vector<Column> sub_cols, comp_cols;
    for (const Column& col : columns_) {
        Column sub{col.activity, RowSet(sub_rows.size())};
        Column comp{col.activity, RowSet(comp_rows.size())};
        col.members.for_each([&](std::size_t pos) {
            if (in_subset[pos])
                sub.members.insert(new_pos[pos]);
            else
                comp.members.insert(new_pos[pos]);
        });
        if (!sub.members.empty())
            sub_cols.push_back(std::move(sub));
        if (!comp.members.empty())
            comp_cols.push_back(std::move(comp));
    }

    Alignment sub_part, comp_part;
    sub_part.log_ = log_;
    sub_part.rows_ = std::move(sub_rows);
    sub_part.columns_ = std::move(sub_cols);
    comp_part.log_ = log_;
    comp_part.rows_ = std::move(comp_rows);
    comp_part.columns_ = std::move(comp_cols);
    return {std::move(sub_part), std::move(comp_part)};
}

std::pair<Alignment, Alignment> Alignment::split(
    const std::vector<std::size_t>& subset_positions) const {
    RowSet subset(rows_.size());
    for (std::size_t pos : subset_positions) {
        if (pos >= rows_.size())
            throw std::out_of_range("subset position out of range");
        subset.insert(pos);
    }
    return split(subset);
}

std::vector<std::int64_t> Alignment::column_frequencies() const {
    std::vector<std::int64_t> freq;
    freq.reserve(columns_.size());
    for (const Column& col : columns_)
        freq.push_back(static_cast<std::int64_t>(col.frequency()));
    return freq;
}

bool Alignment::projections_match_log() const {
    for (std::size_t row = 0; row < rows_.size(); ++row)
        if (!(project_row(row) == log_->traces[rows_[row]]))
            return false;
    return true;
}

}  // namespace pima
