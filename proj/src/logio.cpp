#include "pima/logio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <unordered_map>
#include <utility>

#include <json.hpp>

#include "pima/errors.hpp"
#include "pima/rng.hpp"
#include "pima/scoring.hpp"

namespace pima {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t begin = 0;
    while (begin <= text.size()) {
        std::size_t end = text.find('\n', begin);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(begin, end - begin);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        lines.push_back(line);
        if (end == text.size())
            break;
        begin = end + 1;
    }
    // A trailing newline does not introduce an extra empty line.
    if (!lines.empty() && lines.back().empty())
        lines.pop_back();
    return lines;
}

std::vector<std::string_view> split_whitespace(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t'))
            ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t')
            ++i;
        if (i > start)
            tokens.push_back(line.substr(start, i - start));
    }
    return tokens;
}

}  // namespace

Log parse_traces(std::string_view text, std::string_view gap_token) {
    Log log;
    const auto lines = split_lines(text);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        const auto tokens = split_whitespace(lines[ln]);
        if (tokens.empty())
            continue;
        Trace trace;
        trace.case_id = std::to_string(ln + 1);
        for (std::string_view token : tokens) {
            if (token == gap_token)
                throw ParseError("line " + std::to_string(ln + 1) + ": activity token '" +
                                 std::string(token) + "' collides with the gap token");
            trace.activities.push_back(log.alphabet.intern(token));
        }
        log.traces.push_back(std::move(trace));
    }
    if (log.traces.empty())
        throw ParseError("log file contains no traces");
    return log;
}

std::string serialize_traces(const Log& log) {
    std::string out;
    for (const Trace& trace : log.traces) {
        for (std::size_t i = 0; i < trace.activities.size(); ++i) {
            if (i)
                out += ' ';
            out += log.alphabet.label(trace.activities[i]);
        }
        out += '\n';
    }
    return out;
}

namespace {

/// Character-level CSV record scanner with standard quoting ("" escapes a
/// quote; quoted fields may contain commas and newlines).
std::vector<std::vector<std::string>> scan_csv(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool field_started = false;

    auto end_field = [&]() {
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&]() {
        end_field();
        const bool blank = record.size() == 1 && record[0].empty();
        if (!blank)
            records.push_back(std::move(record));
        record.clear();
    };

    std::size_t i = 0;
    // Skip a UTF-8 byte-order mark.
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF")
        i = 3;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                if (!field_started && field.empty()) {
                    quoted = true;
                    field_started = true;
                } else {
                    field += c;
                }
                break;
            case ',':
                end_field();
                break;
            case '\r':
                break;
            case '\n':
                end_record();
                break;
            default:
                field += c;
                field_started = true;
                break;
        }
    }
    if (quoted)
        throw ParseError("unterminated quoted field at end of file");
    if (field_started || !field.empty() || !record.empty())
        end_record();
    return records;
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos)
        return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

Log parse_csv(std::string_view text, const CsvConfig& config) {
    const auto records = scan_csv(text);
    if (records.empty())
        throw ParseError("csv file is empty");

    const auto& header = records.front();
    auto find_column = [&](const std::string& name) -> std::ptrdiff_t {
        const auto it = std::find(header.begin(), header.end(), name);
        return it == header.end() ? -1 : it - header.begin();
    };
    const std::ptrdiff_t case_col = find_column(config.case_column);
    const std::ptrdiff_t act_col = find_column(config.activity_column);
    const std::ptrdiff_t order_col = find_column(config.order_column);
    if (case_col < 0)
        throw ParseError("csv header lacks required column '" + config.case_column + "'");
    if (act_col < 0)
        throw ParseError("csv header lacks required column '" + config.activity_column + "'");

    struct Event {
        double order_key = 0.0;
        std::size_t file_order = 0;
        std::string activity;
    };
    std::vector<std::string> case_order;
    std::unordered_map<std::string, std::vector<Event>> by_case;

    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& row = records[r];
        const std::size_t needed = static_cast<std::size_t>(
            std::max({case_col, act_col, order_col >= 0 ? order_col : std::ptrdiff_t{0}})) + 1;
        if (row.size() < needed)
            throw ParseError("csv row " + std::to_string(r + 1) + ": expected at least " +
                             std::to_string(needed) + " fields, found " +
                             std::to_string(row.size()));
        Event ev;
        ev.file_order = r;
        ev.activity = row[static_cast<std::size_t>(act_col)];
        if (ev.activity == config.gap_token)
            throw ParseError("csv row " + std::to_string(r + 1) + ": activity '" + ev.activity +
                             "' collides with the gap token");
        if (order_col >= 0) {
            const std::string& raw = row[static_cast<std::size_t>(order_col)];
            const char* first = raw.data();
            const char* last = raw.data() + raw.size();
            const auto [ptr, ec] = std::from_chars(first, last, ev.order_key);
            if (ec != std::errc{} || ptr != last)
                throw ParseError("csv row " + std::to_string(r + 1) + ": unparsable order_key '" +
                                 raw + "'");
        }
        const std::string& case_id = row[static_cast<std::size_t>(case_col)];
        auto [it, inserted] = by_case.try_emplace(case_id);
        if (inserted)
            case_order.push_back(case_id);
        it->second.push_back(std::move(ev));
    }
    if (case_order.empty())
        throw ParseError("csv file contains no event rows");

    Log log;
    for (const std::string& case_id : case_order) {
        auto& events = by_case[case_id];
        std::stable_sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
            return a.order_key < b.order_key;
        });
        Trace trace;
        trace.case_id = case_id;
        for (const Event& ev : events)
            trace.activities.push_back(log.alphabet.intern(ev.activity));
        log.traces.push_back(std::move(trace));
    }
    return log;
}

std::string serialize_csv(const Log& log) {
    std::string out = "case_id,activity\n";
    for (const Trace& trace : log.traces)
        for (ActivityId act : trace.activities)
            out += csv_quote(trace.case_id) + ',' + csv_quote(log.alphabet.label(act)) + '\n';
    return out;
}

namespace {

/// Rows ordered by ascending trace index for stable, readable output.
std::vector<std::size_t> display_row_order(const Alignment& a) {
    std::vector<std::size_t> order(a.row_count());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return a.rows()[x] < a.rows()[y]; });
    return order;
}

std::vector<std::vector<const std::string*>> cell_grid(const Alignment& a) {
    std::vector<std::vector<const std::string*>> grid(
        a.row_count(), std::vector<const std::string*>(a.length(), nullptr));
    for (std::size_t k = 0; k < a.length(); ++k) {
        const Column& col = a.columns()[k];
        const std::string& label = a.log().alphabet.label(col.activity);
        col.members.for_each([&](std::size_t row) { grid[row][k] = &label; });
    }
    return grid;
}

}  // namespace

std::string write_alignment_tsv(const Alignment& a, std::string_view gap_token) {
    std::string out = "case_id";
    for (std::size_t k = 1; k <= a.length(); ++k) {
        out += '\t';
        out += std::to_string(k);
    }
    out += '\n';

    const auto grid = a.row_count() ? cell_grid(a) : std::vector<std::vector<const std::string*>>{};
    for (std::size_t row : display_row_order(a)) {
        out += a.log().traces[a.rows()[row]].case_id;
        for (std::size_t k = 0; k < a.length(); ++k) {
            out += '\t';
            out += grid[row][k] ? *grid[row][k] : std::string(gap_token);
        }
        out += '\n';
    }
    return out;
}

Alignment read_alignment_tsv(std::string_view text, std::string_view gap_token) {
    const auto lines = split_lines(text);
    if (lines.empty())
        throw ParseError("alignment file is empty");

    auto split_tabs = [](std::string_view line) {
        std::vector<std::string_view> fields;
        std::size_t begin = 0;
        while (true) {
            const std::size_t end = line.find('\t', begin);
            if (end == std::string_view::npos) {
                fields.push_back(line.substr(begin));
                break;
            }
            fields.push_back(line.substr(begin, end - begin));
            begin = end + 1;
        }
        return fields;
    };

    const auto header = split_tabs(lines[0]);
    if (header.empty() || header[0] != "case_id")
        throw ParseError("alignment header must start with 'case_id'");
    const std::size_t length = header.size() - 1;

    std::vector<std::string> case_ids;
    std::vector<std::vector<std::string_view>> matrix;
    for (std::size_t ln = 1; ln < lines.size(); ++ln) {
        const auto fields = split_tabs(lines[ln]);
        if (fields.size() != length + 1)
            throw ParseError("alignment row " + std::to_string(ln + 1) + ": expected " +
                             std::to_string(length + 1) + " fields, found " +
                             std::to_string(fields.size()));
        case_ids.emplace_back(fields[0]);
        matrix.emplace_back(fields.begin() + 1, fields.end());
    }
    const std::size_t n = matrix.size();

    // Validate the single-type-column invariant before building anything.
    for (std::size_t k = 0; k < length; ++k) {
        std::string_view seen;
        for (std::size_t row = 0; row < n; ++row) {
            const std::string_view cell = matrix[row][k];
            if (cell.empty())
                throw ParseError("alignment row " + std::to_string(row + 2) + ": empty cell in column " +
                                 std::to_string(k + 1));
            if (cell == gap_token)
                continue;
            if (seen.empty())
                seen = cell;
            else if (cell != seen)
                throw InvariantViolation("column " + std::to_string(k + 1) +
                                         " mixes activity labels '" + std::string(seen) +
                                         "' and '" + std::string(cell) + "'");
        }
    }

    Log log;
    for (std::size_t row = 0; row < n; ++row) {
        Trace trace;
        trace.case_id = case_ids[row];
        for (std::size_t k = 0; k < length; ++k)
            if (matrix[row][k] != gap_token)
                trace.activities.push_back(log.alphabet.intern(matrix[row][k]));
        log.traces.push_back(std::move(trace));
    }
    LogPtr shared = make_log(std::move(log));

    std::vector<Column> columns;
    for (std::size_t k = 0; k < length; ++k) {
        Column col;
        col.members = RowSet(n);
        bool any = false;
        for (std::size_t row = 0; row < n; ++row) {
            if (matrix[row][k] == gap_token)
                continue;
            col.activity = *shared->alphabet.find(matrix[row][k]);
            col.members.insert(row);
            any = true;
        }
        // All-gap columns carry no information; dropping them leaves the
        // score unchanged.
        if (any)
            columns.push_back(std::move(col));
    }

    std::vector<std::size_t> rows(n);
    for (std::size_t i = 0; i < n; ++i)
        rows[i] = i;
    return Alignment(std::move(shared), std::move(rows), std::move(columns));
}

std::string write_stats_json(const StatsDocument& doc) {
    ordered_json root;
    root["initializer"] = doc.initializer;
    root["seed"] = doc.seed;
    root["gap_token"] = doc.gap_token;
    root["conventions"] =
        "pairs_score counts unordered row pairs; doubled_score = 2 * pairs_score";
    root["policy"] = {
        {"min_relative_improvement", doc.policy.min_relative_improvement},
        {"max_single_passes", doc.policy.max_single_passes},
        {"max_multi_rounds", doc.policy.max_multi_rounds},
        {"freq_low", doc.policy.freq_low},
        {"freq_high", doc.policy.freq_high},
    };

    ordered_json records = ordered_json::array();
    for (const IterationRecord& rec : doc.records) {
        ordered_json r;
        r["iteration"] = rec.index;
        r["kind"] = std::string(iteration_kind_name(rec.kind));
        r["pairs_score"] = rec.pairs_score;
        r["doubled_score"] = 2 * rec.pairs_score;
        r["length"] = rec.length;
        r["elapsed_ms"] = doc.zero_timings ? 0.0 : rec.elapsed.count() * 1000.0;
        r["align_ops"] = rec.align_ops;
        records.push_back(std::move(r));
    }
    root["records"] = std::move(records);

    root["final"] = {
        {"pairs_score", doc.final_pairs_score},
        {"doubled_score", doc.final_doubled_score},
        {"length", doc.final_length},
        {"iterations", doc.records.empty() ? 0 : doc.records.size() - 1},
    };

    ordered_json entries = ordered_json::array();
    for (const ConsensusEntry& entry : doc.consensus.entries) {
        ordered_json e;
        e["column"] = entry.column + 1;
        e["label"] = entry.label;
        e["count"] = entry.count;
        e["fraction"] = entry.fraction;
        entries.push_back(std::move(e));
    }
    root["consensus"] = {
        {"threshold", doc.consensus.threshold},
        {"trace_count", doc.consensus.trace_count},
        {"source_length", doc.consensus.source_length},
        {"length", doc.consensus.length()},
        {"retained_activities", doc.consensus.retained_activities},
        {"entries", std::move(entries)},
    };
    return root.dump(2) + "\n";
}

namespace {

std::string html_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&#39;"; break;
            default: out += c; break;
        }
    }
    return out;
}

int activity_hue(std::size_t activity) {
    // Fixed pseudo-golden spacing keeps neighboring ids distinguishable and
    // the palette byte-stable.
    return static_cast<int>((activity * 137 + 83) % 360);
}

}  // namespace

std::string render_heatmap_html(const Alignment& a, double consensus_threshold) {
    const ConsensusSequence cons = consensus(a, consensus_threshold);

    std::ostringstream html;
    html << "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n"
         << "<title>Trace alignment heatmap</title>\n<style>\n"
         << "body{font-family:sans-serif;background:#fff;color:#222;}\n"
         << "table{border-collapse:collapse;}\n"
         << "td,th{padding:0;border:1px solid #ddd;min-width:14px;height:18px;"
         << "font-size:10px;text-align:center;}\n"
         << "th{background:#f2f2f2;padding:0 3px;}\n"
         << "td.case{background:#f8f8f8;padding:0 6px;text-align:left;}\n"
         << ".legend li{list-style:none;margin:2px;}\n"
         << ".swatch{display:inline-block;width:14px;height:14px;margin-right:6px;"
         << "vertical-align:middle;}\n";
    const std::size_t types = a.row_count() ? a.log().alphabet.size() : 0;
    for (std::size_t act = 0; act < types; ++act)
        html << ".a" << act << "{background:hsl(" << activity_hue(act) << ",62%,58%);}\n";
    html << "</style>\n</head>\n<body>\n";

    html << "<h2>Trace alignment</h2>\n<p>traces: " << a.row_count()
         << ", columns: " << a.length() << ", consensus threshold: " << consensus_threshold
         << ", columns shown: " << cons.length()
         << ", retained activities: " << cons.retained_activities << "</p>\n";

    html << "<ul class=\"legend\">\n";
    for (std::size_t act = 0; act < types; ++act)
        html << "<li><span class=\"swatch a" << act << "\"></span>"
             << html_escape(a.log().alphabet.label(static_cast<ActivityId>(act))) << "</li>\n";
    html << "</ul>\n";

    html << "<table>\n<tr><th>case</th>";
    for (const ConsensusEntry& entry : cons.entries)
        html << "<th>" << entry.column + 1 << "</th>";
    html << "</tr>\n";

    for (std::size_t row : display_row_order(a)) {
        html << "<tr><td class=\"case\">"
             << html_escape(a.log().traces[a.rows()[row]].case_id) << "</td>";
        for (const ConsensusEntry& entry : cons.entries) {
            const Column& col = a.columns()[entry.column];
            if (col.members.contains(row))
                html << "<td class=\"a" << col.activity << "\" title=\""
                     << html_escape(entry.label) << "\"></td>";
            else
                html << "<td></td>";
        }
        html << "</tr>\n";
    }
    html << "</table>\n</body>\n</html>\n";
    return html.str();
}

std::string alpha_label(std::size_t index) {
    std::string label;
    std::size_t value = index;
    while (true) {
        label.insert(label.begin(), static_cast<char>('a' + value % 26));
        if (value < 26)
            break;
        value = value / 26 - 1;
    }
    return label;
}

Log generate_synthetic(const SyntheticParams& params) {
    if (params.n_traces < 1)
        throw std::invalid_argument("synthetic log needs at least one trace");
    if (params.n_activity_types < 1)
        throw std::invalid_argument("synthetic log needs at least one activity type");
    auto valid_rate = [](double r) { return r >= 0.0 && r <= 1.0; };
    if (!valid_rate(params.insertion_rate) || !valid_rate(params.deletion_rate) ||
        !valid_rate(params.swap_rate))
        throw std::invalid_argument("synthetic rates must lie in [0, 1]");

    Rng rng(params.seed);
    std::vector<std::size_t> backbone(params.backbone_length);
    for (std::size_t& slot : backbone)
        slot = rng.bounded(params.n_activity_types);

    Log log;
    for (std::size_t t = 0; t < params.n_traces; ++t) {
        std::vector<std::size_t> seq = backbone;
        for (std::size_t i = 0; i + 1 < seq.size(); ++i)
            if (rng.bernoulli(params.swap_rate))
                std::swap(seq[i], seq[i + 1]);

        std::vector<std::size_t> kept;
        kept.reserve(seq.size());
        for (std::size_t type : seq)
            if (!rng.bernoulli(params.deletion_rate))
                kept.push_back(type);

        std::vector<std::size_t> final_seq;
        final_seq.reserve(kept.size() + 4);
        for (std::size_t i = 0; i <= kept.size(); ++i) {
            if (rng.bernoulli(params.insertion_rate))
                final_seq.push_back(rng.bounded(params.n_activity_types));
            if (i < kept.size())
                final_seq.push_back(kept[i]);
        }

        Trace trace;
        trace.case_id = std::to_string(t + 1);
        for (std::size_t type : final_seq)
            trace.activities.push_back(log.alphabet.intern(alpha_label(type)));
        log.traces.push_back(std::move(trace));
    }
    return log;
}

LogStats log_stats(const Log& log) {
    LogStats stats;
    stats.trace_count = log.traces.size();
    stats.activity_types = log.alphabet.size();
    for (const Trace& trace : log.traces)
        stats.total_activities += static_cast<std::int64_t>(trace.length());
    if (stats.trace_count == 0)
        return stats;
    stats.mean_trace_length =
        static_cast<double>(stats.total_activities) / static_cast<double>(stats.trace_count);
    double ss = 0.0;
    for (const Trace& trace : log.traces) {
        const double diff = static_cast<double>(trace.length()) - stats.mean_trace_length;
        ss += diff * diff;
    }
    stats.std_trace_length = std::sqrt(ss / static_cast<double>(stats.trace_count));
    return stats;
}

}  // namespace pima
