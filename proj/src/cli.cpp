#include "pima/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pima/errors.hpp"
#include "pima/initialization.hpp"
#include "pima/logio.hpp"
#include "pima/profile_align.hpp"
#include "pima/refinement.hpp"
#include "pima/rng.hpp"
#include "pima/scoring.hpp"

namespace pima::cli {

namespace {

using Clock = std::chrono::steady_clock;
using ordered_json = nlohmann::ordered_json;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw pima::ParseError("cannot open input file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file '" + path + "'");
    out << content;
    if (!out)
        throw std::runtime_error("failed writing output file '" + path + "'");
}

std::string format_double(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

struct CommonOptions {
    std::string input;
    std::string format = "plain";
    std::string init = "random-sequential";
    std::uint64_t seed = 0;
    std::string freq_range = "0.1:0.9";
    double consensus_threshold = 0.0;
    double min_improvement = 0.0;
    std::size_t max_single = 1000;
    std::size_t max_multi = 1;
    std::string gap_token = "-";
    bool zero_timings = false;
};

struct GenOptions {
    std::size_t traces = 0;
    std::size_t types = 0;
    std::size_t backbone = 0;
    double insert_rate = 0.0;
    double delete_rate = 0.0;
    double swap_rate = 0.0;
};

std::pair<double, double> parse_freq_range(const std::string& spec) {
    const std::size_t colon = spec.find(':');
    if (colon == std::string::npos)
        throw pima::ConfigError("--freq-range must look like LO:HI, e.g. 0.1:0.9");
    try {
        const double low = std::stod(spec.substr(0, colon));
        const double high = std::stod(spec.substr(colon + 1));
        if (!(0.0 <= low && low < high && high <= 1.0))
            throw pima::ConfigError("--freq-range must satisfy 0 <= LO < HI <= 1");
        return {low, high};
    } catch (const std::invalid_argument&) {
        throw pima::ConfigError("--freq-range must contain two numbers, e.g. 0.1:0.9");
    }
}

ConvergencePolicy make_policy(const CommonOptions& opts) {
    const auto [low, high] = parse_freq_range(opts.freq_range);
    ConvergencePolicy policy;
    policy.min_relative_improvement = opts.min_improvement;
    policy.max_single_passes = opts.max_single;
    policy.max_multi_rounds = opts.max_multi;
    policy.freq_low = low;
    policy.freq_high = high;
    policy.seed = opts.seed;
    return policy;
}

InitMethod parse_init(const std::string& name) {
    const auto method = init_method_from_name(name);
    if (!method)
        throw pima::ConfigError("unknown initializer '" + name +
                                "' (choose random-sequential, sorted-length, "
                                "sorted-activity-sum or guide-tree)");
    return *method;
}

LogPtr load_log(const CommonOptions& opts) {
    const std::string text = read_file(opts.input);
    try {
        if (opts.format == "plain")
            return make_log(parse_traces(text, opts.gap_token));
        if (opts.format == "csv") {
            CsvConfig config;
            config.gap_token = opts.gap_token;
            return make_log(parse_csv(text, config));
        }
    } catch (const pima::ParseError& e) {
        throw pima::ParseError(opts.input + ": " + e.what());
    }
    throw pima::ConfigError("unknown format '" + opts.format + "' (choose plain or csv)");
}

struct AlignOutputs {
    std::string tsv_path;
    std::string stats_path;
    std::string html_path;
};

int cmd_align(const CommonOptions& opts, const AlignOutputs& outputs, std::ostream& out) {
    const LogPtr log = load_log(opts);
    const ConvergencePolicy policy = make_policy(opts);
    const InitMethod method = parse_init(opts.init);

    const ConvergeResult result = converge(log, method, policy);
    const SpsScore score = sps(result.alignment);
    const ConsensusSequence cons = consensus(result.alignment, opts.consensus_threshold);

    if (!outputs.tsv_path.empty())
        write_file(outputs.tsv_path, write_alignment_tsv(result.alignment, opts.gap_token));
    if (!outputs.stats_path.empty()) {
        StatsDocument doc;
        doc.initializer = std::string(init_method_name(method));
        doc.seed = opts.seed;
        doc.gap_token = opts.gap_token;
        doc.policy = policy;
        doc.records = result.records;
        doc.final_pairs_score = score.pairs_score;
        doc.final_doubled_score = score.doubled_score;
        doc.final_length = result.alignment.length();
        doc.consensus = cons;
        doc.zero_timings = opts.zero_timings;
        write_file(outputs.stats_path, write_stats_json(doc));
    }
    if (!outputs.html_path.empty())
        write_file(outputs.html_path, render_heatmap_html(result.alignment, opts.consensus_threshold));

    out << "initializer=" << init_method_name(method) << " seed=" << opts.seed << "\n";
    out << "pairs_score=" << score.pairs_score << " doubled_score=" << score.doubled_score
        << " length=" << result.alignment.length()
        << " iterations=" << result.records.size() - 1 << "\n";
    return exit_ok;
}

int cmd_score(const std::string& input, const std::string& gap_token, std::ostream& out) {
    const std::string text = read_file(input);
    Alignment a;
    try {
        a = read_alignment_tsv(text, gap_token);
    } catch (const pima::ParseError& e) {
        throw pima::ParseError(input + ": " + e.what());
    }
    const SpsScore score = sps(a);
    out << "pairs_score=" << score.pairs_score << " doubled_score=" << score.doubled_score << "\n";
    return exit_ok;
}

SyntheticParams make_params(const GenOptions& gen, std::uint64_t seed) {
    if (gen.traces < 1 || gen.types < 1)
        throw pima::ConfigError("synthetic generation needs --traces >= 1 and --types >= 1");
    auto valid_rate = [](double r) { return r >= 0.0 && r <= 1.0; };
    if (!valid_rate(gen.insert_rate) || !valid_rate(gen.delete_rate) ||
        !valid_rate(gen.swap_rate))
        throw pima::ConfigError("rates must lie in [0, 1]");
    SyntheticParams params;
    params.n_traces = gen.traces;
    params.n_activity_types = gen.types;
    params.backbone_length = gen.backbone;
    params.insertion_rate = gen.insert_rate;
    params.deletion_rate = gen.delete_rate;
    params.swap_rate = gen.swap_rate;
    params.seed = seed;
    return params;
}

void print_log_characteristics(const Log& log, std::ostream& out) {
    const LogStats stats = log_stats(log);
    out << "Num. of Traces: " << stats.trace_count << "\n"
        << "Total Activities: " << stats.total_activities << "\n"
        << "Activity Types: " << stats.activity_types << "\n"
        << "Avg. Trace Length: " << format_double(stats.mean_trace_length, 2) << "\n"
        << "Trace Length STD: " << format_double(stats.std_trace_length, 2) << "\n";
}

int cmd_gen(const GenOptions& gen, std::uint64_t seed, const std::string& out_path,
            std::ostream& out) {
    const Log log = generate_synthetic(make_params(gen, seed));
    write_file(out_path, serialize_traces(log));
    print_log_characteristics(log, out);
    return exit_ok;
}

struct BenchRun {
    std::uint64_t seed = 0;
    std::int64_t init_score = 0;
    std::int64_t converged_score = 0;
    std::size_t iterations = 0;
    std::optional<std::size_t> beat_iteration;
    std::optional<double> beat_time_s;
    double total_time_s = 0.0;
    std::vector<IterationRecord> records;
};

std::string opt_text(const std::optional<double>& v, int decimals) {
    return v ? format_double(*v, decimals) : "n/a";
}

int cmd_bench(const CommonOptions& opts, const GenOptions& gen, bool use_gen, std::size_t seeds,
              const std::string& stats_path, std::ostream& out) {
    LogPtr log;
    std::string source;
    if (use_gen) {
        log = make_log(generate_synthetic(make_params(gen, opts.seed)));
        source = "synthetic(traces=" + std::to_string(gen.traces) +
                 ",types=" + std::to_string(gen.types) +
                 ",backbone=" + std::to_string(gen.backbone) + ")";
    } else {
        log = load_log(opts);
        source = opts.input;
    }
    if (log->traces.size() < 2)
        throw pima::ConfigError("bench needs a log with at least two traces");
    const ConvergencePolicy base_policy = make_policy(opts);
    const InitMethod method = parse_init(opts.init);

    const LogStats stats = log_stats(*log);
    out << "log: " << source << " traces=" << stats.trace_count
        << " total_activities=" << stats.total_activities << " types=" << stats.activity_types
        << " mean_len=" << format_double(stats.mean_trace_length, 2)
        << " std_len=" << format_double(stats.std_trace_length, 2) << "\n";

    auto t0 = Clock::now();
    const GuideTree tree = build_guide_tree(*log);
    const double construction_s = seconds_since(t0);
    const Alignment baseline = merge_by_tree(log, tree);
    const double baseline_total_s = seconds_since(t0);
    const std::int64_t baseline_score = sps_columnar(baseline);

    out << "baseline guide-tree: pairs_score=" << baseline_score
        << " doubled_score=" << 2 * baseline_score << " length=" << baseline.length()
        << " time_s=" << format_double(baseline_total_s, 3)
        << " construction_s=" << format_double(construction_s, 3) << "\n";

    std::vector<BenchRun> runs;
    for (std::size_t k = 0; k < seeds; ++k) {
        ConvergencePolicy policy = base_policy;
        policy.seed = opts.seed + k;
        const ConvergeResult res = converge(log, method, policy);

        BenchRun run;
        run.seed = policy.seed;
        run.init_score = res.records.front().pairs_score;
        run.converged_score = res.records.back().pairs_score;
        run.iterations = res.records.size() - 1;
        double cumulative = 0.0;
        for (const IterationRecord& rec : res.records) {
            cumulative += rec.elapsed.count();
            if (!run.beat_iteration && rec.pairs_score < baseline_score) {
                run.beat_iteration = rec.index;
                run.beat_time_s = cumulative;
            }
        }
        run.total_time_s = cumulative;
        run.records = res.records;
        runs.push_back(std::move(run));
    }

    out << "note: deltas are percent change vs the baseline score; negatives are improvements\n";
    out << "seed\tinit_score\tinit_delta_pct\tconv_score\tconv_delta_pct\titerations\t"
           "beat_iter\tbeat_time_s\n";
    std::vector<double> init_deltas, conv_deltas, beat_times, beat_iters, iter_times, fail_gaps;
    for (const BenchRun& run : runs) {
        const auto init_delta =
            percent_delta(static_cast<double>(run.init_score), static_cast<double>(baseline_score));
        const auto conv_delta = percent_delta(static_cast<double>(run.converged_score),
                                              static_cast<double>(baseline_score));
        if (init_delta)
            init_deltas.push_back(*init_delta);
        if (conv_delta)
            conv_deltas.push_back(*conv_delta);
        if (run.beat_time_s) {
            beat_times.push_back(*run.beat_time_s);
            beat_iters.push_back(static_cast<double>(*run.beat_iteration));
        } else if (conv_delta) {
            fail_gaps.push_back(*conv_delta);
        }
        if (run.iterations > 0)
            iter_times.push_back(run.total_time_s / static_cast<double>(run.iterations));
        out << run.seed << '\t' << run.init_score << '\t' << opt_text(init_delta, 2) << '\t'
            << run.converged_score << '\t' << opt_text(conv_delta, 2) << '\t' << run.iterations
            << '\t' << (run.beat_iteration ? std::to_string(*run.beat_iteration) : "n/a") << '\t'
            << (run.beat_time_s ? format_double(*run.beat_time_s, 3) : "n/a") << "\n";
    }

    const MeanStd init_ms = mean_std(init_deltas);
    const MeanStd conv_ms = mean_std(conv_deltas);
    const MeanStd beat_ms = mean_std(beat_times);
    const MeanStd beat_it_ms = mean_std(beat_iters);
    const MeanStd iter_ms = mean_std(iter_times);
    const MeanStd fail_ms = mean_std(fail_gaps);
    const double failed_pct =
        100.0 * static_cast<double>(runs.size() - beat_times.size()) /
        static_cast<double>(runs.size());

    out << "summary seeds=" << runs.size() << " init_delta_pct=" << format_double(init_ms.mean, 2)
        << " ± " << format_double(init_ms.std, 2)
        << " conv_delta_pct=" << format_double(conv_ms.mean, 2) << " ± "
        << format_double(conv_ms.std, 2) << "\n";
    out << "time_per_iteration_s=" << format_double(iter_ms.mean, 3) << " ± "
        << format_double(iter_ms.std, 3) << "\n";
    out << "time_to_beat_s=" << (beat_times.empty() ? "n/a" : format_double(beat_ms.mean, 3))
        << " ± " << (beat_times.empty() ? "n/a" : format_double(beat_ms.std, 3))
        << " iterations_to_beat=" << (beat_iters.empty() ? "n/a" : format_double(beat_it_ms.mean, 2))
        << " ± " << (beat_iters.empty() ? "n/a" : format_double(beat_it_ms.std, 2)) << "\n";
    out << "failed_to_beat_pct=" << format_double(failed_pct, 2)
        << " failed_gap_pct=" << (fail_gaps.empty() ? "n/a" : format_double(fail_ms.mean, 2))
        << "\n";

    if (!stats_path.empty()) {
        ordered_json root;
        root["log"] = {{"source", source},
                       {"traces", stats.trace_count},
                       {"total_activities", stats.total_activities},
                       {"activity_types", stats.activity_types},
                       {"mean_trace_length", stats.mean_trace_length},
                       {"std_trace_length", stats.std_trace_length}};
        root["baseline"] = {
            {"pairs_score", baseline_score},
            {"doubled_score", 2 * baseline_score},
            {"length", baseline.length()},
            {"time_ms", opts.zero_timings ? 0.0 : baseline_total_s * 1000.0},
            {"construction_ms", opts.zero_timings ? 0.0 : construction_s * 1000.0}};
        ordered_json run_array = ordered_json::array();
        for (const BenchRun& run : runs) {
            ordered_json r;
            r["seed"] = run.seed;
            r["init_pairs_score"] = run.init_score;
            r["converged_pairs_score"] = run.converged_score;
            r["iterations"] = run.iterations;
            const auto init_delta = percent_delta(static_cast<double>(run.init_score),
                                                  static_cast<double>(baseline_score));
            const auto conv_delta = percent_delta(static_cast<double>(run.converged_score),
                                                  static_cast<double>(baseline_score));
            r["init_delta_pct"] = init_delta ? ordered_json(*init_delta) : ordered_json(nullptr);
            r["conv_delta_pct"] = conv_delta ? ordered_json(*conv_delta) : ordered_json(nullptr);
            r["beat_iteration"] =
                run.beat_iteration ? ordered_json(*run.beat_iteration) : ordered_json(nullptr);
            r["beat_time_ms"] = run.beat_time_s && !opts.zero_timings
                                    ? ordered_json(*run.beat_time_s * 1000.0)
                                    : ordered_json(nullptr);
            ordered_json recs = ordered_json::array();
            for (const IterationRecord& rec : run.records) {
                ordered_json jr;
                jr["iteration"] = rec.index;
                jr["kind"] = std::string(iteration_kind_name(rec.kind));
                jr["pairs_score"] = rec.pairs_score;
                jr["doubled_score"] = 2 * rec.pairs_score;
                jr["length"] = rec.length;
                jr["elapsed_ms"] = opts.zero_timings ? 0.0 : rec.elapsed.count() * 1000.0;
                jr["align_ops"] = rec.align_ops;
                recs.push_back(std::move(jr));
            }
            r["records"] = std::move(recs);
            run_array.push_back(std::move(r));
        }
        root["runs"] = std::move(run_array);
        write_file(stats_path, root.dump(2) + "\n");
    }
    return exit_ok;
}

int cmd_bench_scale(const CommonOptions& opts, const GenOptions& gen, const std::string& scale,
                    std::size_t reps, std::ostream& out) {
    const std::size_t colon = scale.find(':');
    if (colon == std::string::npos)
        throw pima::ConfigError("--scale must look like N1:N2, e.g. 250:500");
    std::size_t n1 = 0, n2 = 0;
    try {
        n1 = std::stoul(scale.substr(0, colon));
        n2 = std::stoul(scale.substr(colon + 1));
    } catch (const std::exception&) {
        throw pima::ConfigError("--scale must contain two integers, e.g. 250:500");
    }
    if (n1 < 2 || n2 < 2)
        throw pima::ConfigError("--scale sizes must be at least 2");
    if (reps < 1)
        throw pima::ConfigError("--scale-reps must be at least 1");

    out << "scale: n1=" << n1 << " n2=" << n2 << " reps=" << reps << "\n";
    double pass_s[2] = {0, 0};
    double construction_s[2] = {0, 0};
    const std::size_t sizes[2] = {n1, n2};
    for (int which = 0; which < 2; ++which) {
        GenOptions sized = gen;
        sized.traces = sizes[which];
        const LogPtr log = make_log(generate_synthetic(make_params(sized, opts.seed)));
        std::vector<double> pass_times, build_times;
        for (std::size_t rep = 0; rep < reps; ++rep) {
            const std::uint64_t rep_seed = opts.seed + rep;
            const Alignment init = sequential_merge(log, order_random(*log, rep_seed));
            Rng rng(rep_seed ^ 0x9E3779B97F4A7C15ULL);
            const auto order = rng.permutation(init.row_count());
            auto t0 = Clock::now();
            single_trace_pass(init, order);
            pass_times.push_back(seconds_since(t0));
            t0 = Clock::now();
            build_guide_tree(*log);
            build_times.push_back(seconds_since(t0));
        }
        pass_s[which] = median(pass_times);
        construction_s[which] = median(build_times);
    }
    out << "single_pass_s: n1=" << format_double(pass_s[0], 4)
        << " n2=" << format_double(pass_s[1], 4)
        << " ratio=" << format_double(pass_s[1] / pass_s[0], 2) << "\n";
    out << "baseline_construction_s: n1=" << format_double(construction_s[0], 4)
        << " n2=" << format_double(construction_s[1], 4)
        << " ratio=" << format_double(construction_s[1] / construction_s[0], 2) << "\n";
    return exit_ok;
}

void add_common_flags(CLI::App* cmd, CommonOptions& opts, bool with_input) {
    if (with_input) {
        cmd->add_option("--input", opts.input, "Input event log path");
        cmd->add_option("--format", opts.format, "Input format: plain or csv")
            ->default_str("plain");
    }
    cmd->add_option("--init", opts.init,
                    "Initializer: random-sequential, sorted-length, sorted-activity-sum, "
                    "guide-tree")
        ->default_str("random-sequential");
    cmd->add_option("--seed", opts.seed, "Seed for all randomized choices")->default_str("0");
    cmd->add_option("--freq-range", opts.freq_range,
                    "Multi-trace candidacy window LO:HI as frequency fractions")
        ->default_str("0.1:0.9");
    cmd->add_option("--consensus", opts.consensus_threshold,
                    "Consensus minimum frequency fraction")
        ->default_str("0");
    cmd->add_option("--min-improvement", opts.min_improvement,
                    "Stop a single-pass phase below this relative improvement (0 = exact)")
        ->default_str("0");
    cmd->add_option("--max-single", opts.max_single, "Cap on single passes per phase")
        ->default_str("1000");
    cmd->add_option("--max-multi", opts.max_multi, "Cap on multi-trace rounds")->default_str("1");
    cmd->add_option("--gap-token", opts.gap_token, "Gap token for parsing and serialization")
        ->default_str("-");
    cmd->add_flag("--zero-timings", opts.zero_timings,
                  "Write elapsed fields as 0 so outputs are byte-reproducible");
}

void add_gen_flags(CLI::App* cmd, GenOptions& gen) {
    cmd->add_option("--traces", gen.traces, "Number of traces to generate");
    cmd->add_option("--types", gen.types, "Number of activity types");
    cmd->add_option("--backbone", gen.backbone, "Backbone sequence length");
    cmd->add_option("--insert", gen.insert_rate, "Insertion rate in [0,1]")->default_str("0");
    cmd->add_option("--delete", gen.delete_rate, "Deletion rate in [0,1]")->default_str("0");
    cmd->add_option("--swap", gen.swap_rate, "Adjacent swap rate in [0,1]")->default_str("0");
}

}  // namespace

std::optional<double> percent_delta(double value, double base) {
    if (base == 0.0) {
        if (value == 0.0)
            return 0.0;
        return std::nullopt;
    }
    return 100.0 * (value - base) / base;
}

MeanStd mean_std(const std::vector<double>& values) {
    MeanStd out;
    if (values.empty())
        return out;
    out.mean = std::accumulate(values.begin(), values.end(), 0.0) /
               static_cast<double>(values.size());
    if (values.size() < 2)
        return out;
    double ss = 0.0;
    for (double v : values)
        ss += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
    return out;
}

double median(std::vector<double> values) {
    if (values.empty())
        return 0.0;
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1)
        return values[mid];
    return 0.5 * (values[mid - 1] + values[mid]);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multiple trace alignment for process mining"};
    app.require_subcommand(1);

    CommonOptions opts;
    GenOptions gen;
    AlignOutputs outputs;
    std::string score_input;
    std::string gen_out;
    std::string bench_stats;
    std::string scale;
    std::size_t seeds = 10;
    std::size_t scale_reps = 5;

    CLI::App* align_cmd = app.add_subcommand(
        "align", "Align a log: initialize, refine to convergence, write outputs");
    add_common_flags(align_cmd, opts, true);
    align_cmd->get_option("--input")->required();
    align_cmd->add_option("--out", outputs.tsv_path, "Alignment matrix TSV output path");
    align_cmd->add_option("--stats", outputs.stats_path, "Per-iteration stats JSON output path");
    align_cmd->add_option("--html", outputs.html_path, "Heatmap HTML output path");

    CLI::App* score_cmd =
        app.add_subcommand("score", "Score an alignment matrix TSV in both conventions");
    score_cmd->add_option("--input", score_input, "Alignment TSV path")->required();
    score_cmd->add_option("--gap-token", opts.gap_token, "Gap token")->default_str("-");

    CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a synthetic log");
    add_gen_flags(gen_cmd, gen);
    gen_cmd->add_option("--seed", opts.seed, "Generator seed")->default_str("0");
    gen_cmd->add_option("--out", gen_out, "Output path (plain format)")->required();

    CLI::App* bench_cmd = app.add_subcommand(
        "bench", "Compare seeded runs against the guide-tree baseline");
    add_common_flags(bench_cmd, opts, true);
    add_gen_flags(bench_cmd, gen);
    bench_cmd->add_option("--seeds", seeds, "Number of seeded runs")->default_str("10");
    bench_cmd->add_option("--stats", bench_stats, "Benchmark report JSON output path");
    bench_cmd->add_option("--scale", scale,
                          "Timing mode: compare generated logs at sizes N1:N2");
    bench_cmd->add_option("--scale-reps", scale_reps, "Repetitions per size in --scale mode")
        ->default_str("5");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);

        if (align_cmd->parsed())
            return cmd_align(opts, outputs, out);
        if (score_cmd->parsed())
            return cmd_score(score_input, opts.gap_token, out);
        if (gen_cmd->parsed())
            return cmd_gen(gen, opts.seed, gen_out, out);
        if (bench_cmd->parsed()) {
            const bool use_gen = gen.traces > 0 || gen.types > 0 || gen.backbone > 0;
            if (use_gen && !opts.input.empty())
                throw pima::ConfigError("bench takes either --input or generator flags, not both");
            if (!use_gen && opts.input.empty())
                throw pima::ConfigError("bench needs --input or generator flags");
            if (!scale.empty()) {
                if (!use_gen)
                    throw pima::ConfigError("--scale mode needs generator flags");
                return cmd_bench_scale(opts, gen, scale, scale_reps, out);
            }
            if (seeds < 1)
                throw pima::ConfigError("--seeds must be at least 1");
            return cmd_bench(opts, gen, use_gen, seeds, bench_stats, out);
        }
        return exit_config;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_config;
    } catch (const pima::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_parse;
    } catch (const pima::ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const pima::InvariantViolation& e) {
        err << "error: " << e.what() << "\n";
        return exit_invariant;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_failure;
    }
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);
    return run(args);
}

}  // namespace pima::cli
