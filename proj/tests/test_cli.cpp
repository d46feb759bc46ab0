#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "pima/cli.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using pima::test::fixture_path;
using pima::test::read_file;
using pima::test::write_file;

namespace {

/// Temporary working directory, removed on scope exit.
struct TempDir {
    fs::path path;

    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("pima_test_" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }

    std::string file(const std::string& name) const { return (path / name).string(); }
};

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = pima::cli::run(args, out, err);
    return CliResult{code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("align prints a zero score for identical traces") {
    TempDir dir("align_zero");
    write_file(dir.file("log.plain"), "a b c\na b c\na b c\n");
    const CliResult result = run_cli({"align", "--input", dir.file("log.plain")});
    CHECK(result.code == pima::cli::exit_ok);
    CHECK(result.out.find("pairs_score=0") != std::string::npos);
}

TEST_CASE("align writes byte-identical outputs for identical configs") {
    TempDir dir("align_det");
    write_file(dir.file("log.plain"),
               "a b c d\nb c d\na c d\na b d e\nc d e\na b c\n");
    auto run_into = [&](const std::string& tag) {
        const CliResult result = run_cli({"align", "--input", dir.file("log.plain"), "--seed",
                                          "11", "--consensus", "0.2", "--zero-timings",
                                          "--max-multi", "2",
                                          "--out", dir.file(tag + ".tsv"),
                                          "--stats", dir.file(tag + ".json"),
                                          "--html", dir.file(tag + ".html")});
        REQUIRE(result.code == pima::cli::exit_ok);
        return result.out;
    };
    const std::string first = run_into("one");
    const std::string second = run_into("two");
    CHECK(first == second);
    CHECK(read_file(dir.file("one.tsv")) == read_file(dir.file("two.tsv")));
    CHECK(read_file(dir.file("one.json")) == read_file(dir.file("two.json")));
    CHECK(read_file(dir.file("one.html")) == read_file(dir.file("two.html")));
}

TEST_CASE("align refines a guide-tree initialization") {
    TempDir dir("align_gt");
    write_file(dir.file("log.plain"),
               "a b c d e\na c b d e\nb a c d\na b d e\na b c e\nc a b d e\n");
    const CliResult result =
        run_cli({"align", "--input", dir.file("log.plain"), "--init", "guide-tree", "--stats",
                 dir.file("stats.json"), "--zero-timings"});
    REQUIRE(result.code == pima::cli::exit_ok);
    const auto stats = nlohmann::json::parse(read_file(dir.file("stats.json")));
    const std::int64_t init_score = stats["records"][0]["pairs_score"].get<std::int64_t>();
    const std::int64_t final_score = stats["final"]["pairs_score"].get<std::int64_t>();
    CHECK(stats["records"][0]["kind"] == "init");
    CHECK(final_score <= init_score);
}

TEST_CASE("align reports config and parse errors distinctly") {
    TempDir dir("align_err");
    write_file(dir.file("log.plain"), "a b\n");
    CHECK(run_cli({"align", "--input", dir.file("missing.plain")}).code ==
          pima::cli::exit_parse);
    CHECK(run_cli({"align", "--input", dir.file("log.plain"), "--format", "xes"}).code ==
          pima::cli::exit_config);
    CHECK(run_cli({"align", "--input", dir.file("log.plain"), "--init", "nope"}).code ==
          pima::cli::exit_config);
    CHECK(run_cli({"align", "--input", dir.file("log.plain"), "--freq-range", "0.9:0.1"}).code ==
          pima::cli::exit_config);

    write_file(dir.file("bad.plain"), "a -\n");
    const CliResult bad = run_cli({"align", "--input", dir.file("bad.plain")});
    CHECK(bad.code == pima::cli::exit_parse);
    CHECK(bad.err.find("bad.plain") != std::string::npos);
    CHECK(bad.err.find("line 1") != std::string::npos);

    CHECK(run_cli({"--help"}).code == pima::cli::exit_ok);
}

TEST_CASE("align reads csv input and honors a custom gap token") {
    TempDir dir("align_csv");
    const CliResult result =
        run_cli({"align", "--input", fixture_path("interleaved.csv"), "--format", "csv",
                 "--gap-token", "_", "--out", dir.file("m.tsv")});
    REQUIRE(result.code == pima::cli::exit_ok);
    const std::string tsv = read_file(dir.file("m.tsv"));
    CHECK(tsv.find("c1\t") != std::string::npos);
    CHECK(tsv.find('_') != std::string::npos);

    const CliResult rescored =
        run_cli({"score", "--input", dir.file("m.tsv"), "--gap-token", "_"});
    CHECK(rescored.code == pima::cli::exit_ok);
    CHECK(rescored.out.find("pairs_score=") != std::string::npos);
}

TEST_CASE("score reports both conventions and flags bad columns") {
    TempDir dir("score");
    write_file(dir.file("ok.tsv"), "case_id\t1\t2\nr1\ta\tb\nr2\ta\t-\n");
    const CliResult ok = run_cli({"score", "--input", dir.file("ok.tsv")});
    CHECK(ok.code == pima::cli::exit_ok);
    CHECK(ok.out == "pairs_score=1 doubled_score=2\n");

    write_file(dir.file("allgap.tsv"), "case_id\t1\t2\nr1\t-\ta\nr2\t-\ta\n");
    const CliResult allgap = run_cli({"score", "--input", dir.file("allgap.tsv")});
    CHECK(allgap.code == pima::cli::exit_ok);
    CHECK(allgap.out == "pairs_score=0 doubled_score=0\n");

    write_file(dir.file("mixed.tsv"), "case_id\t1\nr1\ta\nr2\tb\n");
    const CliResult mixed = run_cli({"score", "--input", dir.file("mixed.tsv")});
    CHECK(mixed.code == pima::cli::exit_invariant);
    CHECK(mixed.err.find("column 1") != std::string::npos);
}

TEST_CASE("gen writes deterministic logs and a characteristics block") {
    TempDir dir("gen");
    const std::vector<std::string> args{"gen",  "--traces", "6",      "--types", "4",
                                        "--backbone", "5",  "--seed", "21",      "--out",
                                        dir.file("g.plain")};
    const CliResult first = run_cli(args);
    REQUIRE(first.code == pima::cli::exit_ok);
    for (const char* field : {"Num. of Traces:", "Total Activities:", "Activity Types:",
                              "Avg. Trace Length:", "Trace Length STD:"})
        CHECK(first.out.find(field) != std::string::npos);

    const std::string bytes = read_file(dir.file("g.plain"));
    // All rates zero: every line is the backbone.
    std::istringstream lines(bytes);
    std::string line, prev;
    int count = 0;
    while (std::getline(lines, line)) {
        if (count)
            CHECK(line == prev);
        prev = line;
        ++count;
    }
    CHECK(count == 6);

    const CliResult again = run_cli(args);
    CHECK(read_file(dir.file("g.plain")) == bytes);
    CHECK(again.out == first.out);

    CHECK(run_cli({"gen", "--traces", "0", "--out", dir.file("x.plain")}).code ==
          pima::cli::exit_config);
    CHECK(run_cli({"gen", "--traces", "2", "--types", "2", "--insert", "1.5", "--out",
                   dir.file("x.plain")})
              .code == pima::cli::exit_config);
}

TEST_CASE("bench on an identical-trace log scores zero on both sides") {
    TempDir dir("bench_zero");
    write_file(dir.file("log.plain"), "a b\na b\na b\n");
    const CliResult result = run_cli({"bench", "--input", dir.file("log.plain"), "--seeds", "1",
                                      "--stats", dir.file("bench.json"), "--zero-timings"});
    REQUIRE(result.code == pima::cli::exit_ok);
    CHECK(result.out.find("baseline guide-tree: pairs_score=0") != std::string::npos);

    const auto report = nlohmann::json::parse(read_file(dir.file("bench.json")));
    CHECK(report["baseline"]["pairs_score"] == 0);
    REQUIRE(report["runs"].size() == 1);
    CHECK(report["runs"][0]["converged_pairs_score"] == 0);
    CHECK(report["runs"][0]["conv_delta_pct"] == 0.0);
}

TEST_CASE("bench compares seeded runs against the baseline") {
    TempDir dir("bench_seeds");
    const CliResult result =
        run_cli({"bench", "--traces", "20", "--types", "5", "--backbone", "8", "--delete",
                 "0.2", "--seed", "4", "--seeds", "3", "--stats", dir.file("bench.json")});
    REQUIRE(result.code == pima::cli::exit_ok);
    CHECK(result.out.find("summary seeds=3") != std::string::npos);
    CHECK(result.out.find(" ± ") != std::string::npos);

    const auto report = nlohmann::json::parse(read_file(dir.file("bench.json")));
    REQUIRE(report["runs"].size() == 3);
    const std::int64_t baseline = report["baseline"]["pairs_score"].get<std::int64_t>();
    for (const auto& run : report["runs"]) {
        CHECK(run["records"].size() >= 2);
        // Converged result never exceeds its own initialization.
        CHECK(run["converged_pairs_score"].get<std::int64_t>() <=
              run["init_pairs_score"].get<std::int64_t>());
        if (!run["beat_iteration"].is_null())
            CHECK(run["converged_pairs_score"].get<std::int64_t>() < baseline);
    }

    CHECK(run_cli({"bench", "--seeds", "1"}).code == pima::cli::exit_config);
    CHECK(run_cli({"bench", "--traces", "4", "--types", "2", "--backbone", "3", "--input",
                   dir.file("nope.plain")})
              .code == pima::cli::exit_config);
}

TEST_CASE("bench scale mode reports timing ratios") {
    const CliResult result = run_cli({"bench", "--traces", "12", "--types", "4", "--backbone",
                                      "6", "--delete", "0.2", "--scale", "8:16", "--scale-reps",
                                      "1", "--seed", "2"});
    REQUIRE(result.code == pima::cli::exit_ok);
    CHECK(result.out.find("single_pass_s:") != std::string::npos);
    CHECK(result.out.find("baseline_construction_s:") != std::string::npos);
    CHECK(run_cli({"bench", "--input", "whatever", "--scale", "8:16"}).code ==
          pima::cli::exit_config);
}

TEST_CASE("percent deltas means and medians compute as documented") {
    using pima::cli::mean_std;
    using pima::cli::median;
    using pima::cli::percent_delta;

    CHECK(*percent_delta(90.0, 100.0) == doctest::Approx(-10.0));
    CHECK(*percent_delta(115.0, 100.0) == doctest::Approx(15.0));
    CHECK(*percent_delta(0.0, 0.0) == 0.0);
    CHECK(!percent_delta(5.0, 0.0));

    const auto ms = mean_std({1.0, 2.0, 3.0, 4.0});
    CHECK(ms.mean == doctest::Approx(2.5));
    CHECK(ms.std == doctest::Approx(1.2909944));
    CHECK(mean_std({7.0}).std == 0.0);
    CHECK(mean_std({}).mean == 0.0);

    CHECK(median({3.0, 1.0, 2.0}) == 2.0);
    CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
}

TEST_CASE("golden outputs stay bit-stable") {
    TempDir dir("golden");
    const CliResult result = run_cli({"align", "--input", fixture_path("simple.plain"), "--seed",
                                      "7", "--consensus", "0.05", "--zero-timings", "--out",
                                      dir.file("a.tsv"), "--stats", dir.file("a.json"), "--html",
                                      dir.file("a.html")});
    REQUIRE(result.code == pima::cli::exit_ok);
    CHECK(read_file(dir.file("a.tsv")) == read_file(fixture_path("golden_alignment.tsv")));
    CHECK(read_file(dir.file("a.json")) == read_file(fixture_path("golden_stats.json")));
    CHECK(read_file(dir.file("a.html")) == read_file(fixture_path("golden_heatmap.html")));
}
