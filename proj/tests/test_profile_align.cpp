#include <doctest.h>

#include "pima/profile_align.hpp"
#include "pima/scoring.hpp"
#include "test_support.hpp"

using namespace pima;
using pima::test::make_alignment;
using pima::test::make_log;
using pima::test::random_alignment;

namespace {

Alignment single(const LogPtr& log, std::size_t trace) {
    return Alignment::from_trace(log, trace);
}

}  // namespace

TEST_CASE("identical traces merge into matched columns with zero score") {
    const auto log = make_log({{"a", "b", "c"}, {"a", "b", "c"}});
    const Alignment merged = align_profiles(single(log, 0), single(log, 1));
    CHECK(merged.length() == 3);
    CHECK(sps_columnar(merged) == 0);
    CHECK(merged.projections_match_log());
}

TEST_CASE("overlapping traces share the matching column") {
    const auto log = make_log({{"a", "b"}, {"b", "c"}});
    const MergeResult result = align_profiles_full(single(log, 0), single(log, 1));
    REQUIRE(result.merged.length() == 3);
    CHECK(result.merged.columns()[0].activity == *log->alphabet.find("a"));
    CHECK(result.merged.columns()[1].activity == *log->alphabet.find("b"));
    CHECK(result.merged.columns()[2].activity == *log->alphabet.find("c"));
    CHECK(result.merged.column_frequencies() == std::vector<std::int64_t>{1, 2, 1});
    CHECK(sps_columnar(result.merged) == 2);
    // The merge that aligns nothing would have scored 4.
    CHECK(brute_force_min_merge(single(log, 0), single(log, 1)) == 2);
}

TEST_CASE("disjoint single activities cannot match") {
    const auto log = make_log({{"a"}, {"b"}});
    const MergeResult result = align_profiles_full(single(log, 0), single(log, 1));
    CHECK(result.merged.length() == 2);
    CHECK(sps_columnar(result.merged) == 2);
    CHECK(result.dp_end_value == -4);
}

TEST_CASE("brute force oracle handles tiny cases and rejects large ones") {
    const auto log = make_log({{"a", "b"}, {"a", "b"}});
    CHECK(brute_force_min_merge(single(log, 0), single(log, 1)) == 0);

    const auto big = make_log({{"a", "a", "a", "a", "a", "a", "a", "a", "a"},
                               {"a", "a", "a", "a", "a", "a", "a", "a"}});
    CHECK_THROWS_AS(brute_force_min_merge(single(big, 0), single(big, 1)),
                    std::invalid_argument);
}

TEST_CASE("dynamic programming finds the exhaustive minimum on trace pairs") {
    Rng rng(31337);
    for (int i = 0; i < 200; ++i) {
        const std::size_t types = 1 + rng.bounded(3);
        std::vector<std::vector<std::string>> traces(2);
        for (auto& t : traces) {
            const std::size_t len = rng.bounded(7);
            for (std::size_t k = 0; k < len; ++k)
                t.push_back(alpha_label(rng.bounded(types)));
        }
        const auto log = make_log(traces);
        const Alignment merged = align_profiles(single(log, 0), single(log, 1));
        CHECK(sps_columnar(merged) == brute_force_min_merge(single(log, 0), single(log, 1)));
        CHECK(merged.projections_match_log());
    }
}

TEST_CASE("dynamic programming finds the exhaustive minimum on profile pairs") {
    Rng rng(77);
    test::RandomAlignmentOptions opts;
    opts.min_rows = 2;
    opts.max_rows = 6;
    opts.max_columns = 8;
    opts.max_types = 3;
    for (int i = 0; i < 200; ++i) {
        const Alignment a = random_alignment(rng, opts);
        const std::size_t n = a.row_count();
        RowSet subset(n);
        const std::size_t picked = 1 + rng.bounded(n - 1);
        for (std::size_t p : rng.permutation(n))
            if (subset.count() < picked)
                subset.insert(p);
        const auto [sub, comp] = a.split(subset);
        const Alignment merged = align_profiles(sub, comp);
        CHECK(sps_columnar(merged) == brute_force_min_merge(sub, comp));
    }
}

TEST_CASE("merge score is symmetric in the argument order") {
    Rng rng(4242);
    for (int i = 0; i < 50; ++i) {
        const auto log = test::random_log(rng, 2, 6, 3);
        if (log->traces.size() < 2)
            continue;
        const std::int64_t ab = sps_columnar(align_profiles(single(log, 0), single(log, 1)));
        const std::int64_t ba = sps_columnar(align_profiles(single(log, 1), single(log, 0)));
        CHECK(ab == ba);
    }
}

TEST_CASE("merging a split profile never raises the score") {
    Rng rng(271828);
    test::RandomAlignmentOptions opts;
    opts.min_rows = 2;
    for (int i = 0; i < 100; ++i) {
        const Alignment a = random_alignment(rng, opts);
        const std::size_t n = a.row_count();
        RowSet subset(n);
        const std::size_t picked = 1 + rng.bounded(n - 1);
        for (std::size_t p : rng.permutation(n))
            if (subset.count() < picked)
                subset.insert(p);
        const auto [sub, comp] = a.split(subset);
        const Alignment merged = align_profiles(sub, comp);
        CHECK(sps_columnar(merged) <= sps_columnar(a));
        CHECK(merged.projections_match_log());
    }
}

TEST_CASE("merge rejects overlapping rows and foreign logs") {
    const auto log = make_log({{"a"}, {"b"}});
    CHECK_THROWS_AS(align_profiles(single(log, 0), single(log, 0)), std::invalid_argument);
    const auto other = make_log({{"a"}, {"b"}});
    CHECK_THROWS_AS(align_profiles(single(log, 0), single(other, 1)), std::invalid_argument);
}

TEST_CASE("empty profiles merge without incident") {
    const auto log = make_log({{}, {"a"}});
    const Alignment merged = align_profiles(single(log, 0), single(log, 1));
    CHECK(merged.row_count() == 2);
    CHECK(merged.length() == 1);
    CHECK(sps_columnar(merged) == 1);

    const Alignment both_empty = align_profiles(Alignment(), Alignment());
    CHECK(both_empty.row_count() == 0);
    CHECK(both_empty.length() == 0);
    CHECK(sps_columnar(both_empty) == 0);
}

TEST_CASE("identity checks are counted") {
    const std::uint64_t before = merge_identity_checks();
    const auto log = make_log({{"a"}, {"a"}});
    align_profiles(single(log, 0), single(log, 1));
    CHECK(merge_identity_checks() > before);
}
