#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "graphbench/collect.hpp"
#include "graphbench/random.hpp"
#include "graphbench/runfile.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

using namespace graphbench;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

RunOutput make_record(const std::string& algorithm, double run_time, std::int64_t seed) {
    RunOutput r;
    r.algorithm = algorithm;
    r.info = {"unknown", "2026-08-14T00:00:00.000000", "box"};
    r.iterations = algorithm == "brandes" ? 0 : 100;
    r.parameters["delta"] = 0.1;
    r.parameters["epsilon"] = 0.05;
    r.parameters["seed"] = seed;
    r.run_time = run_time;
    r.topk_nodes = {3, 1};
    r.topk_scores = {0.5, 0.25};
    return r;
}

void write_run(const fs::path& dir, const std::string& config, const std::string& instance,
               int rep, double run_time) {
    const auto record = make_record("kadabra", run_time, 42 + rep);
    write_file(dir / (config + "@" + instance + "@" + std::to_string(rep) + ".out"),
               write_run_output(record));
}

// Rows built directly, bypassing the filesystem.
ResultFrame frame_of(std::vector<std::tuple<std::string, std::string, int, double>> entries) {
    ResultFrame frame;
    for (auto& [config, instance, rep, time] : entries) {
        RunRow row;
        row.configuration = config;
        row.algorithm = config;
        row.instance = instance;
        row.repetition = rep;
        row.run_time = time;
        frame.rows.push_back(std::move(row));
    }
    return frame;
}

} // namespace

TEST_CASE("collect_successful accounts for every file") {
    TempDir dir("gb_collect_full");
    for (const auto& config : {"fast", "slow"})
        for (const auto& instance : {"g1", "g2", "g3"})
            for (int rep = 0; rep < 2; ++rep)
                write_run(dir.path, config, instance, rep, 1.0 + rep);

    auto frame = collect_successful(dir.path.string());
    CHECK(frame.rows.size() == 12);
    CHECK(frame.rejected.empty());
    CHECK(frame.failed_markers.empty());

    std::set<std::tuple<std::string, std::string, std::int64_t>> keys;
    for (const auto& row : frame.rows) {
        keys.insert({row.configuration, row.instance, row.repetition});
        CHECK(row.algorithm == "kadabra");
        CHECK(row.epsilon == 0.05);
        CHECK(row.delta == 0.1);
        CHECK(row.topk_nodes.size() == 2);
    }
    CHECK(keys.size() == 12); // identity triple stays unique

    SUBCASE("corrupt and foreign files are rejected by name") {
        write_file(dir.path / "fast@g1@7.out", "{{{ not yaml");
        write_file(dir.path / "noseparators.out", write_run_output(make_record("rk", 1.0, 1)));
        write_file(dir.path / "notes.txt", "scratch");
        write_file(dir.path / "slow@g3@1.failed", "exit status 2");
        fs::create_directories(dir.path / "subdir");

        const auto partial = collect_successful(dir.path.string());
        CHECK(partial.rows.size() == 12);
        REQUIRE(partial.rejected.size() == 3);
        CHECK(partial.failed_markers == std::vector<std::string>{"slow@g3@1.failed"});

        std::size_t files = 0;
        for (const auto& entry : fs::directory_iterator(dir.path))
            if (entry.is_regular_file()) ++files;
        CHECK(partial.rows.size() + partial.rejected.size() + partial.failed_markers.size() ==
              files);

        bool corrupt_named = false;
        for (const auto& [file, reason] : partial.rejected)
            if (file == "fast@g1@7.out") {
                corrupt_named = true;
                CHECK(reason.find("YAML") != std::string::npos);
            }
        CHECK(corrupt_named);
    }
}

TEST_CASE("collect_successful needs at least one good run") {
    TempDir dir("gb_collect_empty");
    CHECK_THROWS_AS(collect_successful(dir.path.string()), std::runtime_error);
    write_file(dir.path / "a@b@0.failed", "timeout");
    CHECK_THROWS_AS(collect_successful(dir.path.string()), std::runtime_error);
    CHECK_THROWS_AS(collect_successful((dir.path / "absent").string()), std::invalid_argument);
}

TEST_CASE("missing runs are reported against the expectation") {
    TempDir dir("gb_collect_missing");
    std::vector<ExpectedRun> expected;
    for (const auto& instance : {"g1", "g2"})
        for (int rep = 0; rep < 3; ++rep) {
            write_run(dir.path, "only", instance, rep, 2.0);
            expected.push_back({"only", instance, rep});
        }
    fs::remove(dir.path / "only@g2@1.out"); // purged run

    const auto frame = collect_successful(dir.path.string());
    CHECK(frame.rows.size() == 5);
    const auto missing = find_missing(frame, expected);
    REQUIRE(missing.size() == 1);
    CHECK(missing[0].instance == "g2");
    CHECK(missing[0].repetition == 1);
}

TEST_CASE("instance attributes come from the largest component") {
    TempDir dir("gb_collect_attr");
    write_file(dir.path / "toy.edges", "0 1\n1 2\n2 3\n3 4\n7 8\n");
    const auto attributes = compute_instance_attributes((dir.path / "toy.edges").string());
    CHECK(attributes.nodes == 5);
    CHECK(attributes.edges == 4);
    CHECK(attributes.diameter_lower == 4);
    CHECK(attributes.diameter_upper == 4);

    auto on_stack = frame_of({{"fast", "toy", 0, 1.0}, {"fast", "other", 0, 1.0}});
    std::map<std::string, InstanceProfile> profiles;
    profiles["toy"] = {"Path", attributes};
    join_instance_attributes(on_stack, profiles);
    CHECK(on_stack.rows[0].instance_class == "Path");
    REQUIRE(on_stack.rows[0].attributes.has_value());
    CHECK(on_stack.rows[0].attributes->nodes == 5);
    CHECK_FALSE(on_stack.rows[1].attributes.has_value());
}

TEST_CASE("geometric mean") {
    CHECK(geometric_mean(std::vector<double>{4.0, 9.0}) == Approx(6.0).epsilon(1e-12));
    CHECK(geometric_mean(std::vector<double>{7.25}) == Approx(7.25).epsilon(1e-14));
    CHECK_THROWS_AS(geometric_mean(std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(geometric_mean(std::vector<double>{1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(geometric_mean(std::vector<double>{-2.0}), std::invalid_argument);

    // ratio identity, the reason the geometric mean is used at all
    const std::vector<double> a{2.0, 8.0};
    const std::vector<double> b{1.0, 2.0};
    const std::vector<double> ratios{2.0, 4.0};
    CHECK(geometric_mean(ratios) == Approx(2.8284271247461903).epsilon(1e-12));
    CHECK(geometric_mean(ratios) ==
          Approx(geometric_mean(a) / geometric_mean(b)).epsilon(1e-12));

    Rng rng(1234);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng.bounded(15);
        std::vector<double> xs(n), ys(n), rs(n);
        for (std::size_t i = 0; i < n; ++i) {
            xs[i] = 0.01 + rng.uniform() * 100.0;
            ys[i] = 0.01 + rng.uniform() * 100.0;
            rs[i] = xs[i] / ys[i];
        }
        CHECK(std::abs(geometric_mean(rs) - geometric_mean(xs) / geometric_mean(ys)) <= 1e-12);
    }
}

TEST_CASE("speedup table") {
    SUBCASE("single instance ratio of means") {
        const auto frame = frame_of(
            {{"a", "g1", 0, 1.0}, {"a", "g1", 1, 1.0}, {"b", "g1", 0, 3.0}, {"b", "g1", 1, 5.0}});
        const auto table = speedup_table(frame, "a", "b");
        REQUIRE(table.rows.size() == 1);
        CHECK(table.rows[0].ratio == 4.0);
        CHECK(table.geometric_mean_ratio == Approx(4.0).epsilon(1e-12));
        CHECK(table.rows[0].runs_a == 2);
    }
    SUBCASE("identical configurations have unit speedup") {
        const auto frame = frame_of({{"a", "g1", 0, 2.0}, {"a", "g2", 0, 9.0}});
        const auto table = speedup_table(frame, "a", "a");
        for (const auto& row : table.rows) CHECK(row.ratio == 1.0);
        CHECK(table.geometric_mean_ratio == Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("geometric mean across instances") {
        const auto frame = frame_of({{"a", "g1", 0, 1.0},
                                     {"b", "g1", 0, 2.0},
                                     {"a", "g2", 0, 1.0},
                                     {"b", "g2", 0, 8.0},
                                     {"a", "g3", 0, 1.0},
                                     {"b", "g3", 0, 4.0}});
        CHECK(speedup_table(frame, "a", "b").geometric_mean_ratio == Approx(4.0).epsilon(1e-12));
    }
    SUBCASE("antisymmetry") {
        Rng rng(7);
        ResultFrame frame;
        for (int i = 0; i < 6; ++i) {
            for (int rep = 0; rep < 3; ++rep) {
                RunRow row;
                row.instance = "g" + std::to_string(i);
                row.repetition = rep;
                row.configuration = "a";
                row.run_time = 0.5 + rng.uniform() * 4.0;
                frame.rows.push_back(row);
                row.configuration = "b";
                row.run_time = 0.5 + rng.uniform() * 4.0;
                frame.rows.push_back(row);
            }
        }
        const auto forward = speedup_table(frame, "a", "b");
        const auto backward = speedup_table(frame, "b", "a");
        CHECK(std::abs(forward.geometric_mean_ratio * backward.geometric_mean_ratio - 1.0) <=
              1e-12);
        REQUIRE(forward.rows.size() == backward.rows.size());
        for (std::size_t i = 0; i < forward.rows.size(); ++i)
            CHECK(std::abs(forward.rows[i].ratio * backward.rows[i].ratio - 1.0) <= 1e-12);
    }
    SUBCASE("one-sided instances are reported, not imputed") {
        const auto frame =
            frame_of({{"a", "g1", 0, 1.0}, {"b", "g1", 0, 2.0}, {"a", "g2", 0, 1.0}});
        const auto table = speedup_table(frame, "a", "b");
        CHECK(table.rows.size() == 1);
        CHECK(table.missing_b == std::vector<std::string>{"g2"});
        CHECK(table.missing_a.empty());
    }
    SUBCASE("disjoint instance sets are an error") {
        const auto frame = frame_of({{"a", "g1", 0, 1.0}, {"b", "g2", 0, 1.0}});
        CHECK_THROWS_AS(speedup_table(frame, "a", "b"), std::runtime_error);
    }
    SUBCASE("heavy right skew triggers a warning") {
        std::vector<std::tuple<std::string, std::string, int, double>> entries;
        for (int rep = 0; rep < 7; ++rep) entries.push_back({"a", "g1", rep, 1.0});
        entries.push_back({"a", "g1", 7, 100.0});
        for (int rep = 0; rep < 8; ++rep) entries.push_back({"b", "g1", rep, 2.0});
        const auto table = speedup_table(frame_of(entries), "a", "b");
        CHECK(table.skew_warnings == std::vector<std::string>{"a@g1"});
    }
}

TEST_CASE("standard error and repetition planning") {
    CHECK(standard_error(std::vector<double>{2.0, 4.0, 6.0}) ==
          Approx(1.1547005383792515).epsilon(1e-12));
    CHECK(standard_error(std::vector<double>{5.0, 5.0, 5.0}) == 0.0);
    const std::vector<double> base{1.0, 3.0, 7.0, 2.0};
    std::vector<double> scaled;
    for (double v : base) scaled.push_back(v * 11.0);
    CHECK(standard_error(scaled) == Approx(11.0 * standard_error(base)).epsilon(1e-12));
    CHECK_THROWS_AS(standard_error(std::vector<double>{1.0}), std::invalid_argument);

    CHECK(required_repetitions(4.0, 1.0) == 4);
    CHECK(required_repetitions(4.0, 2.0) == 1);
    CHECK(required_repetitions(1.0, 0.1) == 100);
    CHECK_THROWS_AS(required_repetitions(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(required_repetitions(1.0, -0.5), std::invalid_argument);

    Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const double variance = 0.01 + rng.uniform() * 50.0;
        const double target = 0.01 + rng.uniform() * 3.0;
        const auto k = required_repetitions(variance, target);
        CHECK(std::sqrt(variance / double(k)) <= target);
        if (k > 1) CHECK(std::sqrt(variance / double(k - 1)) > target);
    }
}

TEST_CASE("stratified split") {
    const std::vector<InstanceLabel> four{
        {"a1", "A"}, {"a2", "A"}, {"b1", "B"}, {"b2", "B"}};
    const auto plan = stratified_split(four, 1, 9);
    CHECK(plan.tuning.size() == 2);
    CHECK(plan.evaluation.size() == 2);

    SUBCASE("disjoint and exhaustive for random inputs") {
        Rng rng(21);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<InstanceLabel> labels;
            const int classes = 1 + int(rng.bounded(6));
            for (int c = 0; c < classes; ++c)
                for (std::uint64_t i = 0, n = 1 + rng.bounded(5); i < n; ++i)
                    labels.push_back({"i" + std::to_string(c) + "_" + std::to_string(i),
                                      "class" + std::to_string(c)});
            const auto split = stratified_split(labels, 1 + rng.bounded(3), trial);
            std::set<std::string> all;
            for (const auto& name : split.tuning) all.insert(name);
            for (const auto& name : split.evaluation) {
                CHECK(std::find(split.tuning.begin(), split.tuning.end(), name) ==
                      split.tuning.end());
                all.insert(name);
            }
            CHECK(all.size() == labels.size());
        }
    }
    SUBCASE("one tuning instance per class, seven classes") {
        std::vector<InstanceLabel> labels;
        const std::size_t sizes[7] = {1, 2, 3, 1, 4, 2, 5};
        for (std::size_t c = 0; c < 7; ++c)
            for (std::size_t i = 0; i < sizes[c]; ++i)
                labels.push_back({"n" + std::to_string(c) + std::to_string(i),
                                  "class" + std::to_string(c)});
        CHECK(stratified_split(labels, 1, 4).tuning.size() == 7);
    }
    SUBCASE("per_class covering a whole class takes all of it") {
        const auto all_in = stratified_split(four, 2, 0);
        CHECK(all_in.tuning.size() == 4);
        CHECK(all_in.evaluation.empty());
    }
    SUBCASE("deterministic per seed") {
        std::vector<InstanceLabel> labels;
        for (int i = 0; i < 12; ++i) labels.push_back({"x" + std::to_string(i), "only"});
        const auto s1 = stratified_split(labels, 4, 77);
        const auto s2 = stratified_split(labels, 4, 77);
        CHECK(s1.tuning == s2.tuning);
        bool any_difference = false;
        for (std::uint64_t seed = 0; seed < 10 && !any_difference; ++seed)
            any_difference = stratified_split(labels, 4, seed).tuning != s1.tuning;
        CHECK(any_difference);
    }
    CHECK_THROWS_AS(stratified_split({}, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(stratified_split(four, 0, 0), std::invalid_argument);
}

TEST_CASE("parameter tuning picks the fastest candidate") {
    ResultFrame frame;
    for (const auto& [config, time] :
         std::vector<std::pair<std::string, double>>{{"c10", 200.0}, {"c4375", 142.0}})
        for (const auto& instance : {"t1", "t2"})
            for (int rep = 0; rep < 2; ++rep) {
                RunRow row;
                row.configuration = config;
                row.instance = instance;
                row.repetition = rep;
                row.run_time = time;
                frame.rows.push_back(row);
            }

    const std::vector<TuningCandidate> candidates{{10.0, "c10"}, {4375.0, "c4375"}};
    const auto result = tune_parameter(candidates, frame);
    CHECK(result.best_value == 4375.0);
    CHECK(result.best_configuration == "c4375");
    REQUIRE(result.mean_times.size() == 2);
    CHECK(result.mean_times[0].second == 200.0);
    CHECK(result.mean_times[1].second == 142.0);

    SUBCASE("single candidate wins by default") {
        const auto lone = tune_parameter({{10.0, "c10"}}, frame);
        CHECK(lone.best_value == 10.0);
    }
    SUBCASE("ties go to the smaller value") {
        ResultFrame tied;
        for (const auto& config : {"p2", "p9"}) {
            RunRow row;
            row.configuration = config;
            row.instance = "t1";
            row.run_time = 5.0;
            tied.rows.push_back(row);
        }
        CHECK(tune_parameter({{9.0, "p9"}, {2.0, "p2"}}, tied).best_value == 2.0);
    }
    SUBCASE("a gap is named") {
        ResultFrame gap = frame;
        std::erase_if(gap.rows, [](const RunRow& row) {
            return row.configuration == "c10" && row.instance == "t2";
        });
        CHECK_THROWS_WITH_AS(tune_parameter(candidates, gap),
                             doctest::Contains("t2"), std::runtime_error);
    }
    CHECK_THROWS_AS(tune_parameter({}, frame), std::invalid_argument);
}

TEST_CASE("csv exports") {
    auto frame = frame_of({{"fast", "g1", 0, 1.5}, {"fast", "g1", 1, 2.5}});
    frame.rows[0].seed = 42;
    frame.rows[0].epsilon = 0.05;
    frame.rows[0].delta = 0.1;
    frame.rows[0].iterations = 316;
    frame.rows[0].attributes = InstanceAttributes{100, 300, 5, 6};
    frame.rows[0].instance_class = "Social";

    const auto runs = write_runs_csv(frame);
    CHECK(runs ==
          "configuration,algorithm,instance,class,repetition,seed,epsilon,delta,iterations,"
          "run_time,nodes,edges,diameter_lower,diameter_upper\n"
          "fast,fast,g1,Social,0,42,0.05,0.1,316,1.5,100,300,5,6\n"
          "fast,fast,g1,,1,0,0.0,0.0,0,2.5,,,,\n");

    const auto aggregate = write_aggregate_csv(frame);
    CHECK(aggregate.find("configuration,instance,runs,mean_run_time,standard_error\n") == 0);
    CHECK(aggregate.find("fast,g1,2,2.0,") != std::string::npos);

    SUBCASE("fields with separators are quoted") {
        frame.rows[0].instance_class = "odd,\"name\"";
        const auto quoted = write_runs_csv(frame);
        CHECK(quoted.find("\"odd,\"\"name\"\"\"") != std::string::npos);
    }
}
