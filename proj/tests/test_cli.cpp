#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "graphbench/runfile.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

using namespace graphbench;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() / ("gb_cli_" + std::to_string(::getpid()) + "_" +
                                            std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

std::string binary() {
    if (const char* env = std::getenv("GRAPHBENCH_BIN")) return env;
    return "./graphbench"; // direct invocation from the build directory
}

struct CommandResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& file) {
    std::ifstream in(file);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

CommandResult run_tool(const std::string& args) {
    static int counter = 0;
    const fs::path out =
        fs::temp_directory_path() / ("gb_cli_out_" + std::to_string(::getpid()) + "_" +
                                     std::to_string(counter));
    const fs::path err =
        fs::temp_directory_path() / ("gb_cli_err_" + std::to_string(::getpid()) + "_" +
                                     std::to_string(counter));
    ++counter;
    const std::string command =
        binary() + " " + args + " >" + out.string() + " 2>" + err.string();
    const int status = std::system(command.c_str());
    CommandResult result;
    if (status != -1 && WIFEXITED(status)) result.code = WEXITSTATUS(status);
    result.out = slurp(out);
    result.err = slurp(err);
    fs::remove(out);
    fs::remove(err);
    return result;
}

std::size_t line_count(const std::string& text) {
    std::size_t lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    return lines;
}

void write_pipeline_config(const fs::path& dir, std::int64_t base_seed) {
    std::ofstream config(dir / "experiments.yml");
    config << "instances:\n"
           << "  - name: g1\n    generator: gnm\n    nodes: 60\n    edges: 150\n"
           << "    seed: 1\n    class: Synthetic\n"
           << "  - name: g2\n    generator: gnm\n    nodes: 120\n    edges: 360\n"
           << "    seed: 2\n    class: Synthetic\n"
           << "configurations:\n"
           << "  - name: kadabra\n"
           << "    args: ['" << binary()
           << "', 'run', 'kadabra', '@INSTANCE@', '--epsilon=0.05', '--delta=0.1']\n"
           << "    output: stdout\n"
           << "  - name: rk\n"
           << "    args: ['" << binary()
           << "', 'run', 'rk', '@INSTANCE@', '--epsilon=0.05', '--delta=0.1']\n"
           << "    output: stdout\n"
           << "repetitions: 2\n"
           << "max_parallel: 2\n"
           << "base_seed: " << base_seed << "\n"
           << "instance_dir: " << (dir / "instances").string() << "\n"
           << "output_dir: " << (dir / "output").string() << "\n";
}

} // namespace

TEST_CASE("--help exits 0 on every subcommand") {
    const CommandResult top = run_tool("--help");
    CHECK(top.code == 0);
    for (const char* name :
         {"run", "instances", "experiments", "collect", "analyze", "plot"})
        CHECK(top.out.find(name) != std::string::npos);

    for (const std::string sub :
         {"run --help", "instances download --help", "experiments launch --help",
          "experiments list --help", "experiments purge --help", "collect --help",
          "analyze --help", "plot --help"})
        CHECK(run_tool(sub).code == 0);

    CHECK(run_tool("run --help").out.find("--epsilon") != std::string::npos);
    CHECK(run_tool("experiments purge --help").out.find("--status") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_tool("").code == 2);
    CHECK(run_tool("frobnicate").code == 2);
    CHECK(run_tool("run").code == 2);
    CHECK(run_tool("run quantum p3.edges").code == 2);
    CHECK(run_tool("run brandes file.edges --bogus").code == 2);
    CHECK(run_tool("experiments launch").code == 2);
    CHECK(run_tool("collect --config /nonexistent.yml").code == 2);
    CHECK(run_tool("analyze --config /nonexistent.yml --model relative_time").code == 2);
}

TEST_CASE("brandes on a path graph prints a parseable record") {
    TempDir dir;
    std::ofstream(dir.path / "p3.edges") << "0 1\n1 2\n";
    const CommandResult result =
        run_tool("run brandes " + (dir.path / "p3.edges").string() + " --seed=4");
    REQUIRE(result.code == 0);
    CHECK(result.err.find("largest component: 3 of 3 nodes") != std::string::npos);

    const RunParse parse = parse_run_output(result.out);
    REQUIRE(parse.ok());
    const RunOutput& record = *parse.record;
    CHECK(record.algorithm == "brandes");
    CHECK(record.instance == "p3");
    CHECK(record.iterations == 3);
    CHECK(std::get<double>(record.parameters.at("epsilon")) == 0.0);
    CHECK(std::get<double>(record.parameters.at("delta")) == 0.0);
    CHECK(std::get<std::int64_t>(record.parameters.at("seed")) == 4);
    REQUIRE(record.topk_nodes.size() == 3);
    CHECK(record.topk_nodes[0] == 1);
    CHECK(record.topk_scores[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(record.topk_scores[1] == 0.0);
    CHECK(record.run_time >= 0.0);
    REQUIRE(record.wall_time.has_value());
    CHECK(*record.wall_time >= 0.0);
}

TEST_CASE("missing instance exits 2 without a record") {
    const CommandResult result = run_tool("run brandes /nonexistent/graph.edges");
    CHECK(result.code == 2);
    CHECK(result.out.empty());
    CHECK(result.err.find("cannot read instance") != std::string::npos);
}

TEST_CASE("kadabra record carries its parameters and respects --topk") {
    TempDir dir;
    // a star: hub 0, leaves 1..40
    std::ofstream star(dir.path / "star.edges");
    for (int leaf = 1; leaf <= 40; ++leaf) star << "0 " << leaf << "\n";
    star.close();

    const CommandResult result =
        run_tool("run kadabra " + (dir.path / "star.edges").string() +
                 " --epsilon=0.1 --delta=0.1 --seed=3 --topk=5");
    REQUIRE(result.code == 0);
    const RunParse parse = parse_run_output(result.out);
    REQUIRE(parse.ok());
    const RunOutput& record = *parse.record;
    CHECK(record.algorithm == "kadabra");
    CHECK(std::get<double>(record.parameters.at("epsilon")) == 0.1);
    CHECK(std::get<double>(record.parameters.at("delta")) == 0.1);
    CHECK(std::get<std::int64_t>(record.parameters.at("c")) == 10);
    CHECK(std::get<std::int64_t>(record.parameters.at("seed")) == 3);
    CHECK(record.iterations >= 1);
    REQUIRE(record.topk_nodes.size() == 5);
    CHECK(record.topk_nodes[0] == 0); // the hub dominates
    CHECK(record.topk_scores[0] > 0.9);
}

TEST_CASE("the pipeline commands cooperate end to end") {
    TempDir dir;
    write_pipeline_config(dir.path, 7);
    const std::string config = " --config " + (dir.path / "experiments.yml").string();

    const CommandResult download = run_tool("instances download" + config);
    CHECK(download.code == 0);
    CHECK(download.out.find("2 fetched, 0 skipped, 0 failed") != std::string::npos);
    const CommandResult download_again = run_tool("instances download" + config);
    CHECK(download_again.out.find("0 fetched, 2 skipped, 0 failed") != std::string::npos);

    const CommandResult launch = run_tool("experiments launch" + config);
    CHECK(launch.code == 0);
    CHECK(launch.out.find("8 launched") != std::string::npos);
    const CommandResult relaunch = run_tool("experiments launch" + config);
    CHECK(relaunch.code == 0);
    CHECK(relaunch.out.find("0 launched") != std::string::npos);

    const CommandResult list = run_tool("experiments list" + config);
    CHECK(list.code == 0);
    CHECK(line_count(list.out) == 9); // header plus one row per run
    CHECK(list.out.find("pending") == std::string::npos);
    CHECK(list.out.find("finished") != std::string::npos);

    // every output file is a valid record with the derived seed
    int records = 0;
    for (const auto& entry : fs::directory_iterator(dir.path / "output")) {
        if (entry.path().extension() != ".out") continue;
        const RunParse parse = parse_run_output(slurp(entry.path()));
        REQUIRE(parse.ok());
        const std::string stem = entry.path().stem().string();
        const int repetition = stem.back() - '0';
        CHECK(std::get<std::int64_t>(parse.record->parameters.at("seed")) ==
              7 + repetition);
        ++records;
    }
    CHECK(records == 8);

    const std::string results = " --output-dir " + (dir.path / "results").string();
    const CommandResult collect =
        run_tool("collect" + config + results + " --speedup kadabra,rk");
    CHECK(collect.code == 0);
    CHECK(collect.out.find("collected 8 runs") != std::string::npos);
    CHECK(collect.out.find("geometric mean speedup: ") != std::string::npos);
    CHECK(line_count(slurp(dir.path / "results" / "runs.csv")) == 9);
    CHECK(line_count(slurp(dir.path / "results" / "aggregate.csv")) == 5);
    CHECK(line_count(slurp(dir.path / "results" / "speedup.csv")) == 3);

    const CommandResult wilcoxon = run_tool("analyze" + config + results +
                                            " --wilcoxon kadabra,rk");
    CHECK(wilcoxon.code == 0);
    CHECK(wilcoxon.out.find("two-sided p = ") != std::string::npos);

    // per-run points: 2 instances x 2 repetitions
    const CommandResult scaling =
        run_tool("analyze" + config + results +
                 " --model size_scaling --configuration kadabra --draws 1000 --warmup "
                 "2000 --seed 5");
    CHECK(scaling.code == 0);
    CHECK(scaling.out.find("HPD 2.5") != std::string::npos);
    CHECK(scaling.out.find("alpha") != std::string::npos);
    CHECK(scaling.out.find("beta") != std::string::npos);
    CHECK(scaling.out.find("sigma") != std::string::npos);
    CHECK(fs::exists(dir.path / "results" / "analyze_size_scaling.csv"));

    // only two instances pair up, not enough for the relative model
    const CommandResult relative =
        run_tool("analyze" + config + results + " --model relative_time --pair kadabra,rk");
    CHECK(relative.code == 1);

    const CommandResult scatter =
        run_tool("plot" + config + results + " --figure scatter --experiment demo");
    CHECK(scatter.code == 0);
    const fs::path scatter_svg = dir.path / "results" / "scatter_demo.svg";
    REQUIRE(fs::exists(scatter_svg));
    CHECK(slurp(scatter_svg).rfind("<?xml", 0) == 0);

    const CommandResult bars = run_tool("plot" + config + results +
                                        " --figure speedup --pair kadabra,rk");
    CHECK(bars.code == 0);
    CHECK(fs::exists(dir.path / "results" / "speedup_experiments.svg"));

    const CommandResult boxes = run_tool("plot" + config + results +
                                         " --figure boxplot --configuration kadabra");
    CHECK(boxes.code == 0);
    CHECK(fs::exists(dir.path / "results" / "boxplot_experiments.svg"));

    const CommandResult bad_purge = run_tool("experiments purge" + config);
    CHECK(bad_purge.code == 2);
    CHECK(bad_purge.err.find("refusing to purge") != std::string::npos);

    const CommandResult purge_one =
        run_tool("experiments purge" + config + " --name kadabra --instance g1"
                 " --repetition 0");
    CHECK(purge_one.code == 0);
    CHECK(purge_one.out.find("1 removed") != std::string::npos);
    const CommandResult fill = run_tool("experiments launch" + config);
    CHECK(fill.out.find("1 launched") != std::string::npos);

    const CommandResult purge_all = run_tool("experiments purge" + config + " --all");
    CHECK(purge_all.out.find("8 removed") != std::string::npos);
    const CommandResult after = run_tool("experiments list" + config);
    CHECK(after.out.find("finished") == std::string::npos);
}

TEST_CASE("analyze without a task is a usage error") {
    TempDir dir;
    write_pipeline_config(dir.path, 7);
    const std::string config = " --config " + (dir.path / "experiments.yml").string();
    const CommandResult result = run_tool("analyze" + config);
    CHECK(result.code == 2);
    CHECK(result.err.find("--model or --wilcoxon") != std::string::npos);

    CHECK(run_tool("analyze" + config + " --model relative_time --pair onlyone").code == 2);
    CHECK(run_tool("plot" + config + " --figure piechart").code == 2);
}
