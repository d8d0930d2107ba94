#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "boolfilter/cli.hpp"
#include "boolfilter/config.hpp"
#include "boolfilter/graph.hpp"
#include "boolfilter/io.hpp"

using namespace boolfilter;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "boolfilter");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("boolfilter_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("graphgen ring to stdout")
{
    const auto r = cli({"graphgen", "ring", "--n", "4", "--rho", "0.5"});
    CHECK(r.code == 0);
    CHECK(r.out == "{\"edges\":[[1,2,0.5],[2,3,0.5],[3,4,0.5],[4,2,0.5]],\"n\":4}\n");
}

TEST_CASE("graphgen er is deterministic in the seed and round-trips")
{
    const auto dir = scratch("graphgen");
    const auto a = cli({"graphgen", "er", "--n", "12", "--seed", "5"});
    const auto b = cli({"graphgen", "er", "--n", "12", "--seed", "5"});
    const auto c = cli({"graphgen", "er", "--n", "12", "--seed", "6"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out != c.out);
    CHECK(cli({"graphgen", "er", "--n", "12", "--seed", "5", "--out", (dir / "g.json").string()}).code == 0);
    CHECK(read_file(dir / "g.json") == a.out);
    CHECK(format_graph(load_graph(dir / "g.json")) == a.out);
}

TEST_CASE("run writes results and summary, reproducibly")
{
    const auto d1 = scratch("run1");
    const auto d2 = scratch("run2");
    const std::vector<std::string> common{"--n", "6", "--trials", "4", "--estimators", "MFA,BKF", "--seed", "3"};
    auto args1 = std::vector<std::string>{"run", "--out", d1.string(), "--plot", "--gap-probe"};
    args1.insert(args1.end(), common.begin(), common.end());
    auto args2 = std::vector<std::string>{"run", "--out", d2.string(), "--workers", "3"};
    args2.insert(args2.end(), common.begin(), common.end());
    const auto r1 = cli(args1);
    INFO(r1.err);
    REQUIRE(r1.code == 0);
    REQUIRE(cli(args2).code == 0);
    for (const char* f : {"results.csv", "summary.csv", "gap.csv", "ter.svg"})
        CHECK(fs::exists(d1 / f));
    CHECK_FALSE(fs::exists(d2 / "gap.csv"));
    CHECK(read_file(d1 / "results.csv") == read_file(d2 / "results.csv"));
    CHECK(read_file(d1 / "summary.csv") == read_file(d2 / "summary.csv"));
    CHECK(r1.out == read_file(d1 / "summary.csv"));
    CHECK(read_file(d1 / "ter.svg").find("<svg") != std::string::npos);
}

TEST_CASE("run reads a config file and flags override it")
{
    const auto dir = scratch("config");
    write_file_atomic(dir / "cfg.json",
                      R"({"experiment": "cfgtest", "graph": "ring", "n": 5, "trials": 2, "horizon": 3})");
    const auto r = cli({"run", "--config", (dir / "cfg.json").string(), "--out", (dir / "o").string(),
                        "--horizon", "4"});
    INFO(r.err);
    REQUIRE(r.code == 0);
    const auto results = read_file(dir / "o" / "results.csv");
    CHECK(results.find("cfgtest,ring,5,1,4,MFA,") != std::string::npos);
    CHECK(results.find(",5,MFA,") == std::string::npos);
}

TEST_CASE("BOOLFILTER_SEED sets the default seed and --seed wins")
{
    const auto dir = scratch("seed");
    auto run = [&](const std::string& sub, std::vector<std::string> extra) {
        std::vector<std::string> args{"run", "--out", (dir / sub).string(), "--n", "5", "--trials", "2"};
        args.insert(args.end(), extra.begin(), extra.end());
        REQUIRE(cli(args).code == 0);
        return read_file(dir / sub / "results.csv");
    };
    ::setenv("BOOLFILTER_SEED", "99", 1);
    const auto env = run("env", {});
    const auto flag_same = run("flag99", {"--seed", "99"});
    const auto flag_other = run("flag7", {"--seed", "7"});
    ::setenv("BOOLFILTER_SEED", "not-a-number", 1);
    CHECK(cli({"run", "--out", (dir / "bad").string(), "--n", "5"}).code == 1);
    ::unsetenv("BOOLFILTER_SEED");
    CHECK(env == flag_same);
    CHECK(env != flag_other);
}

TEST_CASE("verify exit codes")
{
    const auto ok = cli({"verify", "--max-n", "4", "--cases", "10"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("mfa.update_exact") != std::string::npos);
    CHECK(cli({"verify", "--max-n", "11"}).code == 1);
}

TEST_CASE("validation errors exit with 1")
{
    CHECK(cli({}).code == 1);
    CHECK(cli({"frobnicate"}).code == 1);
    CHECK(cli({"run"}).code == 1); // --out is required
    const auto dir = scratch("errors");
    const auto out = (dir / "o").string();
    auto bad = cli({"run", "--out", out, "--alpha", "1.5"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("alpha") != std::string::npos);
    CHECK(cli({"run", "--out", out, "--n", "25", "--estimators", "BKF"}).code == 1);
    CHECK(cli({"run", "--out", out, "--estimators", "XYZ"}).code == 1);
    CHECK(cli({"run", "--out", out, "--graph", "file", "--graph-path", (dir / "missing.json").string()}).code != 0);
    CHECK(cli({"graphgen", "ring", "--n", "2"}).code == 1);
    CHECK_FALSE(fs::exists(dir / "o" / "results.csv"));

    write_file_atomic(dir / "bad.json", R"({"n": 3, "edges": [[1, 2, "x"]]})");
    const auto parse = cli({"run", "--out", out, "--graph-path", (dir / "bad.json").string()});
    CHECK(parse.code == 1);
    CHECK(parse.err.find("edges[0][2]") != std::string::npos);

    write_file_atomic(dir / "cfg.json", R"({"trails": 3})");
    const auto cfg = cli({"run", "--out", out, "--config", (dir / "cfg.json").string()});
    CHECK(cfg.code == 1);
    CHECK(cfg.err.find("trails") != std::string::npos);
}

TEST_CASE("bench prints a csv")
{
    const auto r = cli({"bench", "--sizes", "4,5", "--runs", "1"});
    INFO(r.err);
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("graph,n,estimator,runs,mean_wall_ms\n", 0) == 0);
    CHECK(r.out.find("ring,5,BKF,1,") != std::string::npos);
}

#ifdef BOOLFILTER_CONFIGS
TEST_CASE("shipped presets parse")
{
    std::size_t count = 0;
    for (const auto& entry : fs::directory_iterator(BOOLFILTER_CONFIGS)) {
        INFO(entry.path().string());
        const RunConfig rc = parse_config(read_file(entry.path()));
        CHECK(rc.base.horizon == 20);
        CHECK(rc.base.trials == 100);
        CHECK(rc.base.clean_count == 2);
        for (const auto& cfg : rc.expand())
            if (cfg.graph.family != GraphFamily::file)
                CHECK_NOTHROW(Experiment{cfg});
        ++count;
    }
    CHECK(count == 5);
}
#endif

#ifdef BOOLFILTER_CLI
TEST_CASE("installed binary runs")
{
    const std::string cmd = std::string("\"") + BOOLFILTER_CLI + "\" graphgen ring --n 3 > /dev/null";
    CHECK(std::system(cmd.c_str()) == 0);
    const std::string bad = std::string("\"") + BOOLFILTER_CLI + "\" verify --max-n 99 2> /dev/null";
    const int status = std::system(bad.c_str());
    CHECK(WEXITSTATUS(status) == 1);
}
#endif
