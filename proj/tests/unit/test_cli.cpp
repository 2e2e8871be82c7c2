#include "courtcast/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

namespace fs = std::filesystem;
using courtcast::cli::run;

namespace {

const std::string kFixture = COURTCAST_FIXTURE_DIR;

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

/// Artifact body without its `out=` echo line, which names the directory.
std::string without_out_line(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::string kept;
    while (std::getline(in, line)) {
        if (line.rfind("# courtcast.config out=", 0) == 0) continue;
        kept += line + '\n';
    }
    return kept;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str(const std::string& leaf = "") const { return (path / leaf).string(); }
};

}  // namespace

TEST_CASE("help exits cleanly") {
    const auto top = invoke({"--help"});
    CHECK(top.code == 0);
    CHECK(top.out.find("evaluate") != std::string::npos);
    const auto sub = invoke({"evaluate", "--help"});
    CHECK(sub.code == 0);
    CHECK(sub.out.find("--ft-factor") != std::string::npos);
    CHECK(sub.out.find("--config") != std::string::npos);
}

TEST_CASE("usage errors exit with 1") {
    CHECK(invoke({}).code == courtcast::cli::usage_error);
    CHECK(invoke({"juggle"}).code == courtcast::cli::usage_error);
    CHECK(invoke({"evaluate", "--no-such-flag", "1"}).code == courtcast::cli::usage_error);
    const auto bad = invoke({"evaluate", "--data", kFixture + "/games.csv", "--alpha", "2"});
    CHECK(bad.code == courtcast::cli::usage_error);
    CHECK(bad.err.find("alpha") != std::string::npos);
    CHECK(invoke({"train", "--data", kFixture + "/games.csv", "--model", "svm"}).code == courtcast::cli::usage_error);
}

TEST_CASE("data errors exit with 2 and name the file") {
    TempDir dir("courtcast_cli_missing");
    const auto missing = invoke({"ingest", "--data", "/nonexistent/games.csv", "--out", dir.str()});
    CHECK(missing.code == courtcast::cli::data_error);
    CHECK(missing.err.find("/nonexistent/games.csv") != std::string::npos);

    std::ofstream(dir.path / "broken.csv") << "date,season\n2011-01-01,2011\n";
    const auto broken = invoke({"ingest", "--data", dir.str("broken.csv"), "--out", dir.str()});
    CHECK(broken.code == courtcast::cli::data_error);
    CHECK(broken.err.find("broken.csv") != std::string::npos);

    CHECK(invoke({"predict", "--data", kFixture + "/games.csv", "--model-file", dir.str("none.json"), "--out",
                  dir.str()})
              .code == courtcast::cli::data_error);
    CHECK(invoke({"evaluate", "--config", dir.str("missing.cfg")}).code == courtcast::cli::data_error);
}

TEST_CASE("every subcommand runs on the fixture league") {
    TempDir dir("courtcast_cli_pipeline");
    const std::vector<std::string> common = {"--data", kFixture + "/games.csv", "--roster", kFixture + "/roster.csv",
                                             "--out", dir.str()};
    auto with = [&](std::vector<std::string> args) {
        args.insert(args.end(), common.begin(), common.end());
        return invoke(args);
    };
    CHECK(with({"ingest"}).code == 0);
    CHECK(with({"stats"}).code == 0);
    CHECK(with({"adjust", "--scheme", "explicit", "--seeding", "prior"}).code == 0);
    CHECK(with({"features"}).code == 0);
    CHECK(with({"train", "--model", "decision_tree"}).code == 0);
    CHECK(with({"predict"}).code == 0);
    CHECK(with({"rank", "--method", "rpi"}).code == 0);
    CHECK(with({"evaluate", "--model", "naive_bayes_kde"}).code == 0);
    for (const char* leaf : {"games.csv", "stats.csv", "snapshots_2010.csv", "train_2010.csv", "test_2010.csv",
                             "model.json", "predictions.csv", "ranking.csv", "summary.csv", "curve.csv"}) {
        CAPTURE(leaf);
        CHECK(fs::exists(dir.path / leaf));
    }
    CHECK(slurp(dir.path / "ranking.csv").find("rank,team,score\n1,") != std::string::npos);
    const auto summary = slurp(dir.path / "summary.csv");
    CHECK(summary.rfind("# courtcast.config data=", 0) == 0);
    CHECK(summary.find("# courtcast.config model=naive_bayes_kde\n") != std::string::npos);
}

TEST_CASE("flags override the config file") {
    TempDir dir("courtcast_cli_precedence");
    std::ofstream(dir.path / "run.cfg") << "data = " << kFixture << "/games.csv\nmodel = mlp\nseed = 4\n";
    const auto r = invoke({"evaluate", "--config", dir.str("run.cfg"), "--seed", "6", "--out", dir.str()});
    REQUIRE(r.code == 0);
    const auto summary = slurp(dir.path / "summary.csv");
    CHECK(summary.find("# courtcast.config model=mlp\n") != std::string::npos);
    CHECK(summary.find("# courtcast.config seed=6\n") != std::string::npos);
}

TEST_CASE("an artifact's echo reproduces its run") {
    TempDir first("courtcast_cli_echo_a");
    TempDir second("courtcast_cli_echo_b");
    const auto a = invoke({"evaluate", "--data", kFixture + "/games.csv", "--model", "random_forest", "--scheme",
                           "adj_four_factors", "--seed", "8", "--out", first.str()});
    REQUIRE(a.code == 0);
    const auto b = invoke({"evaluate", "--config", first.str("summary.csv"), "--out", second.str()});
    REQUIRE(b.code == 0);
    for (const char* leaf : {"summary.csv", "predictions.csv", "curve.csv"}) {
        CAPTURE(leaf);
        CHECK(without_out_line(slurp(first.path / leaf)) == without_out_line(slurp(second.path / leaf)));
    }
}

TEST_CASE("repeated runs are byte identical") {
    TempDir dir("courtcast_cli_repeat");
    const std::vector<std::string> args = {"evaluate", "--data", kFixture + "/games.csv", "--model", "mlp",
                                           "--mlp-epochs", "50", "--out", dir.str()};
    REQUIRE(invoke(args).code == 0);
    const auto once = slurp(dir.path / "predictions.csv");
    REQUIRE(invoke(args).code == 0);
    CHECK(slurp(dir.path / "predictions.csv") == once);
}

TEST_CASE("simulate writes a league that ingests") {
    TempDir dir("courtcast_cli_simulate");
    const auto sim = invoke({"simulate", "--teams", "6", "--games-per-team", "6", "--seasons", "2", "--seed", "3",
                             "--out", dir.str()});
    REQUIRE(sim.code == 0);
    const auto ingest = invoke({"ingest", "--data", dir.str("games.csv"), "--roster", dir.str("roster.csv"), "--out",
                                dir.str("again")});
    CHECK(ingest.code == 0);
    CHECK(invoke({"simulate", "--teams", "7", "--out", dir.str()}).code == courtcast::cli::usage_error);
}
