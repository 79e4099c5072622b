#include "cli.hpp"
#include "dataset.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

namespace fs = std::filesystem;
using nlohmann::json;
using robmom::cli::load_dataset;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = robmom::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() {
        static int counter = 0;
        path_ = fs::temp_directory_path() /
                ("robmom-cli-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name, const std::string& contents) const {
        const auto p = path_ / name;
        std::ofstream(p) << contents;
        return p.string();
    }
    std::string path(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
};

const json& record(const json& results, const std::string& system) {
    for (const auto& r : results) {
        if (r.at("system") == system) return r;
    }
    throw std::runtime_error("no record for " + system);
}

}  // namespace

TEST_CASE("load_dataset examples") {
    TempDir dir;
    const auto a = load_dataset(dir.file("a.csv", "x\n1\n2\n3\n"));
    CHECK(a.values == std::vector<double>{1, 2, 3});
    CHECK(a.skipped_rows == 1);

    const auto b = load_dataset(dir.file("b.csv", "1,9\n2,8\n"), 1);
    CHECK(b.values == std::vector<double>{9, 8});
    CHECK(b.skipped_rows == 0);
    CHECK(b.column == 1);

    const auto c = load_dataset(dir.file("c.tsv", "1\t4\n\n2\t5\n"), 1, '\t');
    CHECK(c.values == std::vector<double>{4, 5});

    CHECK_THROWS_AS((void)load_dataset(dir.file("empty.csv", "")), std::runtime_error);
    CHECK_THROWS_AS((void)load_dataset(dir.file("text.csv", "a\nb\n")), std::runtime_error);
    CHECK_THROWS_AS((void)load_dataset(dir.path("missing.csv")), std::runtime_error);
    CHECK_THROWS_AS((void)load_dataset(dir.file("narrow.csv", "1\n2\n"), 3), std::out_of_range);
}

TEST_CASE("population command reports ratios and discrepancies") {
    const auto r = invoke({"population", "--dist", "normal:0,1", "--system", "mad", "--orders", "4"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j.at("command") == "population");
    CHECK(std::abs(j.at("results").at("gamma4").get<double>() + 0.823) < 1e-3);
    CHECK(j.at("metadata").at("tool") == "robmom-cli");
    CHECK(j.at("metadata").contains("timestamp"));

    const auto e = invoke({"population", "--dist", "exponential:1", "--system", "mad"});
    REQUIRE(e.code == 0);
    const auto je = json::parse(e.out);
    bool delta2_flagged = false;
    for (const auto& d : je.at("discrepancies")) delta2_flagged |= d.at("quantity") == "delta2";
    CHECK(delta2_flagged);

    const auto u = invoke({"population", "--dist", "uniform:0,1", "--system", "medad"});
    REQUIRE(u.code == 0);
    const auto ju = json::parse(u.out);
    CHECK(std::abs(ju.at("results").at("phi4").get<double>() + 7.0 / 12.0) < 1e-10);
    CHECK_FALSE(ju.at("discrepancies").empty());
}

TEST_CASE("population command fails on undefined moments") {
    const auto r = invoke({"population", "--dist", "cauchy:0,1", "--system", "mad", "--orders", "4"});
    CHECK(r.code == 1);
    CHECK(r.err.find("error") != std::string::npos);
    CHECK(invoke({"population", "--dist", "cauchy:0,1", "--system", "medad"}).code == 0);
}

TEST_CASE("moments command returns one record per system") {
    TempDir dir;
    const auto path = dir.file("d.csv", "value\n1\n2\n3\n4\n5\n");
    const auto r = invoke({"moments", "--input", path, "--systems", "mad,medad,l,classical",
                           "--orders", "4", "--deterministic"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    const auto& results = j.at("results");
    REQUIRE(results.size() == 4);
    CHECK(record(results, "mad").at("delta2").get<double>() == doctest::Approx(1.2));
    CHECK(record(results, "medad").at("phi2").get<double>() == 1.0);
    CHECK(record(results, "medad").at("phi3").get<double>() == 0.5);
    CHECK(record(results, "l").at("lambda2").get<double>() == doctest::Approx(1.0));
    CHECK(record(results, "classical").at("mean").get<double>() == 3.0);
    CHECK(j.at("params").at("skipped_rows") == 1);
    CHECK_FALSE(j.at("metadata").contains("timestamp"));

    const auto csv = invoke({"moments", "--input", path, "--systems", "mad", "--format", "csv"});
    REQUIRE(csv.code == 0);
    CHECK(csv.out.rfind("system,statistic,value\n", 0) == 0);
    CHECK(csv.out.find("mad,delta2,1.2\n") != std::string::npos);
}

TEST_CASE("usage errors exit with status 2") {
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({"population"}).code == 2);
    CHECK(invoke({"population", "--dist", "normal:0,-1"}).code == 2);
    CHECK(invoke({"population", "--dist", "normal:0,1", "--system", "lmom"}).code == 2);
    CHECK(invoke({"simulate", "--n", "10,x"}).code == 2);
    CHECK(invoke({"simulate", "--config", "/nonexistent/robmom.cfg"}).code == 2);
    CHECK(invoke({"--version"}).out == "1.0.0\n");
}

TEST_CASE("deterministic output is byte identical") {
    const std::vector<std::string> args{"influence", "--dist", "normal:0,1", "--n", "50", "--seed",
                                        "3", "--stat", "psi3", "--grid", "11", "--deterministic"};
    const auto a = invoke(args);
    const auto b = invoke(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const auto j = json::parse(a.out);
    CHECK(j.at("results").at("z").size() == 11);
    CHECK(j.at("metadata").at("seed") == 3);
}

TEST_CASE("simulate honours config files and explicit flags") {
    TempDir dir;
    const auto cfg = dir.file("sim.cfg", "# study\nn = 10\nreps = 20\nseed = 5\nestimators = medad\n");
    const auto a = invoke({"simulate", "--config", cfg, "--threads", "1"});
    REQUIRE(a.code == 0);
    CHECK(a.out.rfind("estimator,parameter,n,bias,mse,B,seed\n", 0) == 0);
    CHECK(a.out.find("medad,theta,10,") != std::string::npos);
    CHECK(a.out.find(",20,5\n") != std::string::npos);

    const auto b = invoke({"simulate", "--config", cfg, "--reps", "30", "--threads", "1"});
    REQUIRE(b.code == 0);
    CHECK(b.out.find(",30,5\n") != std::string::npos);
}

TEST_CASE("output can be written to a file") {
    TempDir dir;
    const auto out = dir.path("ratios.csv");
    const auto r = invoke({"sampdist", "--dist", "t:3", "--n", "50", "--reps", "4", "--seed", "1",
                           "--out", out});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(out);
    std::string header;
    std::getline(in, header);
    CHECK(header == "rep,gamma3,gamma4,psi3,psi4,tau3,tau4,g1,g2");
    int rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    CHECK(rows == 4);
}

TEST_CASE("breakdown command") {
    const auto r = invoke({"breakdown", "--dist", "normal:0,1", "--n", "60", "--seed", "2",
                           "--order", "2", "--deterministic"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j.at("results").at("first_diverged") == 15);
}
