#include "doctest.h"

#include "msi/model_file.hpp"

#include "json.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
    int status;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " \"" MSI_CLI_PATH "\" " + args + " 2>/dev/null";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::fgets(buf, sizeof buf, pipe) != nullptr) out += buf;
    const int raw = ::pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string fixture(const std::string& name) { return std::string(MSI_FIXTURE_DIR) + "/" + name; }

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Value printed after "key: " on its own line.
std::string field(const std::string& out, const std::string& key) {
    const auto pos = out.find(key + ": ");
    if (pos == std::string::npos) return {};
    const auto start = pos + key.size() + 2;
    return out.substr(start, out.find('\n', start) - start);
}

}  // namespace

TEST_CASE("estimate prints breakpoints and scale ratios") {
    const auto r = run("--digits 3 estimate --series " + fixture("table1.csv") + " --segments 3 --window 0,52 --lambda-out");
    CHECK(r.status == 0);
    CHECK(field(r.out, "breakpoints") == "0.000 14.000 31.000 52.000");
    CHECK(field(r.out, "lambda") == "1.214 1.235");
}

TEST_CASE("estimate over both axes writes a model") {
    const fs::path model = fs::current_path() / "cli_fitted.json";
    const auto r = run("estimate --series " + fixture("table1.csv") + " --window 0,52 --partitions " + fixture("table3.csv") +
                       " --series-b " + fixture("table2.csv") + " --breakpoints-b 0,10,23,40 --partitions-b " +
                       fixture("table4.csv") + " --precision reported --model-out " + model.string());
    CHECK(r.status == 0);
    CHECK(field(r.out, "simulatable") == "false");
    const auto m = msi::read_model(model);
    CHECK(std::abs(m.hurst[0] - 1.435) <= 1e-9);
    CHECK(std::abs(m.hurst[1] - 1.765) <= 1e-9);
    CHECK(m.hprime2.size() == 3);
}

TEST_CASE("predict reports MAPE and writes a JSON report") {
    const fs::path report = fs::current_path() / "cli_report.json";
    const auto r = run("predict --model " + fixture("paper_model.json") + " --rects " + fixture("table10.csv") +
                       " --initial 1,1 --report " + report.string());
    CHECK(r.status == 0);
    CHECK(std::abs(std::stod(field(r.out, "MAPE")) - 10.5) <= 0.1);
    CHECK(field(r.out, "lewis") == "good");
    const auto j = nlohmann::json::parse(slurp(report));
    CHECK(std::abs(j["mape"].get<double>() - 10.5) <= 0.1);
    CHECK(j["predicted"].size() == 9);
    CHECK(j["per_rect_abs_rel_error"].size() == 8);
}

TEST_CASE("evaluate scores the printed totals") {
    const auto r = run("evaluate --table " + fixture("table11.csv") + " --exclude 1,1");
    CHECK(r.status == 0);
    CHECK(std::abs(std::stod(field(r.out, "MAPE")) - 10.5) <= 0.1);
}

TEST_CASE("simulate is reproducible for a fixed seed") {
    const fs::path a = fs::current_path() / "sim_a.csv", b = fs::current_path() / "sim_b.csv";
    const std::string base = "simulate --model " + fixture("brownian.json") + " --grid 16x16 --seed 42 --out ";
    CHECK(run(base + a.string()).status == 0);
    CHECK(run(base + b.string()).status == 0);
    const auto text = slurp(a);
    CHECK(!text.empty());
    CHECK(text == slurp(b));
    CHECK(std::count(text.begin(), text.end(), '\n') == 16);
}

TEST_CASE("spectrum integrates densities to the lag-zero coefficients") {
    const fs::path q = fs::current_path() / "cli_q.csv";
    std::ofstream(q) << "n1,n2,tau1,tau2,value\n0,0,0,0,2.0\n1,0,0,0,1.0\n0,0,1,0,0.5\n1,0,1,0,0.25\n";
    const auto r = run("--digits 4 spectrum --q " + q.string() + " --period 2,1 --resolution 64");
    CHECK(r.status == 0);
    CHECK(field(r.out, "density_integral j=0,0") == "1.5000 0.0000");
    CHECK(field(r.out, "density_integral j=1,0") == "0.5000 0.0000");
}

TEST_CASE("fixtures subcommand validates and honours the directory override") {
    CHECK(run("fixtures --validate").status == 0);
    const fs::path empty = fs::current_path() / "no_fixtures_here";
    fs::create_directories(empty);
    CHECK(run("fixtures --validate", "MSI_FIXTURES=" + empty.string()).status == 1);
}

TEST_CASE("exit codes separate usage from computation errors") {
    CHECK(run("").status == 2);
    CHECK(run("predict --rects x.csv").status == 2);
    CHECK(run("simulate --hprime 0.5,0.5 --grid 4by4").status == 2);
    CHECK(run("estimate --series " + fixture("table1.csv") + " --precision sloppy").status == 2);
    CHECK(run("simulate --model " + fixture("paper_model.json") + " --grid 4x4").status == 1);
    CHECK(run("estimate --series " + fixture("table1.csv") + " --segments 30").status == 1);
    CHECK(run("--help").status == 0);
}
