#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dlg/cli.hpp"
#include "dlg/io.hpp"

using namespace dlg;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int run_cli(std::vector<std::string> args) {
    std::vector<const char*> argv{"dlg"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return cli::run(static_cast<int>(argv.size()), argv.data());
}

fs::path fresh_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("dlg-test-" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json slurp_json(const fs::path& p) { return json::parse(slurp(p)); }

}  // namespace

TEST_CASE("parse_kernel accepts the three families and rejects junk") {
    CHECK(kernel_name(cli::parse_kernel("dirac")) == "dirac");
    const Kernel u = cli::parse_kernel("uniform:sigma=0.5");
    CHECK(std::get<UniformKernel>(u).sigma == doctest::Approx(0.5));
    const Kernel g = cli::parse_kernel("gamma:p=3");
    CHECK(std::get<GammaKernel>(g).p == 3);

    CHECK_THROWS_AS(cli::parse_kernel("triangle"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_kernel("uniform"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_kernel("uniform:sigma=2.5"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_kernel("uniform:sigma=abc"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_kernel("gamma:p=0"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_kernel("gamma:p=2.5"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_kernel("dirac:sigma=1"), std::invalid_argument);
}

TEST_CASE("equilibrium subcommand writes summary.json") {
    const fs::path dir = fresh_dir("equilibrium");
    CHECK(run_cli({"--out-dir", dir.string(), "equilibrium", "--r", "5", "--K", "5", "--D",
                   "3"}) == 0);
    const json j = slurp_json(dir / "summary.json");
    CHECK(j["command"] == "equilibrium");
    CHECK(j["n_star"].get<double>() == doctest::Approx(5.54138126514911).epsilon(1e-12));
}

TEST_CASE("hopf subcommand: D = 0 closed form and D > 0 curve") {
    const fs::path dir = fresh_dir("hopf");
    CHECK(run_cli({"--out-dir", dir.string(), "hopf", "--kernel", "dirac", "--r", "2", "--K",
                   "5"}) == 0);
    json j = slurp_json(dir / "summary.json");
    CHECK(j["tau_star"].get<double>() == doctest::Approx(0.7853981633974483).epsilon(1e-12));

    // Stable-for-all-delays kernels report a null tau_star.
    CHECK(run_cli({"--out-dir", dir.string(), "hopf", "--kernel", "gamma:p=1", "--r", "2",
                   "--K", "5"}) == 0);
    j = slurp_json(dir / "summary.json");
    CHECK(j["tau_star"].is_null());

    CHECK(run_cli({"--out-dir", dir.string(), "hopf", "--kernel", "gamma:p=2", "--K", "5",
                   "--D", "3", "--r", "5"}) == 0);
    j = slurp_json(dir / "summary.json");
    CHECK(j["r_star"].get<double>() == doctest::Approx(3.675).epsilon(1e-12));
    REQUIRE(j["crossings"].size() == 2);
    CHECK(j["crossings"][0]["crossing"] == "left_to_right");
    CHECK(j["crossings"][1]["crossing"] == "right_to_left");
    const std::string csv = slurp(dir / "hopf_curve.csv");
    CHECK(csv.rfind("omega,r,tau_m,crossing\n", 0) == 0);
}

TEST_CASE("missing required option and bad values exit with code 2") {
    const fs::path dir = fresh_dir("badargs");
    CHECK(run_cli({"--out-dir", dir.string(), "equilibrium", "--r", "2"}) == 2);  // no --K
    CHECK(run_cli({"--out-dir", dir.string(), "equilibrium", "--r", "-1", "--K", "5"}) == 2);
    CHECK(run_cli({"--out-dir", dir.string(), "classify", "--kernel", "triangle", "--r", "2",
                   "--K", "5", "--tau", "1"}) == 2);
    CHECK(run_cli({"--out-dir", dir.string(), "hopf", "--kernel", "dirac", "--K", "5"}) ==
          2);  // D = 0 without --r
    CHECK(run_cli({"nonsense"}) == 2);
    CHECK(run_cli({}) == 2);
}

TEST_CASE("unwritable output directory exits with code 3") {
    CHECK(run_cli({"--out-dir", "/proc/definitely/not/writable", "equilibrium", "--r", "2",
                   "--K", "5"}) == 3);
}

TEST_CASE("classify subcommand reports state and margin") {
    const fs::path dir = fresh_dir("classify");
    CHECK(run_cli({"--out-dir", dir.string(), "classify", "--kernel", "gamma:p=2", "--r", "5",
                   "--K", "5", "--D", "3", "--tau", "5"}) == 0);
    const json j = slurp_json(dir / "summary.json");
    CHECK(j["state"] == "unstable");
    CHECK(j["marginal"] == false);
    CHECK(j["margin"].get<double>() > 0.0);
}

TEST_CASE("simulate and phase subcommands emit the documented CSV schemas") {
    const fs::path dir = fresh_dir("simulate");
    CHECK(run_cli({"--out-dir", dir.string(), "simulate", "--kernel", "dirac", "--r", "2",
                   "--K", "5", "--tau", "0.5", "--step", "0.005", "--t-end", "30"}) == 0);
    const std::string traj = slurp(dir / "trajectory.csv");
    CHECK(traj.rfind("t,n,delayed\n", 0) == 0);
    CHECK(traj.back() == '\n');

    CHECK(run_cli({"--out-dir", dir.string(), "phase", "--kernel", "dirac", "--r", "2", "--K",
                   "5", "--tau", "0.95", "--step", "0.005", "--t-end", "120"}) == 0);
    CHECK(slurp(dir / "phase.csv").rfind("n,delayed\n", 0) == 0);
    const json j = slurp_json(dir / "summary.json");
    CHECK(j["limit_cycle"] == true);  // tau past the Hopf point pi/4
}

TEST_CASE("bifurcation subcommand records oscillation switches") {
    const fs::path dir = fresh_dir("bifurcation");
    CHECK(run_cli({"--out-dir", dir.string(), "bifurcation", "--kernel", "dirac", "--r", "2",
                   "--K", "5", "--tau-min", "0.6", "--tau-max", "1.0", "--points", "11",
                   "--step", "0.005", "--t-end", "120", "--amplitude-tol", "0.002"}) == 0);
    const std::string csv = slurp(dir / "bifurcation.csv");
    CHECK(csv.rfind("tau_m,n_min,n_max,oscillating\n", 0) == 0);
    const json j = slurp_json(dir / "summary.json");
    REQUIRE(j["oscillation_switches"].size() >= 1);
    CHECK(std::abs(j["oscillation_switches"][0].get<double>() - 0.7853981633974483) <= 0.06);
}

TEST_CASE("identical invocations produce byte-identical output") {
    const fs::path a = fresh_dir("det-a"), b = fresh_dir("det-b");
    const std::vector<std::string> tail = {"region", "--kernel", "gamma:p=2",
                                           "--K",    "5",        "--D",
                                           "3"};
    auto with_dir = [&](const fs::path& dir) {
        std::vector<std::string> args = {"--out-dir", dir.string()};
        args.insert(args.end(), tail.begin(), tail.end());
        return args;
    };
    CHECK(run_cli(with_dir(a)) == 0);
    CHECK(run_cli(with_dir(b)) == 0);
    CHECK(slurp(a / "region.csv") == slurp(b / "region.csv"));
    CHECK(slurp(a / "summary.json") == slurp(b / "summary.json"));
}

TEST_CASE("config file supplies options") {
    const fs::path dir = fresh_dir("config");
    io::write_text(dir / "run.ini", "[equilibrium]\nr=5\nK=5\nD=3\n");
    CHECK(run_cli({"--config", (dir / "run.ini").string(), "--out-dir", dir.string(),
                   "equilibrium"}) == 0);
    const json j = slurp_json(dir / "summary.json");
    CHECK(j["n_star"].get<double>() == doctest::Approx(5.54138126514911).epsilon(1e-10));
}
