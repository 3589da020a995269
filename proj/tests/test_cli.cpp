#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <doctest.h>
#include <nlohmann/json.hpp>

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code;
    std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    const auto out_path = fs::temp_directory_path() / "rqip_cli_out.txt";
    const std::string cmd =
        std::string(RQIP_CLI_PATH) + " " + args + " > " + out_path.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out_path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    fs::remove(out_path);
    return {WEXITSTATUS(status), text};
}

}  // namespace

TEST_CASE("help exits cleanly, bad flags exit with usage error") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("sample --help").exit_code == 0);
    CHECK(run_cli("--no-such-flag").exit_code == 1);
    CHECK(run_cli("sample --alpha 0.5").exit_code == 1);  // missing required --n
    CHECK(run_cli("frobnicate").exit_code == 1);
}

TEST_CASE("domain errors exit with code 2 and name the offending range") {
    const auto r = run_cli("rqip-check --alpha 0.5 --gamma 1 --p 0.2 --delta 1.5 "
                           "--k 1 --N 4 --M 100 --seed 1");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("(0,1)") != std::string::npos);
    CHECK(run_cli("sample --alpha 1.2 --n 10 --seed 1").exit_code == 2);
    CHECK(run_cli("moments --alpha 0.5 --p 0.7 --n 10 --seed 1").exit_code == 2);
}

TEST_CASE("capacity errors exit with code 3") {
    CHECK(run_cli("rqip-check --alpha 0.5 --p 0.2 --delta 0.001 --k 2 --N 40 "
                  "--M 100 --strategy net --seed 1")
              .exit_code == 3);
}

TEST_CASE("bounds subcommand prints the worked threshold") {
    const auto r =
        run_cli("bounds --alpha 0.5 --p 0.25 --c0 0.25 --Cprime 1 --eps 1 --M 16 --show T");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("T = 2") != std::string::npos);
}

TEST_CASE("complexity subcommand reproduces the worked example") {
    const auto r = run_cli("complexity --alpha 0.5 --p 0.25 --delta 0.5 --eta 0.5 "
                           "--N 4 --k 1 --c0 0.25 --Ccon 1 --mode eN_over_k");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("log10_M = 23.004") != std::string::npos);
}

TEST_CASE("sample writes a CSV with the requested number of rows") {
    const auto dir = fs::temp_directory_path() / "rqip_cli_sample";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const auto r = run_cli("sample --alpha 0.5 --gamma 2 --n 100 --seed 9 --out " +
                           dir.string());
    CHECK(r.exit_code == 0);
    std::ifstream csv(dir / "sample.csv");
    REQUIRE(csv.good());
    std::string line;
    std::getline(csv, line);
    CHECK(line == "value");
    int rows = 0;
    while (std::getline(csv, line)) {
        if (!line.empty()) ++rows;
    }
    CHECK(rows == 100);
    fs::remove_all(dir);
}

TEST_CASE("rqip-check writes a parseable report") {
    const auto dir = fs::temp_directory_path() / "rqip_cli_report";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const auto r = run_cli("rqip-check --alpha 0.5 --gamma 1 --p 0.2 --delta 0.5 "
                           "--k 1 --N 6 --M 20000 --strategy brute_force_k1 --seed 3 --out " +
                           dir.string());
    CHECK(r.exit_code == 0);
    std::ifstream in(dir / "rqip_report.json");
    REQUIRE(in.good());
    const auto j = nlohmann::json::parse(in);
    CHECK(j["k"].get<int>() == 1);
    CHECK(j["N"].get<int>() == 6);
    CHECK(j["strategy"] == "brute_force_k1");
    CHECK(j["vectors_tested"].get<int>() == 6);
    fs::remove_all(dir);
}

TEST_CASE("net subcommand writes a net JSON") {
    const auto dir = fs::temp_directory_path() / "rqip_cli_net";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const auto r = run_cli("net --alpha 0.5 --eps 0.3 --k 1 --N 3 --target unit_sphere "
                           "--budget 2000 --verify 500 --seed 4 --out " +
                           dir.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("coverage = 1") != std::string::npos);
    std::ifstream in(dir / "net.json");
    REQUIRE(in.good());
    const auto j = nlohmann::json::parse(in);
    CHECK(j["k"].get<int>() == 1);
    CHECK(j["points"].size() == 6);  // {+-e_j : j < 3}
    fs::remove_all(dir);
}

TEST_CASE("study subcommand writes CSV and manifest") {
    const auto dir = fs::temp_directory_path() / "rqip_cli_study";
    fs::remove_all(dir);
    const auto r = run_cli("study --study moments --seed 12 --out " + dir.string());
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(dir / "moments.csv"));
    CHECK(fs::exists(dir / "moments_manifest.json"));
    fs::remove_all(dir);
}
