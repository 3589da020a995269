#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <doctest.h>

#include "rqip/errors.hpp"
#include "rqip/experiments.hpp"

using namespace rqip;

namespace {

StudyConfig small_config(Study study) {
    StudyConfig cfg;
    cfg.study = study;
    cfg.master_seed = 42;
    cfg.moments.rows = 20'000;
    cfg.concentration.m_grid = {64, 128, 256, 512};
    cfg.concentration.trials = 200;
    cfg.concentration.tail_diagnostic_draws = 20'000;
    cfg.nets.cells = {{0.5, 1, 4, 0.25, 5'000, 0.5, 0.2}};
    cfg.nets.verify_trials = 500;
    cfg.nets.direction_count = 200;
    return cfg;
}

std::string first_line(const std::string& text) {
    return text.substr(0, text.find('\n'));
}

}  // namespace

TEST_CASE("study names round-trip") {
    for (auto s : {Study::moments, Study::concentration, Study::nets, Study::rqip}) {
        CHECK(study_from_string(to_string(s)) == s);
    }
    CHECK_THROWS_AS(study_from_string("benchmarks"), DomainError);
}

TEST_CASE("CSV schemas match the documented headers") {
    CHECK(first_line(run_moment_study(small_config(Study::moments)).csv) ==
          "alpha,p,gamma,M,empirical,closed_form,rel_err");
    CHECK(first_line(run_concentration_study(small_config(Study::concentration)).csv) ==
          "alpha,p,epsilon,M,p_hat,std_err,bound_total,bound_hoeffding,bound_tail");
    CHECK(first_line(run_net_and_rqip_study(small_config(Study::nets)).csv) ==
          "alpha,k,N,epsilon,net_size,cover_bound,coverage,max_deviation,passed,"
          "log10_M_required,M_used");
}

TEST_CASE("run_study dispatches on the study field") {
    auto cfg = small_config(Study::moments);
    CHECK(run_study(cfg).study == Study::moments);
    cfg.study = Study::rqip;  // alias for the combined net + isometry study
    CHECK(first_line(run_study(cfg).csv) ==
          first_line(run_net_and_rqip_study(cfg).csv));
}

TEST_CASE("empty grids are rejected") {
    auto cfg = small_config(Study::moments);
    cfg.moments.cells.clear();
    CHECK_THROWS_AS(run_moment_study(cfg), DomainError);
    cfg = small_config(Study::concentration);
    cfg.concentration.m_grid.clear();
    CHECK_THROWS_AS(run_concentration_study(cfg), DomainError);
    cfg = small_config(Study::nets);
    cfg.nets.cells.clear();
    CHECK_THROWS_AS(run_net_and_rqip_study(cfg), DomainError);
}

TEST_CASE("study output is bit-identical across worker counts") {
    for (auto study : {Study::moments, Study::concentration, Study::nets}) {
        auto cfg = small_config(study);
        setenv("RQIP_THREADS", "1", 1);
        const auto serial = run_study(cfg);
        setenv("RQIP_THREADS", "8", 1);
        const auto parallel = run_study(cfg);
        unsetenv("RQIP_THREADS");
        CAPTURE(to_string(study));
        CHECK(serial.csv == parallel.csv);
    }
}

TEST_CASE("study output is bit-identical across repeat runs, distinct across seeds") {
    auto cfg = small_config(Study::moments);
    const auto a = run_study(cfg);
    const auto b = run_study(cfg);
    CHECK(a.csv == b.csv);
    cfg.master_seed = 43;
    CHECK(run_study(cfg).csv != a.csv);
}

TEST_CASE("manifest records seed and study, artifacts land in output_dir") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "rqip_test_experiments";
    fs::remove_all(dir);
    auto cfg = small_config(Study::concentration);
    cfg.output_dir = dir.string();
    const auto result = run_study(cfg);
    CHECK(result.manifest["environment"]["master_seed"].get<std::uint64_t>() == 42);
    CHECK(result.manifest["study"] == "concentration");
    CHECK(fs::exists(result.csv_path));
    CHECK(fs::exists(result.manifest_path));
    REQUIRE(!result.svg_paths.empty());
    for (const auto& p : result.svg_paths) CHECK(fs::exists(p));
    std::ifstream csv(result.csv_path);
    std::string on_disk((std::istreambuf_iterator<char>(csv)),
                        std::istreambuf_iterator<char>());
    CHECK(on_disk == result.csv);
    fs::remove_all(dir);
}
