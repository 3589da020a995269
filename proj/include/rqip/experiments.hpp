#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rqip/check.hpp"
#include "rqip/concentration.hpp"

namespace rqip {

// The three reproducible studies. Every cell derives its stream from
// (master_seed, study name, cell index) and every trial from (cell stream,
// trial index), so numeric output is bit-identical for a given master seed
// regardless of worker count.
enum class Study { moments, concentration, nets, rqip };

std::string to_string(Study s);
Study study_from_string(const std::string& name);

struct MomentStudyConfig {
    struct Cell {
        double alpha;
        double p;
        double gamma;
        int sparsity;  // 1 => e_1, otherwise a random sparsity-sparse vector
    };
    std::vector<Cell> cells{{0.5, 0.2, 1.0, 1},
                            {0.5, 0.2, 1.0, 3},
                            {0.7, 0.3, 2.0, 1},
                            {0.7, 0.3, 2.0, 3}};
    std::size_t rows = 1'000'000;  // M
    int dim = 8;                   // N
};

struct ConcentrationStudyConfig {
    struct Cell {
        double alpha;
        double p;
        double epsilon_factor;  // epsilon = factor * C_{alpha,p} * gamma^p
    };
    std::vector<Cell> cells{{0.5, 0.25, 0.2}};
    std::vector<std::uint64_t> m_grid{256, 512, 1024, 2048, 4096, 8192, 16384};
    std::uint64_t trials = 2000;
    double gamma = 1.0;
    double c0 = 0.25;
    double c_prime = 1.0;
    std::uint64_t tail_diagnostic_draws = 200'000;
};

struct NetStudyConfig {
    struct Cell {
        double alpha;
        int k;
        int dim;       // N
        double epsilon;
        std::size_t rows;  // M for the isometry check
        double delta;
        double p;
    };
    std::vector<Cell> cells{{0.5, 2, 5, 0.25, 20'000, 0.5, 0.2},
                            {0.5, 1, 8, 0.25, 100'000, 0.5, 0.2}};
    std::uint64_t budget = 20000;
    std::uint64_t verify_trials = 10'000;
    std::uint64_t direction_count = 2000;
    double eta = 0.5;
    double c0 = 0.25;
    double big_c_con = 1.0;
};

struct StudyConfig {
    Study study = Study::moments;
    std::uint64_t master_seed = 1;
    std::string output_dir;  // empty => no files written

    MomentStudyConfig moments;
    ConcentrationStudyConfig concentration;
    NetStudyConfig nets;
};

struct StudyResult {
    Study study;
    std::string csv;           // full CSV text, header included
    nlohmann::json manifest;   // seed, grids, fits, diagnostics, environment stamp
    std::string csv_path;      // empty when nothing was written
    std::string manifest_path;
    std::vector<std::string> svg_paths;
};

// CSV schema: alpha,p,gamma,M,empirical,closed_form,rel_err
StudyResult run_moment_study(const StudyConfig& cfg);

// CSV schema: alpha,p,epsilon,M,p_hat,std_err,bound_total,bound_hoeffding,bound_tail
StudyResult run_concentration_study(const StudyConfig& cfg);

// CSV schema: alpha,k,N,epsilon,net_size,cover_bound,coverage,max_deviation,
//             passed,log10_M_required,M_used
StudyResult run_net_and_rqip_study(const StudyConfig& cfg);

StudyResult run_study(const StudyConfig& cfg);

}  // namespace rqip
