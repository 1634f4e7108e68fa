#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

// Command implementations behind the CLI front end. Each writes its CSV (plus
// a run manifest next to it) under opts.out and returns the summary JSON the
// CLI prints. Validation problems throw std::invalid_argument (exit 2),
// numerical failures std::runtime_error and friends (exit 3).
namespace radialgs_cli {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunOpts {
    std::string out = ".";
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double r_max = 1e3;
    double sample_dr = 0.0;
    int threads = 0;
    bool relaxed = false;  // admit sign-changing f (turnaround stops the shot)
};

nlohmann::json cmd_eval_family(const std::string& family,
                               const std::map<std::string, double>& params, double r_min,
                               double r_max, int points, const RunOpts& opts);

nlohmann::json cmd_shoot(const std::string& problem_path, double a, const RunOpts& opts);

nlohmann::json cmd_trace_curve(const std::string& problem_path, double a_min, double a_max,
                               int points, const std::vector<double>& lambda_queries,
                               const RunOpts& opts);

// Along a shot profile (problem mode) or a closed-form family profile.
nlohmann::json cmd_pohozaev_scan(const std::string& problem_path, double a,
                                 const RunOpts& opts);
nlohmann::json cmd_pohozaev_scan_family(const std::string& family,
                                        const std::map<std::string, double>& params,
                                        double r_min, double r_max, int points,
                                        const RunOpts& opts);

nlohmann::json cmd_bratu_count(const std::string& variant, double B, double n);

nlohmann::json cmd_transform(double n, double p, double alpha);

nlohmann::json cmd_solve_via_cov(const std::string& problem_path, double a, const RunOpts& opts);

}  // namespace radialgs_cli
