#pragma once
// Command implementations behind the CLI front end.  Exit-code contract:
// 0 success, 1 configuration/input error, 2 solver divergence.

#include <cstdint>
#include <optional>
#include <string>

#include "pmns/io.hpp"
#include "pmns/solver.hpp"

namespace pmns {

struct CliCommon {
    std::string out_dir = ".";
    std::optional<std::string> conv_path;   // overrides config when set
    int threads = 1;
    std::optional<std::uint64_t> seed;      // overrides config initial-data seed
};

// Parses the solve/gevrey config document.  Unknown keys anywhere are errors
// (fail-closed).  Returns the solver config, the initial datum, and the echo
// of the parsed document.
struct SolveSetup {
    SolverConfig cfg;
    SpectralField v0;
    Json echo;
    std::vector<std::string> input_files;  // referenced data files, for the manifest
};
SolveSetup parse_solve_config(const std::string& path, const CliCommon& common, bool weighted);

int cmd_solve(const std::string& config_path, const CliCommon& common);
int cmd_gevrey(const std::string& config_path, const CliCommon& common);
int cmd_verify_lemma(int K, const std::string& policy, const CliCommon& common);
int cmd_norms(const std::string& traj_path, const std::vector<double>& a_list, double mu,
              const std::string& rule, const CliCommon& common);
int cmd_radius(const std::string& traj_path, double mu, double alpha, double kappa,
               const CliCommon& common);

int run_cli(int argc, char** argv);

}  // namespace pmns
