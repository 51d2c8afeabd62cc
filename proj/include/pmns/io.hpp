#pragma once
// Persistence: field/trajectory JSON files, report serialization, CSV
// emission, content digests, and the per-run manifest.  All output is
// deterministic: fixed key order, fixed column order, shortest round-trip
// number formatting, LF line endings.

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "pmns/analyticity.hpp"
#include "pmns/convsum.hpp"
#include "pmns/field.hpp"
#include "pmns/norms.hpp"
#include "pmns/solver.hpp"

namespace pmns {

using Json = nlohmann::ordered_json;

// Configuration / input errors that the CLI maps to exit code 1.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Field file: {"N": int, "flags": {"real_valued": bool, "div_free": bool},
// "modes": [[k1,k2,k3, re1,im1, re2,im2, re3,im3], ...]} with modes in
// lexicographic order and only nonzero coefficients stored.
Json field_to_json(const SpectralField& f);
SpectralField field_from_json(const Json& j);
void save_field(const SpectralField& f, const std::string& path);
SpectralField load_field(const std::string& path);

// Trajectory directory layout: grid + per-node field files referenced from a
// trajectory.json index.
void save_trajectory(const Trajectory& traj, const std::string& dir, const std::string& stem,
                     std::vector<std::string>* written = nullptr);
Trajectory load_trajectory(const std::string& index_path);

Json norm_report_to_json(const NormReport& r);
Json convergence_report_to_json(const ConvergenceReport& r);
Json region_sums_to_json(const RegionSums& r);

std::string radius_profile_csv(const RadiusProfile& p);
std::string lattice_sum_csv(const std::vector<LatticeSumRow>& rows);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// Per-run manifest: config echo, code version, command line, ISO timestamps,
// and an FNV-1a digest per input/output file.  Aside from the two timestamp
// fields the manifest is a pure function of config and inputs.
struct RunManifest {
    std::string command;
    Json config_echo;
    std::string started;  // ISO timestamp captured at command start
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
};
void write_manifest(const RunManifest& m, const std::string& out_dir);

std::string iso8601_now();

extern const char* kVersion;

}  // namespace pmns
