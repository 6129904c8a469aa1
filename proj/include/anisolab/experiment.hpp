#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "anisolab/config.hpp"
#include "anisolab/verify.hpp"

namespace anisolab {

struct RunArtifacts {
  std::filesystem::path out_dir;
  std::vector<BoundCheckReport> rows;
  std::vector<std::filesystem::path> files;  // everything listed in the manifest
  std::uint64_t config_hash = 0;
  bool all_passed = false;
  double wall_time_s = 0.0;
};

// Executes one recipe: solver runs + verification checks, norm-log CSVs,
// report CSV, one SVG decay plot per fitted curve, and a manifest binding
// the artifact hashes to the config hash.
RunArtifacts run_experiment(const ExperimentConfig& config,
                            const std::filesystem::path& out_dir);

struct SweepRow {
  std::string config_name;
  std::uint64_t config_hash = 0;
  bool run_ok = false;  // the run completed (rows may still have failures)
  std::string error;
  BoundCheckReport row;
};

// Runs every config with at most `workers` concurrent executions; each run
// owns out_root/<config name> exclusively. Row order follows config order.
std::vector<SweepRow> sweep(const std::vector<ExperimentConfig>& configs,
                            int workers,
                            const std::filesystem::path& out_root);

void write_report_csv(const std::filesystem::path& path,
                      const std::vector<BoundCheckReport>& rows);
void write_sweep_csv(const std::filesystem::path& path,
                     const std::vector<SweepRow>& rows);

// Verifies the per-file hashes recorded in a run manifest; returns the
// mismatched files (empty means intact). `artifact` may be the manifest
// file or the run directory.
std::vector<std::string> inspect_artifacts(const std::filesystem::path& artifact);

}  // namespace anisolab
