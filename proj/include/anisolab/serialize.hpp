#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "anisolab/grid.hpp"
#include "anisolab/parabolic.hpp"

namespace anisolab {

// FNV-1a 64-bit; the artifact-integrity and problem-identity hash.
std::uint64_t fnv1a(const void* data, std::size_t n,
                    std::uint64_t h = 1469598103934665603ull);
std::uint64_t hash_file(const std::filesystem::path& path);
std::string hash_hex(std::uint64_t h);

std::uint64_t problem_hash(const ProblemSpec& problem);

// Field file format "anisofield 1": text header (n_dims, resolution,
// extents) followed by one value per line in lexicographic node order,
// printed with 17 significant digits (exact double round trip).
void save_field(const std::filesystem::path& path, const Field& field);
Field load_field(const std::filesystem::path& path);

// Trajectory directory: states at the recorded instants plus an index file
// carrying the problem hash and the instants. Norm logs are recomputed on
// load (states round-trip exactly).
void save_trajectory(const std::filesystem::path& dir, const Trajectory& traj);
Trajectory load_trajectory(const std::filesystem::path& dir,
                           const ProblemSpec& problem);

// Checkpoint = last state + manifest (problem hash, last time, step count).
void write_checkpoint(const std::filesystem::path& dir, const Trajectory& traj);
Trajectory resume_from_checkpoint(const ProblemSpec& problem,
                                  const std::filesystem::path& dir);

}  // namespace anisolab
