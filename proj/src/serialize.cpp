#include "anisolab/serialize.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace anisolab {

namespace fs = std::filesystem;

std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t h) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= bytes[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t hash_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file for hashing: " + path.string());
  std::uint64_t h = 1469598103934665603ull;
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0)
    h = fnv1a(buf, static_cast<std::size_t>(in.gcount()), h);
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

namespace {

std::uint64_t hash_doubles(std::span<const double> v, std::uint64_t h) {
  return fnv1a(v.data(), v.size() * sizeof(double), h);
}

std::uint64_t hash_double(double x, std::uint64_t h) {
  return fnv1a(&x, sizeof(x), h);
}

std::uint64_t hash_field(const Field& f, std::uint64_t h) {
  return hash_doubles(f.values, h);
}

}  // namespace

std::uint64_t problem_hash(const ProblemSpec& p) {
  std::uint64_t h = 1469598103934665603ull;
  h = hash_double(p.grid.n_dims, h);
  for (int d = 0; d < p.grid.n_dims; ++d) {
    h = hash_double(p.grid.extents[d], h);
    h = hash_double(p.grid.resolution[d], h);
  }
  h = hash_doubles(p.exponents.p, h);
  h = hash_double(static_cast<double>(p.flux.kind), h);
  h = hash_double(p.flux.epsilon, h);
  h = hash_double(p.flux.h_level, h);
  if (p.flux.h_field) h = hash_field(*p.flux.h_field, h);
  h = hash_field(p.initial, h);
  if (const auto* f = std::get_if<Field>(&p.forcing)) {
    h = hash_field(*f, h);
  } else {
    const auto& ts = std::get<TimeSampledForcing>(p.forcing);
    h = hash_doubles(ts.times, h);
    for (const auto& f : ts.fields) h = hash_field(f, h);
  }
  h = hash_double(p.t_final, h);
  h = hash_double(p.dt, h);
  h = hash_double(p.newton_tol, h);
  h = hash_double(p.newton_max_iters, h);
  h = hash_double(p.record_every, h);
  return h;
}

void save_field(const fs::path& path, const Field& field) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write field file: " + path.string());
  const Grid& g = field.grid;
  out << "anisofield 1\n" << g.n_dims << "\n";
  for (int d = 0; d < g.n_dims; ++d)
    out << g.resolution[d] << (d + 1 < g.n_dims ? ' ' : '\n');
  char buf[40];
  for (int d = 0; d < g.n_dims; ++d) {
    std::snprintf(buf, sizeof(buf), "%.17g", g.extents[d]);
    out << buf << (d + 1 < g.n_dims ? ' ' : '\n');
  }
  for (double v : field.values) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf << '\n';
  }
  if (!out) throw std::runtime_error("failed writing field file: " + path.string());
}

Field load_field(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open field file: " + path.string());
  std::string magic;
  int version = 0;
  in >> magic >> version;
  if (magic != "anisofield" || version != 1)
    throw std::runtime_error("not an anisofield file: " + path.string());
  int n_dims = 0;
  in >> n_dims;
  if (n_dims != 2 && n_dims != 3)
    throw std::runtime_error("bad dimension in field file: " + path.string());
  std::vector<int> resolution(n_dims);
  for (int d = 0; d < n_dims; ++d) in >> resolution[d];
  std::vector<double> extents(n_dims);
  for (int d = 0; d < n_dims; ++d) in >> extents[d];
  Field f(make_grid(extents, resolution));
  for (auto& v : f.values) in >> v;
  if (!in) throw std::runtime_error("truncated field file: " + path.string());
  return f;
}

void save_trajectory(const fs::path& dir, const Trajectory& traj) {
  fs::create_directories(dir);
  std::ofstream idx(dir / "trajectory.txt");
  if (!idx) throw std::runtime_error("cannot write trajectory index");
  idx << "anisotraj 1\n";
  idx << "problem_hash " << hash_hex(problem_hash(*traj.problem)) << "\n";
  idx << "count " << traj.times.size() << "\n";
  char buf[40];
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", traj.times[i]);
    idx << "t " << buf << "\n";
    char name[32];
    std::snprintf(name, sizeof(name), "state_%05zu.af", i);
    save_field(dir / name, traj.states[i]);
  }
}

Trajectory load_trajectory(const fs::path& dir, const ProblemSpec& problem) {
  std::ifstream idx(dir / "trajectory.txt");
  if (!idx) throw std::runtime_error("cannot open trajectory index");
  std::string magic;
  int version = 0;
  idx >> magic >> version;
  if (magic != "anisotraj" || version != 1)
    throw std::runtime_error("not a trajectory directory: " + dir.string());
  std::string key, stored_hash;
  idx >> key >> stored_hash;
  if (key != "problem_hash")
    throw std::runtime_error("malformed trajectory index");
  if (stored_hash != hash_hex(problem_hash(problem)))
    throw std::runtime_error(
        "trajectory was produced by a different problem (hash mismatch)");
  std::size_t count = 0;
  idx >> key >> count;
  Trajectory traj;
  traj.problem = std::make_shared<const ProblemSpec>(problem);
  for (std::size_t i = 0; i < count; ++i) {
    double t = 0;
    idx >> key >> t;
    traj.times.push_back(t);
    char name[32];
    std::snprintf(name, sizeof(name), "state_%05zu.af", i);
    traj.states.push_back(load_field(dir / name));
    NormRecord r;
    r.t = t;
    r.l1 = norm(traj.states.back(), 1.0);
    r.l2 = norm(traj.states.back(), 2.0);
    r.sup = norm(traj.states.back(), INFINITY);
    r.energy = anisotropic_energy(traj.states.back(), problem.exponents);
    traj.norm_log.push_back(r);
  }
  if (!idx) throw std::runtime_error("truncated trajectory index");
  return traj;
}

void write_checkpoint(const fs::path& dir, const Trajectory& traj) {
  fs::create_directories(dir);
  const auto& p = *traj.problem;
  const double t_last = traj.times.back();
  const auto step = static_cast<std::int64_t>(std::llround(t_last / p.dt));
  save_field(dir / "state.af", traj.states.back());
  std::ofstream out(dir / "checkpoint.txt");
  if (!out) throw std::runtime_error("cannot write checkpoint manifest");
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", t_last);
  out << "anisockpt 1\n"
      << "problem_hash " << hash_hex(problem_hash(p)) << "\n"
      << "time " << buf << "\n"
      << "step " << step << "\n";
}

Trajectory resume_from_checkpoint(const ProblemSpec& problem,
                                  const fs::path& dir) {
  std::ifstream in(dir / "checkpoint.txt");
  if (!in) throw std::runtime_error("cannot open checkpoint manifest");
  std::string magic, key, stored_hash;
  int version = 0;
  in >> magic >> version;
  if (magic != "anisockpt" || version != 1)
    throw std::runtime_error("not a checkpoint directory: " + dir.string());
  in >> key >> stored_hash;
  if (stored_hash != hash_hex(problem_hash(problem)))
    throw std::runtime_error(
        "checkpoint was produced by a different problem (hash mismatch)");
  double t_last = 0;
  std::int64_t step = 0;
  in >> key >> t_last >> key >> step;
  if (!in) throw std::runtime_error("truncated checkpoint manifest");
  const Field state = load_field(dir / "state.af");
  return solve_parabolic_from(problem, state, step);
}

}  // namespace anisolab
