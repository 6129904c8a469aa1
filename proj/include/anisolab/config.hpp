#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace anisolab {

// Flat dotted-key experiment configuration: UTF-8 text, `key = value`
// lines, `#` comments. Lists are comma-separated.
struct ExperimentConfig {
  std::string name;  // file stem or caller-supplied label
  std::map<std::string, std::string> kv;

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;  // throws naming the key
  std::string get_string(const std::string& key, const std::string& dflt) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double dflt) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int dflt) const;
  std::vector<double> get_list(const std::string& key) const;
  std::vector<double> get_list(const std::string& key,
                               const std::vector<double>& dflt) const;
};

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& name);
ExperimentConfig parse_config_file(const std::filesystem::path& path);

// Hash of the canonical (sorted key=value) form.
std::uint64_t config_hash(const ExperimentConfig& config);

}  // namespace anisolab
