#include "anisolab/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "anisolab/serialize.hpp"

namespace anisolab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (v == "inf" || v == "infinity")
    return std::numeric_limits<double>::infinity();
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return x;
  } catch (...) {
    throw std::invalid_argument("config: key '" + key +
                                "' has a non-numeric value '" + v + "'");
  }
}

}  // namespace

bool ExperimentConfig::has(const std::string& key) const {
  return kv.count(key) > 0;
}

std::string ExperimentConfig::get_string(const std::string& key) const {
  const auto it = kv.find(key);
  if (it == kv.end())
    throw std::invalid_argument("config: missing required key '" + key + "'");
  return it->second;
}

std::string ExperimentConfig::get_string(const std::string& key,
                                         const std::string& dflt) const {
  const auto it = kv.find(key);
  return it == kv.end() ? dflt : it->second;
}

double ExperimentConfig::get_double(const std::string& key) const {
  return parse_double(key, get_string(key));
}

double ExperimentConfig::get_double(const std::string& key, double dflt) const {
  const auto it = kv.find(key);
  return it == kv.end() ? dflt : parse_double(key, it->second);
}

int ExperimentConfig::get_int(const std::string& key) const {
  const double x = get_double(key);
  if (x != std::floor(x))
    throw std::invalid_argument("config: key '" + key + "' is not an integer");
  return static_cast<int>(x);
}

int ExperimentConfig::get_int(const std::string& key, int dflt) const {
  return has(key) ? get_int(key) : dflt;
}

std::vector<double> ExperimentConfig::get_list(const std::string& key) const {
  const std::string raw = get_string(key);
  std::vector<double> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (trim(item).empty()) continue;
    out.push_back(parse_double(key, item));
  }
  if (out.empty())
    throw std::invalid_argument("config: key '" + key + "' has an empty list");
  return out;
}

std::vector<double> ExperimentConfig::get_list(
    const std::string& key, const std::vector<double>& dflt) const {
  return has(key) ? get_list(key) : dflt;
}

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& name) {
  ExperimentConfig config;
  config.name = name;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config " + name + " line " +
                                  std::to_string(line_no) +
                                  ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config " + name + " line " +
                                  std::to_string(line_no) + ": empty key");
    config.kv[key] = value;
  }
  return config;
}

ExperimentConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("config: cannot open file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path.stem().string());
}

std::uint64_t config_hash(const ExperimentConfig& config) {
  std::string canon;
  for (const auto& [k, v] : config.kv) {
    canon += k;
    canon += '=';
    canon += v;
    canon += '\n';
  }
  return fnv1a(canon.data(), canon.size());
}

}  // namespace anisolab
