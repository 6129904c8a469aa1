#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace anisolab {

// Minimal self-contained SVG log-log decay plot: sample markers plus the
// fitted power-law line value = C * t^{-h}.
void write_decay_plot(const std::filesystem::path& path,
                      const std::string& title,
                      const std::vector<double>& t,
                      const std::vector<double>& value, double fitted_c,
                      double fitted_h);

}  // namespace anisolab
