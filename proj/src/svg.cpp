#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace anisolab {

void write_decay_plot(const std::filesystem::path& path,
                      const std::string& title, const std::vector<double>& t,
                      const std::vector<double>& value, double fitted_c,
                      double fitted_h) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] > 0.0 && value[i] > 0.0) {
      xs.push_back(std::log10(t[i]));
      ys.push_back(std::log10(value[i]));
    }
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write plot: " + path.string());
  const int W = 640, H = 480, ML = 70, MR = 20, MT = 40, MB = 50;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
      << "\" height=\"" << H << "\">\n";
  out << "<rect width=\"" << W << "\" height=\"" << H
      << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"15\">"
      << title << "</text>\n";

  if (xs.size() >= 2) {
    double x_lo = *std::min_element(xs.begin(), xs.end());
    double x_hi = *std::max_element(xs.begin(), xs.end());
    double y_lo = *std::min_element(ys.begin(), ys.end());
    double y_hi = *std::max_element(ys.begin(), ys.end());
    if (x_hi - x_lo < 1e-12) x_hi = x_lo + 1.0;
    if (y_hi - y_lo < 1e-12) y_hi = y_lo + 1.0;
    const auto px = [&](double x) {
      return ML + (x - x_lo) / (x_hi - x_lo) * (W - ML - MR);
    };
    const auto py = [&](double y) {
      return H - MB - (y - y_lo) / (y_hi - y_lo) * (H - MT - MB);
    };

    out << "<rect x=\"" << ML << "\" y=\"" << MT << "\" width=\""
        << W - ML - MR << "\" height=\"" << H - MT - MB
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%d\" y=\"%d\" font-family=\"sans-serif\" "
                  "font-size=\"12\">log10 t in [%.3g, %.3g]</text>\n",
                  ML, H - MB + 30, x_lo, x_hi);
    out << buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"8\" y=\"%d\" font-family=\"sans-serif\" "
                  "font-size=\"12\">log10 value in [%.3g, %.3g]</text>\n",
                  MT - 8, y_lo, y_hi);
    out << buf;

    if (fitted_c > 0.0) {
      const double fy0 = std::log10(fitted_c) - fitted_h * x_lo;
      const double fy1 = std::log10(fitted_c) - fitted_h * x_hi;
      std::snprintf(buf, sizeof(buf),
                    "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                    "stroke=\"#cc3333\" stroke-width=\"1.5\"/>\n",
                    px(x_lo), py(fy0), px(x_hi), py(fy1));
      out << buf;
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      std::snprintf(buf, sizeof(buf),
                    "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"2.2\" "
                    "fill=\"#3355bb\"/>\n",
                    px(xs[i]), py(ys[i]));
      out << buf;
    }
  } else {
    out << "<text x=\"" << W / 2 << "\" y=\"" << H / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\">no positive samples</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace anisolab
