#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace oamq::cli {

// Six significant digits, "-0" folded to "0". Never locale dependent.
std::string format_number(double v);
std::string format_optional(const std::optional<double>& v);

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

// Binary PGM (P5), 16-bit big-endian. Values are mapped linearly so that
// scale_max becomes 65535; the same scale_max gives a shared gray scale.
void write_pgm16(const std::string& path, int width, int height, std::span<const double> values,
                 double scale_max);

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;  // NaN entries break the polyline
  bool markers = false;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::optional<double> y_min;
  std::optional<double> y_max;
};

std::string svg_line_plot(const PlotSpec& spec, const std::vector<Series>& series);
std::string svg_bar_chart(const PlotSpec& spec, const std::vector<int>& categories,
                          const std::vector<double>& values);

}  // namespace oamq::cli
