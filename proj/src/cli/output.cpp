#include "oamq/cli/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "oamq/errors.hpp"

namespace oamq::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

std::string format_optional(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot write " + path);
  os << contents;
  if (!os) throw InputError("write failed for " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("cannot read " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

void write_pgm16(const std::string& path, int width, int height, std::span<const double> values,
                 double scale_max) {
  if (values.size() != static_cast<std::size_t>(width) * height) {
    throw InputError("write_pgm16: value count does not match image size");
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot write " + path);
  os << "P5\n" << width << ' ' << height << "\n65535\n";
  std::vector<unsigned char> bytes;
  bytes.reserve(values.size() * 2);
  // PGM rows run top to bottom; the field's row index y grows upward.
  for (int row = height - 1; row >= 0; --row) {
    for (int col = 0; col < width; ++col) {
      const double v = values[static_cast<std::size_t>(row) * width + col];
      const double s = scale_max > 0.0 ? std::clamp(v / scale_max, 0.0, 1.0) : 0.0;
      const auto q = static_cast<unsigned>(std::lround(s * 65535.0));
      bytes.push_back(static_cast<unsigned char>(q >> 8));
      bytes.push_back(static_cast<unsigned char>(q & 0xff));
    }
  }
  os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 150, kTop = 40, kBottom = 55;
const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

double nice_step(double span) {
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / mag;
  return (f < 1.5 ? 1.0 : f < 3.0 ? 2.0 : f < 7.0 ? 5.0 : 10.0) * mag;
}

struct Axes {
  double x0, x1, y0, y1;
  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
  double py(double y) const { return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom); }
};

void draw_frame(std::ostringstream& os, const PlotSpec& spec, const Axes& ax, bool x_ticks) {
  os << "<rect x=\"" << fixed2(kLeft) << "\" y=\"" << fixed2(kTop) << "\" width=\""
     << fixed2(kWidth - kLeft - kRight) << "\" height=\"" << fixed2(kHeight - kTop - kBottom)
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << fixed2(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
     << escape(spec.title) << "</text>\n";
  os << "<text x=\"" << fixed2(kLeft + (kWidth - kLeft - kRight) / 2) << "\" y=\"" << fixed2(kHeight - 12)
     << "\" text-anchor=\"middle\" font-size=\"13\">" << escape(spec.x_label) << "</text>\n";
  os << "<text x=\"16\" y=\"" << fixed2(kTop + (kHeight - kTop - kBottom) / 2)
     << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
     << fixed2(kTop + (kHeight - kTop - kBottom) / 2) << ")\">" << escape(spec.y_label) << "</text>\n";
  const double ys = nice_step(ax.y1 - ax.y0);
  for (double y = std::ceil(ax.y0 / ys - 1e-9) * ys; y <= ax.y1 + 1e-9 * ys; y += ys) {
    os << "<line x1=\"" << fixed2(kLeft - 4) << "\" x2=\"" << fixed2(kLeft) << "\" y1=\"" << fixed2(ax.py(y))
       << "\" y2=\"" << fixed2(ax.py(y)) << "\" stroke=\"black\"/>"
       << "<text x=\"" << fixed2(kLeft - 7) << "\" y=\"" << fixed2(ax.py(y) + 4)
       << "\" text-anchor=\"end\" font-size=\"11\">" << format_number(std::abs(y) < 1e-12 ? 0.0 : y)
       << "</text>\n";
  }
  if (!x_ticks) return;
  const double xs = nice_step(ax.x1 - ax.x0);
  for (double x = std::ceil(ax.x0 / xs - 1e-9) * xs; x <= ax.x1 + 1e-9 * xs; x += xs) {
    os << "<line x1=\"" << fixed2(ax.px(x)) << "\" x2=\"" << fixed2(ax.px(x)) << "\" y1=\""
       << fixed2(kHeight - kBottom) << "\" y2=\"" << fixed2(kHeight - kBottom + 4) << "\" stroke=\"black\"/>"
       << "<text x=\"" << fixed2(ax.px(x)) << "\" y=\"" << fixed2(kHeight - kBottom + 17)
       << "\" text-anchor=\"middle\" font-size=\"11\">" << format_number(std::abs(x) < 1e-12 ? 0.0 : x)
       << "</text>\n";
  }
}

std::string header() {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return os.str();
}

}  // namespace

std::string svg_line_plot(const PlotSpec& spec, const std::vector<Series>& series) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (std::isnan(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (spec.y_min) y0 = *spec.y_min;
  if (spec.y_max) y1 = *spec.y_max;
  if (x1 <= x0) x1 = x0 + 1;
  if (y1 <= y0) y1 = y0 + 1;
  const Axes ax{x0, x1, y0, y1};

  std::ostringstream os;
  os << header();
  draw_frame(os, spec, ax, true);
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % std::size(kPalette)];
    const auto& sr = series[s];
    std::string points;
    auto flush = [&] {
      if (!points.empty()) {
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\" points=\"" << points
           << "\"/>\n";
      }
      points.clear();
    };
    for (std::size_t i = 0; i < sr.x.size(); ++i) {
      if (std::isnan(sr.y[i])) {
        flush();
        continue;
      }
      points += (points.empty() ? "" : " ") + fixed2(ax.px(sr.x[i])) + "," + fixed2(ax.py(sr.y[i]));
      if (sr.markers) {
        os << "<circle cx=\"" << fixed2(ax.px(sr.x[i])) << "\" cy=\"" << fixed2(ax.py(sr.y[i]))
           << "\" r=\"2.5\" fill=\"none\" stroke=\"" << color << "\"/>\n";
      }
    }
    flush();
    const double ly = kTop + 14 + 18.0 * s;
    os << "<line x1=\"" << fixed2(kWidth - kRight + 12) << "\" x2=\"" << fixed2(kWidth - kRight + 34)
       << "\" y1=\"" << fixed2(ly) << "\" y2=\"" << fixed2(ly) << "\" stroke=\"" << color
       << "\" stroke-width=\"2\"/><text x=\"" << fixed2(kWidth - kRight + 40) << "\" y=\"" << fixed2(ly + 4)
       << "\" font-size=\"12\">" << escape(sr.name) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string svg_bar_chart(const PlotSpec& spec, const std::vector<int>& categories,
                          const std::vector<double>& values) {
  double y1 = spec.y_max.value_or(0.0);
  for (double v : values) y1 = std::max(y1, v);
  if (y1 <= 0.0) y1 = 1.0;
  const double lo = categories.empty() ? 0.0 : categories.front() - 0.5;
  const double hi = categories.empty() ? 1.0 : categories.back() + 0.5;
  const Axes ax{lo, hi, spec.y_min.value_or(0.0), y1};

  std::ostringstream os;
  os << header();
  draw_frame(os, spec, ax, false);
  const double bar = 0.6 * (ax.px(1.0) - ax.px(0.0));
  for (std::size_t i = 0; i < categories.size(); ++i) {
    const double cx = ax.px(categories[i]);
    const double top = ax.py(std::max(values[i], ax.y0));
    os << "<rect x=\"" << fixed2(cx - bar / 2) << "\" y=\"" << fixed2(top) << "\" width=\"" << fixed2(bar)
       << "\" height=\"" << fixed2(ax.py(ax.y0) - top) << "\" fill=\"" << kPalette[0] << "\"/>"
       << "<text x=\"" << fixed2(cx) << "\" y=\"" << fixed2(kHeight - kBottom + 17)
       << "\" text-anchor=\"middle\" font-size=\"11\">" << categories[i] << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace oamq::cli
