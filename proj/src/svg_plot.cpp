#include "wgc/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "wgc/bench.hpp"
#include "wgc/codec.hpp"

namespace wgc {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

}  // namespace

std::vector<PlotPoint> read_bench_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kBenchCsvHeader)
    throw FormatError("unexpected CSV header: " + line);

  std::vector<PlotPoint> points;
  size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 8)
      throw FormatError("CSV row " + std::to_string(row) +
                        ": expected 8 fields");
    try {
      PlotPoint p;
      p.method = fields[0];
      p.param1 = static_cast<uint32_t>(std::stoul(fields[1]));
      p.param2 = static_cast<uint32_t>(std::stoul(fields[2]));
      p.bits_per_link = std::stod(fields[3]);
      p.mean_us = std::stod(fields[4]);
      points.push_back(std::move(p));
    } catch (const std::exception&) {
      throw FormatError("CSV row " + std::to_string(row) +
                        ": malformed field");
    }
  }
  if (points.empty()) throw FormatError("CSV has no data rows");
  return points;
}

AxisRange padded_range(double min_v, double max_v) {
  if (max_v < min_v) std::swap(min_v, max_v);
  double pad = (max_v - min_v) * 0.05;
  if (pad <= 0.0) pad = std::max(std::fabs(max_v), 1.0) * 0.05;
  return {min_v - pad, max_v + pad};
}

namespace {

constexpr double kWidth = 800, kHeight = 560;
constexpr double kLeft = 70, kRight = 770, kTop = 30, kBottom = 500;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b"};

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string point_label(const PlotPoint& p) {
  if (p.method == "lm") return "h=" + std::to_string(p.param1);
  if (p.method == "2d")
    return "B=" + std::to_string(p.param1) + " K=" + std::to_string(p.param2);
  return std::to_string(p.param1) + "/" + std::to_string(p.param2);
}

}  // namespace

void write_scatter_svg(std::span<const PlotPoint> points, std::ostream& out) {
  if (points.empty()) throw std::invalid_argument("nothing to plot");

  double x_min = points[0].bits_per_link, x_max = x_min;
  double y_min = points[0].mean_us, y_max = y_min;
  for (const auto& p : points) {
    x_min = std::min(x_min, p.bits_per_link);
    x_max = std::max(x_max, p.bits_per_link);
    y_min = std::min(y_min, p.mean_us);
    y_max = std::max(y_max, p.mean_us);
  }
  const AxisRange xr = padded_range(x_min, x_max);
  const AxisRange yr = padded_range(y_min, y_max);
  auto sx = [&](double v) {
    return kLeft + (v - xr.lo) / (xr.hi - xr.lo) * (kRight - kLeft);
  };
  auto sy = [&](double v) {
    return kBottom - (v - yr.lo) / (yr.hi - yr.lo) * (kBottom - kTop);
  };

  std::vector<std::string> methods;
  auto color_of = [&](const std::string& m) {
    for (size_t i = 0; i < methods.size(); ++i)
      if (methods[i] == m) return kPalette[i % 6];
    methods.push_back(m);
    return kPalette[(methods.size() - 1) % 6];
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
         "width=\""
      << kWidth << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth
      << " " << kHeight << "\">\n";
  out << "  <rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" fill=\"white\"/>\n";

  // axes and ticks
  out << "  <line x1=\"" << kLeft << "\" y1=\"" << kBottom << "\" x2=\""
      << kRight << "\" y2=\"" << kBottom
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "  <line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
      << "\" y2=\"" << kBottom << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  for (int t = 0; t <= 5; ++t) {
    const double fx = xr.lo + (xr.hi - xr.lo) * t / 5.0;
    const double fy = yr.lo + (yr.hi - yr.lo) * t / 5.0;
    out << "  <line x1=\"" << sx(fx) << "\" y1=\"" << kBottom << "\" x2=\""
        << sx(fx) << "\" y2=\"" << kBottom + 5
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "  <text x=\"" << sx(fx) << "\" y=\"" << kBottom + 20
        << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt(fx)
        << "</text>\n";
    out << "  <line x1=\"" << kLeft - 5 << "\" y1=\"" << sy(fy) << "\" x2=\""
        << kLeft << "\" y2=\"" << sy(fy)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "  <text x=\"" << kLeft - 8 << "\" y=\"" << sy(fy) + 4
        << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(fy)
        << "</text>\n";
  }
  out << "  <text x=\"" << (kLeft + kRight) / 2 << "\" y=\"" << kBottom + 40
      << "\" font-size=\"13\" text-anchor=\"middle\">bits per link</text>\n";
  out << "  <text x=\"18\" y=\"" << (kTop + kBottom) / 2
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 "
         "18 "
      << (kTop + kBottom) / 2 << ")\">microseconds per query</text>\n";

  for (const auto& p : points) {
    const char* color = color_of(p.method);
    out << "  <circle cx=\"" << sx(p.bits_per_link) << "\" cy=\""
        << sy(p.mean_us) << "\" r=\"4\" fill=\"" << color << "\"/>\n";
    out << "  <text x=\"" << sx(p.bits_per_link) + 6 << "\" y=\""
        << sy(p.mean_us) - 6 << "\" font-size=\"10\" fill=\"" << color << "\">"
        << point_label(p) << "</text>\n";
  }

  // legend
  for (size_t i = 0; i < methods.size(); ++i) {
    const double ly = kTop + 10 + 18 * static_cast<double>(i);
    out << "  <rect x=\"" << kRight - 90 << "\" y=\"" << ly - 9
        << "\" width=\"10\" height=\"10\" fill=\"" << kPalette[i % 6]
        << "\"/>\n";
    out << "  <text x=\"" << kRight - 74 << "\" y=\"" << ly
        << "\" font-size=\"12\">" << methods[i] << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace wgc
