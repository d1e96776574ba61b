#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace wgc {

// One row of a benchmark CSV, as plotted.
struct PlotPoint {
  std::string method;
  uint32_t param1 = 0;
  uint32_t param2 = 0;
  double bits_per_link = 0.0;
  double mean_us = 0.0;
};

// Reads a benchmark CSV (header included). Throws FormatError on a
// malformed header, a malformed row, or when no data rows are present.
std::vector<PlotPoint> read_bench_csv(std::istream& in);

struct AxisRange {
  double lo = 0.0;
  double hi = 1.0;
};

// Data extent widened by 5% on each side (degenerate extents get a
// nonzero pad so points never sit on the plot border).
AxisRange padded_range(double min_v, double max_v);

// SVG 1.1 scatter plot, bits/link on x and mean microseconds per query
// on y, one <circle> per point, labeled with its parameters and colored
// per method.
void write_scatter_svg(std::span<const PlotPoint> points, std::ostream& out);

}  // namespace wgc
