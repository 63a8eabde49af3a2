#include "spc/svg.hpp"

#include "spc/matrix_io.hpp"

#include <array>
#include <cstdio>

namespace spc {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 24.0;
constexpr double kRadius = 3.0;

constexpr std::array<const char*, 10> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace

std::string render_scatter_svg(const Dataset& x, const Partition& labels) {
  if (x.features() != 2) {
    throw Error("scatter plot needs 2-D data, got " + std::to_string(x.features()) + " features");
  }
  if (static_cast<Index>(labels.size()) != x.samples()) throw DimensionError("label count does not match samples");

  const Matrix& v = x.values();
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  if (x.samples() > 0) {
    xmin = v.row(0).minCoeff();
    xmax = v.row(0).maxCoeff();
    ymin = v.row(1).minCoeff();
    ymax = v.row(1).maxCoeff();
  }
  const double span_x = xmax > xmin ? xmax - xmin : 1.0;
  const double span_y = ymax > ymin ? ymax - ymin : 1.0;
  // One scale for both axes keeps the geometry undistorted.
  const double scale = std::min((kWidth - 2 * kMargin) / span_x, (kHeight - 2 * kMargin) / span_y);
  const double off_x = (kWidth - scale * span_x) / 2.0;
  const double off_y = (kHeight - scale * span_y) / 2.0;

  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
                kWidth, kHeight, kWidth, kHeight);
  out += buf;
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (Index i = 0; i < x.samples(); ++i) {
    const double px = off_x + (v(0, i) - xmin) * scale;
    const double py = kHeight - (off_y + (v(1, i) - ymin) * scale);
    const char* color = kPalette[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)]) % kPalette.size()];
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.1f\" fill=\"%s\"/>\n", px, py, kRadius,
                  color);
    out += buf;
  }
  out += "</svg>\n";
  return out;
}

void emit_scatter_svg(const Dataset& x, const Partition& labels, const std::filesystem::path& path) {
  write_file_atomic(path, render_scatter_svg(x, labels));
}

}  // namespace spc
