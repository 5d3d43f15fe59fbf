#include "nlfp/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace nlfp {
namespace {

constexpr double kWidth = 640.0, kHeight = 440.0;
constexpr double kLeft = 70.0, kRight = 20.0, kTop = 40.0, kBottom = 50.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

}  // namespace

void write_svg_lineplot(const std::string& path, const std::vector<PlotSeries>& series,
                        const PlotOptions& options) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      double x = s.x[i], y = s.y[i];
      if (options.log_x && !(x > 0.0)) continue;
      if (options.log_y && !(y > 0.0)) continue;
      if (options.log_x) x = std::log10(x);
      if (options.log_y) y = std::log10(y);
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (xmin > xmax || ymin > ymax) {
    xmin = ymin = 0.0;
    xmax = ymax = 1.0;
  }
  if (xmax - xmin < 1e-12) xmax = xmin + 1.0;
  if (ymax - ymin < 1e-12) ymax = ymin + 1.0;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * plot_w; };
  auto py = [&](double y) { return kTop + plot_h - (y - ymin) / (ymax - ymin) * plot_h; };

  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::ios_base::failure("write_svg_lineplot: cannot open " + path);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
     << options.title << "</text>\n";

  // Frame and ticks.
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\""
     << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
  const int n_ticks = 5;
  for (int i = 0; i <= n_ticks; ++i) {
    const double tx = xmin + (xmax - xmin) * i / n_ticks;
    const double ty = ymin + (ymax - ymin) * i / n_ticks;
    const double X = px(tx), Y = py(ty);
    os << "<line x1=\"" << X << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << X << "\" y2=\""
       << kTop + plot_h + 5 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << X << "\" y=\"" << kTop + plot_h + 18
       << "\" text-anchor=\"middle\" font-size=\"11\">"
       << (options.log_x ? "1e" + fmt(tx) : fmt(tx)) << "</text>\n";
    os << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << Y << "\" x2=\"" << kLeft << "\" y2=\"" << Y
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << kLeft - 8 << "\" y=\"" << Y + 4
       << "\" text-anchor=\"end\" font-size=\"11\">" << (options.log_y ? "1e" + fmt(ty) : fmt(ty))
       << "</text>\n";
  }
  os << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 8
     << "\" text-anchor=\"middle\" font-size=\"13\">" << options.x_label << "</text>\n";
  os << "<text x=\"16\" y=\"" << kTop + plot_h / 2
     << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
     << kTop + plot_h / 2 << ")\">" << options.y_label << "</text>\n";

  int color = 0;
  double legend_y = kTop + 14.0;
  for (const auto& s : series) {
    os << "<polyline fill=\"none\" stroke=\"" << kPalette[color % 6]
       << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      double x = s.x[i], y = s.y[i];
      if (options.log_x) {
        if (!(x > 0.0)) continue;
        x = std::log10(x);
      }
      if (options.log_y) {
        if (!(y > 0.0)) continue;
        y = std::log10(y);
      }
      os << px(x) << "," << py(y) << " ";
    }
    os << "\"/>\n";
    if (!s.label.empty()) {
      os << "<text x=\"" << kLeft + plot_w - 6 << "\" y=\"" << legend_y
         << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << kPalette[color % 6] << "\">"
         << s.label << "</text>\n";
      legend_y += 14.0;
    }
    ++color;
  }
  os << "</svg>\n";
}

}  // namespace nlfp
