#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hproj::cli {

namespace {
const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}
}  // namespace

std::string svg_plot(const std::string& title, const std::string& xlabel, const std::vector<PlotSeries>& series) {
  const double W = 800, H = 500, L = 80, R = 20, T = 40, B = 60;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (auto [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (!(xmin < xmax)) {
    xmin = 0;
    xmax = 1;
  }
  if (!(ymin < ymax)) {
    ymin -= 1;
    ymax += 1;
  }
  auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title << "</text>\n";
  o << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
    << "\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  if (ymin < 0 && ymax > 0) {
    o << "<line x1=\"" << L << "\" y1=\"" << py(0) << "\" x2=\"" << W - R << "\" y2=\"" << py(0)
      << "\" stroke=\"#999\" stroke-dasharray=\"4 4\"/>\n";
  }
  o << "<text x=\"" << L << "\" y=\"" << H - B + 18 << "\" font-size=\"12\">" << fmt(xmin) << "</text>\n";
  o << "<text x=\"" << W - R << "\" y=\"" << H - B + 18 << "\" font-size=\"12\" text-anchor=\"end\">" << fmt(xmax)
    << "</text>\n";
  o << "<text x=\"" << L - 6 << "\" y=\"" << H - B << "\" font-size=\"12\" text-anchor=\"end\">" << fmt(ymin)
    << "</text>\n";
  o << "<text x=\"" << L - 6 << "\" y=\"" << T + 10 << "\" font-size=\"12\" text-anchor=\"end\">" << fmt(ymax)
    << "</text>\n";
  o << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 20 << "\" text-anchor=\"middle\" font-size=\"13\">"
    << xlabel << "</text>\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kColors[i % 4];
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1\" points=\"";
    for (auto [x, y] : series[i].points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      o << px(x) << ',' << py(y) << ' ';
    }
    o << "\"/>\n";
    o << "<text x=\"" << W - R - 4 << "\" y=\"" << T + 16 * (i + 1) << "\" text-anchor=\"end\" font-size=\"12\" fill=\""
      << color << "\">" << series[i].label << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace hproj::cli
