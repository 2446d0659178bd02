#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace recmean::cli {

namespace {

constexpr double kWidth = 480.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 60.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string scatter_svg(std::span<const ReplicateSummary> rows, std::string_view title) {
  double lo = 0.0;
  double hi = 1.0;
  if (!rows.empty()) {
    lo = hi = rows.front().na_at_horizon;
    for (const auto& r : rows) {
      lo = std::min({lo, r.na_at_horizon, r.proposed_at_horizon});
      hi = std::max({hi, r.na_at_horizon, r.proposed_at_horizon});
    }
  }
  const double pad = hi > lo ? 0.05 * (hi - lo) : 0.5;
  lo -= pad;
  hi += pad;
  const double plot = kWidth - 2 * kMargin;
  const auto sx = [&](double v) { return kMargin + (v - lo) / (hi - lo) * plot; };
  const auto sy = [&](double v) { return kHeight - kMargin - (v - lo) / (hi - lo) * plot; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
      << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(kHeight) << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"14\">" << escape(title) << "</text>\n";
  // Frame and identity line.
  svg << "<rect x=\"" << num(kMargin) << "\" y=\"" << num(kMargin) << "\" width=\"" << num(plot) << "\" height=\""
      << num(plot) << "\" fill=\"none\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << num(sx(lo)) << "\" y1=\"" << num(sy(lo)) << "\" x2=\"" << num(sx(hi)) << "\" y2=\""
      << num(sy(hi)) << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double v = lo + (hi - lo) * i / 4.0;
    svg << "<text x=\"" << num(sx(v)) << "\" y=\"" << num(kHeight - kMargin + 16)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << label(v) << "</text>\n";
    svg << "<text x=\"" << num(kMargin - 6) << "\" y=\"" << num(sy(v) + 3)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << label(v) << "</text>\n";
  }
  svg << "<text x=\"" << num(kWidth / 2) << "\" y=\"" << num(kHeight - 18)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">Nelson-Aalen mean</text>\n";
  svg << "<text x=\"16\" y=\"" << num(kHeight / 2) << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"12\" transform=\"rotate(-90 16 " << num(kHeight / 2) << ")\">Proposed mean</text>\n";
  for (const auto& r : rows) {
    svg << "<circle cx=\"" << num(sx(r.na_at_horizon)) << "\" cy=\"" << num(sy(r.proposed_at_horizon))
        << "\" r=\"3\" fill=\"steelblue\" fill-opacity=\"0.7\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace recmean::cli
