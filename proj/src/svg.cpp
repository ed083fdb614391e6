#include "agency/svg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace agency::svg {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 60.0, kRight = 140.0, kTop = 40.0, kBottom = 50.0;
constexpr const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
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

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

void open_document(std::ostringstream& os, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
     << "</text>\n";
}

void axes(std::ostringstream& os, double y_min, double y_max) {
  const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
  os << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1 << "\" y2=\"" << y0 << "\" stroke=\"black\"/>\n"
     << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 << "\" y2=\"" << y1 << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double v = y_min + (y_max - y_min) * k / 4.0;
    const double y = y0 - (y0 - y1) * k / 4.0;
    os << "<text x=\"" << x0 - 6 << "\" y=\"" << px(y + 4) << "\" text-anchor=\"end\">" << fmt(v) << "</text>\n";
  }
}

}  // namespace

std::string line_chart(const std::string& title, const std::string& x_label, std::span<const Series> series,
                       std::size_t max_points) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  std::size_t n = 0;
  for (const auto& s : series) {
    n = std::max(n, s.y.size());
    for (double v : s.y) {
      if (std::isfinite(v)) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
  }
  if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
  if (hi - lo < 1e-12) hi = lo + 1.0;
  lo = std::min(lo, 0.0);

  std::ostringstream os;
  open_document(os, title);
  axes(os, lo, hi);
  const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
  os << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">" << escape(x_label)
     << " (0.." << (n ? n - 1 : 0) << ")</text>\n";
  const std::size_t stride = std::max<std::size_t>(1, (n + max_points - 1) / std::max<std::size_t>(1, max_points));
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* colour = kPalette[k % std::size(kPalette)];
    os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < s.y.size(); i += stride) {
      const double x = x0 + (x1 - x0) * (n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0);
      const double y = y0 - (y0 - y1) * (s.y[i] - lo) / (hi - lo);
      os << px(x) << ',' << px(y) << ' ';
    }
    os << "\"/>\n";
    os << "<text x=\"" << x1 + 10 << "\" y=\"" << y1 + 16 * (k + 1) << "\" fill=\"" << colour << "\">"
       << escape(s.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string bar_chart(const std::string& title, std::span<const std::string> labels, std::span<const double> values) {
  double hi = 0.0;
  for (double v : values) {
    if (std::isfinite(v)) hi = std::max(hi, v);
  }
  if (hi <= 0.0) hi = 1.0;

  std::ostringstream os;
  open_document(os, title);
  axes(os, 0.0, hi);
  const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
  const double slot = (x1 - x0) / static_cast<double>(std::max<std::size_t>(1, values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = std::isfinite(values[i]) ? std::max(0.0, values[i]) : 0.0;
    const double h = (y0 - y1) * v / hi;
    const double x = x0 + slot * static_cast<double>(i) + slot * 0.15;
    os << "<rect x=\"" << px(x) << "\" y=\"" << px(y0 - h) << "\" width=\"" << px(slot * 0.7) << "\" height=\""
       << px(h) << "\" fill=\"" << kPalette[i % std::size(kPalette)] << "\"/>\n";
    os << "<text x=\"" << px(x + slot * 0.35) << "\" y=\"" << px(y0 + 16) << "\" text-anchor=\"middle\">"
       << escape(i < labels.size() ? labels[i] : std::to_string(i)) << "</text>\n";
    os << "<text x=\"" << px(x + slot * 0.35) << "\" y=\"" << px(y0 - h - 4) << "\" text-anchor=\"middle\">"
       << fmt(values[i]) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace agency::svg
