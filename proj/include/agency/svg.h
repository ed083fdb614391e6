#pragma once

// Minimal self-contained SVG charts (no external fonts, styles or scripts).

#include <span>
#include <string>
#include <vector>

namespace agency::svg {

struct Series {
  std::string label;
  std::vector<double> y;
};

// Series share the x axis 0..n-1; long series are decimated to at most `max_points` vertices.
std::string line_chart(const std::string& title, const std::string& x_label, std::span<const Series> series,
                       std::size_t max_points = 2000);

std::string bar_chart(const std::string& title, std::span<const std::string> labels, std::span<const double> values);

}  // namespace agency::svg
