#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace cyclespec {

// Minimal self-contained SVG writer (inline styles, no external assets).
// Coordinates are given in data space and mapped onto a square plot area.
class SvgPlot {
 public:
  SvgPlot(double x_min, double x_max, double y_min, double y_max, int size_px = 640);

  void title(const std::string& text);
  void axes(const std::string& x_label, const std::string& y_label);
  void points(std::span<const std::complex<double>> xy, const std::string& color, double radius_px);
  void diamonds(std::span<const std::complex<double>> xy, const std::string& color, double half_px);
  void polyline(std::span<const std::complex<double>> xy, const std::string& color, double width_px,
                bool closed);
  void legend(const std::string& text, const std::string& color, int row);

  std::string str() const;

 private:
  double px(double x) const;
  double py(double y) const;

  double x_min_, x_max_, y_min_, y_max_;
  int size_;
  int margin_ = 56;
  std::vector<std::string> body_;
};

}  // namespace cyclespec
