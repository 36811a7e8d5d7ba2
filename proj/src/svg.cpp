#include "cyclespec/svg.hpp"

#include <cmath>
#include <cstdio>

namespace cyclespec {

namespace {

std::string fmt(const char* pattern, auto... args) {
  const int len = std::snprintf(nullptr, 0, pattern, args...);
  std::string out(static_cast<std::size_t>(len), '\0');
  std::snprintf(out.data(), out.size() + 1, pattern, args...);
  return out;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

// Round tick step: 1, 2 or 5 times a power of ten.
double tick_step(double span) {
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0})
    if (raw <= m * mag) return m * mag;
  return 10.0 * mag;
}

}  // namespace

SvgPlot::SvgPlot(double x_min, double x_max, double y_min, double y_max, int size_px)
    : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max), size_(size_px) {}

double SvgPlot::px(double x) const {
  return margin_ + (x - x_min_) / (x_max_ - x_min_) * (size_ - 2 * margin_);
}

double SvgPlot::py(double y) const {
  return size_ - margin_ - (y - y_min_) / (y_max_ - y_min_) * (size_ - 2 * margin_);
}

void SvgPlot::title(const std::string& text) {
  body_.push_back(fmt("<text x=\"%d\" y=\"%d\" style=\"font:15px sans-serif;text-anchor:middle\">%s</text>",
                      size_ / 2, margin_ / 2, escape(text).c_str()));
}

void SvgPlot::axes(const std::string& x_label, const std::string& y_label) {
  const double left = px(x_min_), right = px(x_max_), top = py(y_max_), bottom = py(y_min_);
  body_.push_back(fmt("<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
                      "style=\"fill:none;stroke:#444;stroke-width:1\"/>",
                      left, top, right - left, bottom - top));
  const double xs = tick_step(x_max_ - x_min_);
  for (double t = std::ceil(x_min_ / xs) * xs; t <= x_max_ + 1e-12; t += xs) {
    const double x = px(t);
    const double label = std::abs(t) < 1e-12 ? 0.0 : t;
    body_.push_back(fmt("<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" style=\"stroke:#ddd\"/>",
                        x, top, x, bottom));
    body_.push_back(fmt("<text x=\"%.2f\" y=\"%.2f\" style=\"font:11px sans-serif;text-anchor:middle\">%g</text>",
                        x, bottom + 16, label));
  }
  const double ys = tick_step(y_max_ - y_min_);
  for (double t = std::ceil(y_min_ / ys) * ys; t <= y_max_ + 1e-12; t += ys) {
    const double y = py(t);
    const double label = std::abs(t) < 1e-12 ? 0.0 : t;
    body_.push_back(fmt("<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" style=\"stroke:#ddd\"/>",
                        left, y, right, y));
    body_.push_back(fmt("<text x=\"%.2f\" y=\"%.2f\" style=\"font:11px sans-serif;text-anchor:end\">%g</text>",
                        left - 6, y + 4, label));
  }
  body_.push_back(fmt("<text x=\"%d\" y=\"%d\" style=\"font:13px sans-serif;text-anchor:middle\">%s</text>",
                      size_ / 2, size_ - 12, escape(x_label).c_str()));
  body_.push_back(fmt("<text x=\"14\" y=\"%d\" style=\"font:13px sans-serif;text-anchor:middle\" "
                      "transform=\"rotate(-90 14 %d)\">%s</text>",
                      size_ / 2, size_ / 2, escape(y_label).c_str()));
}

void SvgPlot::points(std::span<const std::complex<double>> xy, const std::string& color,
                     double radius_px) {
  std::string group = fmt("<g style=\"fill:%s;fill-opacity:0.7\">", color.c_str());
  for (const auto& p : xy)
    group += fmt("<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\"/>", px(p.real()), py(p.imag()), radius_px);
  group += "</g>";
  body_.push_back(std::move(group));
}

void SvgPlot::diamonds(std::span<const std::complex<double>> xy, const std::string& color,
                       double half_px) {
  std::string group = fmt("<g style=\"fill:%s\">", color.c_str());
  for (const auto& p : xy) {
    const double x = px(p.real()), y = py(p.imag());
    group += fmt("<polygon points=\"%.2f,%.2f %.2f,%.2f %.2f,%.2f %.2f,%.2f\"/>", x, y - half_px,
                 x + half_px, y, x, y + half_px, x - half_px, y);
  }
  group += "</g>";
  body_.push_back(std::move(group));
}

void SvgPlot::polyline(std::span<const std::complex<double>> xy, const std::string& color,
                       double width_px, bool closed) {
  std::string pts;
  for (const auto& p : xy) pts += fmt("%.2f,%.2f ", px(p.real()), py(p.imag()));
  if (!pts.empty()) pts.pop_back();
  body_.push_back(fmt("<%s points=\"%s\" style=\"fill:none;stroke:%s;stroke-width:%.2f\"/>",
                      closed ? "polygon" : "polyline", pts.c_str(), color.c_str(), width_px));
}

void SvgPlot::legend(const std::string& text, const std::string& color, int row) {
  const int x = size_ - margin_ - 150;
  const int y = margin_ + 16 + 18 * row;
  body_.push_back(fmt("<rect x=\"%d\" y=\"%d\" width=\"10\" height=\"10\" style=\"fill:%s\"/>", x,
                      y - 9, color.c_str()));
  body_.push_back(fmt("<text x=\"%d\" y=\"%d\" style=\"font:12px sans-serif\">%s</text>", x + 16, y,
                      escape(text).c_str()));
}

std::string SvgPlot::str() const {
  std::string out = fmt(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" viewBox=\"0 0 %d %d\">\n",
      size_, size_, size_, size_);
  out += fmt("<rect width=\"%d\" height=\"%d\" style=\"fill:#fff\"/>\n", size_, size_);
  for (const auto& line : body_) {
    out += line;
    out += '\n';
  }
  out += "</svg>\n";
  return out;
}

}  // namespace cyclespec
