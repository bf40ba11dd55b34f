#include "comlim/svg.hpp"

#include <cmath>
#include <cstdio>

namespace comlim {

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 540;
constexpr int kMarginLeft = 64;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 48;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.4g", v == 0.0 ? 0.0 : v);
  return buf;
}

}  // namespace

SvgCanvas::SvgCanvas(double x_min, double x_max, double y_min, double y_max,
                     std::string title)
    : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max),
      title_(std::move(title)) {
  if (y_max_ <= y_min_) y_max_ = y_min_ + 1;
  const double pad = 0.05 * (y_max_ - y_min_);
  y_min_ -= pad;
  y_max_ += pad;
}

double SvgCanvas::px(double x) const {
  return kMarginLeft +
         (x - x_min_) / (x_max_ - x_min_) * (kWidth - kMarginLeft - kMarginRight);
}

double SvgCanvas::py(double y) const {
  return kHeight - kMarginBottom -
         (y - y_min_) / (y_max_ - y_min_) * (kHeight - kMarginTop - kMarginBottom);
}

void SvgCanvas::polyline(const std::vector<std::pair<double, double>>& pts,
                         const std::string& color, double width, bool dashed) {
  std::string d = "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" +
                  num(width) + "\"";
  if (dashed) d += " stroke-dasharray=\"6,4\"";
  d += " points=\"";
  for (const auto& [x, y] : pts) d += num(px(x)) + "," + num(py(y)) + " ";
  d += "\"/>";
  body_.push_back(std::move(d));
}

void SvgCanvas::hline(double y, const std::string& color, bool dashed) {
  std::string d = "<line x1=\"" + num(px(x_min_)) + "\" y1=\"" + num(py(y)) +
                  "\" x2=\"" + num(px(x_max_)) + "\" y2=\"" + num(py(y)) +
                  "\" stroke=\"" + color + "\" stroke-width=\"1.00\"";
  if (dashed) d += " stroke-dasharray=\"4,4\"";
  d += "/>";
  body_.push_back(std::move(d));
}

void SvgCanvas::vline(double x, const std::string& color, bool dashed) {
  std::string d = "<line x1=\"" + num(px(x)) + "\" y1=\"" + num(py(y_min_)) +
                  "\" x2=\"" + num(px(x)) + "\" y2=\"" + num(py(y_max_)) +
                  "\" stroke=\"" + color + "\" stroke-width=\"1.00\"";
  if (dashed) d += " stroke-dasharray=\"4,4\"";
  d += "/>";
  body_.push_back(std::move(d));
}

void SvgCanvas::marker(double x, double y, const std::string& color,
                       const std::string& label) {
  body_.push_back("<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) +
                  "\" r=\"4.00\" fill=\"" + color + "\"/>");
  if (!label.empty()) {
    body_.push_back("<text x=\"" + num(px(x) + 6) + "\" y=\"" + num(py(y) - 6) +
                    "\" font-size=\"12\" fill=\"" + color + "\">" + label +
                    "</text>");
  }
}

void SvgCanvas::band(double x0, double x1, const std::string& color) {
  body_.push_back("<rect x=\"" + num(px(x0)) + "\" y=\"" + num(py(y_max_)) +
                  "\" width=\"" + num(px(x1) - px(x0)) + "\" height=\"" +
                  num(py(y_min_) - py(y_max_)) + "\" fill=\"" + color +
                  "\" fill-opacity=\"0.15\"/>");
}

void SvgCanvas::axis_labels(const std::string& x_label, const std::string& y_label) {
  x_label_ = x_label;
  y_label_ = y_label;
}

std::string SvgCanvas::render() const {
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(kWidth) + "\" height=\"" + std::to_string(kHeight) +
         "\" viewBox=\"0 0 " + std::to_string(kWidth) + " " +
         std::to_string(kHeight) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + num(kWidth / 2.0) +
         "\" y=\"22\" font-size=\"15\" text-anchor=\"middle\">" + title_ +
         "</text>\n";

  // Axes with five ticks per side.
  const double ax0 = px(x_min_), ax1 = px(x_max_);
  const double ay0 = py(y_min_), ay1 = py(y_max_);
  out += "<line x1=\"" + num(ax0) + "\" y1=\"" + num(ay0) + "\" x2=\"" + num(ax1) +
         "\" y2=\"" + num(ay0) + "\" stroke=\"black\" stroke-width=\"1.00\"/>\n";
  out += "<line x1=\"" + num(ax0) + "\" y1=\"" + num(ay0) + "\" x2=\"" + num(ax0) +
         "\" y2=\"" + num(ay1) + "\" stroke=\"black\" stroke-width=\"1.00\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = x_min_ + (x_max_ - x_min_) * k / 4;
    const double yv = y_min_ + (y_max_ - y_min_) * k / 4;
    out += "<text x=\"" + num(px(xv)) + "\" y=\"" + num(ay0 + 16) +
           "\" font-size=\"11\" text-anchor=\"middle\">" + tick_label(xv) +
           "</text>\n";
    out += "<text x=\"" + num(ax0 - 6) + "\" y=\"" + num(py(yv) + 4) +
           "\" font-size=\"11\" text-anchor=\"end\">" + tick_label(yv) +
           "</text>\n";
  }
  if (!x_label_.empty()) {
    out += "<text x=\"" + num((ax0 + ax1) / 2) + "\" y=\"" +
           num(kHeight - 10.0) + "\" font-size=\"12\" text-anchor=\"middle\">" +
           x_label_ + "</text>\n";
  }
  if (!y_label_.empty()) {
    out += "<text x=\"16\" y=\"" + num((ay0 + ay1) / 2) +
           "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           num((ay0 + ay1) / 2) + ")\">" + y_label_ + "</text>\n";
  }
  for (const auto& b : body_) {
    out += b;
    out += '\n';
  }
  out += "</svg>\n";
  return out;
}

}  // namespace comlim
