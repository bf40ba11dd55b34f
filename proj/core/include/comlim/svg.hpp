#pragma once

#include <string>
#include <utility>
#include <vector>

namespace comlim {

/// Minimal deterministic SVG plotter: fixed viewport, no timestamps, numbers
/// printed with a fixed format, so identical inputs give identical bytes.
class SvgCanvas {
 public:
  SvgCanvas(double x_min, double x_max, double y_min, double y_max,
            std::string title);

  void polyline(const std::vector<std::pair<double, double>>& pts,
                const std::string& color, double width, bool dashed = false);
  void hline(double y, const std::string& color, bool dashed = true);
  void vline(double x, const std::string& color, bool dashed = true);
  void marker(double x, double y, const std::string& color,
              const std::string& label = "");
  void band(double x0, double x1, const std::string& color);  // shaded column
  void axis_labels(const std::string& x_label, const std::string& y_label);

  std::string render() const;

 private:
  double x_min_, x_max_, y_min_, y_max_;
  std::string title_, x_label_, y_label_;
  std::vector<std::string> body_;

  double px(double x) const;
  double py(double y) const;
};

}  // namespace comlim
