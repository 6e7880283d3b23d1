#pragma once
// Minimal SVG emission for curve, tangent-family and heatmap figures. The
// canvas maps a world rectangle onto a fixed 800x800 viewport with the y
// axis pointing up; the flip happens only at pixel emission. CSV files are
// the exact artifacts; SVG is for eyes.
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace aztec {

class SvgCanvas {
 public:
  // World window; both extents must be nonempty.
  SvgCanvas(double x_lo, double x_hi, double y_lo, double y_hi);

  double px(double x) const;  // world -> pixel
  double py(double y) const;  // flipped: larger world y is higher on screen

  void line(double x0, double y0, double x1, double y1, const std::string& stroke,
            double width = 1.0, bool dashed = false);
  void polyline(const std::vector<std::pair<double, double>>& pts,
                const std::string& stroke, double width = 1.5);
  void circle(double x, double y, double radius_px, const std::string& fill);
  // Axis-aligned filled cell in world coordinates.
  void cell(double x0, double y0, double x1, double y1, const std::string& fill,
            double opacity = 1.0);
  void text(double x, double y, const std::string& s, int font_px = 14);
  // Window frame plus corner coordinate labels and axis captions.
  void axes(const std::string& x_label, const std::string& y_label);

  void write(std::ostream& out) const;
  std::string str() const;

  static constexpr int kSize = 800;
  static constexpr int kMargin = 70;

 private:
  double x_lo_, x_hi_, y_lo_, y_hi_;
  std::vector<std::string> elems_;
};

// Grey fill for a density in [0,1]: 0 is white, 1 is black.
std::string grey_fill(double density);

}  // namespace aztec
