#include "aztec/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace aztec {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

}  // namespace

SvgCanvas::SvgCanvas(double x_lo, double x_hi, double y_lo, double y_hi)
    : x_lo_(x_lo), x_hi_(x_hi), y_lo_(y_lo), y_hi_(y_hi) {
  if (!(x_hi > x_lo) || !(y_hi > y_lo))
    throw std::invalid_argument("SvgCanvas: empty world window");
}

double SvgCanvas::px(double x) const {
  const double w = kSize - 2.0 * kMargin;
  return kMargin + (x - x_lo_) / (x_hi_ - x_lo_) * w;
}

double SvgCanvas::py(double y) const {
  const double h = kSize - 2.0 * kMargin;
  return kSize - kMargin - (y - y_lo_) / (y_hi_ - y_lo_) * h;
}

void SvgCanvas::line(double x0, double y0, double x1, double y1,
                     const std::string& stroke, double width, bool dashed) {
  std::ostringstream os;
  os << "<line x1=\"" << num(px(x0)) << "\" y1=\"" << num(py(y0)) << "\" x2=\""
     << num(px(x1)) << "\" y2=\"" << num(py(y1)) << "\" stroke=\"" << stroke
     << "\" stroke-width=\"" << num(width) << "\"";
  if (dashed) os << " stroke-dasharray=\"6 4\"";
  os << "/>";
  elems_.push_back(os.str());
}

void SvgCanvas::polyline(const std::vector<std::pair<double, double>>& pts,
                         const std::string& stroke, double width) {
  if (pts.size() < 2) return;
  std::ostringstream os;
  os << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\""
     << num(width) << "\" points=\"";
  for (size_t k = 0; k < pts.size(); ++k) {
    if (k) os << ' ';
    os << num(px(pts[k].first)) << ',' << num(py(pts[k].second));
  }
  os << "\"/>";
  elems_.push_back(os.str());
}

void SvgCanvas::circle(double x, double y, double radius_px, const std::string& fill) {
  std::ostringstream os;
  os << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\""
     << num(radius_px) << "\" fill=\"" << fill << "\"/>";
  elems_.push_back(os.str());
}

void SvgCanvas::cell(double x0, double y0, double x1, double y1,
                     const std::string& fill, double opacity) {
  const double ax = px(std::min(x0, x1)), bx = px(std::max(x0, x1));
  // the y flip swaps which world corner is the pixel top
  const double ay = py(std::max(y0, y1)), by = py(std::min(y0, y1));
  std::ostringstream os;
  os << "<rect x=\"" << num(ax) << "\" y=\"" << num(ay) << "\" width=\""
     << num(bx - ax) << "\" height=\"" << num(by - ay) << "\" fill=\"" << fill << "\"";
  if (opacity < 1.0) os << " fill-opacity=\"" << num(opacity) << "\"";
  os << "/>";
  elems_.push_back(os.str());
}

void SvgCanvas::text(double x, double y, const std::string& s, int font_px) {
  std::ostringstream os;
  os << "<text x=\"" << num(px(x)) << "\" y=\"" << num(py(y)) << "\" font-size=\""
     << font_px << "\" font-family=\"monospace\" fill=\"#333\">" << s << "</text>";
  elems_.push_back(os.str());
}

void SvgCanvas::axes(const std::string& x_label, const std::string& y_label) {
  std::ostringstream os;
  os << "<rect x=\"" << num(px(x_lo_)) << "\" y=\"" << num(py(y_hi_)) << "\" width=\""
     << num(px(x_hi_) - px(x_lo_)) << "\" height=\"" << num(py(y_lo_) - py(y_hi_))
     << "\" fill=\"none\" stroke=\"#000\" stroke-width=\"1.00\"/>";
  elems_.push_back(os.str());
  std::ostringstream lo;
  lo << "<text x=\"" << num(px(x_lo_) - 8) << "\" y=\"" << num(py(y_lo_) + 20)
     << "\" font-size=\"12\" font-family=\"monospace\">" << label(x_lo_) << "</text>";
  elems_.push_back(lo.str());
  std::ostringstream hi;
  hi << "<text x=\"" << num(px(x_hi_) - 12) << "\" y=\"" << num(py(y_lo_) + 20)
     << "\" font-size=\"12\" font-family=\"monospace\">" << label(x_hi_) << "</text>";
  elems_.push_back(hi.str());
  std::ostringstream yl;
  yl << "<text x=\"" << num(px(x_lo_) - 40) << "\" y=\"" << num(py(y_lo_))
     << "\" font-size=\"12\" font-family=\"monospace\">" << label(y_lo_) << "</text>";
  elems_.push_back(yl.str());
  std::ostringstream yh;
  yh << "<text x=\"" << num(px(x_lo_) - 40) << "\" y=\"" << num(py(y_hi_) + 4)
     << "\" font-size=\"12\" font-family=\"monospace\">" << label(y_hi_) << "</text>";
  elems_.push_back(yh.str());
  std::ostringstream cap;
  cap << "<text x=\"" << num((px(x_lo_) + px(x_hi_)) / 2 - 10) << "\" y=\""
      << num(py(y_lo_) + 40) << "\" font-size=\"14\" font-family=\"monospace\">"
      << x_label << "</text>";
  elems_.push_back(cap.str());
  std::ostringstream ycap;
  ycap << "<text x=\"" << num(px(x_lo_) - 50) << "\" y=\""
       << num((py(y_lo_) + py(y_hi_)) / 2) << "\" font-size=\"14\" font-family=\"monospace\">"
       << y_label << "</text>";
  elems_.push_back(ycap.str());
}

void SvgCanvas::write(std::ostream& out) const {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize
      << "\" height=\"" << kSize << "\" viewBox=\"0 0 " << kSize << ' ' << kSize
      << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << kSize << "\" height=\"" << kSize
      << "\" fill=\"#ffffff\"/>\n";
  for (const auto& e : elems_) out << e << '\n';
  out << "</svg>\n";
}

std::string SvgCanvas::str() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

std::string grey_fill(double density) {
  const double d = std::clamp(density, 0.0, 1.0);
  const int level = static_cast<int>(std::lround(255.0 * (1.0 - d)));
  char buf[16];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", level, level, level);
  return buf;
}

}  // namespace aztec
