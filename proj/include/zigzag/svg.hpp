#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "zigzag/cap.hpp"
#include "zigzag/cone.hpp"
#include "zigzag/interval.hpp"
#include "zigzag/poset.hpp"

namespace zigzag {

// Write-only SVG figures of regions and witness links; no rendering
// dependencies anywhere else.
class SvgCanvas {
 public:
  SvgCanvas(double w = 640, double h = 640) : w_(w), h_(h) {}

  void polygon(const std::vector<std::pair<double, double>>& pts, const std::string& color,
               double opacity) {
    body_ << "<polygon points=\"";
    for (auto& [x, y] : pts) body_ << px(x) << "," << py(y) << " ";
    body_ << "\" fill=\"" << color << "\" fill-opacity=\"" << opacity
          << "\" stroke=\"" << color << "\" stroke-width=\"1\"/>\n";
  }

  void circle(double x, double y, double r, const std::string& color, double opacity) {
    body_ << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"" << r * scale_
          << "\" fill=\"" << color << "\" fill-opacity=\"" << opacity << "\" stroke=\"" << color
          << "\"/>\n";
  }

  void arc_band(double a0, double a1, double r_in, double r_out, const std::string& color,
                double opacity) {
    // annular wedge between angles a0..a1 (radians, ccw)
    std::vector<std::pair<double, double>> pts;
    int segs = 24;
    for (int i = 0; i <= segs; ++i) {
      double a = a0 + (a1 - a0) * i / segs;
      pts.emplace_back(r_out * std::cos(a), r_out * std::sin(a));
    }
    for (int i = segs; i >= 0; --i) {
      double a = a0 + (a1 - a0) * i / segs;
      pts.emplace_back(r_in * std::cos(a), r_in * std::sin(a));
    }
    polygon(pts, color, opacity);
  }

  void label(double x, double y, const std::string& text) {
    body_ << "<text x=\"" << px(x) << "\" y=\"" << py(y)
          << "\" font-size=\"12\" font-family=\"monospace\">" << text << "</text>\n";
  }

  void set_view(double world_half_extent) { scale_ = (w_ / 2 - 10) / world_half_extent; }

  std::string str() const {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w_ << "\" height=\"" << h_
       << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << body_.str() << "</svg>\n";
    return os.str();
  }

 private:
  double px(double x) const { return w_ / 2 + x * scale_; }
  double py(double y) const { return h_ / 2 - y * scale_; }

  double w_, h_, scale_ = 1;
  std::ostringstream body_;
};

inline const char* svg_palette(std::size_t i) {
  static const char* colors[] = {"#d62728", "#1f77b4", "#2ca02c", "#ff7f0e",
                                 "#9467bd", "#8c564b", "#e377c2", "#17becf"};
  return colors[i % 8];
}

template <class S>
inline void svg_region(SvgCanvas& c, const IntervalBackend<S>& b, const Interval<S>& e,
                       std::size_t idx, const std::string& name, double ring = 1.0) {
  double a0 = scalar_ops<S>::to_radians(e.start);
  double len = scalar_ops<S>::to_radians(b.length(e));
  c.arc_band(a0, a0 + len, ring - 0.04, ring + 0.04, svg_palette(idx), 0.45);
  c.label((ring + 0.12) * std::cos(a0 + len / 2), (ring + 0.12) * std::sin(a0 + len / 2), name);
}

template <class S>
inline void svg_region(SvgCanvas& c, const ConeBackend<S>& b, const Cone<S>& e, std::size_t idx,
                       const std::string& name, double reach = 6.0) {
  Vec2 a = b.effective_apex(e);
  double a0 = scalar_ops<S>::to_radians(e.dir.start);
  double len = scalar_ops<S>::to_radians(b.intervals().length(e.dir));
  std::vector<std::pair<double, double>> pts{{a.x, a.y}};
  int segs = 16;
  for (int i = 0; i <= segs; ++i) {
    double ang = a0 + len * i / segs;
    pts.emplace_back(a.x + reach * std::cos(ang), a.y + reach * std::sin(ang));
  }
  c.polygon(pts, svg_palette(idx), 0.3);
  double mid = a0 + len / 2;
  c.label(a.x + 0.3 * std::cos(mid), a.y + 0.3 * std::sin(mid), name);
}

inline void svg_region(SvgCanvas& c, const FinitePoset& b, int e, std::size_t idx,
                       const std::string& name, double = 0) {
  double y = 3.0 - 0.5 * static_cast<double>(idx % 16);
  c.label(-3.0, y, name + " = " + b.str(e));
}

inline void svg_region(SvgCanvas& c, const CapBackend&, const Cap& e, std::size_t idx,
                       const std::string& name, double = 0) {
  // orthographic projection from +z; caps drawn by their boundary circle
  double r = std::sin(std::min(e.radius, kPi / 2));
  double cx = e.center.x, cy = e.center.y;
  c.circle(cx, cy, r, svg_palette(idx), e.center.z >= 0 ? 0.35 : 0.12);
  c.label(cx, cy, name);
}

template <class B>
inline std::string svg_zigzag(const B& b, const ZigZag<typename B::element>& zz,
                              double extent = 8.0) {
  SvgCanvas c;
  c.set_view(extent);
  for (std::size_t j = 0; j < zz.y.size(); ++j)
    svg_region(c, b, zz.y[j], 7, "y" + std::to_string(j + 1));
  for (std::size_t j = 0; j < zz.z.size(); ++j)
    svg_region(c, b, zz.z[j], j, "z" + std::to_string(j + 1));
  return c.str();
}

template <class B>
inline std::string svg_mdz(const B& b, const Mdz<typename B::element>& m, double extent = 8.0) {
  SvgCanvas c;
  c.set_view(extent);
  for (std::size_t j = 0; j < m.top.z.size(); ++j)
    svg_region(c, b, m.top.z[j], 0, "x" + std::to_string(j + 1));
  for (std::size_t j = 0; j < m.bottom.z.size(); ++j)
    svg_region(c, b, m.bottom.z[j], 1, "z" + std::to_string(j + 1));
  return c.str();
}

template <class B>
inline std::string svg_reflection(const B& b, const Reflection<typename B::element>& r,
                                  double extent = 8.0) {
  SvgCanvas c;
  c.set_view(extent);
  svg_region(c, b, r.base.parent, 6, "p");
  svg_region(c, b, r.base.r, 0, "r");
  svg_region(c, b, r.base.s, 1, "s");
  svg_region(c, b, r.a, 2, "a");
  svg_region(c, b, r.b, 3, "b");
  svg_region(c, b, r.c, 4, "c");
  return c.str();
}

}  // namespace zigzag
