#include <cmath>
#include <numbers>
#include <ostream>

#include "adsg/ads.hpp"

namespace adsg {

bool chart_coords(const GroupElement& g, std::array<double, 3>& out) {
  const double h = g.trace() / 2;
  const std::array<double, 3> raw{(g.a() - g.d()) / 2, (g.b() + g.c()) / 2, (g.b() - g.c()) / 2};
  if (std::abs(h) < 1e-12) {
    const double n = std::sqrt(raw[0] * raw[0] + raw[1] * raw[1] + raw[2] * raw[2]);
    for (int i = 0; i < 3; ++i) out[i] = raw[i] / n;
    return false;
  }
  for (int i = 0; i < 3; ++i) out[i] = raw[i] / h;
  return true;
}

FigureData figure_data(int surface_samples) {
  FigureData data;
  for (int code = 0; code < 81; ++code) {
    int c = code;
    double e[4];
    for (double& v : e) {
      v = static_cast<double>(c % 3) - 1.0;
      c /= 3;
    }
    if (e[0] * e[3] - e[1] * e[2] <= 0) continue;
    const GroupElement g = GroupElement::from_entries(e[0], e[1], e[2], e[3]);
    bool seen = false;
    for (const FigurePoint& p : data.points) seen = seen || p.g.approx_equal(g, 1e-12);
    if (seen) continue;
    FigurePoint p;
    p.g = g;
    p.at_infinity = !chart_coords(g, p.chart);
    p.cls = classify(g);
    p.flags = subset_membership(g, 1e-12);
    data.points.push_back(p);
  }
  const int n = std::max(surface_samples, 2);
  for (int i = 0; i < n; ++i) {
    const double theta = 2 * std::numbers::pi * i / n;
    for (int k = 0; k < n; ++k) {
      const double s = -2.0 + 4.0 * k / (n - 1);
      data.quadric.push_back({std::cosh(s) * std::cos(theta), std::cosh(s) * std::sin(theta),
                              std::sinh(s)});
      data.cone.push_back({s * std::cos(theta), s * std::sin(theta), std::abs(s)});
      data.cone.push_back({s * std::cos(theta), s * std::sin(theta), -std::abs(s)});
    }
  }
  return data;
}

void write_figure_csv(std::ostream& os, const FigureData& data) {
  os << "x,y,z,class,in_S,in_K,in_A,in_C,in_T,at_infinity\n";
  for (const FigurePoint& p : data.points) {
    const SubsetFlags& f = p.flags;
    os << p.chart[0] << ',' << p.chart[1] << ',' << p.chart[2] << ',' << to_string(p.cls) << ','
       << f.in_S << ',' << f.in_K << ',' << f.in_A << ',' << f.in_C << ',' << f.in_T << ','
       << p.at_infinity << '\n';
  }
}

void write_surfaces_csv(std::ostream& os, const FigureData& data) {
  os << "surface,x,y,z\n";
  for (const auto& q : data.quadric) os << "quadric," << q[0] << ',' << q[1] << ',' << q[2] << '\n';
  for (const auto& q : data.cone) os << "cone," << q[0] << ',' << q[1] << ',' << q[2] << '\n';
}

namespace {

// Orthographic view from a direction slightly above the (x, y) plane.
std::array<double, 2> project_view(const std::array<double, 3>& p) {
  const double az = 0.6, el = 0.35;
  const double x = p[0] * std::cos(az) - p[1] * std::sin(az);
  const double depth = p[0] * std::sin(az) + p[1] * std::cos(az);
  const double y = p[2] * std::cos(el) - depth * std::sin(el);
  return {x, y};
}

}  // namespace

void write_figure_svg(std::ostream& os, const FigureData& data) {
  const double scale = 60, cx = 300, cy = 300;
  const auto to_px = [&](const std::array<double, 3>& p) {
    const auto v = project_view(p);
    return std::array<double, 2>{cx + scale * v[0], cy - scale * v[1]};
  };
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" "
        "viewBox=\"0 0 600 600\">\n"
     << "<style>.quadric{fill:#bbb}.cone{fill:#e8a}.identity{stroke:#000}"
        ".elliptic{stroke:#26c}.parabolic{stroke:#c62}.hyperbolic{stroke:#2a4}"
        ".S{fill:#ffd}.K{fill:#9cf}.infinity{stroke-dasharray:2,2}</style>\n";
  for (const auto& q : data.quadric) {
    const auto px = to_px(q);
    os << "<circle class=\"quadric\" cx=\"" << px[0] << "\" cy=\"" << px[1] << "\" r=\"1\"/>\n";
  }
  for (const auto& q : data.cone) {
    const auto px = to_px(q);
    os << "<circle class=\"cone\" cx=\"" << px[0] << "\" cy=\"" << px[1] << "\" r=\"1\"/>\n";
  }
  for (const FigurePoint& p : data.points) {
    // Points at infinity are drawn on a circle of radius 4 in their direction.
    std::array<double, 3> at = p.chart;
    if (p.at_infinity) {
      for (double& c : at) c *= 4;
    }
    const auto px = to_px(at);
    std::string cls = to_string(p.cls);
    if (p.flags.in_S) cls += " S";
    if (p.flags.in_K) cls += " K";
    if (p.at_infinity) cls += " infinity";
    os << "<circle class=\"" << cls << "\" cx=\"" << px[0] << "\" cy=\"" << px[1]
       << "\" r=\"4\" fill=\"none\" stroke-width=\"1.5\"/>\n";
  }
  os << "</svg>\n";
}

}  // namespace adsg
