#include "dt/render.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

namespace dt {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

struct Svg {
  std::ostringstream body;
  int width, height;

  Svg(int w, int h) : width(w), height(h) {}

  void line(double x1, double y1, double x2, double y2, const std::string& cls) {
    body << "<line class=\"" << cls << "\" x1=\"" << fmt(x1) << "\" y1=\"" << fmt(y1) << "\" x2=\"" << fmt(x2)
         << "\" y2=\"" << fmt(y2) << "\"/>\n";
  }
  void circle(double x, double y, double r, const std::string& cls, const std::string& id = "") {
    body << "<circle class=\"" << cls << "\"";
    if (!id.empty()) body << " id=\"" << id << "\"";
    body << " cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"" << fmt(r) << "\"/>\n";
  }
  void text(double x, double y, const std::string& cls, const std::string& s) {
    body << "<text class=\"" << cls << "\" x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\">" << s << "</text>\n";
  }
  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& cls, const std::string& id = "") {
    body << "<polyline class=\"" << cls << "\"";
    if (!id.empty()) body << " id=\"" << id << "\"";
    body << " points=\"";
    for (std::size_t k = 0; k < pts.size(); ++k) body << (k ? " " : "") << fmt(pts[k].first) << "," << fmt(pts[k].second);
    body << "\"/>\n";
  }
  std::string str(const std::string& style) const {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
        << "<style>" << style << "</style>\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << body.str() << "</svg>\n";
    return out.str();
  }
};

// Cayley transform to the unit disk, then to the picture.
std::pair<double, double> to_disk(Complex z, double cx, double cy, double rad) {
  const Complex w = (z - Complex(0, 1)) / (z + Complex(0, 1));
  return {cx + rad * w.real(), cy - rad * w.imag()};
}

std::vector<Complex> sample_geodesic(const Geodesic& g, int n = 96) {
  std::vector<Complex> pts;
  if (g.a.infinite || g.b.infinite) {
    const double x = g.a.infinite ? g.b.x : g.a.x;
    for (int k = 0; k <= n; ++k) pts.emplace_back(x, std::exp(-12.0 + 24.0 * k / n));
    if (g.b.infinite) return pts;
    return {pts.rbegin(), pts.rend()};
  }
  const double c = 0.5 * (g.a.x + g.b.x), r = 0.5 * std::abs(g.b.x - g.a.x);
  const bool forward = g.a.x > g.b.x;
  for (int k = 1; k < n; ++k) {
    const double th = M_PI * k / n;
    pts.emplace_back(c + r * std::cos(forward ? th : M_PI - th), r * std::sin(th));
  }
  return pts;
}

std::vector<Complex> sample_horocycle(const Horocycle& h, int n = 96) {
  std::vector<Complex> pts;
  if (h.center.infinite) {
    for (int k = 0; k <= n; ++k) pts.emplace_back(std::sinh(-8.0 + 16.0 * k / n) * h.size, h.size);
    return pts;
  }
  const double r = 0.5 * h.size;
  for (int k = 0; k <= n; ++k) {
    const double th = 2.0 * M_PI * k / n;
    pts.emplace_back(h.center.x + r * std::sin(th), r - r * std::cos(th));
  }
  return pts;
}

}  // namespace

std::string render_triangulation_svg(const QuasiTriangulation& qt, const RenderOptions& opt) {
  const int nt = static_cast<int>(qt.triangles().size());
  const int cols = std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(nt)))));
  const int rows = (nt + cols - 1) / cols;
  const double cell = static_cast<double>(opt.width) / cols;
  Svg svg(opt.width, static_cast<int>(std::ceil(cell * rows)));
  const double side = 0.7 * cell;
  std::vector<FaceSlot> monogon_at(2 * qt.edge_count());
  for (int t = 0; t < nt; ++t) {
    const double ox = (t % cols + 0.5) * cell, oy = (t / cols + 0.55) * cell;
    std::pair<double, double> v[3];
    for (int k = 0; k < 3; ++k) {
      const double a = -M_PI / 2 + 2.0 * M_PI * k / 3.0;
      v[k] = {ox + side / std::sqrt(3.0) * std::cos(a), oy + side / std::sqrt(3.0) * std::sin(a)};
    }
    for (int k = 0; k < 3; ++k) {
      const SideRef s = qt.triangles()[t].sides[k];
      const auto [x1, y1] = v[k];
      const auto [x2, y2] = v[(k + 1) % 3];
      const bool boundary = qt.is_boundary(s.edge);
      svg.line(x1, y1, x2, y2, boundary ? "boundary" : "arc");
      const double mx = 0.5 * (x1 + x2), my = 0.5 * (y1 + y2);
      // Push labels and monogons outward from the triangle center.
      const double dx = mx - ox, dy = my - oy, dn = std::hypot(dx, dy);
      if (opt.labels) {
        const std::string label =
            boundary ? "d" + std::to_string(qt.edges()[s.edge].component) : "e" + std::to_string(s.edge);
        svg.text(mx + 14.0 * dx / dn - 8.0, my + 14.0 * dy / dn + 4.0, boundary ? "boundary-label" : "arc-label", label);
      }
      const FaceSlot other = qt.face_of(s.twin());
      if (!boundary && other.kind == FaceKind::Monogon) {
        const double r = 0.08 * cell;
        const double px = mx + (r + 24.0) * dx / dn, py = my + (r + 24.0) * dy / dn;
        svg.circle(px, py, r, "monogon");
        svg.circle(px, py, 2.5, "puncture");
        if (opt.labels)
          svg.text(px + 4.0, py - 4.0, "puncture-label", "p" + std::to_string(qt.monogons()[other.index].puncture));
      }
    }
    for (int k = 0; k < 3; ++k) {
      svg.circle(v[k].first, v[k].second, 3.0, "vertex");
      if (opt.labels)
        svg.text(v[k].first + 4.0, v[k].second - 4.0, "vertex-label", "v" + std::to_string(qt.corner_vertex(t, k)));
    }
    if (opt.labels) svg.text(ox - 6.0, oy + 4.0, "triangle-label", "T" + std::to_string(t));
  }
  return svg.str(
      ".arc{stroke:#246;stroke-width:1.5}.boundary{stroke:#b22;stroke-width:3}.vertex{fill:#000}"
      ".monogon{fill:none;stroke:#246}.puncture{fill:#b22}text{font:11px sans-serif}");
}

std::string render_strip_svg(const BoundaryStrip& strip, const RenderOptions& opt) {
  Svg svg(opt.width, opt.width);
  const double cx = opt.width / 2.0, cy = opt.width / 2.0, rad = 0.45 * opt.width;
  svg.circle(cx, cy, rad, "disk");
  auto draw = [&](const std::vector<Complex>& pts, const std::string& cls, const std::string& id = "") {
    std::vector<std::pair<double, double>> out;
    for (const auto& z : pts) out.push_back(to_disk(z, cx, cy, rad));
    svg.polyline(out, cls, id);
  };
  MoebiusMap g = MoebiusMap::identity();
  const MoebiusMap inv = strip.gamma.inverse();
  for (int j = 0; j > -3; --j) g = g * inv;
  for (int j = -3; j <= 3; ++j) {
    const IdealPoint u0 = moebius_apply(g, strip.h0().center), u1 = moebius_apply(g, strip.h1().center),
                     v0 = moebius_apply(g, strip.k0().center);
    const std::string cls = j == 0 ? "lift t0" : "lift";
    draw(sample_geodesic({u0, u1}), cls + " c");
    draw(sample_geodesic({u1, v0}), cls);
    draw(sample_geodesic({v0, u0}), cls);
    g = g * strip.gamma;
  }
  draw(sample_geodesic(strip.axis), "axis", "axis");
  draw(sample_geodesic(strip.beta), "beta", "beta");
  draw(sample_horocycle(strip.h0()), "horocycle", "h0");
  draw(sample_horocycle(strip.h1()), "horocycle", "h1");
  draw(sample_horocycle(strip.k0()), "horocycle", "k0");
  const auto [zx, zy] = to_disk(strip.zeta.z(), cx, cy, rad);
  svg.circle(zx, zy, 4.0, "zeta", "zeta");
  const auto [fx, fy] = to_disk(strip.zeta_folded.z(), cx, cy, rad);
  svg.circle(fx, fy, 4.0, "zeta-folded", "zeta-folded");
  if (opt.labels) {
    svg.text(zx + 6.0, zy - 6.0, "marker-label", "zeta");
    svg.text(8.0, 16.0, "caption", "boundary " + std::to_string(strip.boundary) + ", length " + fmt(strip.length));
  }
  return svg.str(
      ".disk{fill:none;stroke:#000}.lift{fill:none;stroke:#999;stroke-width:1}.t0{stroke:#246;stroke-width:2}"
      ".c{stroke:#b22}.axis{fill:none;stroke:#2a2;stroke-width:2}.beta{fill:none;stroke:#a2a;stroke-width:1.5}"
      ".horocycle{fill:none;stroke:#e90;stroke-dasharray:4 3}.zeta{fill:#000}.zeta-folded{fill:#a2a}"
      "text{font:12px sans-serif}");
}

std::string render_flip_graph_svg(const FlipGraph& fg, const RenderOptions& opt) {
  Svg svg(opt.width, opt.width);
  const int n = static_cast<int>(fg.nodes.size());
  const double cx = opt.width / 2.0, cy = opt.width / 2.0, rad = n > 1 ? 0.4 * opt.width : 0.0;
  const double phase = 2.0 * M_PI * static_cast<double>(opt.seed % 360) / 360.0;
  auto pos = [&](int k) {
    const double a = phase + 2.0 * M_PI * k / std::max(n, 1);
    return std::make_pair(cx + rad * std::cos(a), cy + rad * std::sin(a));
  };
  for (const auto& [a, b] : fg.edges) {
    const auto [x1, y1] = pos(a);
    if (a == b) {
      svg.circle(x1 + 12.0, y1, 12.0, "loop");
      continue;
    }
    const auto [x2, y2] = pos(b);
    svg.line(x1, y1, x2, y2, "edge");
  }
  for (int k = 0; k < n; ++k) {
    const auto [x, y] = pos(k);
    svg.circle(x, y, 6.0, "node");
    if (opt.labels) svg.text(x + 8.0, y - 8.0, "node-label", std::to_string(k));
  }
  if (opt.labels) svg.text(8.0, 16.0, "caption", to_string(fg.signature) + ": " + std::to_string(n) + " nodes");
  return svg.str(".edge{stroke:#999}.loop{fill:none;stroke:#999}.node{fill:#246}text{font:12px sans-serif}");
}

}  // namespace dt
