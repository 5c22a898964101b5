#pragma once

#include <gcn/geometry.hpp>

#include <algorithm>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gcn {

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace detail

/// Static incidence diagram: nodes, maximal lines (grey) and an optional query line (red).
inline std::string incidence_svg(const NodeSet& X, std::span<const Line> maximal,
                                 const std::optional<Line>& query = std::nullopt) {
  const double size = 480, pad = 30;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!X.empty()) {
    x0 = x1 = X[0].x.get_d();
    y0 = y1 = X[0].y.get_d();
    for (const auto& p : X.nodes()) {
      x0 = std::min(x0, p.x.get_d());
      x1 = std::max(x1, p.x.get_d());
      y0 = std::min(y0, p.y.get_d());
      y1 = std::max(y1, p.y.get_d());
    }
  }
  const double span = std::max({x1 - x0, y1 - y0, 1e-9});
  const double mx = span * 0.15;
  x0 -= mx;
  y0 -= mx;
  const double w = span + 2 * mx;
  auto sx = [&](double x) { return pad + (x - x0) / w * (size - 2 * pad); };
  auto sy = [&](double y) { return size - pad - (y - y0) / w * (size - 2 * pad); };

  // clip a x + b y + c = 0 to the square [x0, x0 + w] x [y0, y0 + w]
  auto segment = [&](const Line& l) -> std::optional<std::pair<std::pair<double, double>, std::pair<double, double>>> {
    const double a = l.a().get_d(), b = l.b().get_d(), c = l.c().get_d();
    std::vector<std::pair<double, double>> pts;
    const double xs[2] = {x0, x0 + w}, ys[2] = {y0, y0 + w};
    if (b != 0) {
      for (double x : xs) {
        const double y = -(a * x + c) / b;
        if (y >= y0 - 1e-9 && y <= y0 + w + 1e-9) pts.emplace_back(x, y);
      }
    }
    if (a != 0) {
      for (double y : ys) {
        const double x = -(b * y + c) / a;
        if (x >= x0 - 1e-9 && x <= x0 + w + 1e-9) pts.emplace_back(x, y);
      }
    }
    if (pts.size() < 2) return std::nullopt;
    return std::make_pair(pts.front(), pts.back());
  };

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fmt(size) + "\" height=\"" +
                    detail::fmt(size) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  auto draw = [&](const Line& l, const char* colour, double width) {
    if (auto s = segment(l)) {
      out += "<line x1=\"" + detail::fmt(sx(s->first.first)) + "\" y1=\"" + detail::fmt(sy(s->first.second)) +
             "\" x2=\"" + detail::fmt(sx(s->second.first)) + "\" y2=\"" + detail::fmt(sy(s->second.second)) +
             "\" stroke=\"" + colour + "\" stroke-width=\"" + detail::fmt(width) + "\"/>\n";
    }
  };
  for (const auto& l : maximal) draw(l, "#888888", 1.5);
  if (query) draw(*query, "#cc2222", 2);
  for (std::size_t i = 0; i < X.size(); ++i) {
    const double cx = sx(X[i].x.get_d()), cy = sy(X[i].y.get_d());
    out += "<circle cx=\"" + detail::fmt(cx) + "\" cy=\"" + detail::fmt(cy) + "\" r=\"4\" fill=\"black\"/>\n";
    out += "<text x=\"" + detail::fmt(cx + 6) + "\" y=\"" + detail::fmt(cy - 6) +
           "\" font-size=\"10\" font-family=\"sans-serif\">" + std::to_string(i) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace gcn
