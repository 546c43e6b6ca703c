#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "sdnorm/diagram.hpp"
#include "sdnorm/edge_graph.hpp"

namespace sdnorm {

/// Layout in drawing units, y growing downwards. Levels are 32 units apart
/// and wires at a level 24 units apart, centered on the canvas.
struct Layout {
  static constexpr double level_pitch = 32;
  static constexpr double wire_pitch = 24;
  static constexpr double radius = 3;

  double width = 0;
  double height = 0;
  std::vector<std::pair<double, double>> vertices;
  std::vector<std::vector<std::pair<double, double>>> wires;  // polylines, one per edge
};

inline Layout layout(const Diagram& d) {
  require_valid(d);
  auto w = wire_profile(d);
  int widest = *std::max_element(w.begin(), w.end());
  Layout out;
  out.width = Layout::wire_pitch * (std::max(widest, 1) + 1);
  out.height = Layout::level_pitch * (static_cast<double>(d.height()) + 1);
  double cx = out.width / 2;
  auto wire_x = [&](std::size_t level, int k) {
    return cx + Layout::wire_pitch * (k - (w[level] - 1) / 2.0);
  };
  auto level_y = [](std::size_t level) { return Layout::level_pitch * level + 16; };
  auto vertex_y = [](std::size_t n) { return Layout::level_pitch * n + 32; };

  for (std::size_t n = 0; n < d.height(); ++n) {
    const Vertex& v = d[n];
    double lo = 0, hi = 0;
    bool any = false;
    auto take = [&](double x) {
      lo = any ? std::min(lo, x) : x;
      hi = any ? std::max(hi, x) : x;
      any = true;
    };
    for (int j = 0; j < v.in; ++j) take(wire_x(n, v.h + j));
    for (int j = 0; j < v.out; ++j) take(wire_x(n + 1, v.h + j));
    double x = any ? (lo + hi) / 2 : wire_x(n, v.h) - Layout::wire_pitch / 2;
    out.vertices.emplace_back(x, vertex_y(n));
  }

  // Trace every wire through the levels it crosses.
  EdgeGraph g = extract_graph(d);
  out.wires.resize(g.edges.size());
  std::vector<int> live;
  for (int k = 0; k < d.sources; ++k) {
    live.push_back(g.source_edges[static_cast<std::size_t>(k)]);
    out.wires[static_cast<std::size_t>(live.back())].emplace_back(wire_x(0, k), 0.0);
  }
  auto mark_level = [&](std::size_t level) {
    for (std::size_t k = 0; k < live.size(); ++k)
      out.wires[static_cast<std::size_t>(live[k])].emplace_back(
          wire_x(level, static_cast<int>(k)), level_y(level));
  };
  mark_level(0);
  for (std::size_t n = 0; n < d.height(); ++n) {
    const Vertex& v = d[n];
    for (int j = 0; j < v.in; ++j)
      out.wires[static_cast<std::size_t>(live[static_cast<std::size_t>(v.h + j)])].push_back(
          out.vertices[n]);
    auto first = live.begin() + v.h;
    first = live.erase(first, first + v.in);
    const auto& produced = g.out_edges[n];
    live.insert(first, produced.begin(), produced.end());
    for (int e : produced) out.wires[static_cast<std::size_t>(e)].push_back(out.vertices[n]);
    mark_level(n + 1);
  }
  for (std::size_t k = 0; k < live.size(); ++k)
    out.wires[static_cast<std::size_t>(live[k])].emplace_back(
        wire_x(d.height(), static_cast<int>(k)), out.height);
  return out;
}

namespace detail {

// Shortest decimal form of a coordinate; layouts only produce multiples of 0.5.
inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  std::string s = buf;
  if (s.size() > 2 && s.compare(s.size() - 2, 2, ".0") == 0) s.resize(s.size() - 2);
  if (s == "-0") s = "0";
  return s;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '&')
      out += "&amp;";
    else if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else
      out += c;
  }
  return out;
}

}  // namespace detail

inline std::string render_svg(const Diagram& d) {
  Layout l = layout(d);
  using detail::num;
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(l.width) +
                    "\" height=\"" + num(l.height) + "\" viewBox=\"0 0 " + num(l.width) + " " +
                    num(l.height) + "\">\n";
  for (const auto& line : l.wires) {
    out += "  <polyline fill=\"none\" stroke=\"black\" points=\"";
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) out += ' ';
      out += num(line[i].first) + "," + num(line[i].second);
    }
    out += "\"/>\n";
  }
  for (std::size_t n = 0; n < l.vertices.size(); ++n) {
    auto [x, y] = l.vertices[n];
    out += "  <circle cx=\"" + num(x) + "\" cy=\"" + num(y) + "\" r=\"" + num(Layout::radius) +
           "\" fill=\"black\"/>\n";
    if (!d[n].label.empty())
      out += "  <text x=\"" + num(x + 6) + "\" y=\"" + num(y - 4) +
             "\" font-size=\"10\">" + detail::xml_escape(d[n].label) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

/// TikZ picture in points with the y axis pointing down, as in the SVG.
inline std::string render_tikz(const Diagram& d) {
  Layout l = layout(d);
  using detail::num;
  std::string out = "\\begin{tikzpicture}[x=1pt,y=-1pt]\n";
  for (const auto& line : l.wires) {
    out += "  \\draw ";
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) out += " -- ";
      out += "(" + num(line[i].first) + "," + num(line[i].second) + ")";
    }
    out += ";\n";
  }
  for (std::size_t n = 0; n < l.vertices.size(); ++n) {
    auto [x, y] = l.vertices[n];
    out += "  \\fill (" + num(x) + "," + num(y) + ") circle (" + num(Layout::radius) + ");\n";
    if (!d[n].label.empty())
      out += "  \\node[right] at (" + num(x + 3) + "," + num(y) + ") {" + d[n].label + "};\n";
  }
  out += "\\end{tikzpicture}\n";
  return out;
}

/// Debug view: a row of `|` per level and one row per vertex showing what it
/// consumes and produces.
inline std::string render_ascii(const Diagram& d) {
  require_valid(d);
  std::string out;
  auto bars = [](int k) {
    std::string s;
    for (int i = 0; i < k; ++i) s += "| ";
    return s;
  };
  int w = d.sources;
  out += bars(w) + "\n";
  for (std::size_t n = 0; n < d.height(); ++n) {
    const Vertex& v = d[n];
    std::string name = v.label.empty() ? "o" : v.label;
    out += bars(v.h) + "[" + name + " " + std::to_string(v.in) + ":" + std::to_string(v.out) +
           "] " + bars(w - v.h - v.in) + "\n";
    w += delta(v);
    out += bars(w) + "\n";
  }
  return out;
}

}  // namespace sdnorm
