#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "sdnorm/diagram.hpp"
#include "sdnorm/edge_graph.hpp"

namespace sdnorm {

/// Rotation system of a closed diagram. Edge e has two darts: 2e at its tail
/// (an output port) and 2e+1 at its head (an input port). Around each vertex
/// darts are listed clockwise as drawn: inputs left to right along the top,
/// then outputs right to left along the bottom.
struct Embedding {
  EdgeGraph graph;
  std::vector<std::vector<int>> rotation;
  std::vector<int> dart_vertex;
  std::vector<int> dart_slot;  // position of a dart in its vertex rotation
  /// Face orbits. Each lists departure darts in walking order, with the face
  /// on the walker's left; bounded faces are walked counterclockwise.
  std::vector<std::vector<int>> faces;
  std::vector<int> dart_face;

  static int twin(int dart) { return dart ^ 1; }
  static int edge_of(int dart) { return dart >> 1; }
  static bool at_output(int dart) { return (dart & 1) == 0; }

  int port_of(int dart) const {
    const Edge& e = graph.edges[static_cast<std::size_t>(edge_of(dart))];
    return at_output(dart) ? e.tail.port : e.head.port;
  }

  int output_dart(int vertex, int port) const {
    return 2 * graph.out_edges[static_cast<std::size_t>(vertex)]
                              [static_cast<std::size_t>(port)];
  }

  int input_dart(int vertex, int port) const {
    return 2 * graph.in_edges[static_cast<std::size_t>(vertex)]
                             [static_cast<std::size_t>(port)] +
           1;
  }

  int clockwise_next(int dart) const {
    const auto& r = rotation[static_cast<std::size_t>(dart_vertex[static_cast<std::size_t>(dart)])];
    std::size_t i = static_cast<std::size_t>(dart_slot[static_cast<std::size_t>(dart)]) + 1;
    return r[i == r.size() ? 0 : i];
  }

  /// Next departure dart along a face walk.
  int walk_next(int dart) const { return clockwise_next(twin(dart)); }
};

inline Embedding embed(const Diagram& d) {
  if (!is_closed(d)) throw Error("embedding requires a closed diagram");
  Embedding m;
  m.graph = extract_graph(d);
  std::size_t darts = 2 * m.graph.edges.size();
  m.dart_vertex.assign(darts, -1);
  m.dart_slot.assign(darts, -1);
  m.rotation.resize(d.height());
  for (std::size_t v = 0; v < d.height(); ++v) {
    auto& r = m.rotation[v];
    for (int e : m.graph.in_edges[v]) r.push_back(2 * e + 1);
    const auto& outs = m.graph.out_edges[v];
    for (auto it = outs.rbegin(); it != outs.rend(); ++it) r.push_back(2 * *it);
    for (std::size_t i = 0; i < r.size(); ++i) {
      m.dart_vertex[static_cast<std::size_t>(r[i])] = static_cast<int>(v);
      m.dart_slot[static_cast<std::size_t>(r[i])] = static_cast<int>(i);
    }
  }
  m.dart_face.assign(darts, -1);
  for (std::size_t start = 0; start < darts; ++start) {
    if (m.dart_face[start] >= 0) continue;
    int id = static_cast<int>(m.faces.size());
    std::vector<int> orbit;
    int x = static_cast<int>(start);
    while (m.dart_face[static_cast<std::size_t>(x)] < 0) {
      m.dart_face[static_cast<std::size_t>(x)] = id;
      orbit.push_back(x);
      x = m.walk_next(x);
    }
    m.faces.push_back(std::move(orbit));
  }
  return m;
}

/// Rotation number at a vertex, entering through `arrival` and leaving
/// through `departure` (both darts at that vertex).
inline int rotation_number(const Embedding& m, int arrival, int departure) {
  bool a_out = Embedding::at_output(arrival);
  bool d_out = Embedding::at_output(departure);
  if (a_out != d_out) return 0;
  int p1 = m.port_of(arrival);
  int p2 = m.port_of(departure);
  if (a_out) return p1 > p2 ? 1 : -1;
  return p1 < p2 ? 1 : -1;
}

/// A bounded face whose boundary is a simple cycle, listed in direct
/// rotation: `rotations[i]` is the rotation number at the vertex reached at
/// the end of `edges[i]`.
struct SimpleFace {
  int face = -1;
  std::vector<int> edges;
  std::vector<int> vertices;  // vertices[i] is the end of edges[i]
  std::vector<int> rotations;
};

struct MountainRange {
  std::vector<int> edges;
  std::vector<int> rotations;
  std::vector<int> sums;  // sums[0] = 0; sums.back() = 2
};

namespace detail {

inline bool walk_is_simple(const Embedding& m, const std::vector<int>& orbit,
                           std::vector<int>& seen_stamp, int stamp) {
  for (int dart : orbit) {
    int v = m.dart_vertex[static_cast<std::size_t>(dart)];
    if (seen_stamp[static_cast<std::size_t>(v)] == stamp) return false;
    seen_stamp[static_cast<std::size_t>(v)] = stamp;
  }
  return true;
}

inline SimpleFace direct_rotation(const Embedding& m, int face) {
  const auto& f = m.faces[static_cast<std::size_t>(face)];
  std::size_t k = f.size();
  std::vector<int> rs(k);
  for (std::size_t i = 0; i < k; ++i)
    rs[i] = rotation_number(m, Embedding::twin(f[i]), f[(i + 1) % k]);
  // Reverse the counterclockwise walk; the rotation after edge i in the
  // reversed order is the one met just before it in the forward order.
  SimpleFace out;
  out.face = face;
  for (std::size_t j = 0; j < k; ++j) {
    std::size_t i = k - 1 - j;
    out.edges.push_back(Embedding::edge_of(f[i]));
    out.vertices.push_back(m.dart_vertex[static_cast<std::size_t>(f[i])]);
    out.rotations.push_back(rs[(i + k - 1) % k]);
  }
  return out;
}

}  // namespace detail

/// Bounded faces of a closed connected diagram whose boundary visits no
/// vertex twice.
inline std::vector<SimpleFace> simple_faces(const Embedding& m) {
  std::vector<SimpleFace> out;
  std::vector<int> stamp(m.rotation.size(), -1);
  for (std::size_t f = 0; f < m.faces.size(); ++f) {
    if (!detail::walk_is_simple(m, m.faces[f], stamp, static_cast<int>(f))) continue;
    SimpleFace sf = detail::direct_rotation(m, static_cast<int>(f));
    int total = 0;
    for (int r : sf.rotations) total += r;
    if (total == 2) out.push_back(std::move(sf));
  }
  return out;
}

/// The first simple face found, or an empty face when there is none.
inline SimpleFace find_simple_face(const Embedding& m) {
  std::vector<int> stamp(m.rotation.size(), -1);
  for (std::size_t f = 0; f < m.faces.size(); ++f) {
    if (!detail::walk_is_simple(m, m.faces[f], stamp, static_cast<int>(f))) continue;
    SimpleFace sf = detail::direct_rotation(m, static_cast<int>(f));
    int total = 0;
    for (int r : sf.rotations) total += r;
    if (total == 2) return sf;
  }
  return {};
}

inline std::vector<SimpleFace> simple_faces(const Diagram& d) {
  if (!is_connected(d)) throw NotConnected();
  return simple_faces(embed(d));
}

inline MountainRange mountain_range(const SimpleFace& f, std::size_t start) {
  if (start >= f.edges.size()) throw IndexError("start edge out of range");
  MountainRange r;
  std::size_t k = f.edges.size();
  r.sums.push_back(0);
  for (std::size_t j = 0; j < k; ++j) {
    std::size_t i = (start + j) % k;
    r.edges.push_back(f.edges[i]);
    r.rotations.push_back(f.rotations[i]);
    r.sums.push_back(r.sums.back() + f.rotations[i]);
  }
  return r;
}

/// An edge is eliminable when its mountain range stays at or above 1 after
/// the first step.
inline bool is_eliminable(const SimpleFace& f, std::size_t start) {
  std::size_t k = f.edges.size();
  int sum = 0;
  for (std::size_t j = 0; j < k; ++j) {
    sum += f.rotations[(start + j) % k];
    if (sum < 1) return false;
  }
  return true;
}

/// Positions (in `f.edges`) of every eliminable edge.
inline std::vector<std::size_t> eliminable_positions(const SimpleFace& f) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < f.edges.size(); ++i)
    if (is_eliminable(f, i)) out.push_back(i);
  return out;
}

/// The two eliminable positions of a simple face.
inline std::array<std::size_t, 2> eliminable_edges(const SimpleFace& f) {
  auto pos = eliminable_positions(f);
  if (pos.size() != 2)
    throw InternalError("simple face with " + std::to_string(pos.size()) +
                        " eliminable edges");
  return {pos[0], pos[1]};
}

}  // namespace sdnorm
