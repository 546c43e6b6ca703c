#pragma once

#include <cstddef>
#include <vector>

#include "sdnorm/diagram.hpp"
#include "sdnorm/union_find.hpp"

namespace sdnorm {

enum class EndKind { vertex, source, target };

/// One end of an edge. For a vertex end, `index` is the vertex and `port` the
/// input or output position on it. For a boundary end, `index` is the wire
/// position on that boundary and `port` is 0.
struct Endpoint {
  EndKind kind = EndKind::vertex;
  int index = 0;
  int port = 0;

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

/// An edge runs downwards from `tail` (a source wire or an output port) to
/// `head` (a target wire or an input port).
struct Edge {
  Endpoint tail;
  Endpoint head;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct EdgeGraph {
  int vertex_count = 0;
  std::vector<Edge> edges;
  /// Edge ids attached to each vertex, by port, left to right.
  std::vector<std::vector<int>> in_edges;
  std::vector<std::vector<int>> out_edges;
  std::vector<int> source_edges;
  std::vector<int> target_edges;
};

/// Traces every wire from where it is produced to where it is consumed.
/// Edges are numbered in creation order: source wires first, then the
/// outputs of each vertex from top to bottom.
inline EdgeGraph extract_graph(const Diagram& d) {
  require_valid(d);
  EdgeGraph g;
  g.vertex_count = static_cast<int>(d.height());
  g.in_edges.resize(d.height());
  g.out_edges.resize(d.height());
  g.edges.reserve(edge_count(d));

  std::vector<int> wires;
  for (int k = 0; k < d.sources; ++k) {
    g.edges.push_back({{EndKind::source, k, 0}, {}});
    g.source_edges.push_back(k);
    wires.push_back(k);
  }
  std::vector<int> produced;
  for (std::size_t n = 0; n < d.height(); ++n) {
    const Vertex& v = d.vertices[n];
    int vn = static_cast<int>(n);
    auto& ins = g.in_edges[n];
    for (int j = 0; j < v.in; ++j) {
      int e = wires[static_cast<std::size_t>(v.h + j)];
      g.edges[static_cast<std::size_t>(e)].head = {EndKind::vertex, vn, j};
      ins.push_back(e);
    }
    produced.clear();
    for (int j = 0; j < v.out; ++j) {
      int e = static_cast<int>(g.edges.size());
      g.edges.push_back({{EndKind::vertex, vn, j}, {}});
      produced.push_back(e);
    }
    g.out_edges[n] = produced;
    auto first = wires.begin() + v.h;
    first = wires.erase(first, first + v.in);
    wires.insert(first, produced.begin(), produced.end());
  }
  for (std::size_t k = 0; k < wires.size(); ++k) {
    g.edges[static_cast<std::size_t>(wires[k])].head = {EndKind::target,
                                                        static_cast<int>(k), 0};
    g.target_edges.push_back(wires[k]);
  }
  return g;
}

enum class Connectivity { connected, boundary_connected, disconnected };

inline const char* to_string(Connectivity c) {
  switch (c) {
    case Connectivity::connected:
      return "connected";
    case Connectivity::boundary_connected:
      return "boundary-connected";
    default:
      return "disconnected";
  }
}

struct ConnectivityReport {
  Connectivity kind = Connectivity::connected;
  /// Component id of each vertex, numbered by first appearance.
  std::vector<int> component;
  int component_count = 0;
};

/// Classifies a diagram. `connected` means every pair of vertices is linked
/// by a path (vacuous for fewer than two vertices); `boundary_connected`
/// means every component reaches a source or target wire.
inline ConnectivityReport connectivity(const Diagram& d) {
  EdgeGraph g = extract_graph(d);
  UnionFind uf(d.height());
  std::vector<char> touches(d.height(), 0);
  for (const Edge& e : g.edges) {
    bool tv = e.tail.kind == EndKind::vertex;
    bool hv = e.head.kind == EndKind::vertex;
    if (tv && hv)
      uf.unite(static_cast<std::size_t>(e.tail.index),
               static_cast<std::size_t>(e.head.index));
    else if (tv)
      touches[static_cast<std::size_t>(e.tail.index)] = 1;
    else if (hv)
      touches[static_cast<std::size_t>(e.head.index)] = 1;
  }
  ConnectivityReport r;
  r.component = uf.classes(&r.component_count);
  if (r.component_count <= 1) {
    r.kind = Connectivity::connected;
    return r;
  }
  std::vector<char> reached(static_cast<std::size_t>(r.component_count), 0);
  for (std::size_t v = 0; v < d.height(); ++v)
    if (touches[v]) reached[static_cast<std::size_t>(r.component[v])] = 1;
  bool all = true;
  for (char c : reached) all = all && c;
  r.kind = all ? Connectivity::boundary_connected : Connectivity::disconnected;
  return r;
}

inline bool is_connected(const Diagram& d) {
  return connectivity(d).kind == Connectivity::connected;
}

inline bool is_boundary_connected(const Diagram& d) {
  return connectivity(d).kind != Connectivity::disconnected;
}

/// True when some vertex is attached to a source or target wire.
inline bool touches_boundary(const Diagram& d) {
  EdgeGraph g = extract_graph(d);
  for (const Edge& e : g.edges)
    if ((e.tail.kind == EndKind::vertex) != (e.head.kind == EndKind::vertex)) return true;
  return false;
}

/// Whether adding the two closure vertices yields a connected diagram: the
/// diagram is closed and connected, or every component reaches the boundary.
inline bool closure_is_connected(const Diagram& d) {
  ConnectivityReport r = connectivity(d);
  if (is_closed(d)) return r.kind == Connectivity::connected;
  if (r.kind == Connectivity::disconnected) return false;
  return d.empty() || touches_boundary(d);
}

}  // namespace sdnorm
