#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sdnorm/diagram.hpp"
#include "sdnorm/edge_graph.hpp"
#include "sdnorm/normalizer.hpp"
#include "sdnorm/planar_map.hpp"
#include "sdnorm/serialize.hpp"

namespace sdnorm {

/// Calls `visit` on every valid unlabeled diagram with at most `max_vertices`
/// vertices, arities at most `max_arity` and at most `max_wires` wires at
/// every level. Order: by vertex count, then source count, then the vertex
/// list compared lexicographically on (I, O, H) from the top.
inline void for_each_diagram(int max_vertices, int max_arity, int max_wires,
                             const std::function<void(const Diagram&)>& visit) {
  Diagram d;
  std::function<void(int, int)> grow = [&](int remaining, int w) {
    if (remaining == 0) {
      visit(d);
      return;
    }
    for (int in = 0; in <= std::min(max_arity, w); ++in)
      for (int out = 0; out <= max_arity; ++out) {
        if (w - in + out > max_wires) continue;
        for (int h = 0; h + in <= w; ++h) {
          d.vertices.push_back({h, in, out, {}, 0});
          grow(remaining - 1, w - in + out);
          d.vertices.pop_back();
        }
      }
  };
  for (int v = 0; v <= max_vertices; ++v)
    for (int s = 0; s <= max_wires; ++s) {
      d.sources = s;
      d.vertices.clear();
      grow(v, s);
    }
}

inline std::vector<Diagram> enumerate_diagrams(int max_vertices, int max_arity,
                                               int max_wires) {
  std::vector<Diagram> out;
  for_each_diagram(max_vertices, max_arity, max_wires,
                   [&](const Diagram& d) { out.push_back(d); });
  return out;
}

enum class OracleVerdict { equivalent, inequivalent, cap_exceeded };

struct OracleResult {
  OracleVerdict verdict = OracleVerdict::inequivalent;
  std::vector<Step> witness;  // from d1 to d2 when equivalent
  std::size_t explored = 0;
};

inline constexpr std::size_t kDefaultNodeCap = 2'000'000;

/// Every diagram reachable from `d` by left and right exchanges, or nothing
/// when the class has more than `node_cap` members.
inline std::optional<std::vector<Diagram>> exchange_class(const Diagram& d,
                                                          std::size_t node_cap = kDefaultNodeCap) {
  std::unordered_map<std::string, std::size_t> seen;
  std::vector<Diagram> members{d};
  seen.emplace(to_text(d), 0);
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t n = 0; n + 1 < members[i].height(); ++n)
      for (Direction dir : {Direction::right, Direction::left}) {
        if (!admits(members[i], n, dir)) continue;
        Diagram next = apply(members[i], n, dir);
        if (seen.emplace(to_text(next), members.size()).second) {
          if (members.size() == node_cap) return std::nullopt;
          members.push_back(std::move(next));
        }
      }
  }
  return members;
}

/// Breadth-first search of the exchange class of d1 for d2.
inline OracleResult bfs_equiv(const Diagram& d1, const Diagram& d2,
                              std::size_t node_cap = kDefaultNodeCap) {
  require_valid(d1);
  require_valid(d2);
  OracleResult r;
  std::string goal = to_text(d2);
  struct Node {
    Diagram d;
    std::size_t parent;
    Step step;
  };
  std::vector<Node> nodes{{d1, 0, {}}};
  std::unordered_map<std::string, std::size_t> seen{{to_text(d1), 0}};
  auto finish = [&](std::size_t at) {
    for (std::size_t i = at; i != 0; i = nodes[i].parent) r.witness.push_back(nodes[i].step);
    std::reverse(r.witness.begin(), r.witness.end());
    r.verdict = OracleVerdict::equivalent;
    r.explored = nodes.size();
    return r;
  };
  if (seen.count(goal)) return finish(0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t n = 0; n + 1 < nodes[i].d.height(); ++n)
      for (Direction dir : {Direction::right, Direction::left}) {
        if (!admits(nodes[i].d, n, dir)) continue;
        Diagram next = apply(nodes[i].d, n, dir);
        std::string key = to_text(next);
        if (!seen.emplace(key, nodes.size()).second) continue;
        if (nodes.size() == node_cap) {
          r.verdict = OracleVerdict::cap_exceeded;
          r.explored = nodes.size();
          return r;
        }
        nodes.push_back({std::move(next), i, {n, dir}});
        if (key == goal) return finish(nodes.size() - 1);
      }
  }
  r.verdict = OracleVerdict::inequivalent;
  r.explored = nodes.size();
  return r;
}

/// Random valid diagram with the given vertex count. Widths stay at or below
/// `max_wires`.
template <class Rng>
Diagram random_diagram(Rng& rng, int vertices, int max_arity, int max_wires) {
  auto uniform = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  Diagram d;
  d.sources = uniform(0, max_wires);
  int w = d.sources;
  for (int n = 0; n < vertices; ++n) {
    int in = uniform(0, std::min(max_arity, w));
    int out = uniform(0, std::max(0, std::min(max_arity, max_wires - w + in)));
    int h = uniform(0, w - in);
    d.vertices.push_back({h, in, out, {}, 0});
    w += out - in;
  }
  return d;
}

/// Random connected diagram without source wires: every vertex after the
/// first consumes at least one wire, and the width stays positive until the
/// last vertex.
template <class Rng>
Diagram random_connected(Rng& rng, int vertices, int max_arity) {
  auto uniform = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  Diagram d;
  int w = 0;
  for (int n = 0; n < vertices; ++n) {
    bool last = n + 1 == vertices;
    int in = n == 0 ? 0 : uniform(1, std::min(max_arity, w));
    int lo = (last || w - in > 0) ? 0 : 1;
    if (n == 0 && !last) lo = 1;
    int out = uniform(lo, std::max(lo, max_arity));
    int h = uniform(0, w - in);
    d.vertices.push_back({h, in, out, {}, 0});
    w += out - in;
  }
  return d;
}

/// Random boundary-connected diagram: rejection sampling over
/// random_diagram, falling back to vertices that all consume a wire while
/// the width stays positive.
template <class Rng>
Diagram random_boundary_connected(Rng& rng, int vertices, int max_arity, int max_wires) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Diagram d = random_diagram(rng, vertices, max_arity, max_wires);
    if (is_boundary_connected(d)) return d;
  }
  auto uniform = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  Diagram d;
  d.sources = uniform(1, std::max(1, max_wires));
  int w = d.sources;
  for (int n = 0; n < vertices; ++n) {
    int in = uniform(1, std::min(max_arity, w));
    int lo = w - in > 0 ? 0 : 1;
    int out = uniform(lo, std::max(lo, std::min(max_arity, max_wires - w + in)));
    int h = uniform(0, w - in);
    d.vertices.push_back({h, in, out, {}, 0});
    w += out - in;
  }
  return d;
}

/// `count` random admissible exchanges in either direction.
template <class Rng>
Diagram random_exchanges(Rng& rng, Diagram d, int count, std::vector<Step>* steps = nullptr) {
  std::vector<Step> options;
  for (int i = 0; i < count; ++i) {
    options.clear();
    for (std::size_t n = 0; n + 1 < d.height(); ++n)
      for (Direction dir : {Direction::right, Direction::left})
        if (admits(d, n, dir)) options.push_back({n, dir});
    if (options.empty()) break;
    Step s = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
    exchange(d, s.height, s.dir);
    if (steps) steps->push_back(s);
  }
  return d;
}

/// Exhaustive isomorphism search: assigns images dart by dart and backtracks
/// on the first inconsistency with x, y, the flags or the labels. Meant for
/// small maps only.
inline bool brute_force_isomorphic(const CombinatorialMap& a, const CombinatorialMap& b,
                                   const std::vector<char>* fa = nullptr,
                                   const std::vector<char>* fb = nullptr) {
  std::size_t n = a.size();
  if (b.size() != n) return false;
  std::vector<int> img(n, -1);
  std::vector<char> used(n, 0);
  auto consistent = [&](std::size_t d) {
    int e = img[d];
    if (a.label(d) != b.label(static_cast<std::size_t>(e))) return false;
    if (fa && (*fa)[d] != (*fb)[static_cast<std::size_t>(e)]) return false;
    for (const auto& [pa, pb] : {std::pair{&a.x, &b.x}, std::pair{&a.y, &b.y}}) {
      // forward: image of p(d) must be p(image of d)
      int fwd = img[static_cast<std::size_t>((*pa)[d])];
      if (fwd >= 0 && fwd != (*pb)[static_cast<std::size_t>(e)]) return false;
      // backward: any dart c with p(c) = d already mapped
      for (std::size_t c = 0; c < n; ++c)
        if ((*pa)[c] == static_cast<int>(d) && img[c] >= 0 &&
            (*pb)[static_cast<std::size_t>(img[c])] != e)
          return false;
    }
    return true;
  };
  std::function<bool(std::size_t)> place = [&](std::size_t d) {
    if (d == n) return true;
    for (std::size_t e = 0; e < n; ++e) {
      if (used[e]) continue;
      img[d] = static_cast<int>(e);
      used[e] = 1;
      if (consistent(d) && place(d + 1)) return true;
      used[e] = 0;
      img[d] = -1;
    }
    return false;
  };
  return place(0);
}

inline bool brute_force_isomorphic(const DirectedMap& a, const DirectedMap& b) {
  return brute_force_isomorphic(a.map, b.map, &a.distinguished, &b.distinguished);
}

}  // namespace sdnorm
