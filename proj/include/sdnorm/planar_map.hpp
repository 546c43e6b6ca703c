#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sdnorm/diagram.hpp"
#include "sdnorm/edge_graph.hpp"
#include "sdnorm/normalizer.hpp"

namespace sdnorm {

/// Darts 0..n-1 with a fixed-point-free involution `x` pairing the two
/// halves of each edge and a permutation `y` listing the darts around each
/// vertex counterclockwise. Labels are optional; an empty vector means none.
struct CombinatorialMap {
  std::vector<int> x;
  std::vector<int> y;
  std::vector<std::string> labels;

  std::size_t size() const { return x.size(); }
  const std::string& label(std::size_t d) const {
    static const std::string none;
    return labels.empty() ? none : labels[d];
  }
};

/// A map with one distinguished dart per edge, marking its direction.
struct DirectedMap {
  CombinatorialMap map;
  std::vector<char> distinguished;
};

namespace detail {

inline bool is_permutation(const std::vector<int>& p) {
  std::vector<char> hit(p.size(), 0);
  for (int v : p) {
    if (v < 0 || static_cast<std::size_t>(v) >= p.size() || hit[static_cast<std::size_t>(v)])
      return false;
    hit[static_cast<std::size_t>(v)] = 1;
  }
  return true;
}

inline int count_cycles(const std::vector<int>& p) {
  std::vector<char> seen(p.size(), 0);
  int cycles = 0;
  for (std::size_t s = 0; s < p.size(); ++s) {
    if (seen[s]) continue;
    ++cycles;
    for (std::size_t d = s; !seen[d]; d = static_cast<std::size_t>(p[d])) seen[d] = 1;
  }
  return cycles;
}

// Face permutation: the dart after d along its face.
inline std::vector<int> face_permutation(const CombinatorialMap& m) {
  std::vector<int> p(m.size());
  for (std::size_t d = 0; d < m.size(); ++d)
    p[d] = m.y[static_cast<std::size_t>(m.x[d])];
  return p;
}

}  // namespace detail

/// Whether every dart is reachable from dart 0 through x and y.
inline bool is_transitive(const CombinatorialMap& m) {
  if (m.size() == 0) return true;
  std::vector<char> seen(m.size(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    int d = stack.back();
    stack.pop_back();
    for (int e : {m.x[static_cast<std::size_t>(d)], m.y[static_cast<std::size_t>(d)]})
      if (!seen[static_cast<std::size_t>(e)]) {
        seen[static_cast<std::size_t>(e)] = 1;
        ++reached;
        stack.push_back(e);
      }
  }
  return reached == m.size();
}

/// Throws unless x is a fixed-point-free involution, y a permutation and the
/// map connected.
inline void validate(const CombinatorialMap& m) {
  if (m.y.size() != m.x.size()) throw Error("x and y act on different dart sets");
  if (!m.labels.empty() && m.labels.size() != m.size()) throw Error("label count mismatch");
  if (!detail::is_permutation(m.x) || !detail::is_permutation(m.y))
    throw Error("x and y must be permutations");
  for (std::size_t d = 0; d < m.size(); ++d)
    if (m.x[d] == static_cast<int>(d) || m.x[static_cast<std::size_t>(m.x[d])] != static_cast<int>(d))
      throw Error("x must be a fixed-point-free involution");
  if (!is_transitive(m)) throw NotConnected();
}

inline void validate(const DirectedMap& m) {
  validate(m.map);
  if (m.distinguished.size() != m.map.size()) throw Error("flag count mismatch");
  for (std::size_t d = 0; d < m.map.size(); ++d)
    if (m.distinguished[d] == m.distinguished[static_cast<std::size_t>(m.map.x[d])])
      throw Error("each edge needs exactly one distinguished dart");
}

struct MapCounts {
  int vertices = 0;
  int edges = 0;
  int faces = 0;
};

/// Vertices are the cycles of y, faces the cycles of the face permutation.
inline MapCounts map_counts(const CombinatorialMap& m) {
  validate(m);
  return {detail::count_cycles(m.y), static_cast<int>(m.size() / 2),
          detail::count_cycles(detail::face_permutation(m))};
}

inline int euler_characteristic(const CombinatorialMap& m) {
  MapCounts c = map_counts(m);
  return c.vertices - c.edges + c.faces;
}

inline bool is_planar(const CombinatorialMap& m) { return euler_characteristic(m) == 2; }

/// Builds a map from cycle lists over darts 1..n, as usually written.
inline CombinatorialMap map_from_cycles(const std::vector<std::vector<int>>& x,
                                        const std::vector<std::vector<int>>& y) {
  std::size_t n = 0;
  for (const auto* cs : {&x, &y})
    for (const auto& c : *cs)
      for (int d : c) n = std::max(n, static_cast<std::size_t>(d));
  CombinatorialMap m;
  m.x.resize(n);
  m.y.resize(n);
  for (std::size_t d = 0; d < n; ++d) m.x[d] = m.y[d] = static_cast<int>(d);
  auto fill = [](std::vector<int>& p, const std::vector<std::vector<int>>& cycles) {
    for (const auto& c : cycles)
      for (std::size_t i = 0; i < c.size(); ++i)
        p[static_cast<std::size_t>(c[i] - 1)] = c[(i + 1) % c.size()] - 1;
  };
  fill(m.x, x);
  fill(m.y, y);
  return m;
}

/// Cycle notation with darts numbered from 1; fixed points are omitted.
inline std::string cycles_to_string(const std::vector<int>& p) {
  std::string out;
  std::vector<char> seen(p.size(), 0);
  for (std::size_t s = 0; s < p.size(); ++s) {
    if (seen[s] || p[s] == static_cast<int>(s)) {
      seen[s] = 1;
      continue;
    }
    out += "(";
    for (std::size_t d = s; !seen[d]; d = static_cast<std::size_t>(p[d])) {
      seen[d] = 1;
      if (d != s) out += ' ';
      out += std::to_string(d + 1);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

inline std::string dump_map(const DirectedMap& m) {
  std::string out = "x = " + cycles_to_string(m.map.x) + "\n";
  out += "y = " + cycles_to_string(m.map.y) + "\n";
  out += "D = {";
  bool first = true;
  for (std::size_t d = 0; d < m.map.size(); ++d)
    if (m.distinguished[d]) {
      out += (first ? "" : " ") + std::to_string(d + 1);
      first = false;
    }
  out += "}\n";
  for (std::size_t d = 0; d < m.map.size(); ++d)
    if (!m.map.label(d).empty())
      out += "label " + std::to_string(d + 1) + " " + m.map.label(d) + "\n";
  return out;
}

/// Directed map of a boundary-connected diagram. Each vertex becomes a
/// gadget: its darts counterclockwise from the west are a dangling edge,
/// the outputs left to right, a second dangling edge, then the inputs right
/// to left. Edges point downwards; the distinguished dart of an edge is the
/// one at its upper end, and of a dangling edge the one at the gadget. Every
/// gadget dart carries the vertex label. Open diagrams, and the empty one,
/// are closed first.
inline DirectedMap gamma(const Diagram& d) {
  require_valid(d);
  if (!closure_is_connected(d)) throw NotBoundaryConnected();
  Diagram c = is_closed(d) && !d.empty() ? d : boundary_closure(d);
  EdgeGraph g = extract_graph(c);
  std::size_t e = g.edges.size();
  std::size_t n = c.height();
  std::size_t darts = 2 * e + 4 * n;
  DirectedMap m;
  m.map.x.assign(darts, 0);
  m.map.y.assign(darts, 0);
  m.map.labels.assign(darts, {});
  m.distinguished.assign(darts, 0);
  for (std::size_t i = 0; i < darts; ++i) {
    m.map.x[i] = static_cast<int>(i ^ 1);
    m.map.y[i] = static_cast<int>(i);
  }
  for (std::size_t i = 0; i < e; ++i) m.distinguished[2 * i] = 1;
  for (std::size_t v = 0; v < n; ++v) {
    int west = static_cast<int>(2 * e + 4 * v);
    int east = west + 2;
    m.distinguished[static_cast<std::size_t>(west)] = 1;
    m.distinguished[static_cast<std::size_t>(east)] = 1;
    std::vector<int> ring{west};
    for (int id : g.out_edges[v]) ring.push_back(2 * id);
    ring.push_back(east);
    const auto& ins = g.in_edges[v];
    for (auto it = ins.rbegin(); it != ins.rend(); ++it) ring.push_back(2 * *it + 1);
    for (std::size_t i = 0; i < ring.size(); ++i) {
      m.map.y[static_cast<std::size_t>(ring[i])] = ring[(i + 1) % ring.size()];
      m.map.labels[static_cast<std::size_t>(ring[i])] = c[v].label;
    }
  }
  return m;
}

/// Undirected map in which every directed edge s -> t becomes s - mid - t
/// with a loop at mid; around mid the darts run toward s, loop, loop, toward
/// t. Original darts keep their numbers and the new ones follow, four per
/// edge in order of the distinguished dart.
inline CombinatorialMap iota(const DirectedMap& m) {
  validate(m);
  std::size_t n = m.map.size();
  CombinatorialMap out;
  out.x.assign(3 * n, 0);
  out.y.assign(3 * n, 0);
  for (std::size_t d = 0; d < n; ++d) out.y[d] = m.map.y[d];
  if (!m.map.labels.empty()) {
    out.labels.assign(3 * n, {});
    for (std::size_t d = 0; d < n; ++d) out.labels[d] = m.map.labels[d];
  }
  std::size_t next = n;
  for (std::size_t a = 0; a < n; ++a) {
    if (!m.distinguished[a]) continue;
    int b = m.map.x[a];
    int to_s = static_cast<int>(next), loop_a = to_s + 1, loop_b = to_s + 2, to_t = to_s + 3;
    next += 4;
    auto pair = [&](int p, int q) {
      out.x[static_cast<std::size_t>(p)] = q;
      out.x[static_cast<std::size_t>(q)] = p;
    };
    pair(static_cast<int>(a), to_s);
    pair(b, to_t);
    pair(loop_a, loop_b);
    out.y[static_cast<std::size_t>(to_s)] = loop_a;
    out.y[static_cast<std::size_t>(loop_a)] = loop_b;
    out.y[static_cast<std::size_t>(loop_b)] = to_t;
    out.y[static_cast<std::size_t>(to_t)] = to_s;
  }
  return out;
}

namespace detail {

// Breadth-first relabeling from `root`, compared against `best` as it is
// produced. Returns false as soon as the sequence exceeds `best`; when it
// is smaller, `best` is replaced.
inline bool relabel_from(const CombinatorialMap& m, const std::vector<char>* flags, int root,
                         const std::vector<int>& label_rank, std::vector<int>& best,
                         std::vector<int>& order, std::vector<int>& name) {
  std::size_t n = m.size();
  order.clear();
  std::fill(name.begin(), name.end(), -1);
  name[static_cast<std::size_t>(root)] = 0;
  order.push_back(root);
  bool smaller = best.empty();
  std::vector<int> code;
  code.reserve(4 * n);
  auto emit = [&](int v) {
    std::size_t i = code.size();
    code.push_back(v);
    if (smaller) return true;
    if (v < best[i]) {
      smaller = true;
      return true;
    }
    return v == best[i];
  };
  for (std::size_t i = 0; i < order.size(); ++i) {
    int d = order[i];
    for (int nb : {m.x[static_cast<std::size_t>(d)], m.y[static_cast<std::size_t>(d)]}) {
      if (name[static_cast<std::size_t>(nb)] < 0) {
        name[static_cast<std::size_t>(nb)] = static_cast<int>(order.size());
        order.push_back(nb);
      }
      if (!emit(name[static_cast<std::size_t>(nb)])) return false;
    }
    if (!emit(flags ? (*flags)[static_cast<std::size_t>(d)] : 0)) return false;
    if (!emit(label_rank[static_cast<std::size_t>(d)])) return false;
  }
  if (order.size() != n) throw NotConnected();
  if (smaller) best = std::move(code);
  return smaller;
}

inline std::vector<int> canonical_sequence(const CombinatorialMap& m,
                                           const std::vector<char>* flags,
                                           std::vector<std::string>* label_table) {
  validate(m);
  std::size_t n = m.size();
  // Labels are replaced by their rank among the sorted distinct labels; the
  // table itself is part of the code.
  std::vector<std::string> table;
  for (std::size_t d = 0; d < n; ++d) table.push_back(m.label(d));
  std::sort(table.begin(), table.end());
  table.erase(std::unique(table.begin(), table.end()), table.end());
  std::vector<int> rank(n);
  for (std::size_t d = 0; d < n; ++d)
    rank[d] = static_cast<int>(std::lower_bound(table.begin(), table.end(), m.label(d)) -
                               table.begin());
  if (label_table) *label_table = table;
  if (n == 0) return {};

  // Roots are restricted to the darts with the smallest local signature,
  // which any isomorphism must preserve.
  std::vector<int> yc(n), fc(n);
  auto cycle_lengths = [n](const std::vector<int>& p, std::vector<int>& out) {
    std::vector<char> seen(n, 0);
    std::vector<int> members;
    for (std::size_t s = 0; s < n; ++s) {
      if (seen[s]) continue;
      members.clear();
      for (std::size_t d = s; !seen[d]; d = static_cast<std::size_t>(p[d])) {
        seen[d] = 1;
        members.push_back(static_cast<int>(d));
      }
      for (int d : members) out[static_cast<std::size_t>(d)] = static_cast<int>(members.size());
    }
  };
  cycle_lengths(m.y, yc);
  cycle_lengths(face_permutation(m), fc);
  auto key = [&](std::size_t d) {
    return std::make_tuple(flags ? (*flags)[d] : 0, yc[d], fc[d], rank[d]);
  };
  auto lowest = key(0);
  for (std::size_t d = 1; d < n; ++d) lowest = std::min(lowest, key(d));

  std::vector<int> best, order, name(n);
  for (std::size_t r = 0; r < n; ++r)
    if (key(r) == lowest)
      relabel_from(m, flags, static_cast<int>(r), rank, best, order, name);
  return best;
}

inline std::string encode(const std::vector<int>& seq, const std::vector<std::string>& table) {
  std::string out;
  auto put = [&out](std::size_t v) {
    for (int shift = 24; shift >= 0; shift -= 8)
      out.push_back(static_cast<char>((v >> shift) & 0xff));
  };
  put(table.size());
  for (const std::string& s : table) {
    put(s.size());
    out += s;
  }
  put(seq.size());
  for (int v : seq) put(static_cast<std::size_t>(v));
  return out;
}

}  // namespace detail

/// Canonical code: the smallest breadth-first relabeling over all admissible
/// roots. Equal codes iff isomorphic (labels included).
inline std::string canonical_map_code(const CombinatorialMap& m) {
  std::vector<std::string> table;
  auto seq = detail::canonical_sequence(m, nullptr, &table);
  return "M" + detail::encode(seq, table);
}

inline std::string canonical_map_code(const DirectedMap& m) {
  validate(m);
  std::vector<std::string> table;
  auto seq = detail::canonical_sequence(m.map, &m.distinguished, &table);
  return "R" + detail::encode(seq, table);
}

inline bool maps_isomorphic(const CombinatorialMap& a, const CombinatorialMap& b) {
  if (a.size() != b.size()) return false;
  return canonical_map_code(a) == canonical_map_code(b);
}

inline bool maps_isomorphic(const DirectedMap& a, const DirectedMap& b) {
  if (a.map.size() != b.map.size()) return false;
  return canonical_map_code(a) == canonical_map_code(b);
}

/// Exchange equivalence of two diagrams whose closures are connected,
/// decided on their directed maps.
inline bool decide_equiv_connected(const Diagram& d1, const Diagram& d2) {
  require_valid(d1);
  require_valid(d2);
  if (!closure_is_connected(d1) || !closure_is_connected(d2)) throw NotConnected();
  if (d1.sources != d2.sources || target_count(d1) != target_count(d2)) return false;
  return maps_isomorphic(gamma(d1), gamma(d2));
}

/// Reverses every vertex rotation: the mirror image of the map.
inline CombinatorialMap mirror(const CombinatorialMap& m) {
  CombinatorialMap out = m;
  for (std::size_t d = 0; d < m.size(); ++d)
    out.y[static_cast<std::size_t>(m.y[d])] = static_cast<int>(d);
  return out;
}

/// Relabels darts by `perm`: dart d becomes perm[d].
inline CombinatorialMap conjugate(const CombinatorialMap& m, const std::vector<int>& perm) {
  CombinatorialMap out;
  std::size_t n = m.size();
  out.x.assign(n, 0);
  out.y.assign(n, 0);
  if (!m.labels.empty()) out.labels.assign(n, {});
  for (std::size_t d = 0; d < n; ++d) {
    std::size_t p = static_cast<std::size_t>(perm[d]);
    out.x[p] = perm[static_cast<std::size_t>(m.x[d])];
    out.y[p] = perm[static_cast<std::size_t>(m.y[d])];
    if (!m.labels.empty()) out.labels[p] = m.labels[d];
  }
  return out;
}

inline DirectedMap conjugate(const DirectedMap& m, const std::vector<int>& perm) {
  DirectedMap out{conjugate(m.map, perm), std::vector<char>(m.map.size(), 0)};
  for (std::size_t d = 0; d < m.map.size(); ++d)
    out.distinguished[static_cast<std::size_t>(perm[d])] = m.distinguished[d];
  return out;
}

}  // namespace sdnorm
