#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sdnorm/diagram.hpp"
#include "sdnorm/edge_graph.hpp"
#include "sdnorm/normalizer.hpp"
#include "sdnorm/serialize.hpp"
#include "sdnorm/union_find.hpp"

namespace sdnorm {

/// The gap between wires k-1 and k at level h. Level h lies just above
/// vertex h; spots at a level run from 0 to W(h).
struct SpotId {
  int level = 0;
  int index = 0;
  friend bool operator==(const SpotId&, const SpotId&) = default;
};

/// Whether spot `upper` at level h touches spot `lower` at level h+1 across
/// vertex h.
inline bool spot_adjacent(const Diagram& d, SpotId upper, SpotId lower) {
  if (lower.level != upper.level + 1) throw IndexError("spots are not on consecutive levels");
  if (upper.level < 0 || static_cast<std::size_t>(upper.level) >= d.height())
    throw IndexError("level out of range");
  const Vertex& v = d[static_cast<std::size_t>(upper.level)];
  int k = upper.index;
  int k2 = lower.index;
  if (k < 0 || k > wires_at(d, static_cast<std::size_t>(upper.level)) || k2 < 0 ||
      k2 > wires_at(d, static_cast<std::size_t>(lower.level)))
    throw IndexError("spot index out of range");
  return (k == k2 && v.h >= k) || (k + delta(v) == k2 && v.h + v.in <= k);
}

/// Faces and components of a closed diagram, with the enclosure relation.
struct Topology {
  std::vector<int> level_offset;  // spot id of (h, 0)
  std::vector<int> spot_face;     // face of each spot, numbered in scan order
  int face_count = 0;
  int root_face = 0;
  std::vector<int> vertex_component;  // numbered by first vertex
  int component_count = 0;
  std::vector<int> component_parent;  // enclosing face of each component
  std::vector<int> face_parent;       // enclosing component, -1 for the root
  std::vector<int> face_top;          // vertex whose outputs open the face, -1 for the root
  std::vector<int> face_top_port;     // the face opens between outputs p and p+1

  int spot(int level, int index) const {
    return level_offset[static_cast<std::size_t>(level)] + index;
  }
  int face_of(int level, int index) const {
    return spot_face[static_cast<std::size_t>(spot(level, index))];
  }
};

/// One scan over the levels: unites adjacent spots into faces and vertices
/// joined by an edge into components.
inline Topology compute_topology(const Diagram& d) {
  require_valid(d);
  if (!is_closed(d)) throw Error("topology requires a closed diagram");
  Topology t;
  auto w = wire_profile(d);
  int total = 0;
  for (int x : w) {
    t.level_offset.push_back(total);
    total += x + 1;
  }
  UnionFind faces(static_cast<std::size_t>(total));
  for (std::size_t h = 0; h < d.height(); ++h) {
    const Vertex& v = d[h];
    int lvl = static_cast<int>(h);
    for (int k = 0; k <= w[h]; ++k) {
      std::size_t up = static_cast<std::size_t>(t.spot(lvl, k));
      if (v.h >= k) faces.unite(up, static_cast<std::size_t>(t.spot(lvl + 1, k)));
      if (v.h + v.in <= k)
        faces.unite(up, static_cast<std::size_t>(t.spot(lvl + 1, k + delta(v))));
    }
  }
  t.spot_face = faces.classes(&t.face_count);
  t.root_face = t.face_of(0, 0);

  ConnectivityReport conn = connectivity(d);
  t.vertex_component = conn.component;
  t.component_count = conn.component_count;

  // Each component hangs in the face around the spot where its topmost
  // vertex appears.
  t.component_parent.assign(static_cast<std::size_t>(t.component_count), -1);
  for (std::size_t n = 0; n < d.height(); ++n) {
    int c = t.vertex_component[n];
    if (t.component_parent[static_cast<std::size_t>(c)] < 0)
      t.component_parent[static_cast<std::size_t>(c)] = t.face_of(static_cast<int>(n), d[n].h);
  }
  // Each bounded face first appears between two outputs of a vertex of its
  // enclosing component.
  t.face_parent.assign(static_cast<std::size_t>(t.face_count), -1);
  t.face_top.assign(static_cast<std::size_t>(t.face_count), -1);
  t.face_top_port.assign(static_cast<std::size_t>(t.face_count), -1);
  t.face_top[static_cast<std::size_t>(t.root_face)] = -2;
  for (std::size_t h = 1; h < w.size(); ++h)
    for (int k = 0; k <= w[h]; ++k) {
      int f = t.face_of(static_cast<int>(h), k);
      if (t.face_top[static_cast<std::size_t>(f)] != -1) continue;
      const Vertex& v = d[h - 1];
      if (k <= v.h || k >= v.h + v.out)
        throw InternalError("face does not open below a vertex");
      t.face_top[static_cast<std::size_t>(f)] = static_cast<int>(h - 1);
      t.face_top_port[static_cast<std::size_t>(f)] = k - v.h - 1;
      t.face_parent[static_cast<std::size_t>(f)] = t.vertex_component[h - 1];
    }
  t.face_top[static_cast<std::size_t>(t.root_face)] = -1;
  return t;
}

/// Component c as a diagram of its own: its vertices in their original
/// order, with positions counted among its own wires only.
inline Diagram component_diagram(const Diagram& d, const Topology& t, int c) {
  Diagram out;
  std::vector<int> wires;  // owning component of each wire at the current level
  for (std::size_t n = 0; n < d.height(); ++n) {
    const Vertex& v = d[n];
    int own = t.vertex_component[n];
    if (own == c) {
      Vertex copy = v;
      copy.h = static_cast<int>(std::count(wires.begin(), wires.begin() + v.h, c));
      out.vertices.push_back(std::move(copy));
    }
    auto first = wires.begin() + v.h;
    first = wires.erase(first, first + v.in);
    wires.insert(first, static_cast<std::size_t>(v.out), own);
  }
  return out;
}

struct FaceNode;

struct ComponentNode {
  Diagram normal_form;
  std::vector<FaceNode> children;
};

struct FaceNode {
  std::vector<ComponentNode> children;
};

/// Structural tree of a closed diagram, rooted at the outer face.
inline FaceNode structural_tree_closed(const Diagram& d) {
  Topology t = compute_topology(d);
  std::vector<std::vector<int>> comps_in_face(static_cast<std::size_t>(t.face_count));
  for (int c = 0; c < t.component_count; ++c)
    comps_in_face[static_cast<std::size_t>(t.component_parent[static_cast<std::size_t>(c)])]
        .push_back(c);
  std::vector<std::vector<int>> faces_in_comp(static_cast<std::size_t>(t.component_count));
  for (int f = 0; f < t.face_count; ++f)
    if (t.face_parent[static_cast<std::size_t>(f)] >= 0)
      faces_in_comp[static_cast<std::size_t>(t.face_parent[static_cast<std::size_t>(f)])]
          .push_back(f);

  // Normal forms and the order of child faces, per component.
  std::vector<Diagram> nf(static_cast<std::size_t>(t.component_count));
  for (int c = 0; c < t.component_count; ++c) {
    Diagram alone = component_diagram(d, t, c);
    std::size_t i = 0;
    for (std::size_t n = 0; n < d.height(); ++n)
      if (t.vertex_component[n] == c) alone[i++].tag = static_cast<std::uint32_t>(n);
    Diagram norm = normalize_fast(alone);
    auto& fs = faces_in_comp[static_cast<std::size_t>(c)];
    if (!fs.empty()) {
      // Rank each child face by the first spot of its image in N(c), in
      // row-major order.
      Topology tn = compute_topology(norm);
      std::vector<std::pair<int, int>> keyed;
      for (int f : fs) {
        std::uint32_t top = static_cast<std::uint32_t>(t.face_top[static_cast<std::size_t>(f)]);
        std::size_t u = detail::index_of_tag(norm.vertices, top);
        int image = tn.face_of(static_cast<int>(u) + 1,
                               norm[u].h + t.face_top_port[static_cast<std::size_t>(f)] + 1);
        keyed.emplace_back(image, f);
      }
      // Face ids are numbered by first spot, so the id is the rank.
      std::sort(keyed.begin(), keyed.end());
      for (std::size_t j = 0; j < keyed.size(); ++j) fs[j] = keyed[j].second;
    }
    for (Vertex& v : norm.vertices) v.tag = 0;
    nf[static_cast<std::size_t>(c)] = std::move(norm);
  }

  // Enclosure is well-founded, so recursion depth is bounded by the nesting.
  struct Builder {
    const std::vector<std::vector<int>>& comps_in_face;
    const std::vector<std::vector<int>>& faces_in_comp;
    std::vector<Diagram>& nf;
    FaceNode face(int f) const {
      FaceNode node;
      for (int c : comps_in_face[static_cast<std::size_t>(f)]) node.children.push_back(comp(c));
      return node;
    }
    ComponentNode comp(int c) const {
      ComponentNode node;
      node.normal_form = nf[static_cast<std::size_t>(c)];
      for (int f : faces_in_comp[static_cast<std::size_t>(c)]) node.children.push_back(face(f));
      return node;
    }
  };
  return Builder{comps_in_face, faces_in_comp, nf}.face(t.root_face);
}

/// Structural tree of any valid diagram; open diagrams are closed first with
/// `__top` and `__bot` vertices so that the boundary is part of the tree.
inline FaceNode build_structural_tree(const Diagram& d) {
  require_valid(d);
  return structural_tree_closed(is_closed(d) ? d : boundary_closure(d));
}

namespace detail {

inline void put_length(std::string& out, std::size_t n) {
  for (int shift = 24; shift >= 0; shift -= 8)
    out.push_back(static_cast<char>((n >> shift) & 0xff));
}

inline void put_block(std::string& out, const std::string& block) {
  put_length(out, block.size());
  out += block;
}

}  // namespace detail

inline std::string canonical_code(const FaceNode& f);

/// 'C', the normal form, then the child face codes in order.
inline std::string canonical_code(const ComponentNode& c) {
  std::string out = "C";
  Diagram plain = c.normal_form;
  for (Vertex& v : plain.vertices) v.tag = 0;
  detail::put_block(out, to_text(plain));
  detail::put_length(out, c.children.size());
  for (const FaceNode& f : c.children) detail::put_block(out, canonical_code(f));
  return out;
}

/// 'F' and the sorted child component codes.
inline std::string canonical_code(const FaceNode& f) {
  std::vector<std::string> kids;
  for (const ComponentNode& c : f.children) kids.push_back(canonical_code(c));
  std::sort(kids.begin(), kids.end());
  std::string out = "F";
  detail::put_length(out, kids.size());
  for (const std::string& k : kids) detail::put_block(out, k);
  return out;
}

/// Canonical code of a diagram's structural tree, prefixed by its boundary
/// widths.
inline std::string diagram_code(const Diagram& d) {
  std::string out = "D";
  detail::put_length(out, static_cast<std::size_t>(d.sources));
  detail::put_length(out, static_cast<std::size_t>(target_count(d)));
  out += canonical_code(build_structural_tree(d));
  return out;
}

/// Exchange equivalence of arbitrary valid diagrams.
inline bool decide_equiv(const Diagram& d1, const Diagram& d2) {
  require_valid(d1);
  require_valid(d2);
  if (d1.sources != d2.sources || target_count(d1) != target_count(d2)) return false;
  return diagram_code(d1) == diagram_code(d2);
}

inline std::string to_hex(const std::string& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(2 * bytes.size());
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 15]);
  }
  return out;
}

namespace detail {

inline std::string vertex_summary(const Diagram& d) {
  std::string out = "S=" + std::to_string(d.sources);
  for (const Vertex& v : d.vertices) {
    out += " (" + std::to_string(v.h) + "," + std::to_string(v.in) + "," +
           std::to_string(v.out);
    if (!v.label.empty()) out += "," + v.label;
    out += ")";
  }
  return out;
}

inline void dump(const FaceNode& f, int depth, std::string& out);

inline void dump(const ComponentNode& c, int depth, std::string& out) {
  out += std::string(static_cast<std::size_t>(2 * depth), ' ') + "component " +
         vertex_summary(c.normal_form) + "\n";
  for (const FaceNode& f : c.children) dump(f, depth + 1, out);
}

inline void dump(const FaceNode& f, int depth, std::string& out) {
  out += std::string(static_cast<std::size_t>(2 * depth), ' ') + "face (" +
         std::to_string(f.children.size()) + " components)\n";
  std::vector<std::pair<std::string, const ComponentNode*>> kids;
  for (const ComponentNode& c : f.children) kids.emplace_back(canonical_code(c), &c);
  std::sort(kids.begin(), kids.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& k : kids) dump(*k.second, depth + 1, out);
}

}  // namespace detail

/// Indented text, one node per line; face children in code order.
inline std::string dump_tree(const FaceNode& root) {
  std::string out;
  detail::dump(root, 0, out);
  return out;
}

}  // namespace sdnorm
