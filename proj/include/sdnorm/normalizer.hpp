#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sdnorm/diagram.hpp"
#include "sdnorm/edge_graph.hpp"
#include "sdnorm/embedding.hpp"
#include "sdnorm/serialize.hpp"

namespace sdnorm {

inline constexpr const char* kTopLabel = "__top";
inline constexpr const char* kBottomLabel = "__bot";

struct Step {
  std::size_t height = 0;
  Direction dir = Direction::right;
  friend bool operator==(const Step&, const Step&) = default;
};

struct ReductionTrace {
  Diagram start;
  std::vector<Step> steps;

  std::size_t step_count() const { return steps.size(); }
};

/// Replays a trace, checking admissibility at each step.
inline Diagram replay(const Diagram& start, const std::vector<Step>& steps) {
  Diagram d = start;
  for (const Step& s : steps) exchange(d, s.height, s.dir);
  return d;
}

inline Diagram replay(const ReductionTrace& t) { return replay(t.start, t.steps); }

/// One `R <height>` or `L <height>` line per step. The reader skips blank
/// lines and `#` comments.
inline std::string trace_to_text(const std::vector<Step>& steps) {
  std::string out;
  for (const Step& s : steps) {
    out += direction_letter(s.dir);
    out += ' ' + std::to_string(s.height) + '\n';
  }
  return out;
}

inline std::vector<Step> trace_from_text(std::string_view text) {
  std::vector<Step> steps;
  std::istringstream in{std::string(text)};
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto tok = detail::split_ws(line);
    if (tok.empty()) continue;
    if (tok.size() != 2 || (tok[0] != "R" && tok[0] != "L"))
      throw ParseError("expected 'R <height>' or 'L <height>'", lineno);
    steps.push_back({static_cast<std::size_t>(detail::parse_count(tok[1], lineno)),
                     tok[0] == "R" ? Direction::right : Direction::left});
  }
  return steps;
}

struct Strategy {
  enum class Kind { topmost, random };
  Kind kind = Kind::topmost;
  std::uint64_t seed = 0;

  static Strategy topmost() { return {}; }
  static Strategy random(std::uint64_t seed) { return {Kind::random, seed}; }
};

/// Engineering guard on reduction length: 8v^3 + 64.
inline std::size_t default_step_cap(std::size_t vertices) {
  return 8 * vertices * vertices * vertices + 64;
}

struct NormalForm {
  Diagram diagram;
  ReductionTrace trace;
};

namespace detail {

// Applies exchanges in direction `dir` until none is admissible.
inline std::size_t sweep(std::vector<Vertex>& vs, Direction dir, Strategy strategy,
                         std::size_t cap, std::vector<Step>* steps) {
  auto ok = [&](std::size_t n) {
    const Vertex& a = vs[n];
    const Vertex& b = vs[n + 1];
    return dir == Direction::right ? b.h >= a.h + a.out : a.h >= b.h + b.in;
  };
  auto act = [&](std::size_t n) {
    if (dir == Direction::right)
      exchange_right_unchecked(vs, n);
    else
      exchange_left_unchecked(vs, n);
    if (steps) steps->push_back({n, dir});
  };
  std::size_t count = 0;
  if (vs.size() < 2) return 0;
  std::size_t pairs = vs.size() - 1;

  if (strategy.kind == Strategy::Kind::topmost) {
    std::size_t n = 0;
    while (n < pairs) {
      if (!ok(n)) {
        ++n;
        continue;
      }
      if (count == cap) throw StepCapExceeded(cap);
      act(n);
      ++count;
      // Only the pairs at n-1, n and n+1 changed; everything above n-1 is
      // still blocked.
      n = n == 0 ? 0 : n - 1;
    }
    return count;
  }

  std::mt19937_64 rng(strategy.seed);
  std::vector<std::size_t> live;
  std::vector<std::ptrdiff_t> where(pairs, -1);
  auto refresh = [&](std::size_t n) {
    bool want = ok(n);
    bool have = where[n] >= 0;
    if (want && !have) {
      where[n] = static_cast<std::ptrdiff_t>(live.size());
      live.push_back(n);
    } else if (!want && have) {
      std::size_t at = static_cast<std::size_t>(where[n]);
      std::size_t last = live.back();
      live[at] = last;
      where[last] = static_cast<std::ptrdiff_t>(at);
      live.pop_back();
      where[n] = -1;
    }
  };
  for (std::size_t n = 0; n < pairs; ++n) refresh(n);
  while (!live.empty()) {
    if (count == cap) throw StepCapExceeded(cap);
    std::uniform_int_distribution<std::size_t> pick(0, live.size() - 1);
    std::size_t n = live[pick(rng)];
    act(n);
    ++count;
    if (n > 0) refresh(n - 1);
    refresh(n);
    if (n + 1 < pairs) refresh(n + 1);
  }
  return count;
}

}  // namespace detail

/// Applies legal exchanges of one direction until none is left. Requires a
/// boundary-connected diagram, for which the result does not depend on the
/// strategy.
inline NormalForm normalize_naive(const Diagram& d,
                                  Strategy strategy = Strategy::topmost(),
                                  std::optional<std::size_t> step_cap = std::nullopt,
                                  Direction side = Direction::right) {
  require_valid(d);
  if (!is_boundary_connected(d)) throw NotBoundaryConnected();
  NormalForm r;
  r.trace.start = d;
  r.diagram = d;
  detail::sweep(r.diagram.vertices, side, strategy,
                step_cap.value_or(default_step_cap(d.height())), &r.trace.steps);
  return r;
}

inline bool is_normal(const Diagram& d, Direction side = Direction::right) {
  for (std::size_t n = 0; n + 1 < d.height(); ++n)
    if (admits(d, n, side)) return false;
  return true;
}

namespace detail {

// A path on n vertices zig-zagging between the top and bottom of the diagram;
// every right strategy takes C(n,3) steps on it or on its half-turn.
inline Diagram spiral_base(int n) {
  std::vector<Vertex> vs(static_cast<std::size_t>(n));
  auto degree = [n](int i) { return (i == 0 || i == n - 1) ? 1 : 2; };
  for (int i = 0; i < n; ++i) {
    int j = i / 2;
    if (i % 2 == 0)
      vs[static_cast<std::size_t>(j)] = {j, 0, degree(i), {}, 0};
    else
      vs[static_cast<std::size_t>(n - 1 - j)] = {j, degree(i), 0, {}, 0};
  }
  return {0, std::move(vs)};
}

}  // namespace detail

/// The spiral on n vertices, a linear diagram whose graph is a path.
inline Diagram spiral(int n) {
  if (n < 2) throw Error("spiral needs n >= 2");
  Diagram base = detail::spiral_base(n);
  return n % 2 == 0 ? base : rotate_half_turn(base);
}

/// The topmost right reduction of spiral(n) to its normal form.
inline ReductionTrace spiral_reduction(int n) {
  return normalize_naive(spiral(n)).trace;
}

/// Adds a top vertex feeding every source wire plus one wire on each side,
/// and a bottom vertex collecting every target wire and the two side wires.
inline Diagram boundary_closure(const Diagram& d) {
  require_valid(d);
  Diagram out;
  out.vertices.reserve(d.height() + 2);
  out.vertices.push_back({0, 0, d.sources + 2, kTopLabel, 0});
  for (const Vertex& v : d.vertices) {
    out.vertices.push_back(v);
    out.vertices.back().h += 1;
  }
  out.vertices.push_back({0, target_count(d) + 2, 0, kBottomLabel, 0});
  return out;
}

/// Inverse of boundary_closure on a diagram whose first and last vertices
/// are the closure vertices.
inline Diagram strip_closure(const Diagram& closed) {
  if (closed.height() < 2 || closed.vertices.front().label != kTopLabel ||
      closed.vertices.back().label != kBottomLabel)
    throw InternalError("closure vertices are not at the ends");
  const Vertex& t = closed.vertices.front();
  const Vertex& b = closed.vertices.back();
  if (t.in != 0 || t.out < 2 || b.out != 0 || b.in < 2 || t.h != 0 || b.h != 0)
    throw InternalError("malformed closure vertices");
  Diagram out;
  out.sources = t.out - 2;
  out.vertices.assign(closed.vertices.begin() + 1, closed.vertices.end() - 1);
  for (Vertex& v : out.vertices) {
    if (v.h < 1) throw InternalError("vertex outside the closure");
    v.h -= 1;
  }
  return out;
}

/// Where a leaf hangs: on `port` of the host's inputs (`above`, the leaf is
/// a 0-input 1-output vertex) or of its outputs (the leaf is 1-input
/// 0-output). `port` ranges over the k+1 slots of that side.
struct Attachment {
  std::size_t host = 0;
  bool above = true;
  int port = 0;
};

struct LeafInfo {
  std::size_t vertex = 0;
  Attachment attachment;  // host index in the diagram that still has the leaf
};

namespace detail {

// Follows the single output of a source leaf down to the input it feeds.
inline std::optional<std::pair<std::size_t, int>> trace_down(const std::vector<Vertex>& vs,
                                                             std::size_t from, int pos) {
  for (std::size_t n = from + 1; n < vs.size(); ++n) {
    const Vertex& w = vs[n];
    if (pos < w.h) continue;
    if (pos >= w.h + w.in) {
      pos += delta(w);
      continue;
    }
    return std::make_pair(n, pos - w.h);
  }
  return std::nullopt;
}

// Follows the single input of a sink leaf up to the output it comes from.
inline std::optional<std::pair<std::size_t, int>> trace_up(const std::vector<Vertex>& vs,
                                                           std::size_t from, int pos) {
  for (std::size_t n = from; n-- > 0;) {
    const Vertex& w = vs[n];
    if (pos < w.h) continue;
    if (pos >= w.h + w.out) {
      pos -= delta(w);
      continue;
    }
    return std::make_pair(n, pos - w.h);
  }
  return std::nullopt;
}

inline std::optional<LeafInfo> leaf_at(const std::vector<Vertex>& vs, std::size_t l) {
  const Vertex& v = vs[l];
  if (v.in == 0 && v.out == 1) {
    if (auto hit = trace_down(vs, l, v.h)) return LeafInfo{l, {hit->first, true, hit->second}};
  } else if (v.in == 1 && v.out == 0) {
    if (auto hit = trace_up(vs, l, v.h)) return LeafInfo{l, {hit->first, false, hit->second}};
  }
  return std::nullopt;
}

// Deletes the edge from output `a` of vertex u to input `b` of vertex v
// (u above v), shifting the vertices it passed on their right.
inline void remove_edge_at(std::vector<Vertex>& vs, std::size_t u, int a, std::size_t v,
                           int b) {
  int p = vs[u].h + a;
  for (std::size_t n = u + 1; n < v; ++n) {
    Vertex& w = vs[n];
    if (p < w.h) {
      --w.h;
    } else {
      if (p < w.h + w.in) throw InternalError("edge runs into an intermediate vertex");
      p += delta(w);
    }
  }
  if (p != vs[v].h + b) throw InternalError("edge does not end at the expected port");
  --vs[u].out;
  --vs[v].in;
}

inline std::size_t index_of_tag(const std::vector<Vertex>& vs, std::uint32_t tag) {
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (vs[i].tag == tag) return i;
  throw InternalError("lost track of a vertex");
}

// Inserts a leaf next to its host, then lets it slide by right exchanges.
// Returns the final index of the leaf.
inline std::size_t grow_leaf(std::vector<Vertex>& vs, Vertex leaf, const Attachment& at) {
  Vertex& host = vs[at.host];
  std::size_t li;
  if (at.above) {
    leaf.h = host.h + at.port;
    leaf.in = 0;
    leaf.out = 1;
    ++host.in;
    li = at.host;
  } else {
    leaf.h = host.h + at.port;
    leaf.in = 1;
    leaf.out = 0;
    ++host.out;
    li = at.host + 1;
  }
  vs.insert(vs.begin() + static_cast<std::ptrdiff_t>(li), std::move(leaf));
  auto ok = [&](std::size_t n) { return vs[n + 1].h >= vs[n].h + vs[n].out; };
  for (;;) {
    if (li > 0 && ok(li - 1)) {
      exchange_right_unchecked(vs, li - 1);
      --li;
    } else if (li + 1 < vs.size() && ok(li)) {
      exchange_right_unchecked(vs, li);
      ++li;
    } else {
      return li;
    }
  }
}

struct Removal {
  bool leaf = false;
  // Leaf removal.
  Vertex leaf_vertex;
  std::uint32_t host_tag = 0;
  bool above = true;
  int port = 0;
  // Edge removal: from output a of u to input b of v. `sides` records, for
  // each source vertex whose top corner lies in a face along the edge,
  // whether it sits to the left of the edge.
  std::uint32_t u_tag = 0, v_tag = 0;
  int a = 0, b = 0;
  std::vector<std::pair<std::uint32_t, bool>> sides;
};

inline Removal peel_edge(std::vector<Vertex>& vs) {
  Diagram cur{0, vs};
  Embedding m = embed(cur);
  SimpleFace f = find_simple_face(m);
  if (f.edges.empty()) throw InternalError("no simple face in a leafless diagram");
  int e = f.edges[eliminable_edges(f)[0]];
  const Edge& edge = m.graph.edges[static_cast<std::size_t>(e)];
  std::size_t u = static_cast<std::size_t>(edge.tail.index);
  std::size_t v = static_cast<std::size_t>(edge.head.index);
  Removal r;
  r.u_tag = vs[u].tag;
  r.v_tag = vs[v].tag;
  r.a = edge.tail.port;
  r.b = edge.head.port;
  int right_face = m.dart_face[static_cast<std::size_t>(2 * e)];
  int left_face = m.dart_face[static_cast<std::size_t>(2 * e + 1)];
  for (std::size_t w = 0; w < vs.size(); ++w) {
    if (vs[w].in != 0 || vs[w].out == 0) continue;
    // The corner above a source lies between its last and first output.
    int top = m.dart_face[static_cast<std::size_t>(m.rotation[w].front())];
    if (top == left_face)
      r.sides.emplace_back(vs[w].tag, true);
    else if (top == right_face)
      r.sides.emplace_back(vs[w].tag, false);
  }
  remove_edge_at(vs, u, r.a, v, r.b);
  return r;
}

inline void restore_edge(std::vector<Vertex>& vs, const Removal& r) {
  std::size_t u = index_of_tag(vs, r.u_tag);
  std::size_t v = index_of_tag(vs, r.v_tag);
  if (u >= v) throw InternalError("edge endpoints out of order");
  int p = vs[u].h + r.a;
  ++vs[u].out;
  for (std::size_t n = u + 1; n < v; ++n) {
    Vertex& w = vs[n];
    if (p < w.h || (p == w.h && w.in > 0)) {
      ++w.h;
    } else if (p > w.h + w.in || (p == w.h + w.in && w.in > 0)) {
      p += delta(w);
    } else if (w.in == 0 && p == w.h) {
      auto it = std::find_if(r.sides.begin(), r.sides.end(),
                             [&](const auto& s) { return s.first == w.tag; });
      if (it == r.sides.end()) throw InternalError("cannot place edge beside a source");
      if (it->second)
        p += w.out;
      else
        ++w.h;
    } else {
      throw InternalError("edge runs into an intermediate vertex");
    }
  }
  if (p != vs[v].h + r.b) throw InternalError("restored edge misses its port");
  ++vs[v].in;
}

// Right normal form of a closed connected diagram; tags must be distinct.
inline std::vector<Vertex> normal_form_closed_connected(std::vector<Vertex> vs) {
  std::vector<Removal> removals;
  for (;;) {
    std::size_t edges = 0;
    for (const Vertex& v : vs) edges += static_cast<std::size_t>(v.out);
    if (edges == 0) break;
    std::optional<LeafInfo> leaf;
    for (std::size_t l = 0; l < vs.size() && !leaf; ++l)
      if (vs[l].in + vs[l].out == 1) leaf = leaf_at(vs, l);
    if (leaf) {
      Removal r;
      r.leaf = true;
      std::size_t l = leaf->vertex;
      std::size_t host = leaf->attachment.host;
      r.leaf_vertex = vs[l];
      r.host_tag = vs[host].tag;
      r.above = leaf->attachment.above;
      r.port = leaf->attachment.port;
      if (r.above)
        remove_edge_at(vs, l, 0, host, r.port);
      else
        remove_edge_at(vs, host, r.port, l, 0);
      vs.erase(vs.begin() + static_cast<std::ptrdiff_t>(l));
      removals.push_back(std::move(r));
    } else {
      removals.push_back(peel_edge(vs));
    }
  }
  if (vs.size() > 1) throw InternalError("diagram is not connected");
  for (auto it = removals.rbegin(); it != removals.rend(); ++it) {
    if (it->leaf) {
      Attachment at{index_of_tag(vs, it->host_tag), it->above, it->port};
      grow_leaf(vs, it->leaf_vertex, at);
    } else {
      restore_edge(vs, *it);
    }
  }
  return vs;
}

}  // namespace detail

/// First leaf in vertex order whose single edge ends at another vertex.
inline std::optional<LeafInfo> find_leaf(const Diagram& d) {
  for (std::size_t l = 0; l < d.height(); ++l)
    if (d[l].in + d[l].out == 1)
      if (auto hit = detail::leaf_at(d.vertices, l)) return hit;
  return std::nullopt;
}

/// Removes a leaf and reports where it was attached in the remaining diagram.
inline std::pair<Diagram, Attachment> remove_leaf(const Diagram& d, const LeafInfo& leaf) {
  Diagram out = d;
  const Attachment& at = leaf.attachment;
  if (at.above)
    detail::remove_edge_at(out.vertices, leaf.vertex, 0, at.host, at.port);
  else
    detail::remove_edge_at(out.vertices, at.host, at.port, leaf.vertex, 0);
  out.vertices.erase(out.vertices.begin() + static_cast<std::ptrdiff_t>(leaf.vertex));
  Attachment rest = at;
  if (rest.host > leaf.vertex) --rest.host;
  return {std::move(out), rest};
}

/// Grows a leaf on a host already in right normal form; the result is the
/// unique right normal placement. Returns the diagram and the leaf index.
inline std::pair<Diagram, std::size_t> insert_leaf(const Diagram& host, const Attachment& at,
                                                   std::string label = {}) {
  if (at.host >= host.height()) throw IndexError("host vertex out of range");
  const Vertex& h = host[at.host];
  int slots = (at.above ? h.in : h.out) + 1;
  if (at.port < 0 || at.port >= slots) throw IndexError("attachment port out of range");
  Diagram out = host;
  Vertex leaf;
  leaf.label = std::move(label);
  std::size_t li = detail::grow_leaf(out.vertices, std::move(leaf), at);
  return {std::move(out), li};
}

/// Removes the edge from output `a` of vertex u to input `b` of vertex v.
inline Diagram remove_edge(const Diagram& d, std::size_t u, int a, std::size_t v, int b) {
  detail::check_vertex_index(d, u);
  detail::check_vertex_index(d, v);
  if (u >= v) throw IndexError("edge must run downwards");
  Diagram out = d;
  detail::remove_edge_at(out.vertices, u, a, v, b);
  return out;
}

/// Right (or left) normal form computed by peeling leaves and eliminable
/// edges off the closed diagram and putting them back one at a time. A final
/// sweep guards the result; the number of exchanges it had to apply (always
/// 0 so far) is added to `sweep_steps`.
inline Diagram normalize_fast(const Diagram& d, Direction side = Direction::right,
                              std::size_t* sweep_steps = nullptr) {
  require_valid(d);
  if (side == Direction::left)
    return mirror_horizontal(
        normalize_fast(mirror_horizontal(d), Direction::right, sweep_steps));
  if (!is_boundary_connected(d)) throw NotBoundaryConnected();
  if (!closure_is_connected(d)) {
    // A connected graph floating between pass-through wires: normalize it on
    // its own and put it back in the same gap.
    int gap = d.vertices.front().h;
    Diagram inner{0, d.vertices};
    for (Vertex& v : inner.vertices) v.h -= gap;
    Diagram out = normalize_fast(inner, Direction::right, sweep_steps);
    out.sources = d.sources;
    for (Vertex& v : out.vertices) v.h += gap;
    return out;
  }
  bool closed = is_closed(d);
  Diagram work = closed ? d : boundary_closure(d);
  std::vector<std::uint32_t> caller_tags;
  for (const Vertex& v : d.vertices) caller_tags.push_back(v.tag);
  for (std::size_t i = 0; i < work.height(); ++i)
    work[i].tag = static_cast<std::uint32_t>(i);
  work.vertices = detail::normal_form_closed_connected(std::move(work.vertices));
  Diagram out;
  if (closed) {
    out = std::move(work);
  } else {
    if (work.vertices.front().tag != 0 || work.vertices.back().tag != work.height() - 1)
      throw InternalError("closure vertices moved");
    out = strip_closure(work);
  }
  std::uint32_t shift = closed ? 0 : 1;
  for (Vertex& v : out.vertices) v.tag = caller_tags[v.tag - shift];
  std::size_t extra = detail::sweep(out.vertices, Direction::right, Strategy::topmost(),
                                    default_step_cap(out.height()), nullptr);
  if (sweep_steps) *sweep_steps += extra;
  return out;
}

}  // namespace sdnorm
