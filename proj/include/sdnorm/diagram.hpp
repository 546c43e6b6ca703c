#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sdnorm/error.hpp"

namespace sdnorm {

/// One slice of a diagram: a vertex consuming `in` wires starting at wire
/// `h` and producing `out` wires in their place.
struct Vertex {
  int h = 0;
  int in = 0;
  int out = 0;
  std::string label;
  /// Caller-owned tag. Exchanges carry it with the vertex; comparisons ignore it.
  std::uint32_t tag = 0;

  friend bool operator==(const Vertex& a, const Vertex& b) {
    return a.h == b.h && a.in == b.in && a.out == b.out && a.label == b.label;
  }
};

/// Combinatorial encoding of a planar string diagram, vertices listed top to
/// bottom.
struct Diagram {
  int sources = 0;
  std::vector<Vertex> vertices;

  std::size_t height() const { return vertices.size(); }
  bool empty() const { return vertices.empty(); }

  const Vertex& operator[](std::size_t n) const { return vertices[n]; }
  Vertex& operator[](std::size_t n) { return vertices[n]; }

  friend bool operator==(const Diagram&, const Diagram&) = default;
};

enum class Direction { right, left };

inline char direction_letter(Direction d) {
  return d == Direction::right ? 'R' : 'L';
}

inline Direction opposite(Direction d) {
  return d == Direction::right ? Direction::left : Direction::right;
}

namespace detail {

inline void check_vertex_index(const Diagram& d, std::size_t n) {
  if (n >= d.height())
    throw IndexError("vertex index " + std::to_string(n) +
                     " out of range for height " + std::to_string(d.height()));
}

inline void check_exchange_index(const Diagram& d, std::size_t n) {
  if (d.height() < 2 || n >= d.height() - 1)
    throw IndexError("exchange height " + std::to_string(n) +
                     " out of range for height " + std::to_string(d.height()));
}

}  // namespace detail

inline int delta(const Vertex& v) { return v.out - v.in; }

inline int delta(const Diagram& d, std::size_t n) {
  detail::check_vertex_index(d, n);
  return delta(d.vertices[n]);
}

/// W(0), ..., W(N): the number of wires crossing each level.
inline std::vector<int> wire_profile(const Diagram& d) {
  std::vector<int> w(d.height() + 1);
  w[0] = d.sources;
  for (std::size_t n = 0; n < d.height(); ++n) w[n + 1] = w[n] + delta(d.vertices[n]);
  return w;
}

inline int wires_at(const Diagram& d, std::size_t level) {
  if (level > d.height())
    throw IndexError("level " + std::to_string(level) + " out of range for height " +
                     std::to_string(d.height()));
  int w = d.sources;
  for (std::size_t n = 0; n < level; ++n) w += delta(d.vertices[n]);
  return w;
}

inline int target_count(const Diagram& d) { return wires_at(d, d.height()); }

/// First offending height of an invalid diagram.
struct Violation {
  std::size_t height = 0;
  int wires = 0;
  int h = 0;
  int in = 0;
  std::string reason;

  std::string message() const {
    return "invalid at height " + std::to_string(height) + ": " + reason +
           " (W=" + std::to_string(wires) + ", H=" + std::to_string(h) +
           ", I=" + std::to_string(in) + ")";
  }
};

inline std::optional<Violation> validate(const Diagram& d) {
  if (d.sources < 0) return Violation{0, d.sources, 0, 0, "negative source count"};
  int w = d.sources;
  for (std::size_t n = 0; n < d.height(); ++n) {
    const Vertex& v = d.vertices[n];
    if (v.h < 0 || v.in < 0 || v.out < 0)
      return Violation{n, w, v.h, v.in, "negative field"};
    if (w < v.h + v.in) return Violation{n, w, v.h, v.in, "W(n) < H(n) + I(n)"};
    w += delta(v);
  }
  return std::nullopt;
}

inline bool is_valid(const Diagram& d) { return !validate(d).has_value(); }

inline void require_valid(const Diagram& d) {
  if (auto v = validate(d)) throw InvalidDiagram(v->message());
}

inline bool admits_right(const Diagram& d, std::size_t n) {
  detail::check_exchange_index(d, n);
  const Vertex& a = d.vertices[n];
  const Vertex& b = d.vertices[n + 1];
  return b.h >= a.h + a.out;
}

inline bool admits_left(const Diagram& d, std::size_t n) {
  detail::check_exchange_index(d, n);
  const Vertex& a = d.vertices[n];
  const Vertex& b = d.vertices[n + 1];
  return a.h >= b.h + b.in;
}

inline bool admits(const Diagram& d, std::size_t n, Direction dir) {
  return dir == Direction::right ? admits_right(d, n) : admits_left(d, n);
}

/// In-place right exchange at height n, without any checks.
inline void exchange_right_unchecked(std::vector<Vertex>& vs, std::size_t n) {
  Vertex upper = std::move(vs[n]);
  vs[n] = std::move(vs[n + 1]);
  vs[n].h -= delta(upper);
  vs[n + 1] = std::move(upper);
}

/// In-place left exchange at height n, without any checks.
inline void exchange_left_unchecked(std::vector<Vertex>& vs, std::size_t n) {
  Vertex upper = std::move(vs[n]);
  vs[n] = std::move(vs[n + 1]);
  upper.h += delta(vs[n]);
  vs[n + 1] = std::move(upper);
}

inline void exchange_right(Diagram& d, std::size_t n) {
  if (!admits_right(d, n)) throw NotAdmissible(n, true);
  exchange_right_unchecked(d.vertices, n);
}

inline void exchange_left(Diagram& d, std::size_t n) {
  if (!admits_left(d, n)) throw NotAdmissible(n, false);
  exchange_left_unchecked(d.vertices, n);
}

inline void exchange(Diagram& d, std::size_t n, Direction dir) {
  if (dir == Direction::right)
    exchange_right(d, n);
  else
    exchange_left(d, n);
}

inline Diagram apply_right(Diagram d, std::size_t n) {
  exchange_right(d, n);
  return d;
}

inline Diagram apply_left(Diagram d, std::size_t n) {
  exchange_left(d, n);
  return d;
}

inline Diagram apply(Diagram d, std::size_t n, Direction dir) {
  exchange(d, n, dir);
  return d;
}

/// Reflection through a vertical axis. Right exchanges become left ones.
inline Diagram mirror_horizontal(const Diagram& d) {
  Diagram out = d;
  int w = d.sources;
  for (Vertex& v : out.vertices) {
    int next = w + delta(v);
    v.h = w - v.h - v.in;
    w = next;
  }
  return out;
}

/// Reflection through a horizontal axis: vertex order reversed, inputs and
/// outputs swapped. Right exchanges become left ones.
inline Diagram flip_vertical(const Diagram& d) {
  Diagram out;
  out.sources = target_count(d);
  out.vertices.assign(d.vertices.rbegin(), d.vertices.rend());
  for (Vertex& v : out.vertices) std::swap(v.in, v.out);
  return out;
}

/// Half-turn rotation. Preserves the direction of exchanges.
inline Diagram rotate_half_turn(const Diagram& d) {
  return mirror_horizontal(flip_vertical(d));
}

inline std::size_t edge_count(const Diagram& d) {
  std::size_t e = static_cast<std::size_t>(d.sources);
  for (const Vertex& v : d.vertices) e += static_cast<std::size_t>(v.out);
  return e;
}

inline bool is_closed(const Diagram& d) {
  return d.sources == 0 && target_count(d) == 0;
}

}  // namespace sdnorm
