#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <tuple>

#include "sdnorm/edge_graph.hpp"
#include "sdnorm/oracle.hpp"
#include "sdnorm/serialize.hpp"
#include "test_support.hpp"

using namespace sdnorm;
using sdnorm::test::make;

TEST(Delta, OutputsMinusInputs) {
  Diagram d = make(2, {{0, 2, 0}, {0, 0, 0}, {0, 1, 1}, {0, 0, 3}});
  EXPECT_EQ(delta(d, 0), -2);
  EXPECT_EQ(delta(d, 2), 0);
  EXPECT_EQ(delta(d, 3), 3);
  EXPECT_THROW(delta(d, 4), IndexError);
}

TEST(WiresAt, Recurrence) {
  Diagram cup = make(0, {{0, 0, 2}});
  EXPECT_EQ(wires_at(cup, 0), 0);
  EXPECT_EQ(wires_at(cup, 1), 2);

  Diagram d = make(3, {{1, 1, 2}, {2, 0, 1}, {0, 1, 0}});
  EXPECT_EQ(wire_profile(d), (std::vector<int>{3, 4, 5, 4}));

  Diagram empty = make(5, {});
  EXPECT_EQ(wires_at(empty, 0), 5);
  EXPECT_THROW(wires_at(empty, 1), IndexError);
}

TEST(Validate, ReportsFirstOffendingHeight) {
  EXPECT_TRUE(is_valid(make(0, {{0, 0, 1}, {0, 1, 0}})));

  auto bad = validate(make(0, {{0, 1, 0}}));
  ASSERT_TRUE(bad.has_value());
  EXPECT_EQ(bad->height, 0u);
  EXPECT_EQ(bad->wires, 0);
  EXPECT_EQ(bad->h, 0);
  EXPECT_EQ(bad->in, 1);

  bad = validate(make(2, {{1, 2, 0}}));
  ASSERT_TRUE(bad.has_value());
  EXPECT_EQ(bad->height, 0u);
  EXPECT_EQ(bad->wires, 2);
  EXPECT_EQ(bad->h + bad->in, 3);

  bad = validate(make(1, {{0, 0, 1}, {0, 1, 0}, {1, 2, 0}}));
  ASSERT_TRUE(bad.has_value());
  EXPECT_EQ(bad->height, 2u);
  EXPECT_THROW(require_valid(make(0, {{0, 1, 0}})), InvalidDiagram);
}

TEST(Exchange, Admissibility) {
  Diagram parallel = make(2, {{0, 1, 1}, {1, 1, 1}});
  EXPECT_TRUE(admits_right(parallel, 0));

  Diagram linked = make(1, {{0, 1, 2}, {0, 1, 0}});
  EXPECT_FALSE(admits_right(linked, 0));
  EXPECT_FALSE(admits_left(linked, 0));

  // Two scalars pass each other freely in both directions.
  Diagram scalars = make(0, {{0, 0, 0}, {0, 0, 0}});
  EXPECT_TRUE(admits_right(scalars, 0));
  EXPECT_TRUE(admits_left(scalars, 0));
  EXPECT_EQ(apply_right(scalars, 0), scalars);

  EXPECT_THROW(admits_right(parallel, 1), IndexError);
}

TEST(Exchange, ApplyRightAndLeft) {
  Diagram parallel = make(2, {{0, 1, 1}, {1, 1, 1}});
  EXPECT_EQ(apply_right(parallel, 0), make(2, {{1, 1, 1}, {0, 1, 1}}));

  // A cup to the right of a cap, moving the cup up past the cap's left side.
  Diagram cup_right = make(3, {{2, 0, 2}, {0, 2, 0}});
  EXPECT_FALSE(admits_right(cup_right, 0));
  EXPECT_EQ(apply_left(cup_right, 0), make(3, {{0, 2, 0}, {0, 0, 2}}));
  // The mirror image uses a right exchange.
  Diagram mirrored = mirror_horizontal(cup_right);
  EXPECT_EQ(mirrored, make(3, {{1, 0, 2}, {3, 2, 0}}));
  EXPECT_EQ(apply_right(mirrored, 0), make(3, {{1, 2, 0}, {1, 0, 2}}));
  EXPECT_EQ(apply_right(mirrored, 0), mirror_horizontal(apply_left(cup_right, 0)));

  EXPECT_THROW(apply_right(cup_right, 0), NotAdmissible);
  try {
    apply_right(cup_right, 0);
  } catch (const NotAdmissible& e) {
    EXPECT_EQ(e.height, 0u);
    EXPECT_TRUE(e.right);
  }
}

TEST(Exchange, LabelsTravelWithVertices) {
  Diagram d = sdnorm::test::with_labels(make(2, {{0, 1, 1}, {1, 1, 1}}), {"f", "g"});
  Diagram e = apply_right(d, 0);
  EXPECT_EQ(e[0].label, "g");
  EXPECT_EQ(e[1].label, "f");
}

namespace {

// Edges as (tail, head) pairs with vertex indices renamed by `rename`,
// sorted so that creation order does not matter.
std::vector<std::tuple<int, int, int, int, int, int>> edge_set(const Diagram& d,
                                                               std::vector<int> rename) {
  std::vector<std::tuple<int, int, int, int, int, int>> out;
  for (const Edge& e : extract_graph(d).edges) {
    auto idx = [&](const Endpoint& p) {
      return p.kind == EndKind::vertex ? rename[static_cast<std::size_t>(p.index)] : p.index;
    };
    out.emplace_back(static_cast<int>(e.tail.kind), idx(e.tail), e.tail.port,
                     static_cast<int>(e.head.kind), idx(e.head), e.head.port);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

// Every exchange on every small diagram: validity, inverse law, conserved
// quantities, unchanged graph and unchanged connectivity class.
TEST(ExchangeProperties, EnumeratedDiagrams) {
  std::size_t checked = 0;
  for_each_diagram(4, 3, 3, [&](const Diagram& d) {
    std::vector<int> identity(d.height());
    for (std::size_t i = 0; i < d.height(); ++i) identity[i] = static_cast<int>(i);
    auto before_edges = edge_set(d, identity);
    Connectivity before_class = connectivity(d).kind;
    auto w = wire_profile(d);
    for (std::size_t n = 0; n + 1 < d.height(); ++n)
      for (Direction dir : {Direction::right, Direction::left}) {
        if (!admits(d, n, dir)) continue;
        ++checked;
        Diagram e = apply(d, n, dir);
        ASSERT_TRUE(is_valid(e)) << to_text(d);
        ASSERT_EQ(apply(e, n, opposite(dir)), d) << to_text(d);
        ASSERT_EQ(e.sources, d.sources);
        auto we = wire_profile(e);
        for (std::size_t k = 0; k < w.size(); ++k)
          if (k != n + 1) ASSERT_EQ(we[k], w[k]);
        auto triples = [](const Diagram& x) {
          std::vector<std::tuple<int, int, std::string>> t;
          for (const Vertex& v : x.vertices) t.emplace_back(v.in, v.out, v.label);
          std::sort(t.begin(), t.end());
          return t;
        };
        ASSERT_EQ(triples(e), triples(d));
        std::vector<int> swap = identity;
        std::swap(swap[n], swap[n + 1]);
        ASSERT_EQ(edge_set(e, swap), before_edges) << to_text(d);
        ASSERT_EQ(connectivity(e).kind, before_class);
      }
  });
  EXPECT_GT(checked, 100000u);
}

TEST(ExtractGraph, SmallCases) {
  EdgeGraph cup = extract_graph(make(0, {{0, 0, 1}, {0, 1, 0}}));
  ASSERT_EQ(cup.edges.size(), 1u);
  EXPECT_EQ(cup.edges[0].tail, (Endpoint{EndKind::vertex, 0, 0}));
  EXPECT_EQ(cup.edges[0].head, (Endpoint{EndKind::vertex, 1, 0}));

  EdgeGraph wire = extract_graph(make(1, {}));
  ASSERT_EQ(wire.edges.size(), 1u);
  EXPECT_EQ(wire.edges[0].tail, (Endpoint{EndKind::source, 0, 0}));
  EXPECT_EQ(wire.edges[0].head, (Endpoint{EndKind::target, 0, 0}));

  Diagram d = make(0, {{0, 0, 2}, {1, 1, 0}, {0, 1, 0}});
  EdgeGraph g = extract_graph(d);
  ASSERT_EQ(g.edges.size(), 2u);
  EXPECT_EQ(g.edges[0].tail, (Endpoint{EndKind::vertex, 0, 0}));
  EXPECT_EQ(g.edges[0].head, (Endpoint{EndKind::vertex, 2, 0}));
  EXPECT_EQ(g.edges[1].tail, (Endpoint{EndKind::vertex, 0, 1}));
  EXPECT_EQ(g.edges[1].head, (Endpoint{EndKind::vertex, 1, 0}));
}

TEST(ExtractGraph, PortCountsAndEdgeCount) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    Diagram d = random_diagram(rng, 8, 3, 6);
    EdgeGraph g = extract_graph(d);
    std::size_t inputs = 0, outputs = 0;
    for (std::size_t n = 0; n < d.height(); ++n) {
      ASSERT_EQ(g.in_edges[n].size(), static_cast<std::size_t>(d[n].in));
      ASSERT_EQ(g.out_edges[n].size(), static_cast<std::size_t>(d[n].out));
      inputs += static_cast<std::size_t>(d[n].in);
      outputs += static_cast<std::size_t>(d[n].out);
    }
    ASSERT_EQ(g.edges.size(), inputs + static_cast<std::size_t>(target_count(d)));
    ASSERT_EQ(g.edges.size(), outputs + static_cast<std::size_t>(d.sources));
    ASSERT_EQ(g.source_edges.size(), static_cast<std::size_t>(d.sources));
    ASSERT_EQ(g.target_edges.size(), static_cast<std::size_t>(target_count(d)));
  }
}

TEST(Connectivity, FigureShapes) {
  Diagram disconnected = make(2, {{0, 0, 2}, {2, 1, 0}, {1, 0, 1}, {1, 1, 0}, {0, 2, 0}});
  EXPECT_EQ(connectivity(disconnected).kind, Connectivity::disconnected);

  EXPECT_EQ(connectivity(make(0, {{0, 0, 1}, {0, 1, 0}})).kind, Connectivity::connected);

  Diagram linked = make(0, {{0, 0, 3}, {0, 1, 2}, {2, 1, 2}, {3, 2, 0}, {0, 1, 0}});
  EXPECT_EQ(connectivity(linked).kind, Connectivity::connected);

  Diagram to_boundary = make(4, {{0, 0, 1}, {1, 3, 0}, {1, 0, 2}});
  ConnectivityReport r = connectivity(to_boundary);
  EXPECT_EQ(r.kind, Connectivity::boundary_connected);
  EXPECT_EQ(r.component_count, 3);
  EXPECT_EQ(r.component, (std::vector<int>{0, 1, 2}));
}

TEST(Connectivity, ClosureConnectedness) {
  // A cup-cap floating beside a pass-through wire is connected, but its
  // closure is not.
  Diagram floating = make(1, {{1, 0, 1}, {1, 1, 0}});
  EXPECT_TRUE(is_connected(floating));
  EXPECT_FALSE(closure_is_connected(floating));
  EXPECT_TRUE(closure_is_connected(make(1, {{0, 1, 1}})));
  EXPECT_TRUE(closure_is_connected(make(3, {})));
  EXPECT_FALSE(closure_is_connected(make(0, {{0, 0, 0}, {0, 0, 0}})));
}

TEST(Serialize, TextFormat) {
  EXPECT_EQ(to_text(make(2, {})), "sd 1\nS 2\n");
  EXPECT_EQ(to_text(make(0, {{0, 0, 1}, {0, 1, 0}})), "sd 1\nS 0\nV 0 0 1\nV 0 1 0\n");
  Diagram labeled = sdnorm::test::with_labels(make(1, {{0, 1, 2}}), {"f"});
  EXPECT_EQ(to_text(labeled), "sd 1\nS 1\nV 0 1 2 f\n");
  EXPECT_EQ(from_text("# comment\nsd 1\n\nS 1\nV 0 1 2 f  # trailing\n"), labeled);
}

TEST(Serialize, RoundTrip) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    Diagram d = random_diagram(rng, 10, 3, 5);
    for (std::size_t n = 0; n < d.height(); ++n)
      if (n % 3 == 0) d[n].label = "g" + std::to_string(n);
    ASSERT_EQ(from_text(to_text(d)), d);
    ASSERT_EQ(from_json(to_json(d)), d);
    ASSERT_EQ(parse_diagram(to_json(d).dump()), d);
  }
}

TEST(Serialize, ErrorsCarryLineNumbers) {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      from_text(text);
    } catch (const ParseError& e) {
      return e.line;
    }
    return 0;
  };
  EXPECT_EQ(line_of("sd 2\nS 0\n"), 1u);
  EXPECT_EQ(line_of("sd 1\nS x\n"), 2u);
  EXPECT_EQ(line_of("sd 1\nS 0\nV 0 0 1\nV 0 0\n"), 4u);
  EXPECT_EQ(line_of("sd 1\nS 0\nV 0 0 1 bad-label\n"), 3u);
  // Parseable but invalid: reported at the offending vertex.
  EXPECT_EQ(line_of("sd 1\nS 0\nV 0 0 1\n\nV 0 2 0\n"), 5u);
  EXPECT_EQ(line_of("sd 1\nS 0\nV 0 0 1 __top\n"), 3u);
  EXPECT_THROW(parse_diagram("{\"s\": -1, \"vertices\": []}"), ParseError);
  EXPECT_THROW(parse_diagram("{\"s\": 0, \"vertices\": [{\"h\":0,\"i\":1,\"o\":0}]}"),
               ParseError);
  EXPECT_THROW(parse_diagram("{\"s\": 0"), ParseError);
}

TEST(Geometry, MirrorAndFlipAreInvolutions) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    Diagram d = random_diagram(rng, 7, 3, 5);
    ASSERT_TRUE(is_valid(mirror_horizontal(d)));
    ASSERT_TRUE(is_valid(flip_vertical(d)));
    ASSERT_EQ(mirror_horizontal(mirror_horizontal(d)), d);
    ASSERT_EQ(flip_vertical(flip_vertical(d)), d);
    // Mirroring swaps the two exchange directions.
    Diagram m = mirror_horizontal(d);
    for (std::size_t n = 0; n + 1 < d.height(); ++n)
      ASSERT_EQ(admits_right(d, n), admits_left(m, n));
  }
}
