#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "sdnorm/oracle.hpp"
#include "sdnorm/serialize.hpp"
#include "test_support.hpp"

using namespace sdnorm;
using sdnorm::test::make;

namespace {

// Counts diagrams by trying every field value in range and keeping the valid
// ones whose widths stay within bounds.
std::size_t count_by_filter(int max_vertices, int max_arity, int max_wires) {
  std::size_t count = 0;
  for (int v = 0; v <= max_vertices; ++v) {
    int per_vertex = (max_wires + 1) * (max_arity + 1) * (max_arity + 1);
    long combos = 1;
    for (int i = 0; i < v; ++i) combos *= per_vertex;
    for (int s = 0; s <= max_wires; ++s)
      for (long c = 0; c < combos; ++c) {
        Diagram d;
        d.sources = s;
        long rest = c;
        for (int i = 0; i < v; ++i) {
          int code = static_cast<int>(rest % per_vertex);
          rest /= per_vertex;
          int h = code % (max_wires + 1);
          code /= max_wires + 1;
          d.vertices.push_back({h, code % (max_arity + 1), code / (max_arity + 1), {}, 0});
        }
        if (!is_valid(d)) continue;
        auto w = wire_profile(d);
        if (*std::max_element(w.begin(), w.end()) <= max_wires) ++count;
      }
  }
  return count;
}

}  // namespace

TEST(Enumerate, EmptyBounds) {
  auto all = enumerate_diagrams(0, 3, 0);
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(all[0], make(0, {}));
}

TEST(Enumerate, SmallCountsMatchFilter) {
  EXPECT_EQ(enumerate_diagrams(1, 1, 1).size(), 8u);
  EXPECT_EQ(count_by_filter(1, 1, 1), 8u);
  for (auto [v, a, w] : {std::tuple{2, 2, 2}, std::tuple{3, 2, 2}, std::tuple{2, 3, 3}})
    EXPECT_EQ(enumerate_diagrams(v, a, w).size(), count_by_filter(v, a, w));
}

TEST(Enumerate, DistinctAndValid) {
  std::set<std::string> seen;
  for_each_diagram(4, 3, 3, [&](const Diagram& d) {
    ASSERT_TRUE(is_valid(d));
    ASSERT_TRUE(seen.insert(to_text(d)).second);
  });
  EXPECT_EQ(seen.size(), 207110u);
}

TEST(Bfs, SingleExchange) {
  Diagram d = make(2, {{0, 1, 1}, {1, 1, 1}});
  OracleResult r = bfs_equiv(d, apply_right(d, 0));
  EXPECT_EQ(r.verdict, OracleVerdict::equivalent);
  ASSERT_EQ(r.witness.size(), 1u);
  EXPECT_EQ(replay(d, r.witness), apply_right(d, 0));
  EXPECT_TRUE(bfs_equiv(d, d).witness.empty());
}

TEST(Bfs, FigureVerdicts) {
  Diagram ab = make(0, {{0, 0, 0}, {0, 0, 0}});
  ab[0].label = "b";
  ab[1].label = "a";
  Diagram ba = ab;
  std::swap(ba[0].label, ba[1].label);
  EXPECT_EQ(bfs_equiv(ab, ba).verdict, OracleVerdict::equivalent);

  Diagram r1 = make(2, {{0, 0, 1}, {0, 2, 0}}), r2 = make(2, {{1, 0, 1}, {0, 2, 0}});
  OracleResult r = bfs_equiv(r1, r2);
  EXPECT_EQ(r.verdict, OracleVerdict::inequivalent);
  EXPECT_EQ(r.explored, exchange_class(r1)->size());
}

TEST(Bfs, CapIsReported) {
  Diagram big = spiral(9);
  OracleResult r = bfs_equiv(big, make(0, {{0, 0, 0}}), 10);
  EXPECT_EQ(r.verdict, OracleVerdict::cap_exceeded);
  EXPECT_FALSE(exchange_class(big, 10).has_value());
}

TEST(Bfs, SymmetricAndReflexive) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 200; ++i) {
    Diagram a = random_diagram(rng, 1 + i % 5, 2, 3);
    Diagram b = i % 2 ? random_exchanges(rng, a, 5) : random_diagram(rng, 1 + i % 5, 2, 3);
    ASSERT_EQ(bfs_equiv(a, a).verdict, OracleVerdict::equivalent);
    ASSERT_EQ(bfs_equiv(a, b).verdict, bfs_equiv(b, a).verdict) << to_text(a) << to_text(b);
    if (i % 2) {
      ASSERT_EQ(bfs_equiv(a, b).verdict, OracleVerdict::equivalent);
    }
  }
}

TEST(Bfs, ClassSizeIgnoresGeneratorNames) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    Diagram d = random_diagram(rng, 2 + i % 4, 2, 3);
    Diagram renamed = d;
    for (std::size_t n = 0; n < d.height(); ++n) {
      d[n].label = n % 2 ? "f" : "g";
      renamed[n].label = n % 2 ? "p" : "q";
    }
    ASSERT_EQ(exchange_class(d)->size(), exchange_class(renamed)->size());
  }
}

// For connected diagrams the oracle's classes are exactly the normal form
// fibres: class members share one normal form, and every enumerated diagram
// with that normal form lies in the class.
TEST(Bfs, ConnectedClassesAreNormalFormFibres) {
  std::map<std::string, std::set<std::string>> class_of_nf;
  std::size_t checked = 0;
  for_each_diagram(4, 2, 3, [&](const Diagram& d) {
    if (!is_connected(d)) return;
    ++checked;
    std::string nf = to_text(normalize_naive(d).diagram);
    auto it = class_of_nf.find(nf);
    if (it == class_of_nf.end()) {
      std::set<std::string> members;
      auto cls = exchange_class(d);
      for (const Diagram& m : *cls) {
        ASSERT_EQ(to_text(normalize_naive(m).diagram), nf);
        members.insert(to_text(m));
      }
      class_of_nf.emplace(nf, std::move(members));
    } else {
      ASSERT_TRUE(it->second.count(to_text(d))) << to_text(d);
    }
  });
  EXPECT_GT(checked, 1000u);
}

TEST(BruteForceIso, Basics) {
  CombinatorialMap m = map_from_cycles({{1, 2}, {3, 4}}, {{1, 3}});
  EXPECT_TRUE(brute_force_isomorphic(m, m));
  EXPECT_TRUE(brute_force_isomorphic(m, conjugate(m, {3, 2, 1, 0})));
  CombinatorialMap loop = map_from_cycles({{1, 2}, {3, 4}}, {{1, 2}, {3, 4}});
  EXPECT_FALSE(brute_force_isomorphic(m, loop));
  CombinatorialMap labeled = m;
  labeled.labels = {"a", "a", "b", "b"};
  EXPECT_FALSE(brute_force_isomorphic(m, labeled));
}
