#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "sdnorm/oracle.hpp"
#include "sdnorm/planar_map.hpp"
#include "test_support.hpp"

using namespace sdnorm;
using sdnorm::test::make;

namespace {

CombinatorialMap ten_dart_example() {
  return map_from_cycles({{1, 2}, {3, 4}, {5, 6}, {7, 8}, {9, 10}},
                         {{2, 10, 7}, {4, 8, 6}, {1, 3, 5, 9}});
}

std::vector<int> standard_involution(std::size_t n) {
  std::vector<int> x(n);
  for (std::size_t d = 0; d < n; ++d) x[d] = static_cast<int>(d ^ 1);
  return x;
}

// Every connected map on n darts whose x pairs 2i with 2i+1. Each map is
// isomorphic to one of these.
std::vector<CombinatorialMap> all_maps(std::size_t n) {
  std::vector<CombinatorialMap> out;
  std::vector<int> y(n);
  std::iota(y.begin(), y.end(), 0);
  do {
    CombinatorialMap m{standard_involution(n), y, {}};
    if (is_transitive(m)) out.push_back(m);
  } while (std::next_permutation(y.begin(), y.end()));
  return out;
}

template <class Rng>
std::vector<int> random_perm(Rng& rng, std::size_t n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace

TEST(Maps, TenDartExample) {
  CombinatorialMap m = ten_dart_example();
  EXPECT_NO_THROW(validate(m));
  MapCounts c = map_counts(m);
  // Vertices are y-cycles here; reading vertices off x then y swaps the two
  // counts and leaves the characteristic alone.
  EXPECT_EQ(c.vertices, 3);
  EXPECT_EQ(c.edges, 5);
  EXPECT_EQ(c.faces, 4);
  EXPECT_EQ(euler_characteristic(m), 2);
  EXPECT_TRUE(is_planar(m));
  std::vector<int> xy(m.size());
  for (std::size_t d = 0; d < m.size(); ++d) xy[d] = m.x[static_cast<std::size_t>(m.y[d])];
  EXPECT_EQ(detail::count_cycles(xy), 4);
  EXPECT_EQ(cycles_to_string(m.x), "(1 2)(3 4)(5 6)(7 8)(9 10)");
  EXPECT_EQ(cycles_to_string(m.y), "(1 3 5 9)(2 10 7)(4 8 6)");
}

TEST(Maps, SingleEdge) {
  CombinatorialMap m = map_from_cycles({{1, 2}}, {});
  MapCounts c = map_counts(m);
  EXPECT_EQ(c.vertices, 2);
  EXPECT_EQ(c.edges, 1);
  EXPECT_EQ(c.faces, 1);
  EXPECT_EQ(euler_characteristic(m), 2);
}

TEST(Maps, CompleteGraphOnFiveIsNotPlanar) {
  // Dart of edge {i, j} at i; neighbours around each vertex in index order.
  std::map<std::pair<int, int>, int> dart;
  int next = 0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      if (i != j) dart[{i, j}] = next++;
  CombinatorialMap m;
  m.x.assign(20, 0);
  m.y.assign(20, 0);
  for (int i = 0; i < 5; ++i) {
    std::vector<int> ring;
    for (int j = 0; j < 5; ++j)
      if (j != i) {
        ring.push_back(dart[{i, j}]);
        m.x[static_cast<std::size_t>(dart[{i, j}])] = dart[{j, i}];
      }
    for (std::size_t k = 0; k < ring.size(); ++k)
      m.y[static_cast<std::size_t>(ring[k])] = ring[(k + 1) % ring.size()];
  }
  EXPECT_EQ(map_counts(m).vertices, 5);
  EXPECT_EQ(map_counts(m).edges, 10);
  EXPECT_NE(euler_characteristic(m), 2);
  EXPECT_FALSE(is_planar(m));
}

TEST(Maps, ValidationErrors) {
  CombinatorialMap fixed{{0, 1}, {0, 1}, {}};
  EXPECT_THROW(validate(fixed), Error);
  CombinatorialMap split{{1, 0, 3, 2}, {0, 1, 2, 3}, {}};
  EXPECT_THROW(validate(split), NotConnected);
  DirectedMap both{map_from_cycles({{1, 2}}, {}), {1, 1}};
  EXPECT_THROW(validate(both), Error);
}

TEST(Maps, DumpFormat) {
  DirectedMap m{map_from_cycles({{1, 2}}, {}), {1, 0}};
  std::string text = dump_map(m);
  EXPECT_NE(text.find("x = (1 2)"), std::string::npos);
  EXPECT_NE(text.find("D = {1}"), std::string::npos);
}

TEST(Iota, SingleDirectedEdge) {
  DirectedMap m{map_from_cycles({{1, 2}}, {}), {1, 0}};
  CombinatorialMap u = iota(m);
  EXPECT_EQ(u.size(), 3 * m.map.size());
  MapCounts c = map_counts(u);
  EXPECT_EQ(c.vertices, 3);
  EXPECT_EQ(c.edges, 3);
  EXPECT_EQ(euler_characteristic(u), 2);
  EXPECT_EQ(euler_characteristic(iota(DirectedMap{ten_dart_example(),
                                                   {1, 0, 1, 0, 1, 0, 1, 0, 1, 0}})),
            2);
}

// Isomorphism classes of all maps on up to 8 darts, checked against the
// exhaustive bijection search: members of a class are isomorphic to its
// first member, and first members of distinct classes are not.
TEST(Canonical, AgreesWithBruteForceOnAllSmallMaps) {
  for (std::size_t n : {2u, 4u, 6u, 8u}) {
    std::map<std::string, std::vector<std::size_t>> classes;
    std::vector<CombinatorialMap> maps = all_maps(n);
    for (std::size_t i = 0; i < maps.size(); ++i)
      classes[canonical_map_code(maps[i])].push_back(i);
    std::vector<const CombinatorialMap*> reps;
    for (const auto& [code, members] : classes) {
      const CombinatorialMap& rep = maps[members.front()];
      for (std::size_t i : members) ASSERT_TRUE(brute_force_isomorphic(rep, maps[i]));
      reps.push_back(&rep);
    }
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = i + 1; j < reps.size(); ++j)
        ASSERT_FALSE(brute_force_isomorphic(*reps[i], *reps[j]));
  }
}

TEST(Canonical, DirectedAgreesWithBruteForce) {
  for (std::size_t n : {2u, 4u, 6u}) {
    std::vector<DirectedMap> maps;
    for (const CombinatorialMap& m : all_maps(n))
      for (unsigned mask = 0; mask < (1u << (n / 2)); ++mask) {
        DirectedMap dm{m, std::vector<char>(n, 0)};
        for (std::size_t e = 0; e < n / 2; ++e) dm.distinguished[2 * e + ((mask >> e) & 1)] = 1;
        maps.push_back(dm);
      }
    std::map<std::string, std::vector<std::size_t>> classes;
    for (std::size_t i = 0; i < maps.size(); ++i)
      classes[canonical_map_code(maps[i])].push_back(i);
    std::vector<const DirectedMap*> reps;
    for (const auto& [code, members] : classes) {
      for (std::size_t i : members)
        ASSERT_TRUE(brute_force_isomorphic(maps[members.front()], maps[i]));
      reps.push_back(&maps[members.front()]);
    }
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = i + 1; j < reps.size(); ++j)
        ASSERT_FALSE(brute_force_isomorphic(*reps[i], *reps[j]));
  }
}

TEST(Canonical, RandomLabeledMapsUpToTwelveDarts) {
  std::mt19937_64 rng(99);
  int checked = 0;
  while (checked < 300) {
    std::size_t n = 2 * std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    CombinatorialMap a{standard_involution(n), random_perm(rng, n), {}};
    if (!is_transitive(a)) continue;
    a.labels.resize(n);
    for (auto& l : a.labels) l = (rng() & 1) ? "f" : "g";
    CombinatorialMap b = conjugate(a, random_perm(rng, n));
    ASSERT_TRUE(maps_isomorphic(a, b));
    ASSERT_TRUE(brute_force_isomorphic(a, b));
    CombinatorialMap c{standard_involution(n), random_perm(rng, n), a.labels};
    if (is_transitive(c)) ASSERT_EQ(maps_isomorphic(a, c), brute_force_isomorphic(a, c));
    CombinatorialMap m = mirror(a);
    ASSERT_EQ(maps_isomorphic(a, m), brute_force_isomorphic(a, m));
    ++checked;
  }
}

TEST(Canonical, TenDartExampleAndMirror) {
  CombinatorialMap m = ten_dart_example();
  CombinatorialMap r = mirror(m);
  EXPECT_EQ(euler_characteristic(r), 2);
  EXPECT_EQ(maps_isomorphic(m, r), brute_force_isomorphic(m, r));
  std::mt19937_64 rng(1);
  EXPECT_TRUE(maps_isomorphic(m, conjugate(m, random_perm(rng, m.size()))));
}

TEST(Canonical, FlagSensitivity) {
  CombinatorialMap edge = map_from_cycles({{1, 2}}, {});
  DirectedMap a{edge, {1, 0}}, b{edge, {0, 1}};
  EXPECT_TRUE(maps_isomorphic(a, b));  // the swap of the two darts maps one to the other
  // A path of two edges: flags pointing the same way or towards the middle.
  CombinatorialMap path = map_from_cycles({{1, 2}, {3, 4}}, {{2, 3}});
  DirectedMap along{path, {1, 0, 1, 0}}, inward{path, {1, 0, 0, 1}};
  EXPECT_TRUE(maps_isomorphic(path, path));
  EXPECT_FALSE(maps_isomorphic(along, inward));
  EXPECT_FALSE(brute_force_isomorphic(along, inward));
}

// Directed maps are isomorphic exactly when their undirected gadget images
// are, on every directed map with up to 6 darts.
TEST(Iota, ReflectsIsomorphism) {
  for (std::size_t n : {2u, 4u, 6u}) {
    std::map<std::string, std::string> image_of;
    std::map<std::string, std::string> preimage_of;
    for (const CombinatorialMap& m : all_maps(n))
      for (unsigned mask = 0; mask < (1u << (n / 2)); ++mask) {
        DirectedMap dm{m, std::vector<char>(n, 0)};
        for (std::size_t e = 0; e < n / 2; ++e) dm.distinguished[2 * e + ((mask >> e) & 1)] = 1;
        std::string code = canonical_map_code(dm);
        std::string image = canonical_map_code(iota(dm));
        auto [a, fresh_a] = image_of.emplace(code, image);
        ASSERT_EQ(a->second, image);
        auto [b, fresh_b] = preimage_of.emplace(image, code);
        ASSERT_EQ(b->second, code);
        ASSERT_EQ(euler_characteristic(iota(dm)), euler_characteristic(m));
      }
  }
}

TEST(Gamma, ClosedCupCap) {
  DirectedMap m = gamma(make(0, {{0, 0, 2}, {0, 2, 0}}));
  EXPECT_EQ(m.map.size(), 12u);
  MapCounts c = map_counts(m.map);
  EXPECT_EQ(c.vertices, 6);
  EXPECT_EQ(c.edges, 6);
  EXPECT_EQ(euler_characteristic(m.map), 2);
  EXPECT_NO_THROW(validate(m));
}

TEST(Gamma, PlanarOnEnumeratedDiagrams) {
  std::size_t checked = 0;
  for_each_diagram(4, 3, 3, [&](const Diagram& d) {
    if (!closure_is_connected(d)) return;
    ++checked;
    DirectedMap m = gamma(d);
    ASSERT_EQ(euler_characteristic(m.map), 2) << to_text(d);
  });
  EXPECT_GT(checked, 70000u);
  EXPECT_THROW(gamma(make(0, {{0, 0, 0}, {0, 0, 0}})), NotBoundaryConnected);
}

TEST(Gamma, InvariantUnderExchanges) {
  for_each_diagram(4, 2, 3, [](const Diagram& d) {
    if (!closure_is_connected(d)) return;
    std::string code = canonical_map_code(gamma(d));
    for (std::size_t n = 0; n + 1 < d.height(); ++n)
      if (admits_right(d, n))
        ASSERT_EQ(canonical_map_code(gamma(apply_right(d, n))), code) << to_text(d);
  });
}

TEST(DecideConnected, FigurePairs) {
  Diagram a = make(0, {{0, 0, 2}, {1, 1, 2}, {2, 0, 2}, {0, 1, 0}, {1, 3, 0}, {0, 1, 0}});
  Diagram c = make(0, {{0, 0, 2}, {1, 1, 2}, {1, 1, 0}, {1, 0, 2}, {1, 3, 0}, {0, 1, 0}});
  EXPECT_TRUE(decide_equiv_connected(a, c));
  EXPECT_FALSE(
      decide_equiv_connected(make(2, {{0, 0, 1}, {0, 2, 0}}), make(2, {{1, 0, 1}, {0, 2, 0}})));

  // Isotopic as undirected drawings but not equivalent: the dangling edges
  // of the gadget tell them apart.
  Diagram n1 = make(0, {{0, 0, 2}, {0, 1, 1}, {0, 2, 0}});
  Diagram n2 = make(0, {{0, 0, 2}, {1, 1, 1}, {0, 2, 0}});
  EXPECT_FALSE(decide_equiv_connected(n1, n2));
  EXPECT_FALSE(maps_isomorphic(gamma(n1), gamma(n2)));

  EXPECT_THROW(decide_equiv_connected(make(0, {{0, 0, 0}, {0, 0, 0}}), make(0, {{0, 0, 0}})),
               NotConnected);
}

TEST(DecideConnected, MatchesNormalForms) {
  std::map<std::string, std::string> code_of_nf, nf_of_code;
  for_each_diagram(4, 3, 3, [&](const Diagram& d) {
    if (!is_connected(d) || !closure_is_connected(d)) return;
    std::string nf = to_text(normalize_fast(d));
    std::string code = canonical_map_code(gamma(d));
    auto [a, fa] = code_of_nf.emplace(nf, code);
    ASSERT_EQ(a->second, code) << to_text(d);
    auto [b, fb] = nf_of_code.emplace(code, nf);
    ASSERT_EQ(b->second, nf) << to_text(d);
  });
  EXPECT_EQ(code_of_nf.size(), nf_of_code.size());
}
