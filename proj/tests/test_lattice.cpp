// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 tlg authors
#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "tlg/lattice.hpp"

using namespace tlg;

namespace {
Config all_ones(int n) { return n == 64 ? ~Config(0) : (Config(1) << n) - 1; }

// independent loop count: walk the mid-lattice using positions only
int brute_loops(const SurfaceLattice& L, Config s) {
  std::vector<int> par(L.port_count());
  for (int i = 0; i < L.port_count(); ++i) par[i] = i;
  auto find = [&](int x) {
    while (par[x] != x) x = par[x] = par[par[x]];
    return x;
  };
  for (int p = 0; p < L.port_count(); ++p) {
    par[find(p)] = find(L.medial(p));
    int b = p >> 2;
    int q = ((s >> b) & 1) ? (p ^ 2) : (p ^ 1);
    par[find(p)] = find(q);
  }
  int n = 0;
  for (int p = 0; p < L.port_count(); ++p)
    if (find(p) == p) ++n;
  return n;
}

// bond -> crossing dual bond, with faces relabelled as the vertex at their
// lower-left corner
Config to_dual(const SurfaceLattice& T, Config s) {
  Config t = 0;
  for (int y = 0; y < T.height(); ++y)
    for (int x = 0; x < T.width(); ++x) {
      if ((s >> T.bond_index('h', x, y)) & 1) t |= Config(1) << T.bond_index('v', x, y - 1);
      if ((s >> T.bond_index('v', x, y)) & 1) t |= Config(1) << T.bond_index('h', x - 1, y);
    }
  return t;
}
}  // namespace

TEST(Lattice, Construction) {
  auto T = SurfaceLattice::square_torus(3, 3);
  EXPECT_EQ(T.sites(), 18);
  EXPECT_EQ(T.vertex_count(), 9);
  EXPECT_EQ(T.face_count(), 9);
  EXPECT_EQ(T.euler_characteristic(), 0);
  auto D = SurfaceLattice::square_disk(2, 3);
  EXPECT_EQ(D.sites(), 17);
  EXPECT_EQ(D.euler_characteristic(), 1);
  auto H = SurfaceLattice::triangular_torus(3, 4);
  EXPECT_EQ(H.sites(), 12);
  EXPECT_EQ(H.euler_characteristic(), 0);
  for (const auto& b : T.bonds()) EXPECT_NE(b.f[0], b.f[1]);
  EXPECT_THROW(SurfaceLattice::square_torus(1, 3), Error);
  auto big = SurfaceLattice::square_torus(6, 6);  // fine for counting, not for configs
  EXPECT_EQ(big.sites(), 72);
  EXPECT_THROW(loop_count(big, 0), Error);
  EXPECT_THROW(local_moves(big, 0, Model::HPrime), Error);
  EXPECT_THROW(SurfaceLattice::triangular_torus(2, 3), Error);
}

TEST(Lattice, MedialIsInvolution) {
  for (auto L : {SurfaceLattice::square_torus(2, 2), SurfaceLattice::square_torus(3, 4), SurfaceLattice::square_disk(2, 3)})
    for (int p = 0; p < L.port_count(); ++p) {
      EXPECT_EQ(L.medial(L.medial(p)), p);
      EXPECT_NE(L.medial(p), p);
    }
}

TEST(Walls, Examples) {
  auto T = SurfaceLattice::square_torus(3, 3);
  auto c = extract_walls(T, all_ones(18));
  EXPECT_EQ(c.clusters, 1);
  EXPECT_EQ(c.dual_clusters, 9);
  EXPECT_EQ(c.loops, 9);
  EXPECT_EQ(c.trivial_loops, 9);
  EXPECT_EQ(c.wrap_rank, 2);
  EXPECT_EQ(c.wrapping_clusters, 1);

  auto one = extract_walls(T, Config(1) << T.bond_index('h', 1, 1));
  EXPECT_EQ(one.edges, 1);
  EXPECT_EQ(one.clusters, 8);  // the bond plus 7 isolated vertices
  EXPECT_EQ(one.dual_clusters, 1);
  // the small loop around the bond plus one trivial loop per isolated vertex
  EXPECT_EQ(one.trivial_loops, 8);
  EXPECT_TRUE(one.essential.empty());

  for (auto s : staircases(T)) {
    auto w = extract_walls(T, s);
    ASSERT_FALSE(w.essential.empty());
    for (auto e : w.essential) {
      EXPECT_EQ(e.a, 1);
      EXPECT_EQ(e.b, 1);
    }
    EXPECT_EQ(w.essential.size(), 2u);
    EXPECT_EQ(w.trivial_loops, 3);  // around the three vertices off the path
  }
}

TEST(Walls, LoopCountMatchesUnionFind) {
  auto T = SurfaceLattice::square_torus(2, 3);
  for (Config s = 0; s < (Config(1) << T.sites()); s += 7) {
    auto w = extract_walls(T, s);
    EXPECT_EQ(w.loops, brute_loops(T, s));
    EXPECT_EQ(loop_count(T, s), w.loops);
    EXPECT_EQ(w.trivial_loops + static_cast<int>(w.essential.size()), w.loops);
    // essential loops on the torus come in parallel pairs
    EXPECT_EQ(w.essential.size() % 2, 0u);
  }
}

TEST(Walls, WindingsCoprime) {
  auto T = SurfaceLattice::square_torus(3, 3);
  for (Config s = 0; s < (Config(1) << 18); s += 13)
    for (auto e : extract_walls(T, s).essential) EXPECT_EQ(std::gcd(e.a, e.b), 1);
}

TEST(Walls, PlanarEuler) {
  auto D = SurfaceLattice::square_disk(2, 3);
  for (Config s = 0; s < (Config(1) << D.sites()); ++s) {
    auto w = extract_walls(D, s);
    int cint = w.dual_clusters - 1;  // drop the region containing the exterior
    ASSERT_EQ(w.loops, w.clusters + cint) << s;
    // C*_int = C + E - V, by Euler on the patch
    ASSERT_EQ(cint, w.clusters + w.edges - D.vertex_count()) << s;
  }
}

TEST(Walls, TorusCorrectionRule) {
  auto T = SurfaceLattice::square_torus(3, 3);
  std::map<std::pair<int, int>, std::set<int>> seen;
  for (Config s = 0; s < (Config(1) << 18); ++s) {
    auto w = extract_walls(T, s);
    seen[{w.wrap_rank, w.dual_wrap_rank}].insert(w.loops - w.clusters - w.dual_clusters);
  }
  // one side wraps both ways: one loop short; both sides wrap once: exact
  ASSERT_EQ(seen.size(), 3u);
  EXPECT_EQ(seen[std::make_pair(2, 0)], std::set<int>({-1}));
  EXPECT_EQ(seen[std::make_pair(0, 2)], std::set<int>({-1}));
  EXPECT_EQ(seen[std::make_pair(1, 1)], std::set<int>({0}));
}

// Under the swap, dual clusters of s become clusters of the swapped state
// read on the dual lattice; on the square torus the dual lattice is the
// same lattice shifted by (1/2,1/2).
TEST(Walls, SwapSymmetry) {
  auto T = SurfaceLattice::square_torus(3, 3);
  for (Config s = 0; s < (Config(1) << 18); s += 101) {
    auto a = extract_walls(T, s), b = extract_walls(T, to_dual(T, global_swap(T, s)));
    EXPECT_EQ(a.loops, b.loops);
    EXPECT_EQ(a.clusters, b.dual_clusters);
    EXPECT_EQ(a.dual_clusters, b.clusters);
    EXPECT_EQ(a.edges, b.dual_edges);
    EXPECT_EQ(a.wrap_rank, b.dual_wrap_rank);
    EXPECT_EQ(a.essential.size(), b.essential.size());
  }
}

TEST(Moves, SymmetricWithReciprocalRatio) {
  auto check = [](const SurfaceLattice& L, Model m, Config step) {
    for (Config s = 0; s < (Config(1) << L.sites()); s += step)
      for (const auto& mv : local_moves(L, s, m)) {
        auto back = local_moves(L, mv.partner, m);
        bool found = std::any_of(back.begin(), back.end(),
                                 [&](const Move& r) { return r.partner == s && r.dloops == -mv.dloops; });
        EXPECT_TRUE(found);
        EXPECT_EQ(loop_count(L, mv.partner) - loop_count(L, s), mv.dloops);
      }
  };
  check(SurfaceLattice::square_torus(2, 2), Model::HPrime, 1);
  check(SurfaceLattice::square_torus(3, 3), Model::HPrime, 37);
  check(SurfaceLattice::square_torus(3, 3), Model::RingExchange, 37);
  check(SurfaceLattice::triangular_torus(3, 3), Model::H0, 1);
}

TEST(Moves, BoxCounts) {
  auto T = SurfaceLattice::square_torus(2, 2);
  // all |+>: every box term is active, each of the 4 edges can flip
  auto mv = local_moves(T, all_ones(8), Model::HPrime);
  EXPECT_EQ(mv.size(), 16u);
  for (const auto& m : mv) EXPECT_EQ(m.kind, MoveKind::LoopRemove);
  EXPECT_EQ(local_moves(T, 0, Model::HPrime).size(), 16u);
  for (auto s : staircases(T)) EXPECT_TRUE(local_moves(T, s, Model::HPrime).empty());
  EXPECT_THROW(local_moves(T, 0, Model::H0), Error);
}

TEST(Moves, PlaqueModel) {
  auto H = SurfaceLattice::triangular_torus(3, 3);
  auto mv = local_moves(H, all_ones(9), Model::H0);
  ASSERT_EQ(mv.size(), 9u);
  for (const auto& m : mv) {
    EXPECT_EQ(m.kind, MoveKind::LoopCreate);
    EXPECT_EQ(m.dloops, 1);
  }
  // a cell whose wall is two arcs: two opposite neighbours agree with the cell
  auto H4 = SurfaceLattice::triangular_torus(4, 4);
  int c = 5;
  Config s = Config(1) << c;
  const auto& nb = H4.neighbours(c);
  s |= Config(1) << nb[0];
  s |= Config(1) << nb[3];
  auto at_c = local_moves(H4, s, Model::H0);
  EXPECT_FALSE(std::any_of(at_c.begin(), at_c.end(), [&](const Move& m) { return m.site == c; }));
}

TEST(Components, TwoByTwoStaircaseFrozen) {
  auto T = SurfaceLattice::square_torus(2, 2);
  for (auto s : staircases(T)) EXPECT_EQ(explore_component(T, s, Model::HPrime).states.size(), 1u);
}

TEST(Components, ThreeByThree) {
  auto T = SurfaceLattice::square_torus(3, 3);
  auto P = partition_components(T, Model::HPrime);
  EXPECT_EQ(P.count(), 22u);
  std::set<uint32_t> lab;
  for (auto s : staircases(T)) lab.insert(P.label[s]);
  EXPECT_EQ(lab.size(), 1u);
  // the swap composed with the dual shift maps components to components
  for (uint32_t k = 0; k < P.count(); ++k) {
    auto c = explore_component(T, P.seeds[k], Model::HPrime);
    EXPECT_TRUE(c.consistent);
    EXPECT_EQ(c.states.size(), P.sizes[k]);
    EXPECT_EQ(P.sizes[P.label[to_dual(T, global_swap(T, P.seeds[k]))]], P.sizes[k]);
  }
}

TEST(Components, AllMinusIsTrivialWallSector) {
  auto T = SurfaceLattice::square_torus(3, 3);
  auto c = explore_component(T, 0, Model::HPrime);
  size_t want = 0;
  for (Config s = 0; s < (Config(1) << 18); ++s) {
    auto w = extract_walls(T, s);
    bool foam = w.essential.empty() && w.dual_wrap_rank == 2;
    if (foam) ++want;
    EXPECT_EQ(foam, c.index_of(s) < c.states.size());
  }
  EXPECT_EQ(c.states.size(), want);
  for (size_t i = 0; i < c.states.size(); i += 97)
    EXPECT_EQ(c.potential[i], loop_count(T, c.states[i]) - loop_count(T, c.states[0]));
}

TEST(Components, CapExceeded) {
  auto T = SurfaceLattice::square_torus(3, 3);
  try {
    explore_component(T, 0, Model::HPrime, 100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Err::ComponentCapExceeded);
  }
  auto T4 = SurfaceLattice::square_torus(4, 4);
  EXPECT_THROW(partition_components(T4, Model::HPrime), Error);
}

TEST(Lattice, HexRoundTrip) {
  EXPECT_EQ(config_hex(0x69, 8), "69");
  EXPECT_EQ(parse_config_hex("0x3ffff", 18), Config(0x3ffff));
  EXPECT_THROW(parse_config_hex("7ffff", 18), Error);
  EXPECT_THROW(parse_config_hex("zz", 8), Error);
}
