#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "random_graphs.hpp"
#include "ultra/ch/buckets.hpp"
#include "ultra/ch/contraction.hpp"

namespace ultra {
namespace {

// B=0 -> X=1 -> C=2, weights 60 and 60.
const std::vector<Edge> kPath{{0, 1, 60}, {1, 2, 60}};

std::vector<Vertex> iota_vertices(std::size_t n) {
  std::vector<Vertex> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

TEST(ContractFull, TwoEdgePath) {
  const auto ch = contract_full(3, kPath);
  EXPECT_EQ(ch_distance(ch, 0, 2), 120);
  EXPECT_EQ(ch_distance(ch, 2, 0), kInfinity);
  for (Vertex v = 0; v < 3; ++v) EXPECT_TRUE(ch.contracted(v));
}

TEST(ContractFull, SingleVertex) {
  const auto ch = contract_full(1, std::vector<Edge>{});
  EXPECT_EQ(ch.up_out.edge_count(), 0u);
  EXPECT_EQ(ch.up_in.edge_count(), 0u);
  EXPECT_EQ(ch_distance(ch, 0, 0), 0);
}

TEST(ContractFull, RejectsNegativeWeights) {
  const std::vector<Edge> edges{{0, 1, -1}};
  EXPECT_THROW(contract_full(2, edges), ContractViolation);
}

TEST(ContractFull, AllPairsMatchDijkstra) {
  std::mt19937 rng(7);
  for (int round = 0; round < 30; ++round) {
    const std::size_t n = round == 0 ? 100 : 1 + rng() % 60;
    const auto edges = test::random_edges(rng, n, rng() % (3 * n + 1));
    const auto ch = contract_full(n, edges);
    for (Vertex s = 0; s < n; ++s) {
      const auto expected = test::naive_distances(n, edges, s);
      for (Vertex t = 0; t < n; ++t) ASSERT_EQ(ch_distance(ch, s, t), expected[t]) << s << "->" << t;
    }
  }
}

TEST(ContractFull, UpwardArcsPointUp) {
  std::mt19937 rng(8);
  const auto edges = test::random_edges(rng, 80, 300);
  const auto ch = contract_full(80, edges);
  for (Vertex v = 0; v < 80; ++v) {
    for (const Arc& a : ch.up_out.out(v)) EXPECT_GT(ch.rank[a.head], ch.rank[v]);
    for (const Arc& a : ch.up_in.out(v)) EXPECT_GT(ch.rank[a.head], ch.rank[v]);
  }
}

TEST(ContractCore, TinyPathKeepsStops) {
  // A=0, B=1, C=2, D=3 kept; X=4 contracted.
  const std::vector<Edge> edges{{1, 4, 60}, {4, 2, 60}};
  const auto core = contract_core(5, edges, {true, true, true, true, false}, std::numeric_limits<double>::infinity());
  EXPECT_EQ(core.core_vertices, (std::vector<Vertex>{0, 1, 2, 3}));
  EXPECT_EQ(core.core.edges(), (std::vector<Edge>{{1, 2, 120}}));
}

TEST(ContractCore, ZeroDegreeBoundContractsNothing) {
  const std::vector<Edge> edges{{1, 4, 60}, {4, 2, 60}};
  const auto core = contract_core(5, edges, {true, true, true, true, false}, 0.0);
  EXPECT_EQ(core.core_vertices.size(), 5u);
  EXPECT_EQ(core.core.edges(), edges);
}

TEST(ContractCore, StopDistancesPreserved) {
  std::mt19937 rng(9);
  for (int round = 0; round < 40; ++round) {
    const std::size_t n = round == 0 ? 200 : 2 + rng() % 120;
    const std::size_t stops = round == 0 ? 30 : 1 + rng() % n;
    const auto edges = test::random_edges(rng, n, rng() % (3 * n));
    std::vector<bool> keep(n, false);
    std::fill(keep.begin(), keep.begin() + stops, true);
    const double degree = round % 3 == 0 ? 14.0 : (round % 3 == 1 ? 2.0 : std::numeric_limits<double>::infinity());
    const auto core = contract_core(n, edges, keep, degree);
    for (Vertex s = 0; s < stops; ++s) {
      EXPECT_TRUE(core.in_core(s));
      const auto expected = test::naive_distances(n, edges, s);
      const auto via_core = dijkstra(core.core, s);
      for (Vertex t = 0; t < stops; ++t) ASSERT_EQ(via_core.distance[t], expected[t]);
    }
    for (const Edge& e : core.core.edges()) {
      EXPECT_TRUE(core.in_core(e.from));
      EXPECT_TRUE(core.in_core(e.to));
    }
  }
}

TEST(ContractCore, DegreeBoundHolds) {
  std::mt19937 rng(10);
  for (int round = 0; round < 20; ++round) {
    const std::size_t n = 50 + rng() % 100;
    const auto edges = simplify_edges(test::random_edges(rng, n, 4 * n));
    std::vector<bool> keep(n, false);
    keep[0] = true;
    const auto core = contract_core(n, edges, keep, 3.0);
    const double ratio = static_cast<double>(core.core.edge_count()) / static_cast<double>(core.core_vertices.size());
    // Either only the kept vertex is left, or the bound was crossed.
    if (core.core_vertices.size() > 1) {
      EXPECT_GT(ratio, 3.0);
    }
  }
}

TEST(Buckets, EmptyTargets) {
  const auto ch = contract_full(3, kPath);
  const auto buckets = build_buckets(ch, {}, BucketDirection::ToTargets);
  EXPECT_EQ(buckets.size(), 0u);
}

TEST(Buckets, SelfEntry) {
  const auto ch = contract_full(3, kPath);
  const Vertex t = 2;
  const auto buckets = build_buckets(ch, std::span(&t, 1), BucketDirection::ToTargets);
  const auto at = buckets.at(2);
  EXPECT_NE(std::find(at.begin(), at.end(), BucketEntry{2, 0}), at.end());
  EXPECT_EQ(bucket_query(ch, buckets, 2, BucketDirection::ToTargets)[2], 0);
}

TEST(Buckets, TinyNetworkDistances) {
  const std::vector<Edge> edges{{1, 4, 60}, {4, 2, 60}};
  const auto ch = contract_full(5, edges);
  const auto targets = iota_vertices(4);
  const auto buckets = build_buckets(ch, targets, BucketDirection::ToTargets);
  const auto from_b = bucket_query(ch, buckets, 1, BucketDirection::ToTargets);
  EXPECT_EQ(from_b, (std::vector<Time>{kInfinity, 0, 120, kInfinity}));
  for (Vertex s = 0; s < 5; ++s) {
    const auto expected = test::naive_distances(5, edges, s);
    const auto got = bucket_query(ch, buckets, s, BucketDirection::ToTargets);
    for (Vertex t = 0; t < 4; ++t) EXPECT_EQ(got[t], expected[t]);
  }
}

TEST(Buckets, RandomBothDirectionsMatchDijkstra) {
  std::mt19937 rng(12);
  for (int round = 0; round < 30; ++round) {
    const std::size_t n = 1 + rng() % 120;
    const std::size_t stops = 1 + rng() % n;
    const auto edges = test::random_edges(rng, n, rng() % (3 * n + 1));
    const auto ch = contract_full(n, edges);
    const auto targets = iota_vertices(stops);
    const auto fwd = build_buckets(ch, targets, BucketDirection::ToTargets);
    const auto bwd = build_buckets(ch, targets, BucketDirection::FromTargets);
    for (Vertex v = 0; v < n; ++v) {
      for (std::size_t k = 1; k < fwd.at(v).size(); ++k) EXPECT_LE(fwd.at(v)[k - 1].distance, fwd.at(v)[k].distance);
    }
    std::vector<std::vector<Time>> all(n);
    for (Vertex s = 0; s < n; ++s) all[s] = test::naive_distances(n, edges, s);
    for (Vertex s = 0; s < n; ++s) {
      const auto to = bucket_query(ch, fwd, s, BucketDirection::ToTargets);
      const auto from = bucket_query(ch, bwd, s, BucketDirection::FromTargets);
      for (Vertex t = 0; t < stops; ++t) {
        ASSERT_EQ(to[t], all[s][t]);
        ASSERT_EQ(from[t], all[t][s]);
      }
    }
  }
}

struct PrunedFixture {
  std::size_t n;
  std::size_t stops;
  std::vector<Edge> edges;
  ContractionHierarchy ch;
  BucketStore fwd, bwd;

  PrunedFixture(std::size_t n_, std::size_t stops_, std::vector<Edge> e)
      : n(n_), stops(stops_), edges(std::move(e)), ch(contract_full(n, edges)) {
    const auto targets = iota_vertices(stops);
    fwd = build_buckets(ch, targets, BucketDirection::ToTargets);
    bwd = build_buckets(ch, targets, BucketDirection::FromTargets);
  }
};

TEST(PrunedPairQuery, SameVertex) {
  PrunedFixture f(3, 3, kPath);
  PrunedPairQuery q(f.ch, f.fwd, f.bwd);
  const auto r = q.run(1, 1);
  EXPECT_EQ(r.distance, 0);
  EXPECT_TRUE(r.forward_targets.empty());
  EXPECT_TRUE(r.backward_targets.empty());
}

TEST(PrunedPairQuery, UnreachableReturnsFullMaps) {
  PrunedFixture f(3, 3, kPath);
  PrunedPairQuery q(f.ch, f.fwd, f.bwd);
  const auto r = q.run(1, 0);
  EXPECT_EQ(r.distance, kInfinity);
  EXPECT_EQ(std::vector<Vertex>(r.forward_targets.begin(), r.forward_targets.end()), (std::vector<Vertex>{1, 2}));
  EXPECT_EQ(std::vector<Vertex>(r.backward_targets.begin(), r.backward_targets.end()), (std::vector<Vertex>{0}));
  EXPECT_EQ(q.to_target(2), 60);
}

TEST(PrunedPairQuery, ReturnsExactlyTheCloserStops) {
  std::mt19937 rng(13);
  for (int round = 0; round < 30; ++round) {
    const std::size_t n = 2 + rng() % 150;
    PrunedFixture f(n, 1 + rng() % n, test::random_edges(rng, n, rng() % (3 * n)));
    std::vector<std::vector<Time>> all(n);
    for (Vertex s = 0; s < n; ++s) all[s] = test::naive_distances(n, f.edges, s);
    PrunedPairQuery q(f.ch, f.fwd, f.bwd);
    for (int k = 0; k < 40; ++k) {
      const Vertex s = rng() % n, t = rng() % n;
      const auto r = q.run(s, t);
      ASSERT_EQ(r.distance, all[s][t]);
      std::vector<Vertex> expected_fwd, expected_bwd;
      for (Vertex v = 0; v < f.stops; ++v) {
        if (all[s][v] < r.distance) expected_fwd.push_back(v);
        if (all[v][t] < r.distance) expected_bwd.push_back(v);
      }
      ASSERT_EQ(std::vector<Vertex>(r.forward_targets.begin(), r.forward_targets.end()), expected_fwd);
      ASSERT_EQ(std::vector<Vertex>(r.backward_targets.begin(), r.backward_targets.end()), expected_bwd);
      for (const Vertex v : expected_fwd) EXPECT_EQ(q.to_target(v), all[s][v]);
      for (const Vertex u : expected_bwd) EXPECT_EQ(q.from_target(u), all[u][t]);
    }
  }
}

}  // namespace
}  // namespace ultra
