#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "ultra/oracle/enumerate.hpp"
#include "ultra/oracle/generator.hpp"
#include "ultra/oracle/verify.hpp"
#include "ultra/preprocess/compute_shortcuts.hpp"
#include "ultra/query/connections.hpp"
#include "ultra/query/csa.hpp"
#include "ultra/query/mcsa.hpp"
#include "ultra/query/mr_inf.hpp"
#include "ultra/query/transitive.hpp"
#include "ultra/query/ultra_raptor.hpp"

namespace ultra {
namespace {

using Labels = std::vector<ParetoLabel>;
using test::A;
using test::B;
using test::C;
using test::D;
using test::X;

// Every engine over one network, with shortcuts computed for it.
struct Engines {
  Network net;
  CoreGraph core;
  UltraData data;
  MrInf mr;
  UltraRaptor ultra_raptor;
  Mcsa mcsa;
  UltraCsa ultra_csa;

  explicit Engines(Network n, PreprocessParams params = {})
      : net(std::move(n)),
        core(build_core(net, params.core_degree)),
        data(build_ultra_data(net, compute_shortcuts(net, core, params).shortcuts)),
        mr(net, core),
        ultra_raptor(net, data),
        mcsa(net, core),
        ultra_csa(net, data) {}
};

void expect_journeys_match(const Network& net, const QueryResult& r) {
  ASSERT_EQ(r.journeys.size(), r.labels.size());
  for (std::size_t i = 0; i < r.labels.size(); ++i) {
    const Journey& j = r.journeys[i];
    const auto report = validate_journey(net, j, r.source, r.target);
    ASSERT_TRUE(report.ok()) << report.to_string();
    const ParetoLabel sig = journey_signature(net, j);
    EXPECT_EQ(sig.arrival, r.labels[i].arrival);
    EXPECT_EQ(sig.trips, r.labels[i].trips);
    EXPECT_GE(sig.departure, r.departure);
  }
}

void expect_journey_matches(const Network& net, const ArrivalResult& r) {
  if (!r.reachable) return;
  const auto report = validate_journey(net, r.journey, r.source, r.target);
  ASSERT_TRUE(report.ok()) << report.to_string();
  const ParetoLabel sig = journey_signature(net, r.journey);
  EXPECT_EQ(sig.arrival, r.label.arrival);
  EXPECT_EQ(sig.trips, r.label.trips);
  EXPECT_GE(sig.departure, r.departure);
}

TEST(Connections, SortedAndConsistent) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const Network net = oracle::generate_network(oracle::small_instance(seed));
    const ConnectionArray connections(net);
    EXPECT_TRUE(connections.consistent_with(net)) << "seed " << seed;
    EXPECT_EQ(connections.first_departing(0), 0u);
    EXPECT_EQ(connections.first_departing(kInfinity), connections.size());
  }
}

TEST(TinyOne, AllEnginesFindTheTwoTripJourney) {
  Engines e(test::tiny1());
  ASSERT_EQ(e.data.shortcuts.edges().size(), 1u);
  const Labels expected{{28800, 30600, 2}};
  EXPECT_EQ(e.mr.query(A, D, 28800).labels, expected);
  const QueryResult r = e.ultra_raptor.query(A, D, 28800);
  EXPECT_EQ(r.labels, expected);
  expect_journeys_match(e.net, r);

  const Journey& j = r.journeys.at(0);
  ASSERT_EQ(j.legs.size(), 2u);
  EXPECT_EQ(j.legs[0], (TripLeg{0, 0, 1}));
  EXPECT_EQ(j.legs[1], (TripLeg{1, 0, 1}));
  EXPECT_TRUE(j.transfers[0].empty());
  EXPECT_EQ(j.transfers[1].from, B);
  EXPECT_EQ(j.transfers[1].to, C);
  EXPECT_EQ(j.transfers[1].duration, 120);
  EXPECT_TRUE(j.transfers[2].empty());

  for (const ArrivalResult& a : {e.mcsa.query(A, D, 28800), e.ultra_csa.query(A, D, 28800)}) {
    EXPECT_TRUE(a.reachable);
    EXPECT_EQ(a.label.arrival, 30600);
    expect_journey_matches(e.net, a);
  }
}

TEST(TinyOne, TransitiveBaselines) {
  const Network closed = make_transitive(test::tiny1());
  EXPECT_EQ(closed.vertex_count(), 4u);
  const QueryResult r = raptor_query(closed, A, D, 28800);
  EXPECT_EQ(r.labels, (Labels{{28800, 30600, 2}}));
  expect_journeys_match(closed, r);
  EXPECT_EQ(raptor_query(closed, B, B, 100).labels, (Labels{{100, 100, 0}}));
  EXPECT_TRUE(raptor_query(closed, D, A, 0).labels.empty());

  EXPECT_EQ(csa_query(closed, A, D, 28800).label.arrival, 30600);
  EXPECT_EQ(csa_query(closed, C, C, 5).label.arrival, 5);
  const ArrivalResult late = csa_query(closed, A, D, 40000);
  EXPECT_FALSE(late.reachable);
  EXPECT_EQ(late.label.arrival, kInfinity);
}

TEST(TinyOne, TransitiveBaselinesRejectNonStops) {
  const Network net = test::tiny1();
  EXPECT_THROW(raptor_query(net, A, X, 0), ContractViolation);
  EXPECT_THROW(csa_query(net, X, D, 0), ContractViolation);
}

TEST(TinyTwo, DirectTripDominates) {
  Engines e(test::tiny2());
  const Labels expected{{28800, 30300, 1}};
  const QueryResult mr = e.mr.query(A, D, 28800);
  EXPECT_EQ(mr.labels, expected);
  expect_journeys_match(e.net, mr);
  ASSERT_EQ(mr.journeys.at(0).legs.size(), 1u);
  EXPECT_EQ(mr.journeys[0].legs[0], (TripLeg{2, 0, 1}));
  EXPECT_EQ(e.ultra_raptor.query(A, D, 28800).labels, expected);
  EXPECT_EQ(e.mcsa.query(A, D, 28800).label.arrival, 30300);
  EXPECT_EQ(e.ultra_csa.query(A, D, 28800).label.arrival, 30300);
}

TEST(TinyOne, WalkOnlyAndSameVertex) {
  Engines e(test::tiny1());
  const Labels walk{{28800, 28920, 0}};
  EXPECT_EQ(e.mr.query(B, C, 28800).labels, walk);
  EXPECT_EQ(e.ultra_raptor.query(B, C, 28800).labels, walk);
  EXPECT_EQ(e.mr.query(X, C, 0).labels, (Labels{{0, 60, 0}}));
  EXPECT_EQ(e.ultra_raptor.query(X, X, 7).labels, (Labels{{7, 7, 0}}));
  EXPECT_EQ(e.ultra_raptor.query(A, A, 28800).labels, (Labels{{28800, 28800, 0}}));
  EXPECT_EQ(e.mcsa.query(B, C, 28800).label.arrival, 28920);
  EXPECT_EQ(e.ultra_csa.query(B, C, 28800).label.arrival, 28920);
  EXPECT_EQ(e.ultra_csa.query(D, D, 3).label.arrival, 3);
  const QueryResult r = e.mr.query(B, C, 28800);
  expect_journeys_match(e.net, r);
  EXPECT_EQ(r.journeys.at(0).transfers.at(0).duration, 120);
}

TEST(TinyOne, BufferMakesTheTransferInfeasible) {
  Engines e(test::tiny1(300));
  EXPECT_EQ(e.data.shortcuts.edge_count(), 0u);
  EXPECT_TRUE(e.ultra_raptor.query(A, D, 28800).labels.empty());
  EXPECT_TRUE(e.mr.query(A, D, 28800).labels.empty());
  EXPECT_FALSE(e.ultra_csa.query(A, D, 28800).reachable);
  EXPECT_FALSE(e.mcsa.query(A, D, 28800).reachable);
}

TEST(TinyOne, MissingShortcutLosesTheJourney) {
  const Network net = test::tiny1();
  const UltraData data = build_ultra_data(net, ShortcutGraph(net.stop_count(), {}));
  UltraRaptor engine(net, data);
  EXPECT_TRUE(engine.query(A, D, 28800).labels.empty());
}

TEST(TinyOne, QueriesDepartingTooLate) {
  Engines e(test::tiny1());
  EXPECT_TRUE(e.ultra_raptor.query(A, D, 28801).labels.empty());
  EXPECT_TRUE(e.mr.query(A, D, 28801).labels.empty());
  EXPECT_FALSE(e.mcsa.query(A, D, 28801).reachable);
}

// All engines against the exhaustive search on random instances.
class RandomEquivalence : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(RandomEquivalence, EnginesMatchOracle) {
  const std::uint64_t seed = GetParam();
  PreprocessParams params;
  params.witness_limit = std::array<Time, 3>{0, 900, kInfinity}[seed % 3];
  Engines e(oracle::generate_network(oracle::small_instance(seed)), params);
  const Network closed = make_transitive(e.net);
  TransitiveRaptor raptor(closed);
  TransitiveCsa csa(closed);
  const oracle::Oracle truth(e.net);
  oracle::SampleSpec spec;
  spec.seed = seed;
  spec.all_pairs_limit = 12;
  spec.sampled_pairs = 120;
  spec.vertex_sources = 2;
  for (const auto& q : oracle::sample_queries(e.net, spec)) {
    const auto table = truth.one_to_all(q.source, q.departure);
    ASSERT_TRUE(table.converged);
    for (const Vertex t : q.targets) {
      SCOPED_TRACE("seed " + std::to_string(seed) + " " + std::to_string(q.source) + "->" + std::to_string(t) + "@" +
                   std::to_string(q.departure));
      const Labels expected = table.pareto(t);
      const QueryResult mr = e.mr.query(q.source, t, q.departure);
      const QueryResult ur = e.ultra_raptor.query(q.source, t, q.departure);
      ASSERT_EQ(mr.labels, expected);
      ASSERT_EQ(ur.labels, expected);
      expect_journeys_match(e.net, mr);
      expect_journeys_match(e.net, ur);
      const ArrivalResult m = e.mcsa.query(q.source, t, q.departure);
      const ArrivalResult u = e.ultra_csa.query(q.source, t, q.departure);
      ASSERT_EQ(m.label.arrival, table.earliest_arrival(t));
      ASSERT_EQ(u.label.arrival, table.earliest_arrival(t));
      expect_journey_matches(e.net, m);
      expect_journey_matches(e.net, u);
      if (e.net.is_stop(q.source) && e.net.is_stop(t)) {
        const QueryResult tr = raptor.query(q.source, t, q.departure);
        ASSERT_EQ(tr.labels, expected);
        expect_journeys_match(closed, tr);
        const ArrivalResult tc = csa.query(q.source, t, q.departure);
        ASSERT_EQ(tc.label.arrival, table.earliest_arrival(t));
        expect_journey_matches(closed, tc);
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomEquivalence, ::testing::Range<std::uint64_t>(1, 41));

// The label with k trips is final once round k is done.
TEST(RoundSemantics, CappedRunsAgreeOnTheirLabels) {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    Engines e(oracle::generate_network(oracle::small_instance(seed)));
    oracle::SampleSpec spec;
    spec.seed = seed;
    spec.all_pairs_limit = 8;
    spec.sampled_pairs = 40;
    for (const auto& q : oracle::sample_queries(e.net, spec)) {
      for (const Vertex t : q.targets) {
        const Labels full = e.ultra_raptor.query(q.source, t, q.departure).labels;
        const Labels full_mr = e.mr.query(q.source, t, q.departure).labels;
        for (std::size_t k = 0; k <= 4; ++k) {
          QueryOptions capped;
          capped.max_rounds = k;
          Labels prefix;
          for (const ParetoLabel& l : full) {
            if (l.trips <= k) prefix.push_back(l);
          }
          ASSERT_EQ(e.ultra_raptor.query(q.source, t, q.departure, capped).labels, prefix);
          Labels prefix_mr;
          for (const ParetoLabel& l : full_mr) {
            if (l.trips <= k) prefix_mr.push_back(l);
          }
          ASSERT_EQ(e.mr.query(q.source, t, q.departure, capped).labels, prefix_mr);
        }
      }
    }
  }
}

TEST(QueryResult, LabelsSortedWithDecreasingArrival) {
  Engines e(oracle::generate_network(oracle::small_instance(3)));
  for (Vertex s = 0; s < e.net.stop_count(); ++s) {
    for (Vertex t = 0; t < e.net.stop_count(); ++t) {
      const QueryResult r = e.ultra_raptor.query(s, t, 6 * 3600);
      for (std::size_t i = 1; i < r.labels.size(); ++i) {
        EXPECT_LT(r.labels[i - 1].trips, r.labels[i].trips);
        EXPECT_GT(r.labels[i - 1].arrival, r.labels[i].arrival);
      }
    }
  }
}

TEST(Engines, RejectOutOfRangeVertices) {
  Engines e(test::tiny1());
  EXPECT_THROW(e.ultra_raptor.query(0, 99, 0), ContractViolation);
  EXPECT_THROW(e.mr.query(99, 0, 0), ContractViolation);
  EXPECT_THROW(e.ultra_csa.query(99, 0, 0), ContractViolation);
  EXPECT_THROW(e.mcsa.query(0, 99, 0), ContractViolation);
}

}  // namespace
}  // namespace ultra
