#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "ultra/io/network_csv.hpp"
#include "ultra/oracle/enumerate.hpp"
#include "ultra/oracle/generator.hpp"
#include "ultra/oracle/verify.hpp"

namespace ultra {
namespace {

using Labels = std::vector<ParetoLabel>;

TEST(Oracle, TinyFixtures) {
  EXPECT_EQ(oracle::Oracle(test::tiny1()).pareto(test::A, test::D, 28800), (Labels{{28800, 30600, 2}}));
  EXPECT_EQ(oracle::Oracle(test::tiny2()).pareto(test::A, test::D, 28800), (Labels{{28800, 30300, 1}}));
  EXPECT_EQ(oracle::Oracle(test::tiny1()).pareto(test::A, test::A, 28800), (Labels{{28800, 28800, 0}}));
  EXPECT_EQ(oracle::Oracle(test::tiny1()).pareto(test::A, test::D, 28801), Labels{});
}

// Walking B->C ends at 29520, T2 leaves C at 29700.
TEST(Oracle, BufferBoundary) {
  EXPECT_EQ(oracle::Oracle(test::tiny1(180)).pareto(test::A, test::D, 28800), (Labels{{28800, 30600, 2}}));
  EXPECT_EQ(oracle::Oracle(test::tiny1(181)).pareto(test::A, test::D, 28800), Labels{});
  EXPECT_EQ(oracle::Oracle(test::tiny1(300)).pareto(test::A, test::D, 28800), Labels{});
}

TEST(Oracle, WalkOnly) {
  EXPECT_EQ(oracle::Oracle(test::tiny1()).pareto(test::B, test::C, 100), (Labels{{100, 220, 0}}));
  EXPECT_EQ(oracle::Oracle(test::tiny1()).pareto(test::X, test::C, 0), (Labels{{0, 60, 0}}));
  EXPECT_EQ(oracle::Oracle(test::tiny1()).pareto(test::C, test::B, 0), Labels{});
}

TEST(Oracle, JourneysMatchTheirLabels) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Network net = oracle::generate_network(oracle::small_instance(seed));
    const oracle::Oracle o(net);
    oracle::SampleSpec spec;
    spec.seed = seed;
    spec.sampled_pairs = 60;
    for (const auto& q : oracle::sample_queries(net, spec)) {
      for (const Vertex t : q.targets) {
        for (const auto& [label, journey] : o.pareto_journeys(q.source, t, q.departure)) {
          ASSERT_TRUE(validate_journey(net, journey, q.source, t).ok()) << "seed " << seed;
          const ParetoLabel sig = journey_signature(net, journey);
          EXPECT_EQ(sig.arrival, label.arrival);
          EXPECT_EQ(sig.trips, label.trips);
          EXPECT_GE(sig.departure, q.departure);
        }
      }
    }
  }
}

TEST(Oracle, StableWithOneMoreTrip) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Network net = oracle::generate_network(oracle::small_instance(seed));
    const oracle::Oracle eight(net, 8), nine(net, 9);
    oracle::SampleSpec spec;
    spec.seed = seed;
    spec.sampled_pairs = 80;
    for (const auto& q : oracle::sample_queries(net, spec)) {
      const auto a = eight.one_to_all(q.source, q.departure);
      const auto b = nine.one_to_all(q.source, q.departure);
      ASSERT_TRUE(a.converged) << "seed " << seed;
      for (const Vertex t : q.targets) ASSERT_EQ(a.pareto(t), b.pareto(t)) << "seed " << seed;
    }
  }
}

// Pareto sets have strictly decreasing arrivals and increasing trip counts.
TEST(Oracle, ParetoSetsAreOrdered) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Network net = oracle::generate_network(oracle::small_instance(seed));
    const oracle::Oracle o(net);
    for (const auto& q : oracle::sample_queries(net, {})) {
      const auto table = o.one_to_all(q.source, q.departure);
      for (const Vertex t : q.targets) {
        const auto labels = table.pareto(t);
        for (std::size_t i = 1; i < labels.size(); ++i) {
          EXPECT_LT(labels[i].arrival, labels[i - 1].arrival);
          EXPECT_GT(labels[i].trips, labels[i - 1].trips);
        }
        if (!labels.empty()) {
          EXPECT_GE(labels.front().arrival, q.departure);
        }
      }
    }
  }
}

std::string serialized(const Network& net, const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  io::save_network(net, dir);
  std::string all;
  for (const char* f : {"meta.csv", "stops.csv", "trips.csv", "stop_times.csv", "transfer_edges.csv"}) {
    std::ifstream in(dir / f);
    std::stringstream ss;
    ss << in.rdbuf();
    all += ss.str();
  }
  std::filesystem::remove_all(dir);
  return all;
}

TEST(Generator, Deterministic) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto params = oracle::small_instance(seed);
    const Network a = oracle::generate_network(params), b = oracle::generate_network(params);
    EXPECT_TRUE(io::same_network(a, b));
    EXPECT_EQ(serialized(a, "ultra_gen_a"), serialized(b, "ultra_gen_b"));
    EXPECT_TRUE(validate_network(a).ok());
  }
}

TEST(Generator, IsolatedStopsHaveNoEdges) {
  auto params = oracle::small_instance(3);
  params.isolated_stop_probability = 1.0;
  const Network net = oracle::generate_network(params);
  for (const Edge& e : net.graph().edges()) {
    EXPECT_FALSE(net.is_stop(e.from));
    EXPECT_FALSE(net.is_stop(e.to));
  }
}

TEST(Generator, ZeroDensityHasNoEdges) {
  auto params = oracle::small_instance(4);
  params.edge_density = 0.0;
  EXPECT_TRUE(oracle::generate_network(params).graph().edges().empty());
}

TEST(Generator, MediumInstanceSize) {
  const auto p = oracle::medium_instance();
  EXPECT_EQ(p.stop_count, 2000u);
  EXPECT_EQ(p.stop_count + p.extra_vertices, 20000u);
  EXPECT_EQ(p.route_count * p.trips_per_route, 5000u);
}

TEST(VerifySufficiency, Fixtures) {
  const std::vector<Edge> walk{{test::B, test::C, 120}};
  const auto ok = oracle::verify_sufficiency(test::tiny1(), walk);
  EXPECT_TRUE(ok.ok());
  EXPECT_EQ(ok.superfluous_shortcuts, 0u);
  EXPECT_EQ(ok.used_shortcuts, 1u);
  EXPECT_TRUE(oracle::verify_sufficiency(test::tiny2(), std::vector<Edge>{}).ok());
  EXPECT_FALSE(oracle::verify_sufficiency(test::tiny1(), std::vector<Edge>{}).ok());
}

}  // namespace
}  // namespace ultra
