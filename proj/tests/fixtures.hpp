#pragma once

#include "ultra/transit/network.hpp"

namespace ultra::test {

// TINY-1: stops A=0, B=1, C=2, D=3 and the walking-only vertex X=4.
// T1 rides A->B, a 120 s walk B->X->C reaches T2 which rides C->D.
inline constexpr Vertex A = 0, B = 1, C = 2, D = 3, X = 4;

inline std::vector<Trip> tiny1_trips() {
  return {
      Trip{{A, B}, {28800, 29400}, {28800, 29400}},
      Trip{{C, D}, {29700, 30600}, {29700, 30600}},
  };
}

inline TransferGraph tiny1_graph() { return TransferGraph(5, {{B, X, 60}, {X, C, 60}}); }

inline Network tiny1(Time buffer_c = 0) {
  std::vector<Stop> stops(4);
  stops[C].buffer_time = buffer_c;
  return Network::create(stops, tiny1_trips(), tiny1_graph());
}

// TINY-2: TINY-1 plus the direct trip T3 from A to D.
inline Network tiny2() {
  auto trips = tiny1_trips();
  trips.push_back(Trip{{A, D}, {28800, 30300}, {28800, 30300}});
  return Network::create(std::vector<Stop>(4), trips, tiny1_graph());
}

}  // namespace ultra::test
