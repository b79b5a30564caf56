#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ultra/io/network_csv.hpp"
#include "ultra/io/shortcut_file.hpp"
#include "ultra/oracle/generator.hpp"
#include "ultra/oracle/suite.hpp"
#include "ultra/preprocess/compute_shortcuts.hpp"
#include "ultra/query/csa.hpp"
#include "ultra/query/mcsa.hpp"
#include "ultra/query/mr_inf.hpp"
#include "ultra/query/transitive.hpp"
#include "ultra/query/ultra_raptor.hpp"

namespace {

using namespace ultra;
using json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kMismatch = 2;

const std::vector<std::string> kAlgorithms{"raptor", "csa", "mr-inf", "mcsa", "ultra-raptor", "ultra-csa"};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Time parse_witness_limit(const std::string& text) {
  if (text == "inf" || text == "infinity") return kInfinity;
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used == text.size() && v >= 0 && v < kInfinity) return static_cast<Time>(v);
  } catch (const std::exception&) {
  }
  throw UsageError("witness limit must be a non-negative number of seconds or 'inf'");
}

// Everything one run of the query or bench command needs, built lazily.
class EngineSet {
 public:
  EngineSet(const Network& net, std::optional<std::string> shortcut_file)
      : net_(net), shortcut_file_(std::move(shortcut_file)) {}

  QueryResult pareto(const std::string& algorithm, Vertex s, Vertex t, Time dep, const QueryOptions& o) {
    if (algorithm == "raptor") return transitive_raptor().query(s, t, dep, o);
    if (algorithm == "mr-inf") {
      if (!mr_) mr_.emplace(net_, core());
      return mr_->query(s, t, dep, o);
    }
    if (!ultra_raptor_) ultra_raptor_.emplace(net_, data());
    return ultra_raptor_->query(s, t, dep, o);
  }

  ArrivalResult arrival(const std::string& algorithm, Vertex s, Vertex t, Time dep, const QueryOptions& o) {
    if (algorithm == "csa") {
      if (!csa_) csa_.emplace(closed());
      return csa_->query(s, t, dep, o);
    }
    if (algorithm == "mcsa") {
      if (!mcsa_) mcsa_.emplace(net_, core());
      return mcsa_->query(s, t, dep, o);
    }
    if (!ultra_csa_) ultra_csa_.emplace(net_, data());
    return ultra_csa_->query(s, t, dep, o);
  }

  const Network& network_for(const std::string& algorithm) { return algorithm == "raptor" || algorithm == "csa" ? closed() : net_; }

  void check_vertices(const std::string& algorithm, Vertex s, Vertex t) {
    const bool stops_only = algorithm == "raptor" || algorithm == "csa";
    const std::size_t bound = stops_only ? net_.stop_count() : net_.vertex_count();
    if (s >= bound || t >= bound) {
      throw UsageError(std::string(stops_only ? "stop" : "vertex") + " id out of range for " + algorithm);
    }
  }

 private:
  const Network& closed() {
    if (!closed_) closed_.emplace(make_transitive(net_));
    return *closed_;
  }

  TransitiveRaptor& transitive_raptor() {
    if (!raptor_) raptor_.emplace(closed());
    return *raptor_;
  }

  const CoreGraph& core() {
    if (!core_) core_.emplace(build_core(net_, 14.0));
    return *core_;
  }

  const UltraData& data() {
    if (data_) return *data_;
    ShortcutGraph shortcuts;
    if (shortcut_file_) {
      shortcuts = io::load_shortcuts(*shortcut_file_);
      if (shortcuts.stop_count() != net_.stop_count()) throw UsageError("shortcut file does not match the network");
    } else {
      std::cerr << "note: no --shortcuts given, computing them with default parameters\n";
      shortcuts = compute_shortcuts(net_, core(), PreprocessParams{}).shortcuts;
    }
    data_.emplace(build_ultra_data(net_, std::move(shortcuts)));
    return *data_;
  }

  const Network& net_;
  std::optional<std::string> shortcut_file_;
  std::optional<Network> closed_;
  std::optional<CoreGraph> core_;
  std::optional<UltraData> data_;
  std::optional<TransitiveRaptor> raptor_;
  std::optional<TransitiveCsa> csa_;
  std::optional<MrInf> mr_;
  std::optional<Mcsa> mcsa_;
  std::optional<UltraRaptor> ultra_raptor_;
  std::optional<UltraCsa> ultra_csa_;
};

json journey_json(const Network& net, const Journey& j) {
  json legs = json::array(), transfers = json::array();
  for (const TripLeg& leg : j.legs) {
    const Trip& trip = net.trip(leg.trip);
    legs.push_back({{"trip", leg.trip},
                    {"board_index", leg.board},
                    {"board_stop", trip.stops[leg.board]},
                    {"departure", trip.departures[leg.board]},
                    {"alight_index", leg.alight},
                    {"alight_stop", trip.stops[leg.alight]},
                    {"arrival", trip.arrivals[leg.alight]}});
  }
  for (const Transfer& t : j.transfers) transfers.push_back({{"from", t.from}, {"to", t.to}, {"duration", t.duration}});
  return {{"legs", legs}, {"transfers", transfers}};
}

void print_journey(std::ostream& out, const Network& net, const Journey& j) {
  for (std::size_t i = 0; i < j.transfers.size(); ++i) {
    const Transfer& t = j.transfers[i];
    if (!t.empty()) out << "    transfer " << t.from << " -> " << t.to << " (" << t.duration << " s)\n";
    if (i < j.legs.size()) {
      const TripLeg& leg = j.legs[i];
      const Trip& trip = net.trip(leg.trip);
      out << "    trip " << leg.trip << ": stop " << trip.stops[leg.board] << " at " << trip.departures[leg.board]
          << " -> stop " << trip.stops[leg.alight] << " at " << trip.arrivals[leg.alight] << '\n';
    }
  }
}

int run_query(const std::string& algorithm, const std::string& network, const std::optional<std::string>& shortcuts,
              Vertex s, Vertex t, Time dep, bool as_json, double scale) {
  const Network net = io::load_network(network, scale);
  EngineSet engines(net, shortcuts);
  engines.check_vertices(algorithm, s, t);
  std::vector<ParetoLabel> labels;
  std::vector<Journey> journeys;
  if (algorithm == "raptor" || algorithm == "mr-inf" || algorithm == "ultra-raptor") {
    QueryResult r = engines.pareto(algorithm, s, t, dep, {});
    labels = std::move(r.labels);
    journeys = std::move(r.journeys);
  } else {
    ArrivalResult r = engines.arrival(algorithm, s, t, dep, {});
    if (r.reachable) {
      labels.push_back(r.label);
      journeys.push_back(std::move(r.journey));
    }
  }
  const Network& shown = engines.network_for(algorithm);
  if (as_json) {
    json out = {{"algorithm", algorithm}, {"source", s}, {"target", t}, {"departure", dep}, {"labels", json::array()}};
    for (std::size_t i = 0; i < labels.size(); ++i) {
      out["labels"].push_back({{"trips", labels[i].trips},
                               {"departure", labels[i].departure},
                               {"arrival", labels[i].arrival},
                               {"journey", journey_json(shown, journeys[i])}});
    }
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << algorithm << ": " << s << " -> " << t << " departing " << dep << ", " << labels.size()
              << (labels.size() == 1 ? " journey\n" : " journeys\n");
    for (std::size_t i = 0; i < labels.size(); ++i) {
      std::cout << "  " << labels[i].trips << " trips, arrival " << labels[i].arrival << '\n';
      print_journey(std::cout, shown, journeys[i]);
    }
  }
  return kOk;
}

int run_preprocess(const std::string& network, double core_degree, const std::string& witness, std::size_t threads,
                   double scale, bool drop_disconnected, const std::string& out) {
  PreprocessParams params;
  params.core_degree = core_degree;
  params.witness_limit = parse_witness_limit(witness);
  params.workers = threads;
  params.drop_disconnected_pairs = drop_disconnected;
  if (threads == 0) throw UsageError("--threads must be positive");
  const Network net = io::load_network(network, scale);
  const auto start = std::chrono::steady_clock::now();
  const CoreGraph core = build_core(net, core_degree);
  const ShortcutGraph shortcuts = compute_shortcuts(net, core, params).shortcuts;
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  io::save_shortcuts(out, shortcuts);
  std::cout << "stops " << net.stop_count() << ", vertices " << net.vertex_count() << ", trips " << net.trips().size()
            << "\ncore vertices " << core.core_vertices.size() << ", core edges " << core.core.edge_count()
            << "\nshortcuts " << shortcuts.edge_count() << " written to " << out << " in " << seconds << " s\n";
  return kOk;
}

int run_verify(std::uint64_t seed, std::size_t instances, const std::string& witness, std::size_t threads,
               double core_degree) {
  oracle::SuiteParams params;
  params.preprocess.witness_limit = parse_witness_limit(witness);
  params.preprocess.workers = threads;
  params.preprocess.core_degree = core_degree;
  if (threads == 0) throw UsageError("--threads must be positive");
  std::size_t queries = 0, failures = 0, shortcuts = 0;
  for (std::size_t i = 0; i < instances; ++i) {
    const std::uint64_t s = seed + i;
    const Network net = oracle::generate_network(oracle::small_instance(s));
    params.samples.seed = s;
    const oracle::InstanceReport report = oracle::check_instance(net, params);
    queries += report.queries;
    failures += report.failures();
    shortcuts += report.shortcuts;
    if (!report.ok()) {
      std::cout << "instance " << s << ": " << report.failures() << " failures\n";
      for (const auto& m : report.messages) std::cout << "  " << m << '\n';
    }
  }
  std::cout << instances << " instances, " << queries << " queries, " << shortcuts << " shortcuts, " << failures
            << " failures\n";
  return failures == 0 ? kOk : kMismatch;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

struct BenchQuery {
  Vertex source;
  Vertex target;
  Time departure;
};

std::vector<BenchQuery> read_queries(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::vector<BenchQuery> queries;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || (number == 1 && line.rfind("source", 0) == 0)) continue;
    std::stringstream row(line);
    long long s = -1, t = -1, d = -1;
    char c1 = 0, c2 = 0;
    if (!(row >> s >> c1 >> t >> c2 >> d) || c1 != ',' || c2 != ',' || s < 0 || t < 0 || d < 0 || d >= kInfinity) {
      throw UsageError(path + ":" + std::to_string(number) + ": expected source,target,departure");
    }
    queries.push_back({static_cast<Vertex>(s), static_cast<Vertex>(t), static_cast<Time>(d)});
  }
  return queries;
}

int run_bench(const std::string& network, const std::optional<std::string>& shortcuts, const std::string& query_file,
              const std::string& out_path, const std::string& algorithm_list, double scale) {
  const auto algorithms = split_list(algorithm_list);
  for (const auto& a : algorithms) {
    if (std::find(kAlgorithms.begin(), kAlgorithms.end(), a) == kAlgorithms.end()) {
      throw UsageError("unknown algorithm '" + a + "'");
    }
  }
  const Network net = io::load_network(network, scale);
  const auto queries = read_queries(query_file);
  EngineSet engines(net, shortcuts);
  std::ofstream out(out_path);
  if (!out) throw UsageError("cannot write " + out_path);
  out << "algorithm,source,target,departure,labels,total_us,init_us,collect_us,scan_us,relax_us\n";
  QueryOptions options;
  options.journeys = false;
  for (const auto& algorithm : algorithms) {
    for (const auto& q : queries) engines.check_vertices(algorithm, q.source, q.target);
    double total = 0;
    for (const auto& q : queries) {
      QueryStats stats;
      std::size_t labels = 0;
      if (algorithm == "raptor" || algorithm == "mr-inf" || algorithm == "ultra-raptor") {
        const QueryResult r = engines.pareto(algorithm, q.source, q.target, q.departure, options);
        stats = r.stats;
        labels = r.labels.size();
      } else {
        const ArrivalResult r = engines.arrival(algorithm, q.source, q.target, q.departure, options);
        stats = r.stats;
        labels = r.reachable ? 1 : 0;
      }
      total += stats.total_us;
      out << algorithm << ',' << q.source << ',' << q.target << ',' << q.departure << ',' << labels << ','
          << stats.total_us << ',' << stats.init_us << ',' << stats.collect_us << ',' << stats.scan_us << ','
          << stats.relax_us << '\n';
    }
    std::cout << algorithm << ": " << queries.size() << " queries, mean "
              << (queries.empty() ? 0.0 : total / static_cast<double>(queries.size())) << " us\n";
  }
  return kOk;
}

int run_generate(std::uint64_t seed, const std::string& preset, const std::string& out) {
  oracle::GeneratorParams params;
  if (preset == "small") params = oracle::small_instance(seed);
  else if (preset == "medium") params = oracle::medium_instance(seed);
  else throw UsageError("preset must be small or medium");
  const Network net = oracle::generate_network(params);
  io::save_network(net, out);
  std::cout << "stops " << net.stop_count() << ", vertices " << net.vertex_count() << ", trips " << net.trips().size()
            << ", transfer edges " << net.graph().edge_count() << " written to " << out << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-modal transit routing with transfer shortcuts"};
  app.require_subcommand(1);

  std::string network, out, witness = "900", algorithm, query_file, preset = "small";
  std::string algorithm_list = "mr-inf,ultra-raptor,mcsa,ultra-csa";
  std::optional<std::string> shortcuts;
  double core_degree = 14.0, scale = 1.0;
  std::size_t threads = 1, instances = 50;
  std::uint64_t seed = 1;
  bool drop_disconnected = false, as_json = false;
  Vertex from = 0, to = 0;
  Time depart = 0;

  auto* pre = app.add_subcommand("preprocess", "compute transfer shortcuts for a network");
  pre->add_option("--network", network, "network directory")->required();
  pre->add_option("--core-degree", core_degree, "average degree bound of the core graph");
  pre->add_option("--witness-limit", witness, "witness limit in seconds, or inf");
  pre->add_option("--threads", threads, "worker threads");
  pre->add_option("--transfer-time-scale", scale, "multiplier applied to transfer times at load");
  pre->add_flag("--drop-disconnected-pairs", drop_disconnected, "skip shortcuts whose source cannot walk to the target");
  pre->add_option("--out", out, "shortcut file to write")->required();

  auto* query = app.add_subcommand("query", "answer one query");
  query->add_option("--algorithm", algorithm, "engine")->required()->check(CLI::IsMember(kAlgorithms));
  query->add_option("--network", network, "network directory")->required();
  query->add_option("--shortcuts", shortcuts, "shortcut file for the ultra engines");
  query->add_option("--from", from, "source vertex")->required();
  query->add_option("--to", to, "target vertex")->required();
  query->add_option("--depart", depart, "departure time in seconds")->required()->check(CLI::NonNegativeNumber);
  query->add_option("--transfer-time-scale", scale, "multiplier applied to transfer times at load");
  query->add_flag("--json", as_json, "print JSON");

  auto* verify = app.add_subcommand("verify", "check engines against the exhaustive search on generated networks");
  verify->add_option("--seed", seed, "first generator seed");
  verify->add_option("--instances", instances, "number of networks");
  verify->add_option("--witness-limit", witness, "witness limit in seconds, or inf");
  verify->add_option("--threads", threads, "preprocessing worker threads");
  verify->add_option("--core-degree", core_degree, "average degree bound of the core graph");

  auto* bench = app.add_subcommand("bench", "replay a query file and record per-phase timings");
  bench->add_option("--network", network, "network directory")->required();
  bench->add_option("--shortcuts", shortcuts, "shortcut file for the ultra engines");
  bench->add_option("--queries", query_file, "CSV with source,target,departure")->required();
  bench->add_option("--out", out, "CSV to write")->required();
  bench->add_option("--algorithms", algorithm_list, "comma-separated engines");
  bench->add_option("--transfer-time-scale", scale, "multiplier applied to transfer times at load");

  auto* generate = app.add_subcommand("generate", "write a generated network directory");
  generate->add_option("--seed", seed, "generator seed");
  generate->add_option("--preset", preset, "small or medium");
  generate->add_option("--out", out, "directory to write")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (*pre) return run_preprocess(network, core_degree, witness, threads, scale, drop_disconnected, out);
    if (*query) return run_query(algorithm, network, shortcuts, from, to, depart, as_json, scale);
    if (*verify) return run_verify(seed, instances, witness, threads, core_degree);
    if (*bench) return run_bench(network, shortcuts, query_file, out, algorithm_list, scale);
    if (*generate) return run_generate(seed, preset, out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
