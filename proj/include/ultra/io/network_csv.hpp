#pragma once

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ultra/transit/network.hpp"

namespace ultra::io {

class NetworkLoadError : public std::runtime_error {
 public:
  enum class Kind { MissingFile, MalformedRow, Validation };

  NetworkLoadError(Kind kind, std::string file, std::size_t line, const std::string& message)
      : std::runtime_error(describe(file, line, message)), kind_(kind), file_(std::move(file)), line_(line) {}

  Kind kind() const noexcept { return kind_; }
  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }  // 1-based, 0 when not tied to a row

 private:
  static std::string describe(const std::string& file, std::size_t line, const std::string& message) {
    return line == 0 ? file + ": " + message : file + ":" + std::to_string(line) + ": " + message;
  }

  Kind kind_;
  std::string file_;
  std::size_t line_;
};

namespace detail {

// Integer-only CSV with a fixed header row.
class CsvTable {
 public:
  CsvTable(const std::filesystem::path& path, std::vector<std::string> columns)
      : name_(path.filename().string()), columns_(std::move(columns)) {
    std::ifstream in(path);
    if (!in) throw NetworkLoadError(NetworkLoadError::Kind::MissingFile, name_, 0, "cannot open file");
    std::string line;
    std::size_t number = 0;
    bool header = true;
    while (std::getline(in, line)) {
      ++number;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      const auto cells = split(line);
      if (header) {
        if (cells != columns_) fail(number, "expected header " + join(columns_));
        header = false;
        continue;
      }
      if (cells.size() != columns_.size()) {
        fail(number, "expected " + std::to_string(columns_.size()) + " fields, got " + std::to_string(cells.size()));
      }
      Row row{number, {}};
      for (std::size_t i = 0; i < cells.size(); ++i) {
        std::int64_t value = 0;
        const char* end = cells[i].data() + cells[i].size();
        const auto [ptr, ec] = std::from_chars(cells[i].data(), end, value);
        if (ec != std::errc() || ptr != end || cells[i].empty()) fail(number, "field '" + columns_[i] + "' is not an integer");
        if (value < 0) fail(number, "field '" + columns_[i] + "' is negative");
        if (value > std::numeric_limits<std::int32_t>::max()) fail(number, "field '" + columns_[i] + "' is too large");
        row.values.push_back(value);
      }
      rows_.push_back(std::move(row));
    }
    if (header) fail(0, "missing header row");
  }

  struct Row {
    std::size_t line;
    std::vector<std::int64_t> values;
  };

  const std::vector<Row>& rows() const noexcept { return rows_; }
  [[noreturn]] void fail(std::size_t line, const std::string& message) const {
    throw NetworkLoadError(NetworkLoadError::Kind::MalformedRow, name_, line, message);
  }

 private:
  static std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
      cell.erase(0, cell.find_first_not_of(" \t"));
      cell.erase(cell.find_last_not_of(" \t") + 1);
      cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
  }

  static std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& c : v) s += (s.empty() ? "" : ",") + c;
    return s;
  }

  std::string name_;
  std::vector<std::string> columns_;
  std::vector<Row> rows_;
};

}  // namespace detail

// Reads stops.csv, trips.csv, stop_times.csv, transfer_edges.csv and
// meta.csv. Transfer times are multiplied by `transfer_time_scale` and
// rounded half up.
inline Network load_network(const std::filesystem::path& dir, double transfer_time_scale = 1.0) {
  using Kind = NetworkLoadError::Kind;
  if (!(transfer_time_scale >= 0.0)) throw ContractViolation("transfer time scale must be non-negative");
  for (const char* f : {"stops.csv", "trips.csv", "stop_times.csv", "transfer_edges.csv", "meta.csv"}) {
    if (!std::filesystem::is_regular_file(dir / f)) throw NetworkLoadError(Kind::MissingFile, f, 0, "file not found");
  }
  const detail::CsvTable meta(dir / "meta.csv", {"vertex_count", "horizon"});
  if (meta.rows().size() != 1) meta.fail(0, "expected exactly one row");
  const std::size_t vertex_count = static_cast<std::size_t>(meta.rows()[0].values[0]);
  const Time horizon = static_cast<Time>(meta.rows()[0].values[1]);

  const detail::CsvTable stop_rows(dir / "stops.csv", {"stop_id", "buffer_time"});
  std::vector<Stop> stops(stop_rows.rows().size());
  std::vector<bool> seen(stops.size(), false);
  for (const auto& row : stop_rows.rows()) {
    const auto id = static_cast<std::size_t>(row.values[0]);
    if (id >= stops.size()) stop_rows.fail(row.line, "stop ids must be 0..|S|-1");
    if (seen[id]) stop_rows.fail(row.line, "duplicate stop id");
    seen[id] = true;
    stops[id].buffer_time = static_cast<Time>(row.values[1]);
  }

  const detail::CsvTable trip_rows(dir / "trips.csv", {"trip_id"});
  const std::size_t trip_count = trip_rows.rows().size();
  std::vector<bool> trip_seen(trip_count, false);
  for (const auto& row : trip_rows.rows()) {
    const auto id = static_cast<std::size_t>(row.values[0]);
    if (id >= trip_count) trip_rows.fail(row.line, "trip ids must be 0..|T|-1");
    if (trip_seen[id]) trip_rows.fail(row.line, "duplicate trip id");
    trip_seen[id] = true;
  }

  const detail::CsvTable times(dir / "stop_times.csv", {"trip_id", "seq", "stop_id", "arrival", "departure"});
  std::vector<std::map<std::int64_t, const detail::CsvTable::Row*>> events(trip_count);
  for (const auto& row : times.rows()) {
    const auto trip = static_cast<std::size_t>(row.values[0]);
    if (trip >= trip_count) times.fail(row.line, "unknown trip id");
    if (static_cast<std::size_t>(row.values[2]) >= stops.size()) times.fail(row.line, "unknown stop id");
    if (row.values[3] > row.values[4]) times.fail(row.line, "departure before arrival");
    if (!events[trip].emplace(row.values[1], &row).second) times.fail(row.line, "duplicate seq within trip");
  }
  std::vector<Trip> trips(trip_count);
  for (std::size_t t = 0; t < trip_count; ++t) {
    const detail::CsvTable::Row* previous = nullptr;
    for (const auto& [seq, row] : events[t]) {
      if (previous != nullptr && row->values[3] < previous->values[4]) {
        times.fail(row->line, "arrival before the departure at the previous stop");
      }
      trips[t].stops.push_back(static_cast<StopId>(row->values[2]));
      trips[t].arrivals.push_back(static_cast<Time>(row->values[3]));
      trips[t].departures.push_back(static_cast<Time>(row->values[4]));
      previous = row;
    }
    if (trips[t].size() < 2) {
      throw NetworkLoadError(Kind::MalformedRow, "stop_times.csv", 0,
                             "trip " + std::to_string(t) + " has fewer than two stops");
    }
  }

  const detail::CsvTable edge_rows(dir / "transfer_edges.csv", {"from", "to", "transfer_time"});
  std::vector<Edge> edges;
  for (const auto& row : edge_rows.rows()) {
    if (static_cast<std::size_t>(row.values[0]) >= vertex_count || static_cast<std::size_t>(row.values[1]) >= vertex_count) {
      edge_rows.fail(row.line, "edge endpoint out of range");
    }
    edges.push_back({static_cast<Vertex>(row.values[0]), static_cast<Vertex>(row.values[1]),
                     scale_transfer_time(static_cast<Time>(row.values[2]), transfer_time_scale)});
  }

  Network net;
  try {
    net = Network::create(std::move(stops), std::move(trips), TransferGraph(vertex_count, std::move(edges)), horizon);
  } catch (const ContractViolation& e) {
    throw NetworkLoadError(Kind::Validation, dir.filename().string(), 0, e.what());
  }
  const ValidationReport report = validate_network(net);
  if (!report.ok()) throw NetworkLoadError(Kind::Validation, dir.filename().string(), 0, report.to_string());
  return net;
}

// Canonical writer: rows in id order, seq numbered from 0.
inline void save_network(const Network& net, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream out(dir / name);
    if (!out) throw std::runtime_error(std::string("cannot write ") + name);
    return out;
  };
  {
    auto out = open("meta.csv");
    out << "vertex_count,horizon\n" << net.vertex_count() << ',' << net.horizon() << '\n';
  }
  {
    auto out = open("stops.csv");
    out << "stop_id,buffer_time\n";
    for (StopId s = 0; s < net.stop_count(); ++s) out << s << ',' << net.buffer(s) << '\n';
  }
  {
    auto out = open("trips.csv");
    out << "trip_id\n";
    for (TripId t = 0; t < net.trips().size(); ++t) out << t << '\n';
  }
  {
    auto out = open("stop_times.csv");
    out << "trip_id,seq,stop_id,arrival,departure\n";
    for (TripId t = 0; t < net.trips().size(); ++t) {
      const Trip& trip = net.trip(t);
      for (std::size_t i = 0; i < trip.size(); ++i) {
        out << t << ',' << i << ',' << trip.stops[i] << ',' << trip.arrivals[i] << ',' << trip.departures[i] << '\n';
      }
    }
  }
  {
    auto out = open("transfer_edges.csv");
    out << "from,to,transfer_time\n";
    for (const Edge& e : net.graph().edges()) out << e.from << ',' << e.to << ',' << e.weight << '\n';
  }
}

// Same stops, trips, transfer edges (in order), vertex count and horizon.
inline bool same_network(const Network& a, const Network& b) {
  if (a.stop_count() != b.stop_count() || a.vertex_count() != b.vertex_count() || a.horizon() != b.horizon() ||
      a.trips().size() != b.trips().size()) {
    return false;
  }
  for (StopId s = 0; s < a.stop_count(); ++s) {
    if (a.buffer(s) != b.buffer(s)) return false;
  }
  for (TripId t = 0; t < a.trips().size(); ++t) {
    const Trip& x = a.trip(t);
    const Trip& y = b.trip(t);
    if (x.stops != y.stops || x.arrivals != y.arrivals || x.departures != y.departures) return false;
  }
  return std::equal(a.graph().edges().begin(), a.graph().edges().end(), b.graph().edges().begin(),
                    b.graph().edges().end());
}

}  // namespace ultra::io
