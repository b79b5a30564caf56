#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "fixtures.hpp"
#include "ultra/io/network_csv.hpp"
#include "ultra/io/shortcut_file.hpp"
#include "ultra/oracle/generator.hpp"
#include "ultra/preprocess/compute_shortcuts.hpp"

namespace ultra {
namespace {

namespace fs = std::filesystem;

const fs::path kTiny1 = fs::path(ULTRA_TEST_DATA) / "tiny1";

// Fresh scratch directory per test.
fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ultra_io_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path copy_of_tiny1(const std::string& name) {
  const fs::path dir = scratch(name);
  for (const auto& f : fs::directory_iterator(kTiny1)) fs::copy_file(f.path(), dir / f.path().filename());
  return dir;
}

void write(const fs::path& path, const std::string& text) { std::ofstream(path) << text; }

template <typename F>
io::NetworkLoadError load_error(F&& f) {
  try {
    f();
  } catch (const io::NetworkLoadError& e) {
    return e;
  }
  ADD_FAILURE() << "no load error";
  return io::NetworkLoadError(io::NetworkLoadError::Kind::Validation, "", 0, "");
}

TEST(LoadNetwork, TinyOneFixture) {
  const Network net = io::load_network(kTiny1);
  EXPECT_EQ(net.stop_count(), 4u);
  EXPECT_EQ(net.vertex_count(), 5u);
  EXPECT_EQ(net.routes().size(), 2u);
  EXPECT_TRUE(io::same_network(net, test::tiny1()));
}

TEST(LoadNetwork, MissingFile) {
  const fs::path dir = copy_of_tiny1("missing");
  fs::remove(dir / "stop_times.csv");
  const auto e = load_error([&] { io::load_network(dir); });
  EXPECT_EQ(e.kind(), io::NetworkLoadError::Kind::MissingFile);
  EXPECT_EQ(e.file(), "stop_times.csv");
}

TEST(LoadNetwork, NegativeTimeNamesTheLine) {
  const fs::path dir = copy_of_tiny1("negative");
  write(dir / "stop_times.csv",
        "trip_id,seq,stop_id,arrival,departure\n0,0,0,28800,28800\n0,1,1,-5,29400\n1,0,2,29700,29700\n1,1,3,30600,30600\n");
  const auto e = load_error([&] { io::load_network(dir); });
  EXPECT_EQ(e.kind(), io::NetworkLoadError::Kind::MalformedRow);
  EXPECT_EQ(e.file(), "stop_times.csv");
  EXPECT_EQ(e.line(), 3u);
  EXPECT_NE(std::string(e.what()).find(":3:"), std::string::npos);
}

TEST(LoadNetwork, MalformedRows) {
  const fs::path dir = copy_of_tiny1("malformed");
  write(dir / "transfer_edges.csv", "from,to,transfer_time\n1,4,60\n4,2\n");
  auto e = load_error([&] { io::load_network(dir); });
  EXPECT_EQ(e.kind(), io::NetworkLoadError::Kind::MalformedRow);
  EXPECT_EQ(e.line(), 3u);
  write(dir / "transfer_edges.csv", "from,to,transfer_time\n1,4,sixty\n");
  e = load_error([&] { io::load_network(dir); });
  EXPECT_EQ(e.line(), 2u);
  write(dir / "transfer_edges.csv", "from,to,time\n");
  e = load_error([&] { io::load_network(dir); });
  EXPECT_EQ(e.line(), 1u);
  write(dir / "transfer_edges.csv", "from,to,transfer_time\n1,9,60\n");
  e = load_error([&] { io::load_network(dir); });
  EXPECT_EQ(e.line(), 2u);
}

TEST(LoadNetwork, ValidationFailure) {
  const fs::path dir = copy_of_tiny1("validation");
  // Every row parses, but the stops do not fit into the vertex range.
  write(dir / "meta.csv", "vertex_count,horizon\n3,172800\n");
  write(dir / "transfer_edges.csv", "from,to,transfer_time\n");
  const auto e = load_error([&] { io::load_network(dir); });
  EXPECT_EQ(e.kind(), io::NetworkLoadError::Kind::Validation);
}

TEST(LoadNetwork, TransferTimeScale) {
  const Network net = io::load_network(kTiny1, 1.25);
  EXPECT_EQ(net.graph().edges()[0].weight, 75);
  EXPECT_THROW(io::load_network(kTiny1, -1), ContractViolation);
}

TEST(SaveNetwork, RoundTripIdentity) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Network net = oracle::generate_network(oracle::small_instance(seed));
    const fs::path dir = scratch("roundtrip");
    io::save_network(net, dir);
    const Network back = io::load_network(dir);
    EXPECT_TRUE(io::same_network(net, back)) << "seed " << seed;
    const fs::path again = scratch("roundtrip2");
    io::save_network(back, again);
    for (const char* f : {"stops.csv", "trips.csv", "stop_times.csv", "transfer_edges.csv", "meta.csv"}) {
      std::ifstream a(dir / f), b(again / f);
      const std::string x((std::istreambuf_iterator<char>(a)), {}), y((std::istreambuf_iterator<char>(b)), {});
      EXPECT_EQ(x, y) << f;
    }
  }
}

TEST(ShortcutFile, RoundTrips) {
  const fs::path dir = scratch("shortcuts");
  for (const ShortcutGraph& g :
       {ShortcutGraph(4, {{test::B, test::C, 120}}), ShortcutGraph(4, {}), ShortcutGraph(0, {})}) {
    io::save_shortcuts(dir / "e.ulsc", g);
    EXPECT_EQ(io::load_shortcuts(dir / "e.ulsc"), g);
  }
  const Network net = oracle::generate_network(oracle::small_instance(5));
  const ShortcutGraph g = compute_shortcuts(net, {}).shortcuts;
  io::save_shortcuts(dir / "g.ulsc", g);
  EXPECT_EQ(io::load_shortcuts(dir / "g.ulsc"), g);
  EXPECT_EQ(io::encode_shortcuts(io::load_shortcuts(dir / "g.ulsc")), io::encode_shortcuts(g));
}

TEST(ShortcutFile, LayoutIsLittleEndian) {
  const auto bytes = io::encode_shortcuts(ShortcutGraph(4, {{1, 2, 120}}));
  ASSERT_EQ(bytes.size(), 4u + 12u + 12u + 8u);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "ULSC");
  EXPECT_EQ(bytes[4], 1);
  EXPECT_EQ(bytes[8], 4);
  EXPECT_EQ(bytes[12], 1);
  EXPECT_EQ(bytes[16], 1);
  EXPECT_EQ(bytes[20], 2);
  EXPECT_EQ(bytes[24], 120);
}

TEST(ShortcutFile, EveryFlippedByteIsRejected) {
  const auto good = io::encode_shortcuts(ShortcutGraph(4, {{1, 2, 120}, {2, 3, 7}}));
  for (std::size_t i = 0; i < good.size(); ++i) {
    auto bad = good;
    bad[i] ^= 0x01;
    EXPECT_THROW(io::decode_shortcuts(bad), io::ShortcutFileError) << "byte " << i;
    if (i >= 4) {
      try {
        io::decode_shortcuts(bad);
      } catch (const io::ShortcutFileError& e) {
        EXPECT_EQ(e.kind(), io::ShortcutFileError::Kind::Checksum);
      }
    }
  }
}

TEST(ShortcutFile, VersionAndTruncation) {
  auto bytes = io::encode_shortcuts(ShortcutGraph(4, {{1, 2, 120}}));
  auto versioned = bytes;
  versioned[4] = 2;
  versioned.resize(versioned.size() - 8);
  const std::uint64_t sum = io::fnv1a64(versioned.data(), versioned.size());
  for (int i = 0; i < 8; ++i) versioned.push_back(static_cast<std::uint8_t>(sum >> (8 * i)));
  try {
    io::decode_shortcuts(versioned);
    ADD_FAILURE();
  } catch (const io::ShortcutFileError& e) {
    EXPECT_EQ(e.kind(), io::ShortcutFileError::Kind::Version);
  }
  bytes.resize(10);
  EXPECT_THROW(io::decode_shortcuts(bytes), io::ShortcutFileError);
  EXPECT_THROW(io::load_shortcuts("/nonexistent/file.ulsc"), io::ShortcutFileError);
}

}  // namespace
}  // namespace ultra
