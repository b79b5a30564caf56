#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>

#include "ultra/io/network_csv.hpp"
#include "ultra/io/shortcut_file.hpp"

namespace ultra {
namespace {

struct CliRun {
  int exit_code;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string command = std::string(ULTRA_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return {-1, ""};
  std::string out;
  char buffer[4096];
  while (std::fgets(buffer, sizeof buffer, pipe) != nullptr) out += buffer;
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

const std::string kTiny = std::string(ULTRA_TEST_DATA) + "/tiny1";

nlohmann::json json_of(const std::string& out) { return nlohmann::json::parse(out.substr(out.find('{'))); }

TEST(Cli, UltraRaptorQueryOnTinyOne) {
  const CliRun r = run("query --algorithm ultra-raptor --network " + kTiny + " --from 0 --to 3 --depart 28800 --json");
  ASSERT_EQ(r.exit_code, 0) << r.out;
  const auto j = json_of(r.out);
  ASSERT_EQ(j["labels"].size(), 1u);
  EXPECT_EQ(j["labels"][0]["arrival"], 30600);
  EXPECT_EQ(j["labels"][0]["trips"], 2);
  EXPECT_EQ(j["labels"][0]["journey"]["legs"].size(), 2u);
  EXPECT_EQ(j["labels"][0]["journey"]["transfers"][1]["duration"], 120);
}

TEST(Cli, EveryAlgorithmAgreesOnTinyOne) {
  for (const char* algorithm : {"raptor", "csa", "mr-inf", "mcsa", "ultra-raptor", "ultra-csa"}) {
    const CliRun r = run(std::string("query --algorithm ") + algorithm + " --network " + kTiny +
                      " --from 0 --to 3 --depart 28800 --json");
    ASSERT_EQ(r.exit_code, 0) << algorithm << ": " << r.out;
    const auto j = json_of(r.out);
    ASSERT_FALSE(j["labels"].empty()) << algorithm;
    EXPECT_EQ(j["labels"].back()["arrival"], 30600) << algorithm;
  }
}

TEST(Cli, JsonLabelsSortedByTrips) {
  const CliRun r = run("query --algorithm mr-inf --network " + kTiny + " --from 0 --to 0 --depart 100 --json");
  ASSERT_EQ(r.exit_code, 0) << r.out;
  const auto labels = json_of(r.out)["labels"];
  ASSERT_EQ(labels.size(), 1u);
  EXPECT_EQ(labels[0]["trips"], 0);
  EXPECT_EQ(labels[0]["arrival"], 100);
}

TEST(Cli, VerifySeedSeven) {
  const CliRun r = run("verify --seed 7 --instances 50");
  EXPECT_EQ(r.exit_code, 0) << r.out;
}

TEST(Cli, UnknownAlgorithmIsAUsageError) {
  const CliRun r = run("query --algorithm dijkstra --network " + kTiny + " --from 0 --to 3 --depart 28800");
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.out.find("Usage"), std::string::npos) << r.out;
}

TEST(Cli, MissingNetworkIsAnError) {
  const CliRun r = run("query --algorithm raptor --network /nonexistent --from 0 --to 3 --depart 0");
  EXPECT_NE(r.exit_code, 0);
}

TEST(Cli, PreprocessThenQueryAndBench) {
  const auto dir = std::filesystem::temp_directory_path() / "ultra_cli_test";
  std::filesystem::create_directories(dir);
  const std::string sc = (dir / "tiny.ulsc").string();
  CliRun r = run("preprocess --network " + kTiny + " --threads 2 --out " + sc);
  ASSERT_EQ(r.exit_code, 0) << r.out;
  EXPECT_EQ(io::load_shortcuts(sc), ShortcutGraph(4, {{1, 2, 120}}));

  r = run("query --algorithm ultra-csa --network " + kTiny + " --shortcuts " + sc +
          " --from 0 --to 3 --depart 28800 --json");
  ASSERT_EQ(r.exit_code, 0) << r.out;
  EXPECT_EQ(json_of(r.out)["labels"][0]["arrival"], 30600);

  {
    std::ofstream q(dir / "queries.csv");
    q << "source,target,departure\n0,3,28800\n4,2,0\n";
  }
  const std::string csv = (dir / "bench.csv").string();
  r = run("bench --network " + kTiny + " --shortcuts " + sc + " --queries " + (dir / "queries.csv").string() +
          " --out " + csv);
  ASSERT_EQ(r.exit_code, 0) << r.out;
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "algorithm,source,target,departure,labels,total_us,init_us,collect_us,scan_us,relax_us");
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line);) rows += !line.empty();
  EXPECT_EQ(rows, 8u);  // two queries, four default algorithms
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace ultra
