#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <array>
#include <clocale>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "sensornet/errors.hpp"
#include "sensornet_tools/experiments.hpp"
#include "sensornet_tools/output.hpp"

namespace {

using namespace sensornet;
using namespace sensornet::tools;

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(SENSORNET_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "sensornet_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

TEST(Output, FormatNumber) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(1e-12), "1e-12");
  EXPECT_EQ(format_number(12345LL), "12345");
  EXPECT_THROW(format_number(std::nan("")), Error);
  // A comma-decimal locale must not leak into the output.
  if (std::setlocale(LC_ALL, "de_DE.UTF-8")) {
    EXPECT_EQ(format_number(2.5), "2.5");
    std::setlocale(LC_ALL, "C");
  }
}

TEST(Output, CsvQuoting) {
  CsvTable t({"a", "b"});
  t.add_row({"x,y", "say \"hi\""});
  t.add_row({"1", "2"});
  EXPECT_EQ(t.str(), "a,b\n\"x,y\",\"say \"\"hi\"\"\"\n1,2\n");
  EXPECT_THROW(t.add_row({"1"}), Error);
}

TEST(Output, ConfigHashIsFnv1aOfSortedLines) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : std::string("a=1\nb=two\n")) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char want[17];
  std::snprintf(want, sizeof want, "%016llx", static_cast<unsigned long long>(h));
  EXPECT_EQ(config_hash({{"b", "two"}, {"a", "1"}}), want);
  EXPECT_NE(config_hash({{"a", "1"}}), config_hash({{"a", "2"}}));
}

TEST(Output, WriteAtomicReplaces) {
  const auto p = scratch("atomic.txt");
  write_atomic(p, "first");
  write_atomic(p, "second");
  EXPECT_EQ(slurp(p), "second");
  EXPECT_FALSE(std::filesystem::exists(p.string() + ".tmp"));
  EXPECT_THROW(write_atomic(scratch("missing") / "dir" / "x.txt", "x"), Error);
}

TEST(Grid, Parsing) {
  EXPECT_EQ(parse_grid("-6:6:2"), (std::vector<double>{-6, -4, -2, 0, 2, 4, 6}));
  EXPECT_EQ(parse_grid("3,1,2"), (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(parse_int_list("64,256"), (std::vector<int>{64, 256}));
  EXPECT_THROW(parse_grid("1:0:1"), InvalidArgument);
  EXPECT_THROW(parse_grid("0:1:0"), InvalidArgument);
  EXPECT_THROW(parse_grid("abc"), InvalidArgument);
  EXPECT_THROW(parse_int_list("1.5"), InvalidArgument);
}

TEST(Cli, ConnectivityGridRows) {
  const auto r = run_cli("connectivity --model range --n 1000 --c-grid -6:6:2 --trials 200 --seed 1");
  ASSERT_EQ(r.status, 0);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 8U);
  EXPECT_EQ(rows[0], "model,n,param,c,trials,successes,p_hat,ci_low,ci_high,seed,config_hash");
  EXPECT_EQ(rows[1].rfind("range,1000,", 0), 0U);
}

TEST(Cli, ByteIdenticalReruns) {
  const std::string args = "connectivity --model er --n 300 --grid -2:2:1 --trials 50 --seed 9";
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  const auto threaded = run_cli(args + " --threads 3");
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, threaded.out);
  const auto p = scratch("er.csv");
  ASSERT_EQ(run_cli(args + " --out " + p.string()).status, 0);
  EXPECT_EQ(slurp(p), a.out);
  EXPECT_NE(run_cli("connectivity --model er --n 300 --grid -2:2:1 --trials 50 --seed 10").out, a.out);
}

TEST(Cli, ThresholdJson) {
  const auto r = run_cli("compute --op threshold --n 2 --theta 2");
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("1.584962500"), std::string::npos);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j.at("complexity_bits").get<double>(), 1.584962500721156, 1e-12);
  EXPECT_EQ(j.at("op"), "threshold");
  EXPECT_TRUE(j.contains("config_hash"));
}

TEST(Cli, ConfigFileWithOverride) {
  const auto cfg = scratch("run.toml");
  std::ofstream(cfg) << "seed = 4\n[connectivity]\nmodel = \"er\"\nn = 200\ngrid = \"0\"\ntrials = 30\n";
  const auto from_file = run_cli("--config " + cfg.string() + " connectivity");
  ASSERT_EQ(from_file.status, 0);
  const auto explicit_args = run_cli("connectivity --model er --n 200 --grid 0 --trials 30 --seed 4");
  EXPECT_EQ(from_file.out, explicit_args.out);
  const auto overridden = run_cli("--config " + cfg.string() + " connectivity --trials 40");
  ASSERT_EQ(overridden.status, 0);
  EXPECT_NE(lines(overridden.out).at(1).find(",40,"), std::string::npos);
}

TEST(Cli, OtherSubcommands) {
  const auto cap = run_cli("capacity --n-grid 64 --rounds 50 --warmup 50 --seed 2");
  ASSERT_EQ(cap.status, 0);
  EXPECT_EQ(lines(cap.out).size(), 2U);
  const auto clk = run_cli("clocks --op smoothing --graph cycle --size 8");
  ASSERT_EQ(clk.status, 0);
  EXPECT_TRUE(nlohmann::json::accept(clk.out));
  const auto est = run_cli("clocks --op estimators --worlds 5");
  ASSERT_EQ(est.status, 0);
  const auto dag = run_cli("compute --op dag-bounds --function sum");
  ASSERT_EQ(dag.status, 0);
  const auto hist = run_cli("compute --op histogram --n-grid 64 --blocks 3");
  ASSERT_EQ(hist.status, 0);
  EXPECT_EQ(lines(hist.out).size(), 2U);
}

TEST(Cli, ReportSingleCriterion) {
  const auto r = run_cli("report --criterion 9");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
  EXPECT_NE(r.out.find("|"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("").status, 2);
  EXPECT_EQ(run_cli("connectivity --bogus").status, 2);
  EXPECT_EQ(run_cli("connectivity --model nope").status, 2);
  EXPECT_EQ(run_cli("connectivity --grid abc --trials 2").status, 2);
  EXPECT_EQ(run_cli("compute --op threshold --n 2 --theta 9").status, 2);
  EXPECT_EQ(run_cli("compute --op threshold --n 2 --theta 2 --out " + (scratch("nope") / "a" / "b.json").string()).status, 1);
  EXPECT_EQ(run_cli("--help").status, 0);
}

}  // namespace
