#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sensornet_tools/output.hpp"

namespace sensornet::tools {

/// "a:b:s" (inclusive, s > 0) or a comma list.
std::vector<double> parse_grid(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

struct ConnectivityConfig {
  std::string model = "range";  ///< range | knn | er
  int n = 1000;
  std::string grid = "-6:6:2";  ///< c values (range, er) or k values (knn)
  int trials = 200;
  std::string domain = "disk";
  std::optional<double> param;  ///< a single r, k or p instead of the grid

  ParameterMap params() const;
};

/// One row per grid value, ascending (one row when `param` is set).
CsvTable run_connectivity(const ConnectivityConfig& config, std::uint64_t seed, int threads);

struct CapacityConfig {
  std::string n_grid = "64,256,1024,4096";
  double kappa = 1.5;
  double delta = 1.0;
  double W = 1.0;
  int rounds = 2000;
  int warmup = 2000;
  bool physical = false;
  double alpha = 4.0;
  double beta = 1.0;
  double noise = 0.0;
  double power = 1.0;
  bool literal_eq1 = false;

  ParameterMap params() const;
};

CsvTable run_capacity(const CapacityConfig& config, std::uint64_t seed);

struct ClocksConfig {
  std::string op = "estimators";  ///< estimators | polyhedron | smoothing
  int worlds = 100;
  std::string graph = "path";     ///< path | cycle | complete | lattice | random
  int size = 10;
  double eps = 1e-6;

  ParameterMap params() const;
};

/// estimators and polyhedron produce a CSV; smoothing produces JSON.
struct ClocksOutput {
  bool is_csv = true;
  CsvTable csv{{}};
  nlohmann::json json;
};

ClocksOutput run_clocks(const ClocksConfig& config, std::uint64_t seed);

struct ComputeConfig {
  std::string op = "classify";
  std::string function = "max";  ///< builtin name
  std::string table;              ///< extensional table file, overrides `function`
  int n = 3;
  int q = 2;
  int theta = 1;
  int a = 0;
  int b = 0;
  int N = 15;
  double gamma = 0.5;
  std::string mode = "worst";     ///< worst | average
  std::string edges;              ///< "u>v,..."; empty selects the default network
  std::string alphabet;           ///< per-node sizes "1,2,2"
  std::string x1;                 ///< and-block input bits
  std::string x2;
  std::string n_grid = "64,256,1024";
  int blocks = 20;
  double c = 4.0;

  ParameterMap params() const;
};

struct ComputeOutput {
  bool is_csv = false;
  CsvTable csv{{}};
  nlohmann::json json;
};

ComputeOutput run_compute(const ComputeConfig& config, std::uint64_t seed);

}  // namespace sensornet::tools
