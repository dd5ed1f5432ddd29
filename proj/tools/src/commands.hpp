#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "output.hpp"

namespace credal::cli {

struct BinomialTestArgs {
  int n = 10;
  int k = 1;
  std::size_t resolution = 16;
  std::string rule = "gauss";
  std::size_t grid_points = 1001;
};

struct TvuDensityArgs {
  std::string family = "binomial";
  int n = 10;
  std::size_t points = 201;
  std::size_t resolution = 16;
  std::string rule = "gauss";
};

struct ConvergeArgs {
  int n = 10;
  std::vector<int> events{1};
  std::size_t base_samples = 1601;
  std::size_t order_samples = 1601;
  int max_order = 5;
  std::string base_mode = "tvu";
  std::size_t resolution = 16;
  bool tower = false;
};

struct UrnArgs {
  std::vector<std::string> history;
  std::vector<std::string> colors{"red", "yellow", "blue"};
  int balls = 100;
  std::string mode = "exact";
};

struct DilationArgs {
  std::size_t grid = 101;
  int orders = 5;
  std::size_t samples = 1601;
  std::string weighting = "count-once";
};

// Each command writes its files through ctx and returns normally; library
// errors propagate as credal::Error.
void run_binomial_test(const BinomialTestArgs& a, RunContext& ctx, bool svg);
void run_tvu_density(const TvuDensityArgs& a, RunContext& ctx, bool svg);
void run_converge(const ConvergeArgs& a, RunContext& ctx, bool svg);
/// Returns the JSON printed on stdout.
Json run_urn(const UrnArgs& a);
void run_dilation(const DilationArgs& a, RunContext& ctx, bool svg);

}  // namespace credal::cli
