#pragma once

// Monte-Carlo tower of higher-order credal sets under complete agnosticism.
//
// Level 1 is a finite stand-in for the first-order credal set. Every particle
// of level i >= 2 is a flat-Dirichlet weight vector over the particles of
// level i-1, i.e. a TV-uniform draw from all distributions over that level.
// A particle's probability for a first-order event is the weighted sum of the
// level below, evaluated bottom-up one level at a time.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "credal/credal_set.hpp"
#include "credal/tvuniform.hpp"

namespace credal {

/// How a parametric base level is drawn.
enum class BaseMode {
  kTvUniform,     // stratified inverse-CDF draws from the TV-uniform measure
  kTvUniformIid,  // independent draws from the TV-uniform measure
  kGrid,          // evenly spaced parameter values (one-parameter families)
};

/// Level 1 is the set's members; base_samples is not used. Under
/// kMultiplicity a merged member appears once per collapsed original.
struct CredalSource {
  CredalSet set;
  MergeWeighting weighting = MergeWeighting::kCountOnce;
};

struct FamilySource {
  ParamFamily family;
  BaseMode mode = BaseMode::kTvUniform;
  MeasureOptions measure{};
};

struct TowerConfig {
  std::variant<CredalSource, FamilySource> base;
  std::size_t base_samples = 1601;
  std::size_t order_samples = 1601;
  int max_order = 5;
  std::uint64_t seed = 0;
  unsigned threads = 1;

  /// Throws Errc::kConfigInvalid.
  void validate() const;
};

/// Dense row-major matrix; row j is one particle's weights over the level below.
class WeightMatrix {
 public:
  WeightMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<const double> row(std::size_t j) const { return std::span<const double>(data_).subspan(j * cols_, cols_); }
  std::span<double> row(std::size_t j) { return std::span<double>(data_).subspan(j * cols_, cols_); }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

class Tower {
 public:
  Tower(std::vector<FiniteDistribution> base, std::vector<std::string> base_labels, std::vector<WeightMatrix> levels);

  int max_order() const noexcept { return static_cast<int>(levels_.size()) + 1; }
  std::size_t level_size(int order) const;
  const OutcomeSpace& space() const noexcept { return base_.front().space(); }
  const std::vector<FiniteDistribution>& base() const noexcept { return base_; }
  const std::vector<std::string>& base_labels() const noexcept { return base_labels_; }
  /// Weights of level `order` (2 <= order <= max_order).
  const WeightMatrix& weights(int order) const;

 private:
  std::vector<FiniteDistribution> base_;
  std::vector<std::string> base_labels_;
  std::vector<WeightMatrix> levels_;  // levels_[i] holds order i + 2
};

/// Deterministic in cfg.seed; the result does not depend on cfg.threads.
Tower build_tower(const TowerConfig& cfg);

/// by_order[i - 1][j] = P^i_j(e).
struct ImpliedProbabilities {
  std::vector<std::vector<double>> by_order;
};

ImpliedProbabilities implied_probabilities(const Tower& t, const Event& e, unsigned threads = 1);
double implied_probability(const Tower& t, int order, std::size_t particle, const Event& e);

struct OrderSummary {
  int order = 0;
  std::vector<double> sorted;  // ascending
  double mean = 0.0;
  double sd = 0.0;             // population standard deviation
  double min = 0.0;
  double max = 0.0;
  double max_abs_dev = std::numeric_limits<double>::quiet_NaN();  // from the reference
  std::size_t excluded = 0;    // particles without a defined value

  /// Share of values strictly inside (lo, hi).
  double fraction_within(double lo, double hi) const;
};

/// Uniformly weighted summary of one order's values; NaN entries are counted
/// as excluded and left out.
OrderSummary summarize(int order, std::vector<double> values,
                       double reference = std::numeric_limits<double>::quiet_NaN());

std::vector<OrderSummary> convergence_stats(const Tower& t, const Event& e, double reference, unsigned threads = 1);

struct DilationProfile {
  std::size_t dropped_base = 0;      // base particles with P(pre_event) = 0
  std::vector<OrderSummary> orders;  // values P^i(query | pre_event)
};

/// Conditional implied probabilities P^i(query | pre) = P^i(query ∩ pre) / P^i(pre):
/// each particle's weights are reweighted by its children's mass on `pre`.
/// Base particles with zero mass on `pre` drop out. Throws Errc::kAllDropped.
DilationProfile dilation_profile(const Tower& t, const Event& pre_event, const Event& query,
                                 double reference = std::numeric_limits<double>::quiet_NaN(), unsigned threads = 1);

}  // namespace credal
