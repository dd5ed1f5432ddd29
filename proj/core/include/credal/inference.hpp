#pragma once

// Single-hypothesis evidence via the highest-order credal shift (HOCS) ratio,
// plus the exact urn predictive that reproduces belief-inertia resolution.
//
// All results here assume that agnostic higher-order confidences converge to
// the TV-uniform measure; reports carry that assumption as a flag.

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "credal/prob.hpp"
#include "credal/tvuniform.hpp"

namespace credal {

struct HocsResult {
  ParamPoint null_point;  // empty for counting measures
  std::size_t null_member = std::numeric_limits<std::size_t>::max();
  Event observed;
  double null_likelihood = 0.0;
  double reference_prob = 0.0;  // TV-uniform probability of the observed event
  double ratio = 0.0;           // null_likelihood / reference_prob
};

/// Continuous case: singletons carry no mass, so the reference is the
/// unconditional TV-uniform probability of `e`. Throws Errc::kZeroEvidence.
HocsResult hocs_ratio(const TvuMeasure& m, std::span<const double> null_point, const Event& e);

/// Finite case: the null member is removed and the rest renormalized.
HocsResult hocs_ratio_member(const TvuMeasure& m, std::size_t member, const Event& e);

/// One ratio per grid value of a one-parameter family.
std::vector<HocsResult> hocs_curve(const TvuMeasure& m, const Event& e, std::span<const double> grid);

/// Parameter values in [lo, hi] where the null likelihood equals the reference
/// (ratio exactly 1), located by bisection between grid sign changes.
std::vector<double> hocs_crossings(const TvuMeasure& m, const Event& e, std::span<const double> grid);

/// Mean of the ratio under the measure itself; equals 1 up to quadrature error.
double hocs_mean_ratio(const TvuMeasure& m, const Event& e);

struct BinomialTestOptions {
  MeasureOptions measure{};
  std::size_t grid_points = 1001;  // hocs curve on linspace(0, 1, grid_points)
};

struct BinomialReport {
  int n = 0;
  int k = 0;
  TvuMeasure measure;
  std::vector<double> reference;  // TV-uniform P(j heads), j = 0..n
  std::vector<HocsResult> curve;
  double peak_param = 0.0;
  double peak_ratio = 0.0;
  std::vector<double> crossings;  // where the curve crosses 1
  double mean_ratio = 0.0;
  bool conjecture_conditional = true;
};

BinomialReport binomial_test(int n, int k, const BinomialTestOptions& options = {});

struct UrnState {
  int ball_total = 100;
  std::vector<std::string> colors{"red", "yellow", "blue"};
  std::vector<std::string> history;  // drawn colors, with replacement
};

enum class ArithmeticMode { kExact, kFloat };

struct UrnPredictive {
  std::vector<std::string> colors;
  ArithmeticMode mode = ArithmeticMode::kExact;
  std::vector<Rational> exact;  // filled in exact mode
  std::vector<double> values;   // always filled
  std::size_t compositions = 0;
};

/// Predictive for the next draw under the counting uniform over every
/// composition of the urn, updated on the history. Throws
/// Errc::kImpossibleHistory for colors outside the urn.
UrnPredictive urn_update(const UrnState& state, ArithmeticMode mode = ArithmeticMode::kExact);

std::string to_string(const Rational& r);

}  // namespace credal
