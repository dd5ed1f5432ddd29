#pragma once

// TV-uniform measure over simply parametrized families of distributions.
//
// The unnormalized density at a parameter point x is the product over
// dimensions k of the thickness t_k(x): the rate at which the TV distance
// moves as x_k moves. In one dimension that is the TV arc-length element, so
// the measure does not depend on how the family is parametrized.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "credal/credal_set.hpp"
#include "credal/prob.hpp"

namespace credal {

class Rng;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  double width() const noexcept { return hi - lo; }
};

class ParamBox {
 public:
  explicit ParamBox(std::vector<Interval> dims);

  std::size_t dimension() const noexcept { return dims_.size(); }
  const Interval& operator[](std::size_t k) const { return dims_.at(k); }
  bool contains(std::span<const double> x) const noexcept;

 private:
  std::vector<Interval> dims_;
};

using ParamPoint = std::vector<double>;

/// Parameter point -> probability vector over the family's outcome space.
using EvalFn = std::function<std::vector<double>(std::span<const double>)>;
/// (point, k) -> d eval / d x_k, component-wise.
using PartialFn = std::function<std::vector<double>(std::span<const double>, std::size_t)>;

class ParamFamily {
 public:
  ParamFamily(OutcomeSpace space, ParamBox box, EvalFn eval);

  /// Parameter values in dimension `dim` where the density is not smooth.
  /// Quadrature panels are split there.
  ParamFamily& with_kinks(std::size_t dim, std::vector<double> kinks);
  /// Registers analytic partial derivatives; thickness then skips finite differences.
  ParamFamily& with_partial(PartialFn partial);
  ParamFamily& with_name(std::string name);

  const OutcomeSpace& space() const noexcept { return space_; }
  const ParamBox& box() const noexcept { return box_; }
  std::size_t dimension() const noexcept { return box_.dimension(); }
  const std::vector<double>& kinks(std::size_t dim) const { return kinks_.at(dim); }
  bool has_partial() const noexcept { return static_cast<bool>(partial_); }
  const std::string& name() const noexcept { return name_; }

  /// Raw probability vector; checked for length only.
  std::vector<double> probs(std::span<const double> x) const;
  FiniteDistribution eval(std::span<const double> x) const;
  std::vector<double> partial(std::span<const double> x, std::size_t k) const;
  bool is_kink(std::size_t dim, double value, double tol) const;

 private:
  OutcomeSpace space_;
  ParamBox box_;
  EvalFn eval_;
  PartialFn partial_;
  std::vector<std::vector<double>> kinks_;
  std::string name_ = "family";
};

/// Finite-difference thickness in dimension k with step h: the mean of the
/// left and right one-sided quotients TV(p(x), p(x ± h e_k)) / h. Falls back
/// to one side near the box boundary; throws Errc::kStepTooLarge when
/// neither side fits.
double thickness(const ParamFamily& f, std::span<const double> x, std::size_t k, double h);

/// Half the L1 norm of the registered partial derivative.
double analytic_thickness(const ParamFamily& f, std::span<const double> x, std::size_t k);

/// Unnormalized TV-uniform density: product of per-dimension thickness.
/// Uses analytic partials when registered, otherwise Richardson-extrapolated
/// finite differences with step 1e-5 * (b_k - a_k).
double tvu_density(const ParamFamily& f, std::span<const double> x);

enum class QuadratureRule {
  kGaussLegendre,  // composite 8-point rule on panels split at kinks
  kNodeSum,        // equispaced nodes including both endpoints, equal weights
};

struct MeasureOptions {
  std::size_t resolution = 16;  // panels per dimension (>= 16); node intervals for kNodeSum
  QuadratureRule rule = QuadratureRule::kGaussLegendre;
  bool adaptive = true;         // double resolution until Z is stable
  double tolerance = 1e-6;      // relative Z change that stops refinement
  std::size_t max_resolution = 1U << 14;
  unsigned threads = 1;
};

/// Discrete representation of a normalized measure over a credal set: nodes
/// (parameter points or explicit members) with non-negative masses.
class TvuMeasure {
 public:
  TvuMeasure(OutcomeSpace space, std::vector<ParamPoint> points, std::vector<double> masses,
             std::vector<double> node_probs, std::optional<ParamFamily> family, QuadratureRule rule,
             std::size_t resolution, bool converged);

  const OutcomeSpace& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return masses_.size(); }
  const ParamPoint& point(std::size_t i) const { return points_.at(i); }
  /// Unnormalized mass (quadrature weight times density, or member count).
  double mass(std::size_t i) const { return masses_.at(i); }
  std::span<const double> masses() const noexcept { return masses_; }
  std::span<const double> probs(std::size_t i) const;
  double normalizer() const noexcept { return normalizer_; }

  bool is_counting() const noexcept { return !family_.has_value(); }
  const ParamFamily& family() const;
  QuadratureRule rule() const noexcept { return rule_; }
  std::size_t resolution() const noexcept { return resolution_; }
  bool converged() const noexcept { return converged_; }

  /// tvu_density(x) / Z.
  double normalized_density(std::span<const double> x) const;

 private:
  OutcomeSpace space_;
  std::vector<ParamPoint> points_;
  std::vector<double> masses_;
  std::vector<double> node_probs_;  // row-major, size() x space().size()
  std::optional<ParamFamily> family_;
  QuadratureRule rule_;
  std::size_t resolution_;
  bool converged_;
  double normalizer_ = 0.0;
};

/// Throws Errc::kDegenerateFamily when the density integrates to zero.
TvuMeasure build_measure(const ParamFamily& f, const MeasureOptions& options = {});
TvuMeasure build_measure(const ParamFamily& f, std::size_t resolution);

/// Counting uniform over a finite credal set: each member gets 1/|C|
/// (or multiplicity/total under kMultiplicity).
TvuMeasure counting_measure(const CredalSet& c, MergeWeighting mode = MergeWeighting::kCountOnce);

double event_prob(const TvuMeasure& m, const Event& e);

/// P(query | observed) under the measure. Throws Errc::kZeroEvidence when
/// the observed event has zero probability.
double posterior_predictive(const TvuMeasure& m, const Event& observed, const Event& query);

enum class SamplingScheme { kStratified, kIid };

/// Parameter draws from the normalized measure. One-parameter families use
/// the inverse CDF of the density; otherwise (and for counting measures)
/// nodes are drawn with probability proportional to mass.
std::vector<ParamPoint> sample_parameters(const TvuMeasure& m, std::size_t count, Rng& rng,
                                          SamplingScheme scheme = SamplingScheme::kStratified);
std::vector<std::size_t> sample_nodes(const TvuMeasure& m, std::size_t count, Rng& rng,
                                      SamplingScheme scheme = SamplingScheme::kStratified);

}  // namespace credal
