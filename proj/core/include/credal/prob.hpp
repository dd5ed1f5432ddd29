#pragma once

// Finite probability distributions, events and total-variation geometry.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace credal {

class Rng;

/// Ordered, distinct outcome labels. Copies share the label storage.
class OutcomeSpace {
 public:
  explicit OutcomeSpace(std::vector<std::string> labels);

  /// Outcomes labelled "0", "1", ..., "n-1".
  static OutcomeSpace indexed(std::size_t n);

  std::size_t size() const noexcept { return labels_->size(); }
  const std::string& label(std::size_t i) const { return labels_->at(i); }
  const std::vector<std::string>& labels() const noexcept { return *labels_; }

  /// Index of `label`, or size() when absent.
  std::size_t find(std::string_view label) const noexcept;

  friend bool operator==(const OutcomeSpace& a, const OutcomeSpace& b) noexcept {
    return a.labels_ == b.labels_ || *a.labels_ == *b.labels_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> labels_;
};

/// A subset of {0, ..., universe-1}, stored sorted and deduplicated.
class Event {
 public:
  Event() = default;
  Event(std::size_t universe, std::vector<std::size_t> members);
  Event(std::size_t universe, std::initializer_list<std::size_t> members)
      : Event(universe, std::vector<std::size_t>(members)) {}

  static Event all(std::size_t universe);
  static Event none(std::size_t universe) { return Event(universe, std::vector<std::size_t>{}); }
  /// Event whose members satisfy bit i of `mask`; universe must be <= 64.
  static Event from_mask(std::size_t universe, std::uint64_t mask);

  std::size_t universe() const noexcept { return universe_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  std::span<const std::size_t> members() const noexcept { return members_; }
  bool contains(std::size_t i) const noexcept;

  Event complement() const;
  Event intersect(const Event& other) const;
  Event unite(const Event& other) const;

  friend bool operator==(const Event&, const Event&) = default;

 private:
  std::size_t universe_ = 0;
  std::vector<std::size_t> members_;
};

class FiniteDistribution {
 public:
  /// Validates the invariants (non-negative, sums to one within 1e-12)
  /// without renormalizing.
  FiniteDistribution(OutcomeSpace space, std::vector<double> probs);

  const OutcomeSpace& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return probs_.size(); }
  std::span<const double> probs() const noexcept { return probs_; }
  double operator[](std::size_t i) const { return probs_[i]; }

 private:
  OutcomeSpace space_;
  std::vector<double> probs_;
};

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Exact distribution; probabilities sum to exactly one.
class RationalDistribution {
 public:
  RationalDistribution(OutcomeSpace space, std::vector<Rational> probs);

  const OutcomeSpace& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return probs_.size(); }
  const std::vector<Rational>& probs() const noexcept { return probs_; }
  const Rational& operator[](std::size_t i) const { return probs_[i]; }

  FiniteDistribution to_double() const;

 private:
  OutcomeSpace space_;
  std::vector<Rational> probs_;
};

inline constexpr double kNormalizationTolerance = 1e-12;

/// Sums with Neumaier compensation once the input exceeds 10^4 terms.
double accurate_sum(std::span<const double> values) noexcept;

FiniteDistribution make_distribution(const OutcomeSpace& space, std::span<const double> weights);
RationalDistribution make_rational_distribution(const OutcomeSpace& space,
                                                std::span<const Rational> weights);

/// Half the L1 distance; on finite spaces this is the supremum over events
/// of |a(E) - b(E)|.
double tv_distance(const FiniteDistribution& a, const FiniteDistribution& b);
double tv_distance(std::span<const double> a, std::span<const double> b);

double event_probability(const FiniteDistribution& d, const Event& e);
double event_probability(std::span<const double> probs, const Event& e);
Rational event_probability(const RationalDistribution& d, const Event& e);

/// Throws Errc::kZeroProbabilityEvent when d(e) == 0.
FiniteDistribution condition(const FiniteDistribution& d, const Event& e);

/// Flat-Dirichlet draw written into `out` (normalized i.i.d. unit
/// exponentials, i.e. Lebesgue-uniform on the simplex).
void sample_simplex(Rng& rng, std::span<double> out);

FiniteDistribution sample_l1_uniform(std::size_t n, Rng& rng);
FiniteDistribution sample_l1_uniform(const OutcomeSpace& space, Rng& rng);

}  // namespace credal
