#include "credal/prob.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include <fmt/format.h>

#include "credal/error.hpp"
#include "credal/rng.hpp"

namespace credal {

OutcomeSpace::OutcomeSpace(std::vector<std::string> labels) {
  if (labels.empty()) fail(Errc::kInvalidArgument, "outcome space needs at least one outcome");
  std::unordered_set<std::string_view> seen;
  for (const auto& label : labels) {
    if (!seen.insert(label).second) fail(Errc::kInvalidArgument, fmt::format("duplicate outcome label '{}'", label));
  }
  labels_ = std::make_shared<const std::vector<std::string>>(std::move(labels));
}

OutcomeSpace OutcomeSpace::indexed(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return OutcomeSpace(std::move(labels));
}

std::size_t OutcomeSpace::find(std::string_view label) const noexcept {
  const auto& l = *labels_;
  return static_cast<std::size_t>(std::find(l.begin(), l.end(), label) - l.begin());
}

Event::Event(std::size_t universe, std::vector<std::size_t> members)
    : universe_(universe), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && members_.back() >= universe_) {
    fail(Errc::kIndexOutOfRange, fmt::format("event member {} outside universe of size {}", members_.back(), universe_));
  }
}

Event Event::all(std::size_t universe) {
  std::vector<std::size_t> m(universe);
  for (std::size_t i = 0; i < universe; ++i) m[i] = i;
  return Event(universe, std::move(m));
}

Event Event::from_mask(std::size_t universe, std::uint64_t mask) {
  if (universe > 64) fail(Errc::kInvalidArgument, "bitmask events support at most 64 outcomes");
  std::vector<std::size_t> m;
  for (std::size_t i = 0; i < universe; ++i) {
    if ((mask >> i) & 1U) m.push_back(i);
  }
  return Event(universe, std::move(m));
}

bool Event::contains(std::size_t i) const noexcept {
  return std::binary_search(members_.begin(), members_.end(), i);
}

Event Event::complement() const {
  std::vector<std::size_t> out;
  out.reserve(universe_ - members_.size());
  for (std::size_t i = 0; i < universe_; ++i) {
    if (!contains(i)) out.push_back(i);
  }
  return Event(universe_, std::move(out));
}

Event Event::intersect(const Event& other) const {
  if (other.universe_ != universe_) fail(Errc::kSpaceMismatch, "events over different universes");
  std::vector<std::size_t> out;
  std::set_intersection(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                        std::back_inserter(out));
  return Event(universe_, std::move(out));
}

Event Event::unite(const Event& other) const {
  if (other.universe_ != universe_) fail(Errc::kSpaceMismatch, "events over different universes");
  std::vector<std::size_t> out;
  std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                 std::back_inserter(out));
  return Event(universe_, std::move(out));
}

double accurate_sum(std::span<const double> values) noexcept {
  if (values.size() <= 10000) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

FiniteDistribution::FiniteDistribution(OutcomeSpace space, std::vector<double> probs)
    : space_(std::move(space)), probs_(std::move(probs)) {
  if (probs_.size() != space_.size()) {
    fail(Errc::kLengthMismatch, fmt::format("{} probabilities for {} outcomes", probs_.size(), space_.size()));
  }
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) fail(Errc::kNegativeWeight, fmt::format("invalid probability {}", p));
  }
  const double total = accurate_sum(probs_);
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    fail(Errc::kInvalidArgument, fmt::format("probabilities sum to {:.17g}, not 1", total));
  }
}

RationalDistribution::RationalDistribution(OutcomeSpace space, std::vector<Rational> probs)
    : space_(std::move(space)), probs_(std::move(probs)) {
  if (probs_.size() != space_.size()) {
    fail(Errc::kLengthMismatch, fmt::format("{} probabilities for {} outcomes", probs_.size(), space_.size()));
  }
  Rational total = 0;
  for (const auto& p : probs_) {
    if (p < 0) fail(Errc::kNegativeWeight, "negative rational probability");
    total += p;
  }
  if (total != 1) fail(Errc::kInvalidArgument, "rational probabilities do not sum to exactly 1");
}

FiniteDistribution RationalDistribution::to_double() const {
  std::vector<double> w;
  w.reserve(probs_.size());
  for (const auto& p : probs_) w.push_back(p.convert_to<double>());
  return make_distribution(space_, w);
}

FiniteDistribution make_distribution(const OutcomeSpace& space, std::span<const double> weights) {
  if (weights.size() != space.size()) {
    fail(Errc::kLengthMismatch, fmt::format("{} weights for {} outcomes", weights.size(), space.size()));
  }
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) fail(Errc::kNegativeWeight, fmt::format("invalid weight {}", w));
  }
  const double total = accurate_sum(weights);
  if (total <= 0.0) fail(Errc::kZeroTotal, "all weights are zero");
  std::vector<double> probs(weights.begin(), weights.end());
  for (double& p : probs) p /= total;
  return FiniteDistribution(space, std::move(probs));
}

RationalDistribution make_rational_distribution(const OutcomeSpace& space, std::span<const Rational> weights) {
  if (weights.size() != space.size()) {
    fail(Errc::kLengthMismatch, fmt::format("{} weights for {} outcomes", weights.size(), space.size()));
  }
  Rational total = 0;
  for (const auto& w : weights) {
    if (w < 0) fail(Errc::kNegativeWeight, "negative rational weight");
    total += w;
  }
  if (total == 0) fail(Errc::kZeroTotal, "all weights are zero");
  std::vector<Rational> probs;
  probs.reserve(weights.size());
  for (const auto& w : weights) probs.push_back(w / total);
  return RationalDistribution(space, std::move(probs));
}

double tv_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) fail(Errc::kSpaceMismatch, "distributions of different length");
  if (a.size() <= 10000) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return 0.5 * s;
  }
  std::vector<double> diffs(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diffs[i] = std::abs(a[i] - b[i]);
  return 0.5 * accurate_sum(diffs);
}

double tv_distance(const FiniteDistribution& a, const FiniteDistribution& b) {
  if (!(a.space() == b.space())) fail(Errc::kSpaceMismatch, "tv_distance over different outcome spaces");
  return tv_distance(a.probs(), b.probs());
}

double event_probability(std::span<const double> probs, const Event& e) {
  if (e.universe() != probs.size()) {
    fail(Errc::kSpaceMismatch, fmt::format("event over {} outcomes, distribution over {}", e.universe(), probs.size()));
  }
  if (e.size() <= 10000) {
    double s = 0.0;
    for (std::size_t i : e.members()) s += probs[i];
    return s;
  }
  std::vector<double> terms;
  terms.reserve(e.size());
  for (std::size_t i : e.members()) terms.push_back(probs[i]);
  return accurate_sum(terms);
}

double event_probability(const FiniteDistribution& d, const Event& e) { return event_probability(d.probs(), e); }

Rational event_probability(const RationalDistribution& d, const Event& e) {
  if (e.universe() != d.size()) fail(Errc::kSpaceMismatch, "event and distribution sizes differ");
  Rational s = 0;
  for (std::size_t i : e.members()) s += d[i];
  return s;
}

FiniteDistribution condition(const FiniteDistribution& d, const Event& e) {
  const double mass = event_probability(d, e);
  if (mass <= 0.0) fail(Errc::kZeroProbabilityEvent, "conditioning event has zero probability");
  std::vector<double> probs(d.size(), 0.0);
  for (std::size_t i : e.members()) probs[i] = d[i] / mass;
  return FiniteDistribution(d.space(), std::move(probs));
}

void sample_simplex(Rng& rng, std::span<double> out) {
  if (out.empty()) fail(Errc::kInvalidArgument, "simplex dimension must be at least 1");
  double total = 0.0;
  do {
    total = 0.0;
    for (double& x : out) {
      x = rng.exponential();
      total += x;
    }
  } while (total <= 0.0);
  for (double& x : out) x /= total;
}

FiniteDistribution sample_l1_uniform(std::size_t n, Rng& rng) {
  if (n == 0) fail(Errc::kInvalidArgument, "simplex dimension must be at least 1");
  return sample_l1_uniform(OutcomeSpace::indexed(n), rng);
}

FiniteDistribution sample_l1_uniform(const OutcomeSpace& space, Rng& rng) {
  std::vector<double> probs(space.size());
  sample_simplex(rng, probs);
  return FiniteDistribution(space, std::move(probs));
}

}  // namespace credal
