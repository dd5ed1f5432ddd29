#include "credal/credal_set.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "credal/error.hpp"

namespace credal {

CredalSet::CredalSet(OutcomeSpace space, std::vector<FiniteDistribution> members,
                     std::vector<std::string> member_labels, std::vector<std::size_t> multiplicity)
    : space_(std::move(space)),
      members_(std::move(members)),
      labels_(std::move(member_labels)),
      multiplicity_(std::move(multiplicity)) {
  if (members_.empty()) fail(Errc::kInvalidArgument, "credal set must have at least one member");
  for (const auto& m : members_) {
    if (!(m.space() == space_)) fail(Errc::kSpaceMismatch, "credal set members over different outcome spaces");
  }
  if (labels_.empty()) {
    labels_.reserve(members_.size());
    for (std::size_t i = 0; i < members_.size(); ++i) labels_.push_back(std::to_string(i));
  }
  if (multiplicity_.empty()) multiplicity_.assign(members_.size(), 1);
  if (labels_.size() != members_.size() || multiplicity_.size() != members_.size()) {
    fail(Errc::kLengthMismatch, "member labels/multiplicities do not match member count");
  }
  for (std::size_t m : multiplicity_) {
    if (m == 0) fail(Errc::kInvalidArgument, "member multiplicity must be positive");
  }
}

std::vector<double> CredalSet::member_weights(MergeWeighting mode) const {
  std::vector<double> w(members_.size(), 1.0);
  if (mode == MergeWeighting::kMultiplicity) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = static_cast<double>(multiplicity_[i]);
  }
  const double total = accurate_sum(w);
  for (double& x : w) x /= total;
  return w;
}

namespace {

OutcomeSpace restrict_space(const OutcomeSpace& source, const Event& e) {
  if (e.universe() != source.size()) fail(Errc::kSpaceMismatch, "conditioning event does not match outcome space");
  if (e.empty()) fail(Errc::kInvalidArgument, "cannot condition on the empty event");
  std::vector<std::string> labels;
  labels.reserve(e.size());
  for (std::size_t i : e.members()) labels.push_back(source.label(i));
  return OutcomeSpace(std::move(labels));
}

}  // namespace

EventMap::EventMap(OutcomeSpace source, Event conditioning)
    : source_(std::move(source)), conditioning_(std::move(conditioning)), target_(restrict_space(source_, conditioning_)) {}

std::optional<std::size_t> EventMap::image(std::size_t source_index) const {
  const auto members = conditioning_.members();
  const auto it = std::lower_bound(members.begin(), members.end(), source_index);
  if (it == members.end() || *it != source_index) return std::nullopt;
  return static_cast<std::size_t>(it - members.begin());
}

Event EventMap::map(const Event& f) const {
  if (f.universe() != source_.size()) fail(Errc::kSpaceMismatch, "event is not over the source space");
  std::vector<std::size_t> out;
  for (std::size_t i : f.members()) {
    if (auto j = image(i)) out.push_back(*j);
  }
  return Event(target_.size(), std::move(out));
}

Event EventMap::preimage(const Event& target_event) const {
  if (target_event.universe() != target_.size()) fail(Errc::kSpaceMismatch, "event is not over the target space");
  std::vector<std::size_t> out;
  out.reserve(target_event.size());
  for (std::size_t j : target_event.members()) out.push_back(source_index(j));
  return Event(source_.size(), std::move(out));
}

FiniteDistribution EventMap::push_forward(const FiniteDistribution& d) const {
  if (!(d.space() == source_)) fail(Errc::kSpaceMismatch, "distribution is not over the source space");
  const double mass = event_probability(d, conditioning_);
  if (mass <= 0.0) fail(Errc::kZeroProbabilityEvent, "conditioning event has zero probability");
  std::vector<double> probs;
  probs.reserve(target_.size());
  for (std::size_t i : conditioning_.members()) probs.push_back(d[i] / mass);
  return make_distribution(target_, probs);
}

ConditionedSet credal_condition(const CredalSet& c, const Event& e) {
  if (e.universe() != c.space().size()) fail(Errc::kSpaceMismatch, "conditioning event does not match outcome space");
  std::vector<std::size_t> survivors;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (event_probability(c.member(i), e) > 0.0) survivors.push_back(i);
  }
  if (survivors.empty()) fail(Errc::kAllMembersZero, "no member assigns positive probability to the event");

  EventMap map(c.space(), e);
  std::vector<FiniteDistribution> merged;
  std::vector<std::string> labels;
  std::vector<std::size_t> multiplicity;
  for (std::size_t i : survivors) {
    FiniteDistribution mapped = map.push_forward(c.member(i));
    bool found = false;
    for (std::size_t j = 0; j < merged.size(); ++j) {
      if (tv_distance(merged[j], mapped) < kMergeTolerance) {
        multiplicity[j] += c.multiplicity(i);
        found = true;
        break;
      }
    }
    if (!found) {
      merged.push_back(std::move(mapped));
      labels.push_back(c.member_labels()[i]);
      multiplicity.push_back(c.multiplicity(i));
    }
  }
  const std::size_t dropped = c.size() - survivors.size();
  return ConditionedSet{CredalSet(map.target(), std::move(merged), std::move(labels), std::move(multiplicity)),
                        std::move(map), dropped};
}

ProbabilityRange probability_range(const CredalSet& c, const Event& e) {
  ProbabilityRange r;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double p = event_probability(c.member(i), e);
    if (i == 0 || p < r.min) {
      r.min = p;
      r.argmin = i;
    }
    if (i == 0 || p > r.max) {
      r.max = p;
      r.argmax = i;
    }
  }
  return r;
}

}  // namespace credal
