#pragma once

// First-order credal sets and temporal credal conditionalization.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "credal/prob.hpp"

namespace credal {

/// How members that collapsed onto the same distribution are counted.
enum class MergeWeighting { kCountOnce, kMultiplicity };

class CredalSet {
 public:
  /// `member_labels` and `multiplicity` may be empty (defaults: "0", "1", ...
  /// and all ones).
  CredalSet(OutcomeSpace space, std::vector<FiniteDistribution> members,
            std::vector<std::string> member_labels = {}, std::vector<std::size_t> multiplicity = {});

  const OutcomeSpace& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return members_.size(); }
  const std::vector<FiniteDistribution>& members() const noexcept { return members_; }
  const FiniteDistribution& member(std::size_t i) const { return members_.at(i); }
  const std::vector<std::string>& member_labels() const noexcept { return labels_; }
  std::size_t multiplicity(std::size_t i) const { return multiplicity_.at(i); }
  const std::vector<std::size_t>& multiplicities() const noexcept { return multiplicity_; }

  /// Normalized per-member weights under the given counting mode.
  std::vector<double> member_weights(MergeWeighting mode) const;

 private:
  OutcomeSpace space_;
  std::vector<FiniteDistribution> members_;
  std::vector<std::string> labels_;
  std::vector<std::size_t> multiplicity_;
};

/// Re-indexing that comes with observing an event E: outcomes in E keep their
/// identity in a new space made of E alone, everything else is undefined.
class EventMap {
 public:
  EventMap(OutcomeSpace source, Event conditioning);

  const OutcomeSpace& source() const noexcept { return source_; }
  const OutcomeSpace& target() const noexcept { return target_; }
  const Event& conditioning() const noexcept { return conditioning_; }

  std::optional<std::size_t> image(std::size_t source_index) const;
  std::size_t source_index(std::size_t target_index) const { return conditioning_.members()[target_index]; }

  /// F -> F ∩ E, expressed in target indices.
  Event map(const Event& f) const;
  /// Always a subset of E.
  Event preimage(const Event& target_event) const;

  /// The conditional of `d` given E, carried onto the target space.
  FiniteDistribution push_forward(const FiniteDistribution& d) const;

 private:
  OutcomeSpace source_;
  Event conditioning_;
  OutcomeSpace target_;
};

inline Event map_event(const EventMap& m, const Event& f) { return m.map(f); }

struct ConditionedSet {
  CredalSet set;
  EventMap map;
  std::size_t dropped = 0;  // members with P(E) = 0
};

/// Members that agree to within this TV distance after conditioning are merged.
inline constexpr double kMergeTolerance = 1e-12;

/// Conditions every member on `e`, drops members with P(e) = 0 and merges
/// members that collapse onto the same distribution (multiplicities add up).
/// Throws Errc::kAllMembersZero when nothing survives.
ConditionedSet credal_condition(const CredalSet& c, const Event& e);

struct ProbabilityRange {
  double min = 0.0;
  double max = 0.0;
  std::size_t argmin = 0;
  std::size_t argmax = 0;
};

ProbabilityRange probability_range(const CredalSet& c, const Event& e);

}  // namespace credal
