#include "credal/tower.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "credal/error.hpp"
#include "credal/families.hpp"
#include "credal/parallel.hpp"
#include "credal/rng.hpp"

namespace credal {

void TowerConfig::validate() const {
  if (max_order < 2) fail(Errc::kConfigInvalid, fmt::format("max_order must be at least 2, got {}", max_order));
  if (order_samples < 1) fail(Errc::kConfigInvalid, "order_samples must be at least 1");
  if (const auto* fs = std::get_if<FamilySource>(&base)) {
    if (base_samples < 1) fail(Errc::kConfigInvalid, "base_samples must be at least 1");
    if (fs->mode == BaseMode::kGrid && fs->family.dimension() != 1) {
      fail(Errc::kConfigInvalid, "grid base mode needs a one-parameter family");
    }
  }
}

Tower::Tower(std::vector<FiniteDistribution> base, std::vector<std::string> base_labels,
             std::vector<WeightMatrix> levels)
    : base_(std::move(base)), base_labels_(std::move(base_labels)), levels_(std::move(levels)) {
  if (base_.empty()) fail(Errc::kConfigInvalid, "tower base level is empty");
  if (base_labels_.size() != base_.size()) fail(Errc::kLengthMismatch, "one label per base particle expected");
  std::size_t below = base_.size();
  for (const auto& level : levels_) {
    if (level.cols() != below) fail(Errc::kLengthMismatch, "tower level width does not match the level below");
    below = level.rows();
  }
}

std::size_t Tower::level_size(int order) const {
  if (order == 1) return base_.size();
  return weights(order).rows();
}

const WeightMatrix& Tower::weights(int order) const {
  if (order < 2 || order > max_order()) {
    fail(Errc::kIndexOutOfRange, fmt::format("order {} outside [2, {}]", order, max_order()));
  }
  return levels_[static_cast<std::size_t>(order - 2)];
}

namespace {

struct BaseLevel {
  std::vector<FiniteDistribution> members;
  std::vector<std::string> labels;
};

BaseLevel base_from_set(const CredalSource& src) {
  BaseLevel b;
  const CredalSet& c = src.set;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::size_t copies = src.weighting == MergeWeighting::kMultiplicity ? c.multiplicity(i) : 1;
    for (std::size_t r = 0; r < copies; ++r) {
      b.members.push_back(c.member(i));
      b.labels.push_back(c.member_labels()[i]);
    }
  }
  return b;
}

std::string point_label(const ParamPoint& x) {
  std::string s;
  for (std::size_t k = 0; k < x.size(); ++k) s += fmt::format("{}{:.17g}", k == 0 ? "" : ";", x[k]);
  return s;
}

BaseLevel base_from_family(const FamilySource& src, std::size_t count, std::uint64_t seed, unsigned threads) {
  std::vector<ParamPoint> points;
  if (src.mode == BaseMode::kGrid) {
    const Interval& iv = src.family.box()[0];
    for (double x : linspace(iv.lo, iv.hi, count)) points.push_back({x});
  } else {
    MeasureOptions options = src.measure;
    options.threads = threads;
    const TvuMeasure measure = build_measure(src.family, options);
    Rng rng = Rng::substream(seed, {1});
    points = sample_parameters(measure, count, rng,
                               src.mode == BaseMode::kTvUniform ? SamplingScheme::kStratified : SamplingScheme::kIid);
  }
  BaseLevel b;
  b.members.reserve(points.size());
  for (const auto& x : points) {
    b.members.push_back(src.family.eval(x));
    b.labels.push_back(point_label(x));
  }
  return b;
}

double dot(std::span<const double> w, std::span<const double> v) {
  if (w.size() <= 10000) {
    double s = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) s += w[k] * v[k];
    return s;
  }
  std::vector<double> terms(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) terms[k] = w[k] * v[k];
  return accurate_sum(terms);
}

std::vector<double> apply_level(const WeightMatrix& level, const std::vector<double>& below, unsigned threads) {
  std::vector<double> out(level.rows());
  parallel_for(level.rows(), threads, [&](std::size_t j) { out[j] = dot(level.row(j), below); });
  return out;
}

}  // namespace

Tower build_tower(const TowerConfig& cfg) {
  cfg.validate();
  BaseLevel base = std::holds_alternative<CredalSource>(cfg.base)
                       ? base_from_set(std::get<CredalSource>(cfg.base))
                       : base_from_family(std::get<FamilySource>(cfg.base), cfg.base_samples, cfg.seed, cfg.threads);

  std::vector<WeightMatrix> levels;
  std::size_t below = base.members.size();
  for (int order = 2; order <= cfg.max_order; ++order) {
    WeightMatrix level(cfg.order_samples, below);
    parallel_for(level.rows(), cfg.threads, [&](std::size_t j) {
      Rng rng = Rng::substream(cfg.seed, {static_cast<std::uint64_t>(order), j});
      sample_simplex(rng, level.row(j));
    });
    below = level.rows();
    levels.push_back(std::move(level));
  }
  return Tower(std::move(base.members), std::move(base.labels), std::move(levels));
}

ImpliedProbabilities implied_probabilities(const Tower& t, const Event& e, unsigned threads) {
  ImpliedProbabilities out;
  std::vector<double> level(t.base().size());
  for (std::size_t k = 0; k < level.size(); ++k) level[k] = event_probability(t.base()[k], e);
  out.by_order.push_back(level);
  for (int order = 2; order <= t.max_order(); ++order) {
    level = apply_level(t.weights(order), level, threads);
    out.by_order.push_back(level);
  }
  return out;
}

double implied_probability(const Tower& t, int order, std::size_t particle, const Event& e) {
  if (order < 1 || order > t.max_order()) {
    fail(Errc::kIndexOutOfRange, fmt::format("order {} outside [1, {}]", order, t.max_order()));
  }
  if (particle >= t.level_size(order)) {
    fail(Errc::kIndexOutOfRange, fmt::format("particle {} outside level of size {}", particle, t.level_size(order)));
  }
  std::vector<double> level(t.base().size());
  for (std::size_t k = 0; k < level.size(); ++k) level[k] = event_probability(t.base()[k], e);
  for (int i = 2; i < order; ++i) level = apply_level(t.weights(i), level, 1);
  if (order == 1) return level[particle];
  return dot(t.weights(order).row(particle), level);
}

double OrderSummary::fraction_within(double lo, double hi) const {
  if (sorted.empty()) return 0.0;
  const auto first = std::upper_bound(sorted.begin(), sorted.end(), lo);
  const auto last = std::lower_bound(sorted.begin(), sorted.end(), hi);
  const auto inside = last > first ? last - first : 0;
  return static_cast<double>(inside) / static_cast<double>(sorted.size());
}

OrderSummary summarize(int order, std::vector<double> values, double reference) {
  OrderSummary s;
  s.order = order;
  const auto defined = std::remove_if(values.begin(), values.end(), [](double v) { return std::isnan(v); });
  s.excluded = static_cast<std::size_t>(values.end() - defined);
  values.erase(defined, values.end());
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  s.mean = accurate_sum(values) / n;
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) sq[i] = (values[i] - s.mean) * (values[i] - s.mean);
  s.sd = std::sqrt(accurate_sum(sq) / n);
  s.min = values.front();
  s.max = values.back();
  if (std::isfinite(reference)) {
    s.max_abs_dev = std::max(std::abs(s.min - reference), std::abs(s.max - reference));
  }
  s.sorted = std::move(values);
  return s;
}

std::vector<OrderSummary> convergence_stats(const Tower& t, const Event& e, double reference, unsigned threads) {
  const auto implied = implied_probabilities(t, e, threads);
  std::vector<OrderSummary> out;
  for (std::size_t i = 0; i < implied.by_order.size(); ++i) {
    out.push_back(summarize(static_cast<int>(i) + 1, implied.by_order[i], reference));
  }
  return out;
}

DilationProfile dilation_profile(const Tower& t, const Event& pre_event, const Event& query, double reference,
                                 unsigned threads) {
  const Event joint = pre_event.intersect(query);
  std::vector<double> joint_level(t.base().size());
  std::vector<double> mass_level(t.base().size());
  for (std::size_t k = 0; k < t.base().size(); ++k) {
    joint_level[k] = event_probability(t.base()[k], joint);
    mass_level[k] = event_probability(t.base()[k], pre_event);
  }

  auto ratios = [](const std::vector<double>& num, const std::vector<double>& den, std::size_t& excluded) {
    std::vector<double> values;
    values.reserve(num.size());
    excluded = 0;
    for (std::size_t k = 0; k < num.size(); ++k) {
      if (den[k] > 0.0) {
        values.push_back(std::clamp(num[k] / den[k], 0.0, 1.0));
      } else {
        ++excluded;
      }
    }
    return values;
  };

  DilationProfile profile;
  std::size_t excluded = 0;
  auto values = ratios(joint_level, mass_level, excluded);
  if (values.empty()) fail(Errc::kAllDropped, "every base particle gives the conditioning event zero probability");
  profile.dropped_base = excluded;
  profile.orders.push_back(summarize(1, std::move(values), reference));
  profile.orders.back().excluded += excluded;

  for (int order = 2; order <= t.max_order(); ++order) {
    joint_level = apply_level(t.weights(order), joint_level, threads);
    mass_level = apply_level(t.weights(order), mass_level, threads);
    values = ratios(joint_level, mass_level, excluded);
    if (values.empty()) fail(Errc::kAllDropped, fmt::format("no order-{} particle gives the event positive mass", order));
    profile.orders.push_back(summarize(order, std::move(values), reference));
    profile.orders.back().excluded += excluded;
  }
  return profile;
}

}  // namespace credal
