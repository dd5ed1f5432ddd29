#include "credal/inference.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "credal/error.hpp"
#include "credal/families.hpp"

namespace credal {

HocsResult hocs_ratio(const TvuMeasure& m, std::span<const double> null_point, const Event& e) {
  const ParamFamily& f = m.family();
  if (!f.box().contains(null_point)) fail(Errc::kInvalidArgument, "null point outside the family's box");
  HocsResult r;
  r.null_point.assign(null_point.begin(), null_point.end());
  r.observed = e;
  r.reference_prob = event_prob(m, e);
  if (!(r.reference_prob > 0.0)) fail(Errc::kZeroEvidence, "observed event has zero TV-uniform probability");
  r.null_likelihood = event_probability(f.probs(null_point), e);
  r.ratio = r.null_likelihood / r.reference_prob;
  return r;
}

HocsResult hocs_ratio_member(const TvuMeasure& m, std::size_t member, const Event& e) {
  if (member >= m.size()) fail(Errc::kIndexOutOfRange, "null member index out of range");
  if (e.universe() != m.space().size()) fail(Errc::kSpaceMismatch, "event is not over the measure's outcome space");
  std::vector<double> num;
  std::vector<double> den;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i == member) continue;
    num.push_back(m.mass(i) * event_probability(m.probs(i), e));
    den.push_back(m.mass(i));
  }
  const double rest = accurate_sum(den);
  HocsResult r;
  r.null_member = member;
  r.observed = e;
  r.reference_prob = rest > 0.0 ? accurate_sum(num) / rest : 0.0;
  if (!(r.reference_prob > 0.0)) fail(Errc::kZeroEvidence, "observed event has zero probability off the null member");
  r.null_likelihood = event_probability(m.probs(member), e);
  r.ratio = r.null_likelihood / r.reference_prob;
  return r;
}

std::vector<HocsResult> hocs_curve(const TvuMeasure& m, const Event& e, std::span<const double> grid) {
  const double reference = event_prob(m, e);
  if (!(reference > 0.0)) fail(Errc::kZeroEvidence, "observed event has zero TV-uniform probability");
  const ParamFamily& f = m.family();
  if (f.dimension() != 1) fail(Errc::kInvalidArgument, "hocs curves need a one-parameter family");
  std::vector<HocsResult> out;
  out.reserve(grid.size());
  for (double x : grid) {
    const std::span<const double> point(&x, 1);
    if (!f.box().contains(point)) fail(Errc::kInvalidArgument, fmt::format("grid value {} outside the box", x));
    HocsResult r;
    r.null_point = {x};
    r.observed = e;
    r.reference_prob = reference;
    r.null_likelihood = event_probability(f.probs(point), e);
    r.ratio = r.null_likelihood / reference;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<double> hocs_crossings(const TvuMeasure& m, const Event& e, std::span<const double> grid) {
  const auto curve = hocs_curve(m, e, grid);
  const ParamFamily& f = m.family();
  const double reference = curve.empty() ? 0.0 : curve.front().reference_prob;
  auto excess = [&](double x) { return event_probability(f.probs(std::span<const double>(&x, 1)), e) - reference; };

  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    const double a = curve[i].ratio - 1.0;
    const double b = curve[i + 1].ratio - 1.0;
    if (a == 0.0) {
      out.push_back(grid[i]);
      continue;
    }
    if ((a < 0.0) == (b < 0.0) || b == 0.0) continue;
    double lo = grid[i];
    double hi = grid[i + 1];
    const bool rising = a < 0.0;
    for (int iter = 0; iter < 200 && hi - lo > 0.0; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if ((excess(mid) < 0.0) == rising) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    out.push_back(0.5 * (lo + hi));
  }
  if (!curve.empty() && curve.back().ratio == 1.0) out.push_back(grid.back());
  return out;
}

double hocs_mean_ratio(const TvuMeasure& m, const Event& e) {
  const double reference = event_prob(m, e);
  if (!(reference > 0.0)) fail(Errc::kZeroEvidence, "observed event has zero TV-uniform probability");
  std::vector<double> terms(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) terms[i] = m.mass(i) * event_probability(m.probs(i), e) / reference;
  return accurate_sum(terms) / m.normalizer();
}

BinomialReport binomial_test(int n, int k, const BinomialTestOptions& options) {
  if (n < 1) fail(Errc::kInvalidArgument, "binomial test needs n >= 1");
  if (k < 0 || k > n) fail(Errc::kInvalidArgument, fmt::format("observed heads {} outside [0, {}]", k, n));
  if (options.grid_points < 2) fail(Errc::kInvalidArgument, "hocs grid needs at least two points");
  const ParamFamily family = binomial_family(n);
  BinomialReport report{n, k, build_measure(family, options.measure), {}, {}, 0.0, 0.0, {}, 0.0, true};

  const std::size_t outcomes = static_cast<std::size_t>(n) + 1;
  for (std::size_t j = 0; j < outcomes; ++j) report.reference.push_back(event_prob(report.measure, Event(outcomes, {j})));

  const Event observed(outcomes, {static_cast<std::size_t>(k)});
  const auto grid = linspace(0.0, 1.0, options.grid_points);
  report.curve = hocs_curve(report.measure, observed, grid);
  const auto peak = std::max_element(report.curve.begin(), report.curve.end(),
                                     [](const HocsResult& a, const HocsResult& b) { return a.ratio < b.ratio; });
  report.peak_param = peak->null_point[0];
  report.peak_ratio = peak->ratio;
  report.crossings = hocs_crossings(report.measure, observed, grid);
  report.mean_ratio = hocs_mean_ratio(report.measure, observed);
  return report;
}

UrnPredictive urn_update(const UrnState& state, ArithmeticMode mode) {
  if (state.ball_total < 1) fail(Errc::kInvalidArgument, "urn needs at least one ball");
  OutcomeSpace colors(state.colors);  // validates distinct, non-empty
  std::vector<int> drawn(colors.size(), 0);
  for (const auto& c : state.history) {
    const std::size_t idx = colors.find(c);
    if (idx == colors.size()) fail(Errc::kImpossibleHistory, fmt::format("drawn color '{}' is not in the urn", c));
    ++drawn[idx];
  }

  const auto compositions = urn_compositions(colors.size(), state.ball_total);
  UrnPredictive out;
  out.colors = state.colors;
  out.mode = mode;
  out.compositions = compositions.size();

  // Posterior weight of a composition is prod_c count_c^drawn_c (the common
  // ball_total^history factor cancels); the predictive for color c is
  // sum w * count_c / (ball_total * sum w).
  if (mode == ArithmeticMode::kExact) {
    BigInt evidence = 0;
    std::vector<BigInt> numerators(colors.size(), 0);
    for (const auto& comp : compositions) {
      BigInt w = 1;
      for (std::size_t c = 0; c < comp.size(); ++c) {
        if (drawn[c] > 0) w *= boost::multiprecision::pow(BigInt(comp[c]), static_cast<unsigned>(drawn[c]));
      }
      if (w == 0) continue;
      evidence += w;
      for (std::size_t c = 0; c < comp.size(); ++c) numerators[c] += w * comp[c];
    }
    if (evidence == 0) fail(Errc::kImpossibleHistory, "no composition is consistent with the history");
    const BigInt denominator = evidence * state.ball_total;
    for (std::size_t c = 0; c < colors.size(); ++c) {
      out.exact.emplace_back(numerators[c], denominator);
      out.values.push_back(out.exact.back().convert_to<double>());
    }
    return out;
  }

  double evidence = 0.0;
  std::vector<double> numerators(colors.size(), 0.0);
  const double total = state.ball_total;
  for (const auto& comp : compositions) {
    double w = 1.0;
    for (std::size_t c = 0; c < comp.size(); ++c) {
      if (drawn[c] > 0) w *= std::pow(comp[c] / total, drawn[c]);
    }
    evidence += w;
    for (std::size_t c = 0; c < comp.size(); ++c) numerators[c] += w * (comp[c] / total);
  }
  if (!(evidence > 0.0)) fail(Errc::kImpossibleHistory, "no composition is consistent with the history");
  for (double num : numerators) out.values.push_back(num / evidence);
  return out;
}

std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

}  // namespace credal
