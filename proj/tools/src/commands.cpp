#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include <fmt/format.h>

#include "credal/credal_set.hpp"
#include "credal/error.hpp"
#include "credal/families.hpp"
#include "credal/inference.hpp"
#include "credal/io.hpp"
#include "credal/tower.hpp"
#include "credal/tvuniform.hpp"
#include "svg.hpp"

namespace credal::cli {

namespace {

MeasureOptions measure_options(std::size_t resolution, const std::string& rule, unsigned threads) {
  MeasureOptions o;
  o.resolution = resolution;
  o.threads = threads;
  if (rule == "gauss") {
    o.rule = QuadratureRule::kGaussLegendre;
  } else if (rule == "node-sum") {
    o.rule = QuadratureRule::kNodeSum;
    o.adaptive = false;
  } else {
    fail(Errc::kInvalidArgument, fmt::format("unknown quadrature rule '{}'", rule));
  }
  return o;
}

std::string order_column(int order) {
  static const char* const names[] = {"firstorder",   "secondorder", "thirdorder", "fourthorder", "fifthorder",
                                      "sixthorder",   "seventhorder", "eighthorder", "ninthorder", "tenthorder"};
  return order <= 10 ? names[order - 1] : fmt::format("order{}", order);
}

/// functionidx plus one ascending column per order; shorter columns are left blank.
Table sorted_columns(const std::vector<OrderSummary>& orders) {
  Table t;
  t.columns.push_back("functionidx");
  std::size_t rows = 0;
  for (const auto& s : orders) {
    t.columns.push_back(order_column(s.order));
    rows = std::max(rows, s.sorted.size());
  }
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<Json> row{i};
    for (const auto& s : orders) row.push_back(i < s.sorted.size() ? Json(s.sorted[i]) : Json(""));
    t.add(std::move(row));
  }
  return t;
}

std::vector<Series> sorted_series(const std::vector<OrderSummary>& orders) {
  std::vector<Series> out;
  for (const auto& s : orders) {
    Series series{order_column(s.order), {}, s.sorted};
    const double count = static_cast<double>(s.sorted.size());
    for (std::size_t i = 0; i < s.sorted.size(); ++i) series.x.push_back((static_cast<double>(i) + 0.5) / count);
    out.push_back(std::move(series));
  }
  return out;
}

ParamFamily make_family(const TvuDensityArgs& a) {
  if (a.family == "binomial") return binomial_family(a.n);
  if (a.family == "coin-matching") return coin_matching_family();
  fail(Errc::kInvalidArgument, fmt::format("unknown family '{}'", a.family));
}

Json nan_to_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

void run_binomial_test(const BinomialTestArgs& a, RunContext& ctx, bool svg) {
  BinomialTestOptions opts;
  opts.measure = measure_options(a.resolution, a.rule, ctx.threads());
  opts.grid_points = a.grid_points;
  const BinomialReport r = binomial_test(a.n, a.k, opts);

  Table reference{{"event_label", "value"}, {}};
  for (std::size_t j = 0; j < r.reference.size(); ++j) reference.add({std::to_string(j), r.reference[j]});
  ctx.write_table("reference", reference);

  Table hocs{{"param", "ratio"}, {}};
  Table density{{"param", "value"}, {}};
  Series hocs_line{"HOCS ratio", {}, {}};
  Series density_line{"density", {}, {}};
  const ParamFamily& family = r.measure.family();
  for (const auto& h : r.curve) {
    const double p = h.null_point.at(0);
    const double d = tvu_density(family, h.null_point);
    hocs.add({p, h.ratio});
    density.add({p, d});
    hocs_line.x.push_back(p);
    hocs_line.y.push_back(h.ratio);
    density_line.x.push_back(p);
    density_line.y.push_back(d);
  }
  ctx.write_table("hocs", hocs);
  ctx.write_table("density", density);

  Json report = Json::object();
  report["n"] = r.n;
  report["k"] = r.k;
  report["rule"] = a.rule;
  report["resolution"] = r.measure.resolution();
  report["converged"] = r.measure.converged();
  report["normalizer"] = r.measure.normalizer();
  report["reference_prob"] = r.reference.at(static_cast<std::size_t>(r.k));
  report["peak_param"] = r.peak_param;
  report["peak_ratio"] = r.peak_ratio;
  report["crossings"] = r.crossings;
  report["mean_ratio"] = r.mean_ratio;
  report["conjecture_conditional"] = r.conjecture_conditional;
  ctx.write_file("report.json", report.dump(2) + "\n");

  if (svg) {
    ctx.write_file("hocs.svg", line_chart(fmt::format("HOCS ratio, {} of {} heads", a.k, a.n), "p", "ratio", {hocs_line}));
    ctx.write_file("density.svg", line_chart("TV-uniform density (unnormalized)", "p", "density", {density_line}));
  }

  std::cout << fmt::format("U_TV({} heads of {}) = {:.10g}\n", a.k, a.n, r.reference.at(static_cast<std::size_t>(a.k)));
  std::cout << fmt::format("peak ratio {:.10g} at p = {:.6g}\n", r.peak_ratio, r.peak_param);
  for (double c : r.crossings) std::cout << fmt::format("ratio crosses 1 at p = {:.10g}\n", c);
  std::cout << "(conditional on the convergence conjecture)\n";
}

void run_tvu_density(const TvuDensityArgs& a, RunContext& ctx, bool svg) {
  const ParamFamily family = make_family(a);
  if (a.points < 2) fail(Errc::kInvalidArgument, "--points must be at least 2");
  const TvuMeasure m = build_measure(family, measure_options(a.resolution, a.rule, ctx.threads()));

  Table density{{"param", "value"}, {}};
  Series line{"density", {}, {}};
  const Interval range = family.box()[0];
  for (double p : linspace(range.lo, range.hi, a.points)) {
    const double x[1] = {p};
    const double d = tvu_density(family, x);
    density.add({p, d});
    line.x.push_back(p);
    line.y.push_back(d);
  }
  ctx.write_table("density", density);

  Table events{{"event_label", "value"}, {}};
  for (std::size_t j = 0; j < family.space().size(); ++j) {
    events.add({family.space().label(j), event_prob(m, Event(family.space().size(), {j}))});
  }
  ctx.write_table("events", events);

  Json report = Json::object();
  report["family"] = family.name();
  report["rule"] = a.rule;
  report["resolution"] = m.resolution();
  report["converged"] = m.converged();
  report["normalizer"] = m.normalizer();
  ctx.write_file("report.json", report.dump(2) + "\n");
  if (svg) ctx.write_file("density.svg", line_chart(family.name() + " TV-uniform density", "p", "density", {line}));

  std::cout << fmt::format("{}: normalizer {:.10g} ({} nodes)\n", family.name(), m.normalizer(), m.size());
}

void run_converge(const ConvergeArgs& a, RunContext& ctx, bool svg) {
  if (a.events.empty()) fail(Errc::kInvalidArgument, "--events needs at least one head count");
  for (int e : a.events) {
    if (e < 0 || e > a.n) fail(Errc::kInvalidArgument, fmt::format("event {} heads is outside 0..{}", e, a.n));
  }
  const ParamFamily family = binomial_family(a.n);
  FamilySource source{family};
  source.measure = measure_options(a.resolution, "gauss", ctx.threads());
  if (a.base_mode == "tvu") {
    source.mode = BaseMode::kTvUniform;
  } else if (a.base_mode == "iid") {
    source.mode = BaseMode::kTvUniformIid;
  } else if (a.base_mode == "grid") {
    source.mode = BaseMode::kGrid;
  } else {
    fail(Errc::kInvalidArgument, fmt::format("unknown base mode '{}'", a.base_mode));
  }

  TowerConfig cfg{source};
  cfg.base_samples = a.base_samples;
  cfg.order_samples = a.order_samples;
  cfg.max_order = a.max_order;
  cfg.seed = ctx.seed();
  cfg.threads = ctx.threads();
  const Tower tower = build_tower(cfg);
  const TvuMeasure reference_measure = build_measure(family, source.measure);

  Table stats{{"event", "order", "mean", "sd", "min", "max", "reference", "max_dev_from_reference"}, {}};
  for (int k : a.events) {
    const Event e(static_cast<std::size_t>(a.n) + 1, {static_cast<std::size_t>(k)});
    const double reference = event_prob(reference_measure, e);
    const auto orders = convergence_stats(tower, e, reference, ctx.threads());
    ctx.write_table(fmt::format("implied_{}", k), sorted_columns(orders));
    for (const auto& s : orders) {
      stats.add({std::to_string(k), s.order, s.mean, s.sd, s.min, s.max, reference, nan_to_null(s.max_abs_dev)});
      std::cout << fmt::format("{} heads  order {}  mean {:.10f}  sd {:.3e}  reference {:.10f}\n", k, s.order, s.mean,
                               s.sd, reference);
    }
    if (svg) {
      ctx.write_file(fmt::format("implied_{}.svg", k),
                     line_chart(fmt::format("Sorted implied P({} heads)", k), "particle quantile", "probability",
                                sorted_series(orders)));
    }
  }
  ctx.write_table("stats", stats);

  if (a.tower) {
    std::ostringstream jsonl;
    write_tower_jsonl(jsonl, tower);
    ctx.write_file("tower.jsonl", jsonl.str());
  }
}

Json run_urn(const UrnArgs& a) {
  ArithmeticMode mode = ArithmeticMode::kExact;
  if (a.mode == "float") {
    mode = ArithmeticMode::kFloat;
  } else if (a.mode != "exact") {
    fail(Errc::kInvalidArgument, fmt::format("unknown mode '{}'", a.mode));
  }
  const UrnPredictive p = urn_update(UrnState{a.balls, a.colors, a.history}, mode);
  Json out = Json::object();
  for (std::size_t c = 0; c < p.colors.size(); ++c) {
    if (mode == ArithmeticMode::kExact) {
      out[p.colors[c]] = to_string(p.exact[c]);
    } else {
      out[p.colors[c]] = p.values[c];
    }
  }
  return out;
}

void run_dilation(const DilationArgs& a, RunContext& ctx, bool svg) {
  MergeWeighting weighting = MergeWeighting::kCountOnce;
  if (a.weighting == "multiplicity") {
    weighting = MergeWeighting::kMultiplicity;
  } else if (a.weighting != "count-once") {
    fail(Errc::kInvalidArgument, fmt::format("unknown weighting '{}'", a.weighting));
  }
  if (a.grid < 2) fail(Errc::kInvalidArgument, "--grid must be at least 2");
  const CredalSet grid = grid_credal_set(coin_matching_family(), a.grid);
  const Event h1 = first_heads_event();
  const Event m = match_event();

  const ProbabilityRange before = probability_range(grid, m);
  const ConditionedSet after = credal_condition(grid, h1);
  const ProbabilityRange after_range = probability_range(after.set, after.map.map(m));

  TowerConfig cfg{CredalSource{grid, weighting}};
  cfg.order_samples = a.samples;
  cfg.max_order = a.orders;
  cfg.seed = ctx.seed();
  cfg.threads = ctx.threads();
  const Tower tower = build_tower(cfg);
  const DilationProfile profile = dilation_profile(tower, h1, m, 0.5, ctx.threads());

  std::cout << fmt::format("order 1  P(M)      range [{:.6g}, {:.6g}]\n", before.min, before.max);
  std::cout << fmt::format("order 1  P(M | H1) range [{:.6g}, {:.6g}]\n", after_range.min, after_range.max);
  std::cout << fmt::format("{:>5}  {:>10}  {:>10}  {:>10}  {:>10}  {:>13}\n", "order", "mean", "sd", "min", "max",
                           "in(0.25,0.75)");
  Table summary{{"order", "mean", "sd", "min", "max", "fraction_within_quarter", "dropped_base"}, {}};
  for (const auto& s : profile.orders) {
    const double within = s.fraction_within(0.25, 0.75);
    summary.add({s.order, s.mean, s.sd, s.min, s.max, within, profile.dropped_base});
    std::cout << fmt::format("{:>5}  {:>10.6f}  {:>10.3e}  {:>10.6f}  {:>10.6f}  {:>13.6f}\n", s.order, s.mean, s.sd,
                             s.min, s.max, within);
  }
  ctx.write_table("dilation", summary);
  ctx.write_table("dilation_values", sorted_columns(profile.orders));

  Table ranges{{"event_label", "min", "max"}, {}};
  ranges.add({"M", before.min, before.max});
  ranges.add({"M|H1", after_range.min, after_range.max});
  ctx.write_table("ranges", ranges);

  if (svg) {
    ctx.write_file("dilation.svg", line_chart("Sorted P(M | H1) by order", "particle quantile", "probability",
                                              sorted_series(profile.orders)));
  }
}

}  // namespace credal::cli
