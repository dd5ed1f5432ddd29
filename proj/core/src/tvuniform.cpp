#include "credal/tvuniform.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "credal/error.hpp"
#include "credal/parallel.hpp"
#include "credal/rng.hpp"

namespace credal {

ParamBox::ParamBox(std::vector<Interval> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) fail(Errc::kInvalidArgument, "parameter box needs at least one dimension");
  for (const auto& d : dims_) {
    if (!std::isfinite(d.lo) || !std::isfinite(d.hi) || d.lo > d.hi) {
      fail(Errc::kInvalidArgument, fmt::format("invalid parameter interval [{}, {}]", d.lo, d.hi));
    }
  }
}

bool ParamBox::contains(std::span<const double> x) const noexcept {
  if (x.size() != dims_.size()) return false;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x[k] >= dims_[k].lo && x[k] <= dims_[k].hi)) return false;
  }
  return true;
}

ParamFamily::ParamFamily(OutcomeSpace space, ParamBox box, EvalFn eval)
    : space_(std::move(space)), box_(std::move(box)), eval_(std::move(eval)), kinks_(box_.dimension()) {
  if (!eval_) fail(Errc::kInvalidArgument, "family needs an evaluation function");
}

ParamFamily& ParamFamily::with_kinks(std::size_t dim, std::vector<double> kinks) {
  if (dim >= dimension()) fail(Errc::kIndexOutOfRange, "kink dimension out of range");
  std::sort(kinks.begin(), kinks.end());
  kinks.erase(std::unique(kinks.begin(), kinks.end()), kinks.end());
  kinks_[dim] = std::move(kinks);
  return *this;
}

ParamFamily& ParamFamily::with_partial(PartialFn partial) {
  partial_ = std::move(partial);
  return *this;
}

ParamFamily& ParamFamily::with_name(std::string name) {
  name_ = std::move(name);
  return *this;
}

std::vector<double> ParamFamily::probs(std::span<const double> x) const {
  if (x.size() != dimension()) fail(Errc::kLengthMismatch, "parameter point has wrong dimension");
  auto p = eval_(x);
  if (p.size() != space_.size()) fail(Errc::kLengthMismatch, "family returned wrong number of probabilities");
  return p;
}

FiniteDistribution ParamFamily::eval(std::span<const double> x) const {
  if (!box_.contains(x)) fail(Errc::kInvalidArgument, "parameter point outside the family's box");
  return FiniteDistribution(space_, probs(x));
}

std::vector<double> ParamFamily::partial(std::span<const double> x, std::size_t k) const {
  if (!partial_) fail(Errc::kInvalidArgument, "family has no analytic partial derivatives");
  auto d = partial_(x, k);
  if (d.size() != space_.size()) fail(Errc::kLengthMismatch, "partial derivative has wrong length");
  return d;
}

bool ParamFamily::is_kink(std::size_t dim, double value, double tol) const {
  const auto& k = kinks_.at(dim);
  const auto it = std::lower_bound(k.begin(), k.end(), value - tol);
  return it != k.end() && *it <= value + tol;
}

namespace {

struct OneSided {
  double left = 0.0;
  double right = 0.0;
  bool has_left = false;
  bool has_right = false;
};

OneSided one_sided_quotients(const ParamFamily& f, std::span<const double> x, std::size_t k, double h) {
  const Interval& iv = f.box()[k];
  // Allow steps that land on the boundary up to rounding.
  const double slack = 1e-12 * std::max(1.0, iv.width());
  OneSided q;
  q.has_right = x[k] + h <= iv.hi + slack;
  q.has_left = x[k] - h >= iv.lo - slack;
  if (!q.has_left && !q.has_right) {
    fail(Errc::kStepTooLarge, fmt::format("step {} does not fit in [{}, {}] around {}", h, iv.lo, iv.hi, x[k]));
  }
  const auto centre = f.probs(x);
  ParamPoint y(x.begin(), x.end());
  if (q.has_right) {
    y[k] = std::min(x[k] + h, iv.hi);
    q.right = tv_distance(centre, f.probs(y)) / (y[k] - x[k]);
  }
  if (q.has_left) {
    y[k] = std::max(x[k] - h, iv.lo);
    q.left = tv_distance(centre, f.probs(y)) / (x[k] - y[k]);
  }
  return q;
}

double combine(const OneSided& q) {
  if (q.has_left && q.has_right) return 0.5 * (q.left + q.right);
  return q.has_left ? q.left : q.right;
}

double richardson_thickness(const ParamFamily& f, std::span<const double> x, std::size_t k) {
  const double h = 1e-5 * f.box()[k].width();
  const OneSided coarse = one_sided_quotients(f, x, k, h);
  const OneSided fine = one_sided_quotients(f, x, k, 0.5 * h);
  const double tc = combine(coarse);
  const double tf = combine(fine);
  const bool symmetric = coarse.has_left && coarse.has_right && fine.has_left && fine.has_right;
  // The two-sided mean is second order; a one-sided quotient is first order.
  const double t = symmetric ? tf + (tf - tc) / 3.0 : 2.0 * tf - tc;
  return std::max(0.0, t);
}

// Composite 8-point Gauss-Legendre.
constexpr std::array<double, 8> kGaussNodes = {
    -0.9602898564975362, -0.7966664774136267, -0.525532409916329, -0.18343464249564978,
    0.18343464249564978, 0.525532409916329,   0.7966664774136267, 0.9602898564975362};
constexpr std::array<double, 8> kGaussWeights = {
    0.10122853629037669, 0.22238103445337434, 0.31370664587788705, 0.36268378337836177,
    0.36268378337836177, 0.31370664587788705, 0.22238103445337434, 0.10122853629037669};

// Panel edges along one axis: the box ends, every interior kink, then each
// kink panel split evenly so that the whole axis has about `resolution` panels.
std::vector<double> axis_panels(const Interval& iv, const std::vector<double>& kinks, std::size_t resolution) {
  std::vector<double> breaks{iv.lo};
  for (double k : kinks) {
    if (k > iv.lo && k < iv.hi) breaks.push_back(k);
  }
  breaks.push_back(iv.hi);
  std::vector<double> edges{iv.lo};
  for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
    const double u = breaks[b];
    const double v = breaks[b + 1];
    const auto pieces = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(static_cast<double>(resolution) * (v - u) / iv.width() - 1e-9)));
    for (std::size_t s = 1; s < pieces; ++s) edges.push_back(u + (v - u) * static_cast<double>(s) / pieces);
    edges.push_back(v);
  }
  return edges;
}

struct Axis {
  std::vector<double> nodes;
  std::vector<double> weights;
};

Axis make_axis(const Interval& iv, const std::vector<double>& kinks, std::size_t resolution, QuadratureRule rule) {
  Axis a;
  if (iv.width() == 0.0) {
    a.nodes = {iv.lo};
    a.weights = {1.0};
    return a;
  }
  if (rule == QuadratureRule::kNodeSum) {
    const double step = iv.width() / static_cast<double>(resolution);
    for (std::size_t i = 0; i <= resolution; ++i) {
      a.nodes.push_back(i == resolution ? iv.hi : iv.lo + step * static_cast<double>(i));
      a.weights.push_back(step);
    }
    return a;
  }
  const auto edges = axis_panels(iv, kinks, resolution);
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double half = 0.5 * (edges[p + 1] - edges[p]);
    const double mid = 0.5 * (edges[p + 1] + edges[p]);
    for (std::size_t g = 0; g < kGaussNodes.size(); ++g) {
      a.nodes.push_back(mid + half * kGaussNodes[g]);
      a.weights.push_back(half * kGaussWeights[g]);
    }
  }
  return a;
}

struct NodeSet {
  std::vector<ParamPoint> points;
  std::vector<double> masses;
  std::vector<double> node_probs;
  double total = 0.0;
};

NodeSet build_nodes(const ParamFamily& f, const MeasureOptions& options, std::size_t resolution) {
  const std::size_t dims = f.dimension();
  std::vector<Axis> axes;
  axes.reserve(dims);
  for (std::size_t k = 0; k < dims; ++k) axes.push_back(make_axis(f.box()[k], f.kinks(k), resolution, options.rule));

  std::size_t total = 1;
  for (const auto& a : axes) total *= a.nodes.size();

  std::vector<ParamPoint> points(total, ParamPoint(dims));
  std::vector<double> weights(total, 1.0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (std::size_t k = dims; k-- > 0;) {
      const std::size_t i = rest % axes[k].nodes.size();
      rest /= axes[k].nodes.size();
      points[idx][k] = axes[k].nodes[i];
      weights[idx] *= axes[k].weights[i];
    }
  }

  const std::size_t n = f.space().size();
  std::vector<double> masses(total);
  std::vector<double> node_probs(total * n);
  parallel_for(total, options.threads, [&](std::size_t i) {
    masses[i] = weights[i] * tvu_density(f, points[i]);
    const auto p = f.probs(points[i]);
    std::copy(p.begin(), p.end(), node_probs.begin() + static_cast<std::ptrdiff_t>(i * n));
  });
  const double total_mass = accurate_sum(masses);
  return NodeSet{std::move(points), std::move(masses), std::move(node_probs), total_mass};
}

TvuMeasure to_measure(NodeSet nodes, const ParamFamily& f, const MeasureOptions& options, std::size_t resolution,
                      bool converged) {
  return TvuMeasure(f.space(), std::move(nodes.points), std::move(nodes.masses), std::move(nodes.node_probs), f,
                    options.rule, resolution, converged);
}

}  // namespace

double thickness(const ParamFamily& f, std::span<const double> x, std::size_t k, double h) {
  if (k >= f.dimension()) fail(Errc::kIndexOutOfRange, "thickness dimension out of range");
  if (!(h > 0.0)) fail(Errc::kInvalidArgument, "finite-difference step must be positive");
  if (!f.box().contains(x)) fail(Errc::kInvalidArgument, "thickness point outside the box");
  if (f.box()[k].width() == 0.0) return 0.0;
  return combine(one_sided_quotients(f, x, k, h));
}

double analytic_thickness(const ParamFamily& f, std::span<const double> x, std::size_t k) {
  const auto d = f.partial(x, k);
  double s = 0.0;
  for (double v : d) s += std::abs(v);
  return 0.5 * s;
}

double tvu_density(const ParamFamily& f, std::span<const double> x) {
  if (!f.box().contains(x)) fail(Errc::kInvalidArgument, "density point outside the box");
  double density = 1.0;
  for (std::size_t k = 0; k < f.dimension(); ++k) {
    if (f.box()[k].width() == 0.0) continue;
    density *= f.has_partial() ? analytic_thickness(f, x, k) : richardson_thickness(f, x, k);
  }
  return density;
}

TvuMeasure::TvuMeasure(OutcomeSpace space, std::vector<ParamPoint> points, std::vector<double> masses,
                       std::vector<double> node_probs, std::optional<ParamFamily> family, QuadratureRule rule,
                       std::size_t resolution, bool converged)
    : space_(std::move(space)),
      points_(std::move(points)),
      masses_(std::move(masses)),
      node_probs_(std::move(node_probs)),
      family_(std::move(family)),
      rule_(rule),
      resolution_(resolution),
      converged_(converged) {
  if (points_.size() != masses_.size() || node_probs_.size() != masses_.size() * space_.size()) {
    fail(Errc::kLengthMismatch, "measure nodes, masses and probabilities disagree in size");
  }
  normalizer_ = accurate_sum(masses_);
  if (!(normalizer_ > 0.0) || !std::isfinite(normalizer_)) {
    fail(Errc::kDegenerateFamily, "TV-uniform density integrates to zero (constant family?)");
  }
}

std::span<const double> TvuMeasure::probs(std::size_t i) const {
  if (i >= size()) fail(Errc::kIndexOutOfRange, "measure node index out of range");
  return std::span<const double>(node_probs_).subspan(i * space_.size(), space_.size());
}

const ParamFamily& TvuMeasure::family() const {
  if (!family_) fail(Errc::kInvalidArgument, "counting measure has no parametric family");
  return *family_;
}

double TvuMeasure::normalized_density(std::span<const double> x) const { return tvu_density(family(), x) / normalizer_; }

TvuMeasure build_measure(const ParamFamily& f, const MeasureOptions& options) {
  if (options.resolution < 16) fail(Errc::kInvalidArgument, "quadrature resolution must be at least 16");
  if (options.rule == QuadratureRule::kNodeSum || !options.adaptive) {
    return to_measure(build_nodes(f, options, options.resolution), f, options, options.resolution, false);
  }
  std::size_t resolution = options.resolution;
  NodeSet current = build_nodes(f, options, resolution);
  while (2 * resolution <= options.max_resolution) {
    NodeSet refined = build_nodes(f, options, 2 * resolution);
    resolution *= 2;
    if (!(refined.total > 0.0)) break;
    const double change = std::abs(refined.total - current.total) / refined.total;
    current = std::move(refined);
    if (change < options.tolerance) return to_measure(std::move(current), f, options, resolution, true);
  }
  return to_measure(std::move(current), f, options, resolution, false);
}

TvuMeasure build_measure(const ParamFamily& f, std::size_t resolution) {
  MeasureOptions options;
  options.resolution = resolution;
  return build_measure(f, options);
}

TvuMeasure counting_measure(const CredalSet& c, MergeWeighting mode) {
  const std::size_t n = c.space().size();
  std::vector<ParamPoint> points(c.size());
  std::vector<double> masses(c.size());
  std::vector<double> node_probs(c.size() * n);
  for (std::size_t i = 0; i < c.size(); ++i) {
    points[i] = {static_cast<double>(i)};
    masses[i] = mode == MergeWeighting::kMultiplicity ? static_cast<double>(c.multiplicity(i)) : 1.0;
    const auto p = c.member(i).probs();
    std::copy(p.begin(), p.end(), node_probs.begin() + static_cast<std::ptrdiff_t>(i * n));
  }
  return TvuMeasure(c.space(), std::move(points), std::move(masses), std::move(node_probs), std::nullopt,
                    QuadratureRule::kNodeSum, c.size(), true);
}

double event_prob(const TvuMeasure& m, const Event& e) {
  if (e.universe() != m.space().size()) fail(Errc::kSpaceMismatch, "event is not over the measure's outcome space");
  std::vector<double> terms(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) terms[i] = m.mass(i) * event_probability(m.probs(i), e);
  return accurate_sum(terms) / m.normalizer();
}

double posterior_predictive(const TvuMeasure& m, const Event& observed, const Event& query) {
  const Event joint = observed.intersect(query);
  if (observed.universe() != m.space().size()) fail(Errc::kSpaceMismatch, "event is not over the measure's outcome space");
  std::vector<double> num(m.size());
  std::vector<double> den(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto p = m.probs(i);
    num[i] = m.mass(i) * event_probability(p, joint);
    den[i] = m.mass(i) * event_probability(p, observed);
  }
  const double evidence = accurate_sum(den);
  if (!(evidence > 0.0)) fail(Errc::kZeroEvidence, "observed event has zero probability under the measure");
  return accurate_sum(num) / evidence;
}

namespace {

std::vector<double> strata(std::size_t count, Rng& rng, SamplingScheme scheme) {
  std::vector<double> u(count);
  for (std::size_t i = 0; i < count; ++i) {
    u[i] = scheme == SamplingScheme::kStratified ? (static_cast<double>(i) + rng.uniform()) / static_cast<double>(count)
                                                 : rng.uniform();
  }
  return u;
}

// Integral of the density over [a, x] with one 8-point panel.
double panel_integral(const ParamFamily& f, double a, double x) {
  const double half = 0.5 * (x - a);
  const double mid = 0.5 * (x + a);
  double s = 0.0;
  for (std::size_t g = 0; g < kGaussNodes.size(); ++g) {
    const double t = mid + half * kGaussNodes[g];
    s += kGaussWeights[g] * tvu_density(f, std::span<const double>(&t, 1));
  }
  return half * s;
}

}  // namespace

std::vector<std::size_t> sample_nodes(const TvuMeasure& m, std::size_t count, Rng& rng, SamplingScheme scheme) {
  std::vector<double> cdf(m.size());
  std::partial_sum(m.masses().begin(), m.masses().end(), cdf.begin());
  const double total = cdf.back();
  std::vector<std::size_t> out;
  out.reserve(count);
  for (double u : strata(count, rng, scheme)) {
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u * total);
    out.push_back(std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), m.size() - 1));
  }
  return out;
}

std::vector<ParamPoint> sample_parameters(const TvuMeasure& m, std::size_t count, Rng& rng, SamplingScheme scheme) {
  const bool continuous =
      !m.is_counting() && m.family().dimension() == 1 && m.rule() == QuadratureRule::kGaussLegendre &&
      m.family().box()[0].width() > 0.0;
  if (!continuous) {
    std::vector<ParamPoint> out;
    out.reserve(count);
    for (std::size_t i : sample_nodes(m, count, rng, scheme)) out.push_back(m.point(i));
    return out;
  }

  const ParamFamily& f = m.family();
  const auto edges = axis_panels(f.box()[0], f.kinks(0), m.resolution());
  std::vector<double> cumulative(edges.size(), 0.0);
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    cumulative[p + 1] = cumulative[p] + panel_integral(f, edges[p], edges[p + 1]);
  }
  const double total = cumulative.back();

  std::vector<ParamPoint> out;
  out.reserve(count);
  for (double u : strata(count, rng, scheme)) {
    const double target = u * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    std::size_t panel = it == cumulative.begin() ? 0 : static_cast<std::size_t>(it - cumulative.begin()) - 1;
    panel = std::min(panel, edges.size() - 2);
    const double a = edges[panel];
    const double b = edges[panel + 1];
    const double residual = target - cumulative[panel];
    const double mass = cumulative[panel + 1] - cumulative[panel];
    // Newton on F(x) = integral over [a, x], kept inside a shrinking bracket.
    double lo = a;
    double hi = b;
    double x = mass > 0.0 ? a + (b - a) * std::clamp(residual / mass, 0.0, 1.0) : 0.5 * (a + b);
    for (int iter = 0; iter < 100; ++iter) {
      const double g = panel_integral(f, a, x) - residual;
      if (g == 0.0) break;
      (g < 0.0 ? lo : hi) = x;
      const double slope = tvu_density(f, std::span<const double>(&x, 1));
      double next = slope > 0.0 ? x - g / slope : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      const bool done = std::abs(next - x) <= 4e-16 * std::max(1.0, std::abs(x)) || hi - lo <= 1e-15;
      x = next;
      if (done) break;
    }
    out.push_back({x});
  }
  return out;
}

}  // namespace credal
