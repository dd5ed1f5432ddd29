#include "credal/families.hpp"

#include <cmath>

#include <fmt/format.h>

#include "credal/error.hpp"

namespace credal {

namespace {

double log_choose(int n, int k) { return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0); }

// C(n, k) p^k (1-p)^(n-k) for k = 0..n, with 0^0 = 1.
std::vector<double> binomial_terms(int n, double p) {
  std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
  const double q = 1.0 - p;
  if (p == 0.0 || q == 0.0) {
    out[p == 0.0 ? 0 : static_cast<std::size_t>(n)] = 1.0;
    return out;
  }
  const double lp = std::log(p);
  const double lq = std::log(q);
  double lc = 0.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) lc += std::log(static_cast<double>(n - k + 1) / k);
    out[static_cast<std::size_t>(k)] = std::exp(lc + k * lp + (n - k) * lq);
  }
  return out;
}

void check_binomial(int n, double p) {
  if (n < 0) fail(Errc::kInvalidArgument, "binomial n must be non-negative");
  if (!(p >= 0.0 && p <= 1.0)) fail(Errc::kInvalidArgument, fmt::format("binomial p = {} outside [0, 1]", p));
}

}  // namespace

std::vector<double> binomial_pmf(int n, double p) {
  check_binomial(n, p);
  std::vector<double> pmf = binomial_terms(n, p);
  // exp/log round-off leaves the sum a few ulps off 1
  double total = 0.0;
  for (double v : pmf) total += v;
  for (double& v : pmf) v /= total;
  return pmf;
}

std::vector<double> binomial_pmf_derivative(int n, double p) {
  check_binomial(n, p);
  // d/dp b(n, k) = n (b(n-1, k-1) - b(n-1, k))
  std::vector<double> d(static_cast<std::size_t>(n) + 1, 0.0);
  if (n == 0) return d;
  const auto lower = binomial_terms(n - 1, p);
  for (std::size_t k = 0; k < d.size(); ++k) {
    const double up = k > 0 ? lower[k - 1] : 0.0;
    const double down = k < lower.size() ? lower[k] : 0.0;
    d[k] = n * (up - down);
  }
  return d;
}

ParamFamily binomial_family(int n) {
  if (n < 1) fail(Errc::kInvalidArgument, "binomial family needs n >= 1");
  ParamFamily f(OutcomeSpace::indexed(static_cast<std::size_t>(n) + 1), ParamBox({{0.0, 1.0}}),
                [n](std::span<const double> x) { return binomial_pmf(n, x[0]); });
  std::vector<double> kinks;
  for (int k = 0; k <= n; ++k) kinks.push_back(static_cast<double>(k) / n);
  f.with_kinks(0, std::move(kinks))
      .with_partial([n](std::span<const double> x, std::size_t) { return binomial_pmf_derivative(n, x[0]); })
      .with_name(fmt::format("binomial(n={})", n));
  return f;
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  if (count == 0) return {};
  if (count == 1) return {lo};
  std::vector<double> out(count);
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo + step * static_cast<double>(i);
  out.back() = hi;
  return out;
}

CredalSet grid_credal_set(const ParamFamily& f, std::size_t points) {
  if (f.dimension() != 1) fail(Errc::kInvalidArgument, "grid credal sets need a one-parameter family");
  if (points == 0) fail(Errc::kInvalidArgument, "grid needs at least one point");
  std::vector<FiniteDistribution> members;
  std::vector<std::string> labels;
  for (double x : linspace(f.box()[0].lo, f.box()[0].hi, points)) {
    members.push_back(f.eval(std::span<const double>(&x, 1)));
    labels.push_back(fmt::format("{:.17g}", x));
  }
  return CredalSet(f.space(), std::move(members), std::move(labels));
}

OutcomeSpace coin_matching_space() { return OutcomeSpace({"H1H2", "H1T2", "T1H2", "T1T2"}); }

ParamFamily coin_matching_family() {
  ParamFamily f(coin_matching_space(), ParamBox({{0.0, 1.0}}), [](std::span<const double> x) {
    const double p = x[0];
    return std::vector<double>{0.5 * p, 0.5 * (1.0 - p), 0.5 * p, 0.5 * (1.0 - p)};
  });
  f.with_partial([](std::span<const double>, std::size_t) { return std::vector<double>{0.5, -0.5, 0.5, -0.5}; })
      .with_name("coin-matching");
  return f;
}

Event first_heads_event() { return Event(4, {0, 1}); }
Event match_event() { return Event(4, {0, 3}); }

std::vector<std::vector<int>> urn_compositions(std::size_t colors, int balls) {
  if (colors == 0) fail(Errc::kInvalidArgument, "urn needs at least one color");
  if (balls < 1) fail(Errc::kInvalidArgument, "urn needs at least one ball");
  // C(balls + colors - 1, colors - 1) compositions
  const double count = std::exp(log_choose(balls + static_cast<int>(colors) - 1, static_cast<int>(colors) - 1));
  if (count > 5e7) fail(Errc::kInvalidArgument, fmt::format("{:.3g} urn compositions is too many to enumerate", count));

  std::vector<std::vector<int>> out;
  out.reserve(static_cast<std::size_t>(count + 0.5));
  std::vector<int> current(colors, 0);
  auto recurse = [&](auto&& self, std::size_t slot, int remaining) -> void {
    if (slot + 1 == colors) {
      current[slot] = remaining;
      out.push_back(current);
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      current[slot] = c;
      self(self, slot + 1, remaining - c);
    }
  };
  recurse(recurse, 0, balls);
  return out;
}

CredalSet urn_credal_set(const std::vector<std::string>& colors, int balls) {
  OutcomeSpace space(colors);
  std::vector<FiniteDistribution> members;
  std::vector<std::string> labels;
  for (const auto& comp : urn_compositions(colors.size(), balls)) {
    std::vector<double> probs;
    std::string label;
    for (std::size_t c = 0; c < comp.size(); ++c) {
      probs.push_back(static_cast<double>(comp[c]) / balls);
      label += (c == 0 ? "" : "/") + std::to_string(comp[c]);
    }
    members.emplace_back(space, std::move(probs));
    labels.push_back(std::move(label));
  }
  return CredalSet(space, std::move(members), std::move(labels));
}

namespace {

std::size_t product_size(std::size_t n, std::size_t draws) {
  if (draws == 0) fail(Errc::kInvalidArgument, "need at least one draw");
  std::size_t total = 1;
  for (std::size_t d = 0; d < draws; ++d) {
    if (total > 10'000'000 / n) fail(Errc::kInvalidArgument, "product space is too large");
    total *= n;
  }
  return total;
}

OutcomeSpace product_space(const OutcomeSpace& base, std::size_t draws) {
  const std::size_t n = base.size();
  const std::size_t total = product_size(n, draws);
  std::vector<std::string> labels(total);
  std::vector<std::size_t> digits(draws);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (std::size_t d = draws; d-- > 0;) {
      digits[d] = rest % n;
      rest /= n;
    }
    std::string label;
    for (std::size_t d = 0; d < draws; ++d) label += (d == 0 ? "" : ",") + base.label(digits[d]);
    labels[idx] = std::move(label);
  }
  return OutcomeSpace(std::move(labels));
}

std::vector<double> product_probs(std::span<const double> base, std::size_t total) {
  const std::size_t n = base.size();
  std::vector<double> probs(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    double p = 1.0;
    for (std::size_t rest = idx, d = 1; d < total; d *= n, rest /= n) p *= base[rest % n];
    probs[idx] = p;
  }
  return probs;
}

}  // namespace

CredalSet repeated_draws(const CredalSet& c, std::size_t draws) {
  OutcomeSpace product = product_space(c.space(), draws);
  std::vector<FiniteDistribution> members;
  members.reserve(c.size());
  for (const auto& m : c.members()) members.push_back(make_distribution(product, product_probs(m.probs(), product.size())));
  return CredalSet(product, std::move(members), c.member_labels(), c.multiplicities());
}

TvuMeasure repeated_draws(const TvuMeasure& m, std::size_t draws) {
  OutcomeSpace product = product_space(m.space(), draws);
  std::vector<ParamPoint> points;
  std::vector<double> node_probs;
  points.reserve(m.size());
  node_probs.reserve(m.size() * product.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    points.push_back(m.point(i));
    const auto probs = product_probs(m.probs(i), product.size());
    node_probs.insert(node_probs.end(), probs.begin(), probs.end());
  }
  const std::vector<double> masses(m.masses().begin(), m.masses().end());
  return TvuMeasure(std::move(product), std::move(points), masses, std::move(node_probs), std::nullopt, m.rule(),
                    m.resolution(), m.converged());
}

Event draw_event(std::size_t base_size, std::size_t draws, std::size_t position, std::size_t value) {
  if (position >= draws || value >= base_size) fail(Errc::kIndexOutOfRange, "draw position or value out of range");
  std::size_t total = 1;
  for (std::size_t d = 0; d < draws; ++d) total *= base_size;
  std::size_t stride = 1;
  for (std::size_t d = position + 1; d < draws; ++d) stride *= base_size;
  std::vector<std::size_t> members;
  for (std::size_t idx = 0; idx < total; ++idx) {
    if ((idx / stride) % base_size == value) members.push_back(idx);
  }
  return Event(total, std::move(members));
}

}  // namespace credal
