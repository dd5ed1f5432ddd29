#include <cmath>
#include <numeric>

#include "credal/error.hpp"
#include "credal/families.hpp"
#include "credal/rng.hpp"
#include "credal/tvuniform.hpp"
#include "doctest.h"
#include "generators.hpp"

using namespace credal;

namespace {

// Reference values from an adaptive QUADPACK integration of the same
// density, split at p = k/10.
constexpr double kNormalizer = 3.66021568;
constexpr double kHeadCounts[] = {0.147085210125778,  0.100478920139172,  0.0805103957870573, 0.0714968940963294,
                                  0.0673609914311558, 0.0661351768410165, 0.0673609914311558, 0.0714968940963294,
                                  0.0805103957870574, 0.100478920139172,  0.147085210125777};

// Independent derivative of C(n,k) p^k (1-p)^(n-k).
double binomial_slope(int n, int k, double p) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  const double up = k > 0 ? k * std::pow(p, k - 1) * std::pow(1 - p, n - k) : 0.0;
  const double down = k < n ? (n - k) * std::pow(p, k) * std::pow(1 - p, n - k - 1) : 0.0;
  return c * (up - down);
}

double oracle_thickness(int n, double p) {
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) sum += std::abs(binomial_slope(n, k, p));
  return 0.5 * sum;
}

ParamFamily one_toss_family() {
  return ParamFamily(OutcomeSpace({"T", "H"}), ParamBox({{0.0, 1.0}}), [](std::span<const double> x) {
    return std::vector<double>{1.0 - x[0], x[0]};
  });
}

ParamFamily constant_family() {
  return ParamFamily(OutcomeSpace::indexed(3), ParamBox({{0.0, 1.0}}),
                     [](std::span<const double>) { return std::vector<double>{0.2, 0.3, 0.5}; });
}

// Binom(10, u^3), u in [0, 1]: a monotone reparametrization without analytic partials.
ParamFamily cubed_binomial_family() {
  ParamFamily f(OutcomeSpace::indexed(11), ParamBox({{0.0, 1.0}}),
                [](std::span<const double> x) { return binomial_pmf(10, x[0] * x[0] * x[0]); });
  std::vector<double> kinks;
  for (int k = 0; k <= 10; ++k) kinks.push_back(std::cbrt(k / 10.0));
  f.with_kinks(0, kinks);
  return f;
}

}  // namespace

TEST_CASE("binomial pmf and its derivative") {
  const auto pmf = binomial_pmf(10, 0.1);
  CHECK(pmf[1] == doctest::Approx(0.387420489).epsilon(1e-12));
  CHECK(std::accumulate(pmf.begin(), pmf.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(binomial_pmf(10, 0.0)[0] == 1.0);
  CHECK(binomial_pmf(10, 1.0)[10] == 1.0);
  for (double p : {0.0, 0.05, 0.37, 0.5, 0.99, 1.0}) {
    const auto d = binomial_pmf_derivative(10, p);
    for (int k = 0; k <= 10; ++k) REQUIRE(d[k] == doctest::Approx(binomial_slope(10, k, p)).epsilon(1e-10));
  }
}

TEST_CASE("thickness examples") {
  const double x[] = {0.3};
  CHECK(thickness(constant_family(), x, 0, 1e-5) == 0.0);
  for (double p : {0.0, 0.2, 0.5, 0.77, 1.0}) {
    const double at[] = {p};
    CHECK(thickness(one_toss_family(), at, 0, 1e-5) == doctest::Approx(1.0).epsilon(1e-9));
  }
  const double p05[] = {0.05};
  CHECK(std::abs(thickness(binomial_family(10), p05, 0, 1e-5) - 6.30249409724609) < 1e-6);
  CHECK(analytic_thickness(binomial_family(10), p05, 0) == doctest::Approx(6.30249409724609).epsilon(1e-12));

  const ParamFamily narrow(OutcomeSpace::indexed(2), ParamBox({{0.0, 1e-6}}),
                           [](std::span<const double> y) { return std::vector<double>{y[0], 1.0 - y[0]}; });
  const double mid[] = {5e-7};
  try {
    thickness(narrow, mid, 0, 1e-3);
    FAIL("expected StepTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kStepTooLarge);
  }
}

TEST_CASE("property: finite-difference thickness matches the analytic oracle off kinks") {
  // Same eval, no registered partials, so the finite-difference path runs.
  const ParamFamily fd(OutcomeSpace::indexed(11), ParamBox({{0.0, 1.0}}),
                       [](std::span<const double> x) { return binomial_pmf(10, x[0]); });
  gen::Source src(31);
  double worst = 0.0;
  for (int trial = 0; trial < 2000; ++trial) {
    const double p = src.unit();
    if (std::abs(p * 10 - std::round(p * 10)) < 1e-3) continue;
    const double x[] = {p};
    worst = std::max(worst, std::abs(thickness(fd, x, 0, 1e-5) - oracle_thickness(10, p)));
    worst = std::max(worst, std::abs(tvu_density(fd, x) - oracle_thickness(10, p)));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("tvu_density shape") {
  const ParamFamily f = binomial_family(10);
  const double zero[] = {0.0};
  const double one[] = {1.0};
  CHECK(tvu_density(f, zero) == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(tvu_density(f, one) == doctest::Approx(10.0).epsilon(1e-12));
  for (double p : {0.0, 0.3, 0.61, 1.0}) {
    const double x[] = {p};
    CHECK(tvu_density(one_toss_family(), x) == doctest::Approx(1.0).epsilon(1e-9));
  }
  // Cusps at p = k/10: the one-sided slopes disagree and the cusp is a local minimum.
  const double h = 1e-4;
  for (int k = 1; k <= 9; ++k) {
    const double c = k / 10.0;
    const double at[] = {c};
    const double left[] = {c - h};
    const double right[] = {c + h};
    const double left2[] = {c - 2 * h};
    const double right2[] = {c + 2 * h};
    const double d0 = tvu_density(f, at);
    CHECK(d0 < tvu_density(f, left));
    CHECK(d0 < tvu_density(f, right));
    const double slope_left = (tvu_density(f, left) - tvu_density(f, left2)) / h;
    const double slope_right = (tvu_density(f, right2) - tvu_density(f, right)) / h;
    CHECK(slope_right - slope_left > 1.0);
  }
}

TEST_CASE("build_measure normalizer and head-count table") {
  const ParamFamily f = binomial_family(10);
  const TvuMeasure m = build_measure(f);
  CHECK(m.converged());
  CHECK(m.normalizer() == doctest::Approx(kNormalizer).epsilon(1e-10));
  double total = 0.0;
  for (std::size_t k = 0; k <= 10; ++k) {
    const double p = event_prob(m, Event(11, {k}));
    CHECK(p == doctest::Approx(kHeadCounts[k]).epsilon(1e-9));
    CHECK(std::abs(p - event_prob(m, Event(11, {10 - k}))) < 1e-6);
    total += p;
  }
  CHECK(std::abs(total - 1.0) < 1e-6);
  CHECK(event_prob(m, Event::all(11)) == doctest::Approx(1.0).epsilon(1e-14));

  const TvuMeasure finer = build_measure(f, MeasureOptions{.resolution = 2 * m.resolution(), .adaptive = false});
  CHECK(std::abs(finer.normalizer() / m.normalizer() - 1.0) < 1e-5);

  CHECK(build_measure(one_toss_family()).normalizer() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(build_measure(f, 8), Error);
  try {
    build_measure(constant_family());
    FAIL("expected DegenerateFamily");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kDegenerateFamily);
  }
}

TEST_CASE("node-sum rule reproduces the published grid values") {
  MeasureOptions o;
  o.rule = QuadratureRule::kNodeSum;
  o.resolution = 1600;
  o.adaptive = false;
  const TvuMeasure m = build_measure(binomial_family(10), o);
  CHECK(m.size() == 1601);
  CHECK(event_prob(m, Event(11, {0})) == doctest::Approx(0.147688334187352).epsilon(1e-12));
  CHECK(event_prob(m, Event(11, {1})) == doctest::Approx(0.100306540575736).epsilon(1e-12));
  CHECK(event_prob(m, Event(11, {5})) == doctest::Approx(0.0660223482880037).epsilon(1e-12));
}

TEST_CASE("property: reparametrization p -> p^3 leaves event probabilities unchanged") {
  const TvuMeasure direct = build_measure(binomial_family(10));
  const TvuMeasure cubed = build_measure(cubed_binomial_family());
  for (std::size_t k = 0; k <= 10; ++k) {
    const Event e(11, {k});
    REQUIRE(std::abs(event_prob(direct, e) - event_prob(cubed, e)) < 5e-4);
  }
}

TEST_CASE("property: normalized density integrates to one") {
  const TvuMeasure m = build_measure(binomial_family(10));
  double integral = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) integral += m.mass(i);
  CHECK(integral / m.normalizer() == doctest::Approx(1.0).epsilon(1e-12));
  // midpoint check of the density itself on a fine grid
  double riemann = 0.0;
  constexpr int kCells = 200000;
  for (int i = 0; i < kCells; ++i) {
    const double x[] = {(i + 0.5) / kCells};
    riemann += m.normalized_density(x) / kCells;
  }
  CHECK(std::abs(riemann - 1.0) < 1e-6);
}

TEST_CASE("counting measures and the finite limit") {
  const CredalSet grid = grid_credal_set(one_toss_family(), 101);
  const TvuMeasure counting = counting_measure(grid);
  CHECK(counting.is_counting());
  CHECK(counting.size() == 101);
  CHECK(counting.mass(7) / counting.normalizer() == doctest::Approx(1.0 / 101));
  const TvuMeasure continuous = build_measure(one_toss_family());
  CHECK(std::abs(event_prob(counting, Event(2, {1})) - event_prob(continuous, Event(2, {1}))) < 1e-3);

  const TvuMeasure counted_binomial = counting_measure(grid_credal_set(binomial_family(1), 101));
  CHECK(std::abs(event_prob(counted_binomial, Event(2, {1})) - 0.5) < 1e-3);
}

TEST_CASE("posterior_predictive") {
  const TvuMeasure two = repeated_draws(build_measure(one_toss_family()), 2);
  CHECK(two.space().label(2) == "H,T");
  const Event first_heads = draw_event(2, 2, 0, 1);
  const Event second_tails = draw_event(2, 2, 1, 0);
  CHECK(posterior_predictive(two, first_heads, second_tails) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(posterior_predictive(two, first_heads, Event::all(4)) == doctest::Approx(1.0).epsilon(1e-14));
  try {
    posterior_predictive(two, Event::none(4), first_heads);
    FAIL("expected ZeroEvidence");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kZeroEvidence);
  }
}

TEST_CASE("two-parameter product density") {
  // Two independent coins: thickness per coordinate is 1, so the density is flat.
  const ParamFamily coins(OutcomeSpace({"HH", "HT", "TH", "TT"}), ParamBox({{0.0, 1.0}, {0.0, 1.0}}),
                          [](std::span<const double> x) {
                            return std::vector<double>{x[0] * x[1], x[0] * (1 - x[1]), (1 - x[0]) * x[1],
                                                       (1 - x[0]) * (1 - x[1])};
                          });
  const double x[] = {0.3, 0.8};
  CHECK(thickness(coins, x, 0, 1e-5) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(tvu_density(coins, x) == doctest::Approx(1.0).epsilon(1e-8));
  const TvuMeasure m = build_measure(coins);
  CHECK(m.normalizer() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(event_prob(m, Event(4, {0})) == doctest::Approx(0.25).epsilon(1e-9));

  Rng rng(4);
  const auto samples = sample_parameters(m, 20000, rng);
  double mean0 = 0.0;
  for (const auto& s : samples) mean0 += s[0];
  CHECK(std::abs(mean0 / samples.size() - 0.5) < 0.01);
}

TEST_CASE("property: stratified parameter samples follow the measure") {
  const TvuMeasure m = build_measure(binomial_family(10));
  Rng rng(9);
  const auto samples = sample_parameters(m, 1601, rng);
  REQUIRE(samples.size() == 1601);
  double mean_pmf = 0.0;
  for (const auto& s : samples) mean_pmf += binomial_pmf(10, s[0])[1];
  CHECK(std::abs(mean_pmf / 1601 - kHeadCounts[1]) < 5e-4);

  Rng a(1);
  Rng b(1);
  CHECK(sample_parameters(m, 50, a, SamplingScheme::kIid) == sample_parameters(m, 50, b, SamplingScheme::kIid));
}
