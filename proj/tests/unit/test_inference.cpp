#include <cmath>

#include "credal/error.hpp"
#include "credal/families.hpp"
#include "credal/inference.hpp"
#include "doctest.h"

using namespace credal;

namespace {

const TvuMeasure& binomial10() {
  static const TvuMeasure m = build_measure(binomial_family(10));
  return m;
}

double hocs_at(double p, std::size_t heads) {
  const double x[] = {p};
  return hocs_ratio(binomial10(), x, Event(11, {heads})).ratio;
}

Rational urn_red(std::vector<std::string> history, int balls = 100) {
  return urn_update(UrnState{balls, {"red", "yellow", "blue"}, std::move(history)}).exact[0];
}

}  // namespace

TEST_CASE("hocs ratios against the quadrature oracle") {
  CHECK(hocs_at(0.1, 1) == doctest::Approx(3.85573897951322).epsilon(1e-9));
  CHECK(hocs_at(0.5, 1) == doctest::Approx(0.0971907837631396).epsilon(1e-9));
  CHECK(hocs_at(0.4, 4) == doctest::Approx(3.72355944695893).epsilon(1e-9));
  CHECK(hocs_at(0.3, 5) == doctest::Approx(1.55619671884162).epsilon(1e-9));
  CHECK(hocs_at(0.0, 1) == 0.0);
  CHECK(hocs_at(1.0, 1) == 0.0);

  const double x[] = {0.1};
  const auto r = hocs_ratio(binomial10(), x, Event(11, {1}));
  CHECK(r.ratio == r.null_likelihood / r.reference_prob);
  CHECK(r.reference_prob > 0.0);
  CHECK_THROWS_AS(hocs_ratio(binomial10(), x, Event::none(11)), Error);
}

TEST_CASE("hocs curve peaks at the likelihood maximum and crosses one where likelihood meets reference") {
  const auto grid = linspace(0.0, 1.0, 1001);
  const Event e(11, {1});
  const auto curve = hocs_curve(binomial10(), e, grid);
  REQUIRE(curve.size() == 1001);
  const auto peak = std::max_element(curve.begin(), curve.end(),
                                     [](const HocsResult& a, const HocsResult& b) { return a.ratio < b.ratio; });
  CHECK(peak->null_point[0] == doctest::Approx(0.1).epsilon(1e-12));

  const auto crossings = hocs_crossings(binomial10(), e, grid);
  REQUIRE(crossings.size() == 2);
  CHECK(crossings[0] == doctest::Approx(0.0111108263074727).epsilon(1e-8));
  CHECK(crossings[1] == doctest::Approx(0.319009074781486).epsilon(1e-8));
  for (double c : crossings) {
    const double at[] = {c};
    CHECK(hocs_ratio(binomial10(), at, e).ratio == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("property: hocs ratios average to one under the measure") {
  for (std::size_t k = 0; k <= 10; ++k) CHECK(std::abs(hocs_mean_ratio(binomial10(), Event(11, {k})) - 1.0) < 1e-4);
}

TEST_CASE("finite hocs excludes the null member") {
  const TvuMeasure counting = counting_measure(grid_credal_set(binomial_family(1), 3));  // p = 0, 0.5, 1
  const auto r = hocs_ratio_member(counting, 1, Event(2, {1}));
  // the rest is {p = 0, p = 1}: reference 1/2
  CHECK(r.reference_prob == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(hocs_ratio_member(counting, 2, Event(2, {1})).ratio == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("binomial_test reports") {
  const BinomialReport r = binomial_test(10, 1);
  CHECK(r.conjecture_conditional);
  CHECK(r.reference.size() == 11);
  CHECK(r.curve.size() == 1001);
  CHECK(r.peak_param == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(r.crossings.size() == 2);
  CHECK(std::abs(r.mean_ratio - 1.0) < 1e-4);

  const BinomialReport one = binomial_test(1, 1);
  CHECK(one.reference[1] == doctest::Approx(0.5).epsilon(1e-12));
  for (const auto& h : one.curve) REQUIRE(h.ratio == doctest::Approx(2.0 * h.null_point[0]).epsilon(1e-9));

  const BinomialReport five = binomial_test(10, 5);
  for (std::size_t i = 0; i < five.curve.size(); ++i) {
    REQUIRE(std::abs(five.curve[i].ratio - five.curve[five.curve.size() - 1 - i].ratio) < 1e-6);
  }
  CHECK_THROWS_AS(binomial_test(10, 11), Error);
  CHECK_THROWS_AS(binomial_test(10, -1), Error);
}

TEST_CASE("urn predictive, 100-ball urn") {
  // exact enumeration by an independent rational script
  CHECK(urn_red({}) == Rational(1, 3));
  CHECK(urn_red({"red"}) == Rational(101, 200));
  CHECK(urn_red({"red", "yellow"}) == Rational(201, 500));
  CHECK(urn_red({"red", "red"}) == Rational(30601, 50500));
  const auto p = urn_update(UrnState{100, {"red", "yellow", "blue"}, {"red"}});
  CHECK(p.compositions == 5151);
  CHECK(p.exact[1] == Rational(99, 400));
  CHECK(to_string(p.exact[0]) == "101/200");
}

TEST_CASE("urn predictive reproduces the published fractions on a 90-ball urn") {
  CHECK(urn_red({}, 90) == Rational(1, 3));
  CHECK(urn_red({"red"}, 90) == Rational(91, 180));
  const auto ry = urn_update(UrnState{90, {"red", "yellow", "blue"}, {"red", "yellow"}});
  CHECK(ry.exact[0] == Rational(181, 450));
  CHECK(ry.exact[1] == Rational(181, 450));
  CHECK(urn_red({"red", "red"}, 90) == Rational(24841, 40950));
}

TEST_CASE("property: urn float mode tracks exact mode") {
  const std::vector<std::string> colors{"red", "yellow", "blue"};
  const std::vector<std::vector<std::string>> histories{
      {}, {"blue"}, {"red", "red", "red"}, {"red", "yellow", "blue", "blue"}, {"yellow", "yellow", "red", "blue", "red"}};
  for (const auto& h : histories) {
    const auto exact = urn_update(UrnState{100, colors, h}, ArithmeticMode::kExact);
    const auto approx = urn_update(UrnState{100, colors, h}, ArithmeticMode::kFloat);
    CHECK(approx.exact.empty());
    for (std::size_t c = 0; c < 3; ++c) {
      REQUIRE(std::abs(approx.values[c] - exact.exact[c].convert_to<double>()) < 1e-12);
      REQUIRE(exact.values[c] == exact.exact[c].convert_to<double>());
    }
  }
}

TEST_CASE("property: observing red raises the red predictive") {
  for (int balls : {1, 2, 7, 50, 100}) CHECK(urn_red({"red"}, balls) > Rational(1, 3));
  CHECK(urn_red({"yellow"}) < Rational(1, 3));
}

TEST_CASE("property: urn enumeration agrees with the counting-measure predictive") {
  const std::vector<std::string> colors{"red", "yellow", "blue"};
  const int balls = 12;
  const std::size_t draws = 3;
  const TvuMeasure m = counting_measure(repeated_draws(urn_credal_set(colors, balls), draws));
  const std::vector<std::vector<std::size_t>> histories{{0, 0}, {0, 1}, {2, 1}, {1, 1}};
  for (const auto& h : histories) {
    Event observed = Event::all(m.space().size());
    std::vector<std::string> names;
    for (std::size_t d = 0; d < h.size(); ++d) {
      observed = observed.intersect(draw_event(3, draws, d, h[d]));
      names.push_back(colors[h[d]]);
    }
    const auto exact = urn_update(UrnState{balls, colors, names});
    for (std::size_t c = 0; c < 3; ++c) {
      const double pp = posterior_predictive(m, observed, draw_event(3, draws, h.size(), c));
      REQUIRE(std::abs(pp - exact.exact[c].convert_to<double>()) < 1e-12);
    }
  }
}

TEST_CASE("urn errors") {
  try {
    urn_update(UrnState{100, {"red", "yellow", "blue"}, {"green"}});
    FAIL("expected ImpossibleHistory");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kImpossibleHistory);
  }
  CHECK_THROWS_AS(urn_update(UrnState{0, {"red"}, {}}), Error);
  CHECK_THROWS_AS(urn_update(UrnState{10, {"red", "red"}, {}}), Error);
}
