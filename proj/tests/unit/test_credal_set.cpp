#include <cmath>

#include "credal/credal_set.hpp"
#include "credal/error.hpp"
#include "credal/families.hpp"
#include "doctest.h"
#include "generators.hpp"

using namespace credal;

TEST_CASE("credal sets validate their members") {
  const auto two = OutcomeSpace::indexed(2);
  CHECK_THROWS_AS(CredalSet(two, {}), Error);
  CHECK_THROWS_AS(CredalSet(two, {FiniteDistribution(OutcomeSpace::indexed(3), {1, 0, 0})}), Error);
  const CredalSet c(two, {FiniteDistribution(two, {1, 0}), FiniteDistribution(two, {0, 1})});
  CHECK(c.size() == 2);
  CHECK(c.multiplicity(1) == 1);
  CHECK(c.member_labels().size() == 2);
}

TEST_CASE("credal_condition drops zero-mass members") {
  const auto two = OutcomeSpace::indexed(2);
  const CredalSet c(two, {FiniteDistribution(two, {1, 0}), FiniteDistribution(two, {0, 1})});
  const auto out = credal_condition(c, Event(2, {0}));
  CHECK(out.set.size() == 1);
  CHECK(out.dropped == 1);
  CHECK(out.set.space().size() == 1);
  CHECK(out.set.member(0)[0] == 1.0);
  CHECK(out.map.image(0) == std::optional<std::size_t>(0));
  CHECK_FALSE(out.map.image(1).has_value());

  try {
    credal_condition(CredalSet(two, {FiniteDistribution(two, {0, 1})}), Event(2, {0}));
    FAIL("expected AllMembersZero");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kAllMembersZero);
  }
}

TEST_CASE("coin matching: conditioning on the first head dilates P(M)") {
  const CredalSet grid = grid_credal_set(coin_matching_family(), 101);
  const Event h1 = first_heads_event();
  const Event m = match_event();

  const auto before = probability_range(grid, m);
  CHECK(before.min == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(before.max == doctest::Approx(0.5).epsilon(1e-15));

  const auto out = credal_condition(grid, h1);
  CHECK(out.set.size() == 101);
  CHECK(out.set.space().labels() == std::vector<std::string>{"H1H2", "H1T2"});
  for (std::size_t i = 0; i < out.set.size(); ++i) {
    const double p = i / 100.0;
    REQUIRE(out.set.member(i)[0] == doctest::Approx(p).epsilon(1e-12));
    REQUIRE(out.set.member(i)[1] == doctest::Approx(1.0 - p).epsilon(1e-12));
  }
  const auto after = probability_range(out.set, out.map.map(m));
  CHECK(after.min == 0.0);
  CHECK(after.max == 1.0);
  CHECK(after.argmin == 0);
  CHECK(after.argmax == 100);
}

TEST_CASE("urn: conditioning on a red draw drops exactly the red-free compositions") {
  const CredalSet urn = urn_credal_set({"red", "yellow", "blue"}, 100);
  CHECK(urn.size() == 5151);
  const auto out = credal_condition(urn, Event(3, {0}));
  CHECK(out.dropped == 101);
  // Every survivor collapses to the single point mass on red.
  CHECK(out.set.size() == 1);
  CHECK(out.set.multiplicity(0) == 5050);
  CHECK(out.set.member_weights(MergeWeighting::kMultiplicity)[0] == 1.0);
}

TEST_CASE("merging collapsed members records multiplicity") {
  const auto three = OutcomeSpace::indexed(3);
  const CredalSet c(three, {FiniteDistribution(three, {0.2, 0.2, 0.6}), FiniteDistribution(three, {0.4, 0.4, 0.2}),
                            FiniteDistribution(three, {0.1, 0.3, 0.6})});
  const auto out = credal_condition(c, Event(3, {0, 1}));
  REQUIRE(out.set.size() == 2);
  CHECK(out.set.multiplicity(0) == 2);
  CHECK(out.set.multiplicity(1) == 1);
  const auto once = out.set.member_weights(MergeWeighting::kCountOnce);
  const auto multi = out.set.member_weights(MergeWeighting::kMultiplicity);
  CHECK(once[0] == 0.5);
  CHECK(multi[0] == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("map_event and preimage") {
  const EventMap m(OutcomeSpace::indexed(5), Event(5, {1, 3, 4}));
  CHECK(m.target().size() == 3);
  CHECK(map_event(m, Event(5, {1, 4})) == Event(3, {0, 2}));
  CHECK(map_event(m, Event(5, {0, 2})).empty());
  // distinct events with equal intersections share an image
  CHECK(map_event(m, Event(5, {0, 3})) == map_event(m, Event(5, {2, 3})));
  CHECK(m.preimage(Event(3, {1})) == Event(5, {3}));
}

TEST_CASE("property: preimage inverts map and conditioning preserves conditionals") {
  gen::Source src(21);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = src.index(1, 7);
    const auto space = OutcomeSpace::indexed(n);
    Event e = src.event(n, 0.6);
    if (e.empty()) e = Event(n, {src.index(0, n - 1)});
    std::vector<FiniteDistribution> members;
    const std::size_t count = src.index(1, 6);
    for (std::size_t i = 0; i < count; ++i) members.push_back(src.distribution(space, 0.3));
    const CredalSet c(space, members);

    const EventMap map(space, e);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << e.size()); ++mask) {
      const Event target = Event::from_mask(e.size(), mask);
      const Event pre = map.preimage(target);
      REQUIRE(pre.intersect(e) == pre);
      REQUIRE(map_event(map, pre) == target);
    }

    const bool any = std::any_of(members.begin(), members.end(),
                                 [&](const FiniteDistribution& d) { return event_probability(d, e) > 0.0; });
    if (!any) {
      CHECK_THROWS_AS(credal_condition(c, e), Error);
      continue;
    }
    const auto out = credal_condition(c, e);
    for (const auto& p : members) {
      if (event_probability(p, e) == 0.0) continue;
      const auto image = out.map.push_forward(condition(p, e));
      // the image is (up to merging) one of the output members
      double best = 1.0;
      for (const auto& q : out.set.members()) best = std::min(best, tv_distance(image, q));
      REQUIRE(best < 1e-12);
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << e.size()); ++mask) {
        const Event target = Event::from_mask(e.size(), mask);
        REQUIRE(std::abs(event_probability(p, out.map.preimage(target)) / event_probability(p, e) -
                         event_probability(image, target)) < 1e-12);
      }
    }
  }
}

TEST_CASE("property: probability_range is attained and conditioning on everything is the identity") {
  gen::Source src(22);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = src.index(2, 6);
    const auto space = OutcomeSpace::indexed(n);
    std::vector<FiniteDistribution> members;
    for (int i = 0; i < 5; ++i) members.push_back(src.distribution(space, 0.0));
    const CredalSet c(space, members);
    const Event e = src.event(n);
    const auto r = probability_range(c, e);
    REQUIRE(event_probability(c.member(r.argmin), e) == r.min);
    REQUIRE(event_probability(c.member(r.argmax), e) == r.max);
    for (const auto& m : members) {
      REQUIRE(event_probability(m, e) >= r.min);
      REQUIRE(event_probability(m, e) <= r.max);
    }

    const auto same = credal_condition(c, Event::all(n));
    REQUIRE(same.set.size() == c.size());
    REQUIRE(same.dropped == 0);
    for (std::size_t i = 0; i < c.size(); ++i) REQUIRE(tv_distance(same.set.member(i).probs(), c.member(i).probs()) < 1e-15);
  }
}

TEST_CASE("singleton range") {
  const auto three = OutcomeSpace::indexed(3);
  const CredalSet c(three, {FiniteDistribution(three, {0.2, 0.3, 0.5})});
  const auto r = probability_range(c, Event(3, {1, 2}));
  CHECK(r.min == 0.8);
  CHECK(r.max == 0.8);
}
