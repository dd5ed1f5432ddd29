#pragma once

// Ready-made families and credal sets used by the examples and the CLI.

#include <cstddef>
#include <string>
#include <vector>

#include "credal/credal_set.hpp"
#include "credal/tvuniform.hpp"

namespace credal {

std::vector<double> binomial_pmf(int n, double p);
/// d/dp of binomial_pmf(n, p), component-wise.
std::vector<double> binomial_pmf_derivative(int n, double p);

/// Binom(n, p) over head counts "0".."n", p in [0, 1]. Registers analytic
/// partials and kinks at p = k/n, where a pmf component peaks.
ParamFamily binomial_family(int n);

/// Evenly spaced parameter values over a one-dimensional box, both ends included.
std::vector<double> linspace(double lo, double hi, std::size_t count);

/// Members eval(x) for x on a `points`-wide grid over a one-parameter family,
/// labelled by the parameter value.
CredalSet grid_credal_set(const ParamFamily& f, std::size_t points);

// Coin matching: a fair first coin and a second coin with unknown bias p.
// Outcomes H1H2, H1T2, T1H2, T1T2; member P_p = (p/2, (1-p)/2, p/2, (1-p)/2).
OutcomeSpace coin_matching_space();
ParamFamily coin_matching_family();
Event first_heads_event();  // H1
Event match_event();        // M = {H1H2, T1T2}

/// Ball counts of every way to split `balls` into `colors` ordered parts, in
/// lexicographic order of the leading counts.
std::vector<std::vector<int>> urn_compositions(std::size_t colors, int balls);

/// One draw from an urn of known size and unknown composition: one member per
/// composition, labelled "r/y/b".
CredalSet urn_credal_set(const std::vector<std::string>& colors, int balls);

/// Each member P replaced by the i.i.d. product P x ... x P over `draws`
/// draws. Product outcomes are labelled "a,b,...", first draw slowest.
CredalSet repeated_draws(const CredalSet& c, std::size_t draws);

/// The same weights over the same nodes, each node's distribution replaced by
/// its i.i.d. product. The result keeps no parametric family.
TvuMeasure repeated_draws(const TvuMeasure& m, std::size_t draws);

/// Event "draw number `position` (0-based) shows outcome `value`" in a
/// product space built by repeated_draws over `base_size` outcomes.
Event draw_event(std::size_t base_size, std::size_t draws, std::size_t position, std::size_t value);

}  // namespace credal
