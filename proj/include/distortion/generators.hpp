#ifndef DISTORTION_GENERATORS_HPP
#define DISTORTION_GENERATORS_HPP

#include <cstdint>

#include "distortion/types.hpp"

namespace distortion {

// Three line-embedded points (-1, eps, 1); candidates p = (1/2, 0, 1/2),
// voters q = (1/2 - eps, 1/2 + eps, 0). The candidate pair ratio tends to 3
// as eps -> 0. Requires eps in (0, 1/10].
Instance gen_example1(double eps);

// Positions (-1, eps, 1), p = (1/2 - eps, 1 - 1/sqrt(2), 1/sqrt(2) - 1/2 + eps);
// expected distortion tends to 4 - 2 sqrt(2) from below. eps in (0, 1/100].
LineInstance gen_example2_line_iid(double eps);

// n+1 points, p = q: p_0 = (1-eps)/2, p_i = (1+eps)/(2n); d(0,i) = 1,
// d(i,j) = 1 - eps. Point 0 is socially optimal yet loses every election;
// distortion tends to 3/2. n >= 2, eps in (0, 1/10).
Instance gen_simplex_metric(int n, double eps);

// Same points as gen_example1 with p != q; expected distortion tends to 2.
// eps in (0, 1/100].
Instance gen_diff_dist(double eps);

// Sorted uniform positions on [0,1] (min gap 1e-6), Dirichlet masses.
LineInstance random_line_instance(int n, std::uint64_t seed);

// Shortest-path closure of a symmetric uniform table; p = q from a Dirichlet
// draw, or an independent q when independent_q is set.
Instance random_metric_instance(int n, std::uint64_t seed, bool independent_q = false);

// Exact extremal-pair configuration used by the partition diagnostics:
// point 0 = losing optimum y (mass 0), point 1 = x (mass 1/2), k satellites
// equidistant from both at distance 1 with d(x,y) = 2, pairwise 1, sharing
// the remaining half of the mass. p = q.
Instance lemma8_config(int k);

}  // namespace distortion

#endif
