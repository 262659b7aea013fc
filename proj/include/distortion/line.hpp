#ifndef DISTORTION_LINE_HPP
#define DISTORTION_LINE_HPP

#include <string>
#include <vector>

#include "distortion/election.hpp"
#include "distortion/types.hpp"

namespace distortion {

// Cumulative mass hits exactly 1/2 at a point boundary; callers may perturb.
struct degenerate_median_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LineStructure {
    int m = 0;                    // median index
    std::vector<int> left;        // indices strictly left of m
    std::vector<int> right;       // indices strictly right of m
    std::vector<double> r;        // conditional distortion r_i = sum_j p_j ratio(i,j)
    DistortionReport report;      // full pairwise report of the embedded instance
};

LineStructure structure(const LineInstance& line);

struct OrderViolation {
    int i = 0, j = 0;
    std::string what;
};
struct OrderReport {
    std::vector<OrderViolation> violations;
    bool ok() const { return violations.empty(); }
};

// Every election is won by the candidate closer to the median.
OrderReport check_vote_order(const LineInstance& line);
// On each side of the median, the point closer to it has weakly smaller cost.
OrderReport check_social_order(const LineInstance& line);

// Support-reduction operations. Inputs with zero-mass points are compacted
// first; each operation returns an instance whose expected distortion is no
// smaller (up to float noise).
LineInstance merge_worst_right(const LineInstance& line);
LineInstance merge_worst_left(const LineInstance& line);
LineInstance reduce_right(const LineInstance& line);
LineInstance reduce_left(const LineInstance& line);

struct ReductionStep {
    std::string lemma;
    int support = 0;
    double distortion = 1.0;
};

struct ReductionResult {
    LineInstance instance;
    std::vector<ReductionStep> trace;
};

// Drives merge/reduce operations until the support size is at most 3.
ReductionResult reduce_to_three(const LineInstance& line);

// Drop zero-mass points, merge coincident positions.
LineInstance compact(const LineInstance& line);
LineInstance mirror(const LineInstance& line);

struct ThreePointValue {
    double value = 1.0;
    bool in_regime = true;  // false: parameters outside the worst-case form, value via election
};

// Closed-form expected distortion of the normalized 3-point instance
// x = (0, x2, 1) with x2 in (1/2, 1), x2 the median and point 1 socially
// better than point 3:
//   (1 - 2 p1 p3) + 2 p1 p3 (p1 + p2 (1 - x2)) / (p2 x2 + p3)
ThreePointValue three_point_social(double p1, double p2, double p3, double x2);

struct ThreePointOptimum {
    double p3_star = 0.0;
    double value = 1.0;
};

// Maximizes (1-p3) + p3 (3-2p3)/(1+2p3) over p3 in (0, 1/2).
ThreePointOptimum maximize_three_point();

}  // namespace distortion

#endif
