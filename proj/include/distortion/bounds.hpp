#ifndef DISTORTION_BOUNDS_HPP
#define DISTORTION_BOUNDS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "distortion/election.hpp"
#include "distortion/types.hpp"

namespace distortion {

struct CostCapViolation {
    int i = 0, j = 0;
    double winner_cost = 0.0, opt_cost = 0.0;
};
struct CostCapReport {
    std::vector<CostCapViolation> violations;
    bool ok() const { return violations.empty(); }
};

// cost(winner) <= 3 * cost(opt) for every pair of a valid metric instance.
CostCapReport check_cost_cap(const Instance& inst);

// Upper-bound functional on expected distortion minus 1: assumes the worse
// candidate wins whenever costs are within a factor alpha.
//   2 * sum_{i<j, c_j <= alpha c_i} p_i p_j (c_j/c_i - 1)
double csoc(const Distribution& p, const std::vector<double>& costs, double alpha);

struct CsocMergeResult {
    double value = 0.0;
    std::vector<double> trajectory;  // csoc after each mass-move / merge step
};

// Drives the Lemma-3 proof reductions on an explicit start (mass moves across
// pairs more than alpha apart, then convexity merges) until support 2.
CsocMergeResult csoc_merge_maximize(std::vector<double> p, std::vector<double> costs,
                                    double alpha);
// Random start with n_support points.
CsocMergeResult csoc_merge_maximize(int n_support, double alpha, std::uint64_t seed);

// (1 + alpha)/2 for alpha in [1, 3].
double diff_with_cap_bound(double alpha);

// 3/2 + 9 sqrt(delta) for delta in [0, 1/100].
double two_minus_eps_bound(double delta);

// Fractional membership: a boundary point may be split between a set and C.
struct PartitionMember {
    int idx = 0;
    double mass = 0.0;
};

struct AbcPartition {
    int x = 0, y = 0;
    std::vector<PartitionMember> A, B, C;
    double rho_A = 0.0, rho_B = 0.0;
    double p_target = 0.0;
    double delta = 0.0;        // 3 - ratio(x, y), as measured
    double rho_cap = 0.0;      // delta/((2-delta)(1-2p)) with delta clamped to [0, 1/100]
    double cost_x_norm = 0.0;  // cost(x) with distances rescaled so d(x,y) = 2
    bool cap_applicable = false;
    bool cap_ok = false;     // rho_A + rho_B <= rho_cap
    bool cost_x_ok = false;  // cost_x_norm <= 1/(2 - delta)
};

// Builds the A/B/C decomposition around the pair (x, y), distances rescaled
// so d(x,y) = 2. Requires p = q. p_target < 0 selects (1 - sqrt(delta))/2.
AbcPartition partition_abc(const Instance& inst, int x, int y, double p_target = -1.0);

// ratio(i,b) + ratio(j,b) + ratio(i,j).
double delta_ijb(const Instance& inst, int i, int j, int b);

// 1 + 2 * (2/(1-rho)) * ((1-p+rho+p*rho)/(p*(1-rho))) for 0 < p <= 1/2,
// 0 <= rho < 1; equals 5 at (1/2, 0).
double delta_cap(double p, double rho);

// One named inequality check, serialized by the verify report.
struct InequalityCheck {
    std::string name;
    double lhs = 0.0, rhs = 0.0;
    bool pass = false;
    double slack() const { return rhs - lhs; }
};

struct VerifyReport {
    std::vector<InequalityCheck> checks;
    bool ok() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// Runs every proven inequality applicable to the instance: vote/social order
// (line instances), the 3x cost cap, the csoc cap, the (1+alpha)/2 cap, and
// the A/B/C partition diagnostics when a near-extremal pair exists.
VerifyReport verify_instance(const Instance& inst, const LineInstance* line = nullptr);

}  // namespace distortion

#endif
