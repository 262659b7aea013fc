#ifndef DISTORTION_ELECTION_HPP
#define DISTORTION_ELECTION_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "distortion/types.hpp"

namespace distortion {

// Outcome of a two-candidate majority election between points i < j.
// Tie policy: a voter equidistant to both candidates votes for the lower
// index; an election with vote share exactly 1/2 each is won by the
// lower-indexed candidate; cost ties for opt resolve to the lower index.
struct PairOutcome {
    int i = 0, j = 0;
    int winner = 0;
    int opt = 0;
    double ratio = 1.0;  // cost(winner)/cost(opt), +inf if cost(opt)=0 < cost(winner)
};

struct DistortionReport {
    std::vector<double> costs;
    std::vector<PairOutcome> pairs;  // all i<j with p_i p_j > 0 (when requested)
    double expected = 1.0;
    double max_pairwise = 1.0;
    bool infinite = false;  // some pair with positive probability has ratio +inf
};

// Social cost of candidate i: sum_j q_j * d(i,j).
double cost(const Instance& inst, int i);
std::vector<double> all_costs(const Instance& inst);

int winner(const Instance& inst, int i, int j);

PairOutcome pair_outcome(const Instance& inst, int i, int j);
// Variant with precomputed costs (avoids O(n) per call).
PairOutcome pair_outcome(const Instance& inst, const std::vector<double>& costs, int i, int j);

// Exact expected distortion (pairs iterated lexicographically with
// compensated accumulation).
DistortionReport expected_distortion(const Instance& inst, bool keep_pairs = false);

struct MonteCarloEstimate {
    double estimate = 1.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
};

// Draws candidate pairs i.i.d. from p and averages the pairwise ratio.
// Bit-reproducible for a fixed seed.
MonteCarloEstimate monte_carlo_distortion(const Instance& inst, std::uint64_t samples,
                                          std::uint64_t seed);

// Error-free-transform (Neumaier) accumulator.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double t = sum + v;
        if (std::fabs(sum) >= std::fabs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

}  // namespace distortion

#endif
