#ifndef DISTORTION_SEARCH_HPP
#define DISTORTION_SEARCH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "distortion/types.hpp"

namespace distortion {

enum class SearchSpace { line_pq_equal, metric_pq_equal, metric_pq_free };

SearchSpace parse_space(const std::string& name);
std::string space_name(SearchSpace space);

struct SearchConfig {
    SearchSpace space = SearchSpace::line_pq_equal;
    int n = 6;
    int restarts = 8;
    int steps_per_restart = 5000;
    double init_temp = 0.05;
    double cooling = 0.999;
    std::uint64_t seed = 0;
    bool record_trace = false;
};

struct SearchResult {
    Instance best_instance;
    bool is_line = false;
    LineInstance best_line;  // set for line_pq_equal
    double best_value = 1.0;
    std::vector<double> per_restart_bests;
    std::uint64_t evaluations = 0;
    std::vector<std::string> trace;  // JSONL improvement events when requested
};

// Simulated annealing over the chosen space. Deterministic for a fixed seed:
// restart k owns the RNG stream (seed, k); restart 0 starts from the matching
// hand-built family, the rest from random instances. Restarts may run
// concurrently (DISTORTION_LAB_THREADS caps the pool; 0 or unset = auto);
// the merged best is chosen by value, then lexicographic serialization.
SearchResult search(const SearchConfig& config);

struct BruteForceResult {
    Instance best_instance;
    bool is_line = false;
    LineInstance best_line;
    double best_value = 1.0;
    std::uint64_t evaluations = 0;
};

// Exhaustive grid scan: line positions on an endpoint-anchored grid and
// probabilities on the resolution-denominator simplex; metric distances on a
// grid with the largest fixed at 1. n <= 4, resolution >= 8; throws if the
// grid exceeds 1e8 evaluations.
BruteForceResult brute_force_small(SearchSpace space, int n, int resolution);

}  // namespace distortion

#endif
