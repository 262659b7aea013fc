// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Budgets are wall-clock seconds.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "distortion/bounds.hpp"
#include "distortion/election.hpp"
#include "distortion/generators.hpp"
#include "distortion/line.hpp"
#include "distortion/rng.hpp"
#include "distortion/search.hpp"

using namespace distortion;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int idx, const std::string& name, bool ok, double elapsed, double budget,
            const std::string& detail) {
    const bool in_budget = elapsed <= budget;
    if (!ok || !in_budget) ++failures;
    std::printf("[%s] %2d %-28s %s (%.3fs / budget %.0fs)\n",
                ok && in_budget ? "PASS" : "FAIL", idx, name.c_str(), detail.c_str(), elapsed,
                budget);
}

constexpr double kLineSup = 4.0 - 2.0 * 1.4142135623730951;  // 4 - 2 sqrt(2)

}  // namespace

int main() {
    {  // 1: tight constant on the line
        Timer t;
        const double v = expected_distortion(line_to_instance(gen_example2_line_iid(1e-4))).expected;
        char buf[128];
        std::snprintf(buf, sizeof(buf), "expected %.7f vs %.7f, tol 1e-3", v, kLineSup);
        report(1, "line_tight_constant", std::fabs(v - kLineSup) <= 1e-3, t.seconds(), 1.0, buf);
    }
    {  // 2: closed-form optimum
        Timer t;
        const ThreePointOptimum opt = maximize_three_point();
        const double p3 = (std::sqrt(2.0) - 1.0) / 2.0;
        char buf[128];
        std::snprintf(buf, sizeof(buf), "p3* %.9f (tol 1e-8), value %.12f (tol 1e-10)",
                      opt.p3_star, opt.value);
        report(2, "closed_form_optimum",
               std::fabs(opt.p3_star - p3) <= 1e-8 && std::fabs(opt.value - kLineSup) <= 1e-10,
               t.seconds(), 1.0, buf);
    }
    {  // 3: line upper bound as a property
        Timer t;
        Rng rng(4242);
        double worst = 1.0;
        for (int k = 0; k < 100000; ++k) {
            const LineInstance line = random_line_instance(2 + rng.index(9), rng.below(1u << 31));
            worst = std::max(worst,
                             expected_distortion(line_to_instance(line)).expected);
        }
        char buf[128];
        std::snprintf(buf, sizeof(buf), "max over 1e5 instances %.9f <= %.9f + 1e-9", worst,
                      kLineSup);
        report(3, "line_upper_bound_property", worst <= kLineSup + 1e-9, t.seconds(), 60.0, buf);
    }
    {  // 4: reduction correctness
        Timer t;
        Rng rng(777);
        bool ok = true;
        for (int k = 0; k < 1000 && ok; ++k) {
            const LineInstance line = random_line_instance(4 + rng.index(9), rng.below(1u << 31));
            const double before = expected_distortion(line_to_instance(line)).expected;
            const ReductionResult red = reduce_to_three(line);
            int support = 0;
            for (double v : red.instance.p.probs)
                if (v > 0.0) ++support;
            const double after = expected_distortion(line_to_instance(red.instance)).expected;
            ok = support <= 3 && after >= before - 1e-9;
            double last = before;
            for (const ReductionStep& step : red.trace) {
                ok = ok && step.distortion >= last - 1e-12;
                last = step.distortion;
            }
        }
        report(4, "reduction_correctness", ok, t.seconds(), 30.0,
               ok ? "1000 instances, support <= 3, monotone" : "monotonicity broken");
    }
    {  // 5: general-metric lower bound
        Timer t;
        const double v = expected_distortion(gen_simplex_metric(1000, 1e-3)).expected;
        char buf[128];
        std::snprintf(buf, sizeof(buf), "expected %.7f >= 1.49", v);
        report(5, "general_metric_lower_bound", v >= 1.49, t.seconds(), 5.0, buf);
    }
    {  // 6: p != q tight constant
        Timer t;
        const double v = expected_distortion(gen_diff_dist(1e-4)).expected;
        char buf[128];
        std::snprintf(buf, sizeof(buf), "expected %.7f vs 2, tol 1e-3", v);
        report(6, "pq_free_tight_constant", std::fabs(v - 2.0) <= 1e-3, t.seconds(), 1.0, buf);
    }
    std::vector<Instance> pool;  // shared by criteria 7 and 8
    {  // 7: 3x cost cap
        Timer t;
        Rng rng(1001);
        pool.reserve(10000);
        int violations = 0;
        for (int k = 0; k < 10000; ++k) {
            pool.push_back(random_metric_instance(2 + rng.index(11), rng.below(1u << 31),
                                                  k % 2 == 0));
            violations += static_cast<int>(check_cost_cap(pool.back()).violations.size());
        }
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%d violations over 1e4 instances", violations);
        report(7, "cost_cap_3x", violations == 0, t.seconds(), 30.0, buf);
    }
    {  // 8: csoc caps
        Timer t;
        bool ok = true;
        for (const Instance& inst : pool) {
            const DistortionReport rep = expected_distortion(inst);
            if (rep.expected > csoc(inst.p, rep.costs, 3.0) + 1.0 + 1e-9) ok = false;
        }
        Rng rng(1002);
        for (double alpha : {1.5, 2.0, 2.5, 3.0})
            for (int k = 0; k < 100; ++k)
                if (csoc_merge_maximize(2 + rng.index(9), alpha, rng.below(1u << 31)).value >
                    (alpha - 1.0) / 2.0 + 1e-12)
                    ok = false;
        report(8, "csoc_caps", ok, t.seconds(), 60.0,
               "expected <= csoc+1 on 1e4 instances; merged csoc <= (a-1)/2");
    }
    {  // 9: general-metric upper bound via search
        Timer t;
        SearchConfig cfg;
        cfg.space = SearchSpace::metric_pq_equal;
        cfg.n = 12;
        cfg.restarts = 64;
        cfg.steps_per_restart = 20000;
        cfg.seed = 20240817;
        const SearchResult res = search(cfg);
        const double cap = 2.0 - 1.0 / 652.0;
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "best %.6f in [1.45, %.6f]; conjectured supremum 1.5, gap open", res.best_value,
                      cap);
        report(9, "general_metric_search", res.best_value <= cap + 1e-9 && res.best_value >= 1.45,
               t.seconds(), 600.0, buf);
    }
    {  // 10: delta machinery
        Timer t;
        bool ok = delta_cap(0.5, 0.0) == 5.0;
        const Instance l8 = lemma8_config(8);
        for (int i = 2; i < l8.n() && ok; ++i)
            for (int j = 2; j < l8.n(); ++j)
                if (i != j && delta_ijb(l8, i, j, 1) > 5.0 + 1e-12) ok = false;
        const AbcPartition part = partition_abc(l8, 1, 0);
        ok = ok && part.rho_A == 0.0 && part.rho_B == 0.0;
        ok = ok && two_minus_eps_bound(1.0 / 326.0) <= 2.0 - 1.0 / 652.0;
        report(10, "delta_machinery", ok, t.seconds(), 1.0,
               "delta_cap(1/2,0)=5; all Delta<=5; rho_A=rho_B=0; Lemma-7 bound below cap");
    }
    {  // 11: oracle equivalence
        Timer t;
        bool ok = true;
        const BruteForceResult bf = brute_force_small(SearchSpace::line_pq_equal, 3, 64);
        ok = std::fabs(bf.best_value - maximize_three_point().value) <= 5e-3;
        std::vector<Instance> cases = {gen_example1(0.01),
                                       line_to_instance(gen_example2_line_iid(1e-4)),
                                       gen_simplex_metric(100, 1e-3)};
        double worst_sigma = 0.0;
        for (const Instance& inst : cases) {
            const double exact = expected_distortion(inst).expected;
            const MonteCarloEstimate mc = monte_carlo_distortion(inst, 1000000, 31337);
            const double sigma = std::fabs(mc.estimate - exact) / std::max(mc.std_error, 1e-15);
            worst_sigma = std::max(worst_sigma, sigma);
            if (sigma > 3.0) ok = false;
        }
        char buf[160];
        std::snprintf(buf, sizeof(buf), "grid %.6f vs closed form; worst MC deviation %.2f sigma",
                      bf.best_value, worst_sigma);
        report(11, "oracle_equivalence", ok, t.seconds(), 120.0, buf);
    }
    if (failures) std::printf("%d criterion(s) FAILED\n", failures);
    else std::printf("all 11 criteria passed\n");
    return failures ? 1 : 0;
}
