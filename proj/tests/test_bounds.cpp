#include "doctest.h"

#include <cmath>

#include "distortion/bounds.hpp"
#include "distortion/generators.hpp"
#include "distortion/line.hpp"
#include "distortion/rng.hpp"

using namespace distortion;

TEST_CASE("3x cost cap holds on random valid metrics") {
    Rng rng(201);
    for (int trial = 0; trial < 500; ++trial) {
        const Instance inst = random_metric_instance(2 + rng.index(11), rng.below(1u << 30), true);
        CHECK(check_cost_cap(inst).ok());
    }
}

TEST_CASE("3x cost cap can fail on a broken triangle") {
    // documents why metric validation matters: this table is not a metric
    Instance inst;
    inst.metric = FiniteMetric(3);
    inst.metric.at(0, 1) = inst.metric.at(1, 0) = 10.0;
    inst.metric.at(0, 2) = inst.metric.at(2, 0) = 1.0;
    inst.metric.at(1, 2) = inst.metric.at(2, 1) = 2.0;
    inst.p = Distribution({0.5, 0.5, 0.0});
    inst.q = Distribution({0.0, 0.49, 0.51});
    REQUIRE_FALSE(validate(inst).ok());
    CHECK_FALSE(check_cost_cap(inst).ok());
}

TEST_CASE("pairwise ratio approaches 3 from below on the lower-bound family") {
    double last = 0.0;
    for (double eps : {1e-2, 1e-3, 1e-4}) {
        const double r = expected_distortion(gen_diff_dist(eps)).max_pairwise;
        CHECK(r < 3.0);
        CHECK(r > last);
        last = r;
    }
    CHECK(last == doctest::Approx(3.0).epsilon(1e-3));
}

TEST_CASE("csoc worked example and edge cases") {
    CHECK(csoc(Distribution({0.5, 0.5}), {1.0, 3.0}, 3.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(csoc(Distribution({0.5, 0.5}), {1.0, 3.0}, 1.0) == 0.0);
    CHECK_THROWS(csoc(Distribution({0.5, 0.5}), {1.0, -1.0}, 2.0));
    CHECK_THROWS(csoc(Distribution({0.5, 0.5}), {1.0, 2.0}, 5.0));
}

TEST_CASE("csoc at alpha = 3 never exceeds 1 on random starts") {
    Rng rng(211);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + rng.index(8);
        const Distribution p(rng.dirichlet(n));
        std::vector<double> c(n);
        for (double& v : c) v = std::exp(rng.uniform(-2.0, 2.0));
        CHECK(csoc(p, c, 3.0) <= 1.0 + 1e-12);
        CHECK(csoc(p, c, 3.0) >= 0.0);
    }
}

TEST_CASE("merge-style maximization: monotone trajectory, capped by (alpha-1)/2") {
    Rng rng(221);
    for (double alpha : {1.5, 2.0, 2.5, 3.0}) {
        for (int trial = 0; trial < 60; ++trial) {
            const CsocMergeResult res = csoc_merge_maximize(2 + rng.index(7), alpha,
                                                            rng.below(1u << 30));
            CHECK(res.value <= (alpha - 1.0) / 2.0 + 1e-12);
            for (size_t k = 1; k < res.trajectory.size(); ++k)
                CHECK(res.trajectory[k] >= res.trajectory[k - 1] - 1e-12);
            CHECK(res.value == doctest::Approx(res.trajectory.back()).epsilon(1e-12));
        }
        // the two-point optimum attains the cap
        CHECK(csoc(Distribution({0.5, 0.5}), {1.0, alpha}, alpha) ==
              doctest::Approx((alpha - 1.0) / 2.0).epsilon(1e-12));
    }
}

TEST_CASE("pairwise-cap bound values") {
    CHECK(diff_with_cap_bound(3.0) == 2.0);
    CHECK(diff_with_cap_bound(1.0) == 1.0);
    CHECK(diff_with_cap_bound(3.0 - 1.0 / 326.0) == doctest::Approx(2.0 - 1.0 / 652.0).epsilon(1e-15));
    CHECK_THROWS(diff_with_cap_bound(0.5));
}

TEST_CASE("near-extremal bound values") {
    CHECK(two_minus_eps_bound(0.0) == 1.5);
    CHECK(two_minus_eps_bound(1.0 / 326.0) <= 2.0 - 1.0 / 652.0);
    CHECK(two_minus_eps_bound(0.01) == doctest::Approx(2.4));
    CHECK_THROWS(two_minus_eps_bound(0.02));
}

TEST_CASE("partition around the extremal pair of the equidistant configuration") {
    const Instance inst = lemma8_config(8);
    const AbcPartition part = partition_abc(inst, 1, 0);
    CHECK(part.delta == doctest::Approx(0.0));
    CHECK(part.rho_A == 0.0);
    CHECK(part.rho_B == 0.0);
    CHECK(part.cap_applicable);
    CHECK(part.cap_ok);
    CHECK(part.cost_x_ok);
    // explicit p_target close to 1/2: radii stay 0
    const AbcPartition near_half = partition_abc(inst, 1, 0, 0.4999);
    CHECK(near_half.rho_A == 0.0);
    CHECK(near_half.rho_B == 0.0);
}

TEST_CASE("partition degenerates gracefully when the pair is far from ratio 3") {
    const Instance inst = gen_simplex_metric(200, 1e-3);
    const DistortionReport rep = expected_distortion(inst);
    // pair (0, 1): candidate 0 optimal, 1 wins, but the ratio is near 2, so
    // delta is near 1 and the default prefix mass is (1 - sqrt(delta))/2 ~ 0
    const PairOutcome po = pair_outcome(inst, rep.costs, 0, 1);
    CHECK(po.winner == 1);
    CHECK(po.opt == 0);
    CHECK(po.ratio == doctest::Approx(2.0).epsilon(1e-2));
    const AbcPartition part = partition_abc(inst, 0, 1);
    CHECK(part.delta == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(!part.cap_applicable);
    CHECK(part.p_target < 0.05);
    CHECK(part.rho_A == 0.0);
    CHECK(part.rho_B == 0.0);
    CHECK(part.cap_ok);
}

TEST_CASE("delta sums on the equidistant configuration stay below 5") {
    const Instance inst = lemma8_config(8);
    for (int i = 2; i < inst.n(); ++i)
        for (int j = 2; j < inst.n(); ++j)
            if (i != j) CHECK(delta_ijb(inst, i, j, 1) <= 5.0 + 1e-12);
    CHECK_THROWS(delta_ijb(inst, 2, 2, 1));
}

TEST_CASE("delta cap: exact corner and frozen value") {
    CHECK(delta_cap(0.5, 0.0) == 5.0);
    CHECK(delta_cap(0.49, 0.01) == doctest::Approx(5.3718987441931167).epsilon(1e-12));
    CHECK_THROWS(delta_cap(0.0, 0.0));
    CHECK_THROWS(delta_cap(0.3, 1.0));
}

TEST_CASE("delta cap monotone on the proof's grid; third expression dominates") {
    for (int pi = 30; pi <= 50; ++pi) {
        const double p = pi / 100.0;
        double prev_rho = delta_cap(p, 0.0);
        for (int ri = 0; ri <= 20; ++ri) {
            const double rho = 0.005 * ri;
            const double v = delta_cap(p, rho);
            CHECK(v >= prev_rho - 1e-12);  // nondecreasing in rho
            prev_rho = v;
            if (pi > 30) CHECK(v <= delta_cap((pi - 1) / 100.0, rho) + 1e-12);  // nonincreasing in p
            // the other two Lemma-9 case expressions never exceed the third
            const double common = (1.0 - p + rho + p * rho) / (p * (1.0 - rho));
            const double first = 2.0 * common + 3.0;  // delta >= 0 only weakens this
            const double second = 1.0 + 4.0 / (1.0 - rho);
            CHECK(first <= v + 1e-12);
            CHECK(second <= v + 1e-12);
        }
    }
}

TEST_CASE("verify passes on every generator family") {
    const LineInstance ex2 = gen_example2_line_iid(1e-4);
    CHECK(verify_instance(line_to_instance(ex2), &ex2).ok());
    CHECK(verify_instance(gen_example1(0.01)).ok());
    CHECK(verify_instance(gen_diff_dist(1e-3)).ok());
    CHECK(verify_instance(gen_simplex_metric(50, 1e-3)).ok());
    CHECK(verify_instance(lemma8_config(4)).ok());
    Rng rng(231);
    for (int trial = 0; trial < 100; ++trial)
        CHECK(verify_instance(random_metric_instance(2 + rng.index(9), rng.below(1u << 30))).ok());
}

TEST_CASE("expected distortion respects the csoc and pairwise caps") {
    Rng rng(241);
    for (int trial = 0; trial < 300; ++trial) {
        const Instance inst = random_metric_instance(2 + rng.index(11), rng.below(1u << 30), true);
        const DistortionReport rep = expected_distortion(inst);
        CHECK(rep.expected <= 1.0 + csoc(inst.p, rep.costs, 3.0) + 1e-9);
        CHECK(rep.expected <= diff_with_cap_bound(std::min(3.0, rep.max_pairwise)) + 1e-9);
    }
}
