#include "distortion/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "distortion/line.hpp"
#include "distortion/rng.hpp"

namespace distortion {

CostCapReport check_cost_cap(const Instance& inst) {
    CostCapReport rep;
    const std::vector<double> costs = all_costs(inst);
    const int n = inst.n();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const PairOutcome po = pair_outcome(inst, costs, i, j);
            const double cw = costs[po.winner], co = costs[po.opt];
            if (cw > 3.0 * co + 1e-9 * co) rep.violations.push_back({i, j, cw, co});
        }
    return rep;
}

namespace {

struct WeightedCost {
    double p;
    double c;
};

std::vector<WeightedCost> sorted_support(const std::vector<double>& p,
                                         const std::vector<double>& c) {
    if (p.size() != c.size()) throw std::invalid_argument("csoc: p and costs differ in length");
    std::vector<WeightedCost> s;
    for (size_t i = 0; i < p.size(); ++i) {
        if (!(c[i] > 0.0)) throw std::invalid_argument("csoc: costs must be positive");
        if (p[i] < 0.0) throw std::invalid_argument("csoc: probabilities must be nonnegative");
        if (p[i] > 0.0) s.push_back({p[i], c[i]});
    }
    std::sort(s.begin(), s.end(), [](const WeightedCost& a, const WeightedCost& b) {
        return a.c < b.c;
    });
    return s;
}

double csoc_sorted(const std::vector<WeightedCost>& s, double alpha) {
    CompensatedSum acc;
    for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = i + 1; j < s.size(); ++j) {
            if (s[j].c > alpha * s[i].c) break;  // costs ascending
            acc.add(2.0 * s[i].p * s[j].p * (s[j].c / s[i].c - 1.0));
        }
    return acc.value();
}

}  // namespace

double csoc(const Distribution& p, const std::vector<double>& costs, double alpha) {
    if (!(alpha >= 1.0 && alpha <= 3.0)) throw std::invalid_argument("csoc: alpha outside [1,3]");
    return csoc_sorted(sorted_support(p.probs, costs), alpha);
}

CsocMergeResult csoc_merge_maximize(std::vector<double> p, std::vector<double> costs,
                                    double alpha) {
    if (!(alpha >= 1.0 && alpha <= 3.0))
        throw std::invalid_argument("csoc_merge_maximize: alpha outside [1,3]");
    std::vector<WeightedCost> s = sorted_support(p, costs);
    CsocMergeResult res;
    res.trajectory.push_back(csoc_sorted(s, alpha));

    auto merge_equal_costs = [&]() {
        std::vector<WeightedCost> out;
        for (const auto& wc : s) {
            if (!out.empty() && out.back().c == wc.c)
                out.back().p += wc.p;
            else
                out.push_back(wc);
        }
        s = std::move(out);
    };

    while (s.size() > 2) {
        merge_equal_costs();
        if (s.size() <= 2) break;

        // Phase (a): a pair more than alpha apart in cost; csoc is linear in
        // the mass shifted between them, so one extreme dominates.
        bool moved = false;
        for (size_t i = 0; i < s.size() && !moved; ++i)
            for (size_t j = i + 1; j < s.size() && !moved; ++j) {
                if (s[j].c <= alpha * s[i].c) continue;
                std::vector<WeightedCost> to_i = s, to_j = s;
                to_i[i].p += to_i[j].p;
                to_i.erase(to_i.begin() + j);
                to_j[j].p += to_j[i].p;
                to_j.erase(to_j.begin() + i);
                const double vi = csoc_sorted(to_i, alpha);
                const double vj = csoc_sorted(to_j, alpha);
                s = vi >= vj ? std::move(to_i) : std::move(to_j);
                res.trajectory.push_back(std::max(vi, vj));
                moved = true;
            }
        if (moved) continue;

        // Phase (b): all support within factor alpha; csoc is convex in any
        // interior cost, so the second point merges into a neighbor.
        std::vector<WeightedCost> lo = s, hi = s;
        lo[0].p += lo[1].p;
        lo.erase(lo.begin() + 1);
        hi[2].p += hi[1].p;
        hi.erase(hi.begin() + 1);
        const double vlo = csoc_sorted(lo, alpha);
        const double vhi = csoc_sorted(hi, alpha);
        s = vlo >= vhi ? std::move(lo) : std::move(hi);
        res.trajectory.push_back(std::max(vlo, vhi));
    }
    res.value = csoc_sorted(s, alpha);
    return res;
}

CsocMergeResult csoc_merge_maximize(int n_support, double alpha, std::uint64_t seed) {
    if (n_support < 2) throw std::invalid_argument("csoc_merge_maximize: n_support >= 2 required");
    Rng rng(seed);
    std::vector<double> p = rng.dirichlet(n_support);
    std::vector<double> c(n_support);
    for (double& v : c) v = std::exp(rng.uniform(-2.0, 2.0));
    return csoc_merge_maximize(std::move(p), std::move(c), alpha);
}

double diff_with_cap_bound(double alpha) {
    if (!(alpha >= 1.0 && alpha <= 3.0))
        throw std::invalid_argument("diff_with_cap_bound: alpha outside [1,3]");
    return 0.5 * (1.0 + alpha);
}

double two_minus_eps_bound(double delta) {
    if (!(delta >= 0.0 && delta <= 0.01))
        throw std::invalid_argument("two_minus_eps_bound: delta outside [0, 1/100]");
    return 1.5 + 9.0 * std::sqrt(delta);
}

AbcPartition partition_abc(const Instance& inst, int x, int y, double p_target) {
    const int n = inst.n();
    if (x == y || x < 0 || y < 0 || x >= n || y >= n)
        throw std::invalid_argument("partition_abc: bad pair");
    if (inst.p.probs != inst.q.probs)
        throw std::invalid_argument("partition_abc: requires p = q");
    const double dxy = inst.metric(x, y);
    if (!(dxy > 0.0)) throw std::invalid_argument("partition_abc: d(x,y) must be positive");
    const double scale = 2.0 / dxy;  // normalization d(x,y) = 2

    AbcPartition part;
    part.x = x;
    part.y = y;
    const std::vector<double> costs = all_costs(inst);
    const PairOutcome po = pair_outcome(inst, costs, x, y);
    part.delta = 3.0 - po.ratio;
    const double delta_c = std::clamp(part.delta, 0.0, 0.01);
    part.cap_applicable = part.delta <= 0.01 + 1e-12 && po.winner == y && po.opt == x;
    // default follows the (1 - sqrt(delta))/2 substitution; for delta near 0
    // clamp just below 1/2, for delta >= 1 the prefix degenerates to mass 0
    part.p_target =
        p_target >= 0.0
            ? p_target
            : std::clamp(0.5 * (1.0 - std::sqrt(std::max(0.0, part.delta))), 0.0, 0.5 - 1e-9);
    if (!(part.p_target < 0.5)) throw std::invalid_argument("partition_abc: p_target must be < 1/2");
    part.cost_x_norm = costs[x] * scale;

    // Y-side points weakly prefer y; sort by distance to x, take the
    // p_target-mass prefix (splitting the boundary point if needed).
    std::vector<int> yside, xside;
    for (int i = 0; i < n; ++i)
        (inst.metric(i, y) <= inst.metric(i, x) ? yside : xside).push_back(i);
    auto by_dist_to_x = [&](int a, int b) { return inst.metric(a, x) < inst.metric(b, x); };
    std::sort(yside.begin(), yside.end(), by_dist_to_x);
    std::sort(xside.begin(), xside.end(), by_dist_to_x);

    std::vector<PartitionMember> rest;
    auto take_prefix = [&](const std::vector<int>& src, std::vector<PartitionMember>& dst,
                           double want) {
        double remaining = want;
        double radius = 0.0;
        for (int i : src) {
            const double m = inst.p[i];
            if (remaining <= 0.0 || m == 0.0) {
                if (m > 0.0) rest.push_back({i, m});
                continue;
            }
            const double taken = std::min(m, remaining);
            dst.push_back({i, taken});
            radius = std::max(radius, inst.metric(i, x) * scale);
            remaining -= taken;
            if (taken < m) rest.push_back({i, m - taken});
        }
        if (remaining > 1e-12)
            throw std::invalid_argument("partition_abc: side mass below p_target");
        return radius;
    };
    const double ra = take_prefix(yside, part.A, part.p_target);
    part.rho_A = std::max(0.0, ra - 1.0);
    part.rho_B = take_prefix(xside, part.B, part.p_target);
    part.C = std::move(rest);

    const double p = part.p_target;
    part.rho_cap = delta_c / ((2.0 - delta_c) * (1.0 - 2.0 * p));
    part.cap_ok = part.rho_A + part.rho_B <= part.rho_cap + 1e-9;
    part.cost_x_ok = part.cost_x_norm <= 1.0 / (2.0 - delta_c) + 1e-9;
    return part;
}

double delta_ijb(const Instance& inst, int i, int j, int b) {
    if (i == j || j == b || i == b)
        throw std::invalid_argument("delta_ijb: indices must be distinct");
    const std::vector<double> costs = all_costs(inst);
    return pair_outcome(inst, costs, i, b).ratio + pair_outcome(inst, costs, j, b).ratio +
           pair_outcome(inst, costs, i, j).ratio;
}

double delta_cap(double p, double rho) {
    if (!(p > 0.0 && p <= 0.5)) throw std::invalid_argument("delta_cap: p outside (0, 1/2]");
    if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("delta_cap: rho outside [0, 1)");
    return 1.0 + 2.0 * (2.0 / (1.0 - rho)) * ((1.0 - p + rho + p * rho) / (p * (1.0 - rho)));
}

VerifyReport verify_instance(const Instance& inst, const LineInstance* line) {
    VerifyReport rep;
    auto add = [&](const std::string& name, double lhs, double rhs) {
        rep.checks.push_back({name, lhs, rhs, lhs <= rhs});
    };

    if (line) {
        const OrderReport vo = check_vote_order(*line);
        add("vote_order_violations", static_cast<double>(vo.violations.size()), 0.0);
        const OrderReport so = check_social_order(*line);
        add("social_order_violations", static_cast<double>(so.violations.size()), 0.0);
    }

    const CostCapReport cap = check_cost_cap(inst);
    add("cost_cap_violations", static_cast<double>(cap.violations.size()), 0.0);

    const DistortionReport dr = expected_distortion(inst);
    if (!dr.infinite) {
        add("expected_vs_csoc", dr.expected, 1.0 + csoc(inst.p, dr.costs, 3.0) + 1e-9);
        add("expected_vs_diff_with_cap", dr.expected,
            diff_with_cap_bound(std::min(3.0, dr.max_pairwise)) + 1e-9);
        if (line) add("line_upper_bound", dr.expected, 4.0 - 2.0 * std::sqrt(2.0) + 1e-9);

        if (inst.p.probs == inst.q.probs && dr.max_pairwise >= 3.0 - 0.01) {
            // locate the extremal pair
            const std::vector<double>& costs = dr.costs;
            int bx = -1, by = -1;
            double best = 0.0;
            for (int i = 0; i < inst.n(); ++i) {
                if (inst.p[i] == 0.0) continue;
                for (int j = i + 1; j < inst.n(); ++j) {
                    if (inst.p[j] == 0.0) continue;
                    const PairOutcome po = pair_outcome(inst, costs, i, j);
                    if (po.ratio > best) {
                        best = po.ratio;
                        bx = po.opt;
                        by = po.winner;
                    }
                }
            }
            if (bx >= 0 && bx != by) {
                const AbcPartition part = partition_abc(inst, bx, by);
                if (part.cap_applicable) {
                    add("abc_radius_cap", part.rho_A + part.rho_B, part.rho_cap + 1e-9);
                    add("abc_cost_x_cap", part.cost_x_norm,
                        1.0 / (2.0 - std::clamp(part.delta, 0.0, 0.01)) + 1e-9);
                }
            }
        }
    }
    return rep;
}

}  // namespace distortion
