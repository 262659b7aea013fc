#include "distortion/election.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "distortion/rng.hpp"

namespace distortion {

double cost(const Instance& inst, int i) {
    if (i < 0 || i >= inst.n()) throw std::out_of_range("cost: index out of range");
    const double* d = inst.metric.row(i);
    CompensatedSum s;
    for (int j = 0; j < inst.n(); ++j) s.add(inst.q[j] * d[j]);
    return s.value();
}

std::vector<double> all_costs(const Instance& inst) {
    std::vector<double> c(inst.n());
    for (int i = 0; i < inst.n(); ++i) c[i] = cost(inst, i);
    return c;
}

int winner(const Instance& inst, int i, int j) {
    if (i == j) throw std::invalid_argument("winner: candidates must differ");
    const int a = std::min(i, j), b = std::max(i, j);
    const double* da = inst.metric.row(a);
    const double* db = inst.metric.row(b);
    double votes_a = 0.0;
    for (int k = 0; k < inst.n(); ++k)
        if (da[k] <= db[k]) votes_a += inst.q[k];  // ties vote for the lower index
    return votes_a >= 0.5 ? a : b;  // exact half resolves to the lower index
}

PairOutcome pair_outcome(const Instance& inst, const std::vector<double>& costs, int i, int j) {
    if (i == j) throw std::invalid_argument("pair_outcome: candidates must differ");
    PairOutcome out;
    out.i = std::min(i, j);
    out.j = std::max(i, j);
    out.winner = winner(inst, i, j);
    const double ci = costs[out.i], cj = costs[out.j];
    out.opt = cj < ci ? out.j : out.i;  // cost tie -> lower index
    const double cw = costs[out.winner], co = costs[out.opt];
    if (co == 0.0)
        out.ratio = cw > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
    else
        out.ratio = cw / co;
    return out;
}

PairOutcome pair_outcome(const Instance& inst, int i, int j) {
    return pair_outcome(inst, all_costs(inst), i, j);
}

DistortionReport expected_distortion(const Instance& inst, bool keep_pairs) {
    DistortionReport rep;
    rep.costs = all_costs(inst);
    const int n = inst.n();
    CompensatedSum acc;
    for (int i = 0; i < n; ++i) acc.add(inst.p[i] * inst.p[i]);
    rep.max_pairwise = 1.0;
    for (int i = 0; i < n; ++i) {
        if (inst.p[i] == 0.0) continue;
        for (int j = i + 1; j < n; ++j) {
            if (inst.p[j] == 0.0) continue;
            PairOutcome po = pair_outcome(inst, rep.costs, i, j);
            if (std::isinf(po.ratio)) rep.infinite = true;
            rep.max_pairwise = std::max(rep.max_pairwise, po.ratio);
            acc.add(2.0 * inst.p[i] * inst.p[j] * po.ratio);
            if (keep_pairs) rep.pairs.push_back(po);
        }
    }
    rep.expected = rep.infinite ? std::numeric_limits<double>::infinity() : acc.value();
    return rep;
}

MonteCarloEstimate monte_carlo_distortion(const Instance& inst, std::uint64_t samples,
                                          std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("monte_carlo_distortion: samples >= 1 required");
    const int n = inst.n();
    std::vector<double> cdf(n);
    double acc = 0.0;
    bool any = false;
    for (int i = 0; i < n; ++i) {
        acc += inst.p[i];
        cdf[i] = acc;
        any = any || inst.p[i] > 0.0;
    }
    if (!any) throw std::invalid_argument("monte_carlo_distortion: zero-support p");
    cdf[n - 1] = 1.0;

    const std::vector<double> costs = all_costs(inst);
    std::unordered_map<std::uint64_t, double> ratio_cache;
    auto ratio_of = [&](int i, int j) {
        const std::uint64_t key = static_cast<std::uint64_t>(std::min(i, j)) * n + std::max(i, j);
        auto it = ratio_cache.find(key);
        if (it != ratio_cache.end()) return it->second;
        const double r = pair_outcome(inst, costs, i, j).ratio;
        ratio_cache.emplace(key, r);
        return r;
    };
    auto draw = [&](Rng& rng) {
        const double u = rng.uniform();
        return static_cast<int>(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    };

    Rng rng(seed);
    CompensatedSum sum, sumsq;
    for (std::uint64_t s = 0; s < samples; ++s) {
        const int i = draw(rng), j = draw(rng);
        const double r = i == j ? 1.0 : ratio_of(i, j);
        sum.add(r);
        sumsq.add(r * r);
    }
    MonteCarloEstimate est;
    est.samples = samples;
    est.estimate = sum.value() / static_cast<double>(samples);
    if (samples > 1) {
        const double var =
            std::max(0.0, (sumsq.value() - samples * est.estimate * est.estimate) /
                              static_cast<double>(samples - 1));
        est.std_error = std::sqrt(var / static_cast<double>(samples));
    }
    return est;
}

}  // namespace distortion
