#include "distortion/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "distortion/election.hpp"
#include "distortion/generators.hpp"
#include "distortion/rng.hpp"

namespace distortion {

SearchSpace parse_space(const std::string& name) {
    if (name == "line_pq_equal") return SearchSpace::line_pq_equal;
    if (name == "metric_pq_equal") return SearchSpace::metric_pq_equal;
    if (name == "metric_pq_free") return SearchSpace::metric_pq_free;
    throw std::invalid_argument("unknown search space: " + name);
}

std::string space_name(SearchSpace space) {
    switch (space) {
        case SearchSpace::line_pq_equal: return "line_pq_equal";
        case SearchSpace::metric_pq_equal: return "metric_pq_equal";
        case SearchSpace::metric_pq_free: return "metric_pq_free";
    }
    return "?";
}

namespace {

int thread_pool_size(int jobs) {
    int want = 0;
    if (const char* env = std::getenv("DISTORTION_LAB_THREADS")) want = std::atoi(env);
    if (want <= 0) want = static_cast<int>(std::thread::hardware_concurrency());
    if (want <= 0) want = 1;
    return std::min(want, jobs);
}

// Walk state: a full Instance, plus the line embedding when applicable.
struct State {
    Instance inst;
    bool is_line = false;
    LineInstance line;
};

State line_state(LineInstance line) {
    State s;
    s.line = std::move(line);
    s.inst = line_to_instance(s.line);
    s.is_line = true;
    return s;
}

State seeded_start(const SearchConfig& cfg, Rng& rng) {
    const int n = cfg.n;
    switch (cfg.space) {
        case SearchSpace::line_pq_equal: {
            if (n < 3) break;
            LineInstance base = gen_example2_line_iid(1e-4);
            for (int k = 1; k <= n - 3; ++k) {
                base.positions.push_back(-1.0 + 1e-3 * k);
                base.p.probs.push_back(0.0);
            }
            std::vector<int> order(n);
            for (int i = 0; i < n; ++i) order[i] = i;
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                return base.positions[a] < base.positions[b];
            });
            LineInstance sorted;
            for (int i : order) {
                sorted.positions.push_back(base.positions[i]);
                sorted.p.probs.push_back(base.p[i]);
            }
            return line_state(std::move(sorted));
        }
        case SearchSpace::metric_pq_equal: {
            if (n < 3) break;
            State s;
            s.inst = gen_simplex_metric(n - 1, 1e-3);
            return s;
        }
        case SearchSpace::metric_pq_free: {
            if (n < 3) break;
            Instance base = gen_diff_dist(1e-4);
            State s;
            s.inst.metric = FiniteMetric(n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const int a = std::min(i, 2), b = std::min(j, 2);
                    // points beyond the first three sit on top of point 0
                    const int ia = i > 2 ? 0 : a, jb = j > 2 ? 0 : b;
                    s.inst.metric.at(i, j) = base.metric(ia, jb);
                }
            s.inst.p.probs.assign(n, 0.0);
            s.inst.q.probs.assign(n, 0.0);
            for (int i = 0; i < 3; ++i) {
                s.inst.p.probs[i] = base.p[i];
                s.inst.q.probs[i] = base.q[i];
            }
            return s;
        }
    }
    // family does not fit this n: fall through to a random start
    if (cfg.space == SearchSpace::line_pq_equal)
        return line_state(random_line_instance(n, rng.below(UINT64_MAX - 1)));
    State s;
    s.inst = random_metric_instance(n, rng.below(UINT64_MAX - 1),
                                    cfg.space == SearchSpace::metric_pq_free);
    return s;
}

State random_start(const SearchConfig& cfg, Rng& rng) {
    if (cfg.space == SearchSpace::line_pq_equal)
        return line_state(random_line_instance(cfg.n, rng.below(UINT64_MAX - 1)));
    State s;
    s.inst = random_metric_instance(cfg.n, rng.below(UINT64_MAX - 1),
                                    cfg.space == SearchSpace::metric_pq_free);
    return s;
}

void move_mass(std::vector<double>& p, Rng& rng, double scale, bool all) {
    const int n = static_cast<int>(p.size());
    const int i = rng.index(n);
    int j = rng.index(n - 1);
    if (j >= i) ++j;
    const double amt = all ? p[i] : std::min(p[i], rng.uniform() * scale);
    p[i] -= amt;
    p[j] += amt;
}

void sort_line(LineInstance& line) {
    const int n = line.n();
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return line.positions[a] < line.positions[b];
    });
    LineInstance out;
    for (int i : order) {
        out.positions.push_back(line.positions[i]);
        out.p.probs.push_back(line.p[i]);
    }
    for (int i = 1; i < n; ++i)
        if (out.positions[i] <= out.positions[i - 1])
            out.positions[i] = out.positions[i - 1] + 1e-9;
    line = std::move(out);
}

State propose(const State& cur, const SearchConfig& cfg, Rng& rng, double scale) {
    State next = cur;
    if (cur.is_line) {
        switch (rng.index(4)) {
            case 0: {  // perturb one position
                const int i = rng.index(next.line.n());
                next.line.positions[i] += scale * rng.signed_unit();
                sort_line(next.line);
                break;
            }
            case 1:  // move mass between two points
                move_mass(next.line.p.probs, rng, scale, false);
                break;
            case 2:  // merge: dump a point's mass onto another
                move_mass(next.line.p.probs, rng, 0.0, true);
                break;
            default: {  // split: revive a point at a fresh position with half a donor's mass
                const int n = next.line.n();
                const int i = rng.index(n);
                int j = rng.index(n - 1);
                if (j >= i) ++j;
                const double amt = 0.5 * next.line.p.probs[j];
                next.line.p.probs[j] -= amt;
                next.line.p.probs[i] += amt;
                next.line.positions[i] = rng.uniform(-1.0, 1.0);
                sort_line(next.line);
                break;
            }
        }
        next.inst = line_to_instance(next.line);
        return next;
    }
    const int n = next.inst.n();
    const bool free_q = cfg.space == SearchSpace::metric_pq_free;
    switch (rng.index(free_q ? 3 : 2)) {
        case 0: {  // perturb one distance, re-project into the metric cone
            const int i = rng.index(n);
            int j = rng.index(n - 1);
            if (j >= i) ++j;
            FiniteMetric table = next.inst.metric;
            double d = table(i, j) * std::exp(scale * rng.signed_unit());
            d = std::max(d, 1e-9);
            table.at(i, j) = table.at(j, i) = d;
            next.inst.metric = metric_closure(table);
            double mx = 0.0;
            for (double v : next.inst.metric.dist) mx = std::max(mx, v);
            if (mx > 0.0)
                for (double& v : next.inst.metric.dist) v /= mx;
            break;
        }
        case 1:
            move_mass(next.inst.p.probs, rng, scale, false);
            if (!free_q) next.inst.q = next.inst.p;
            break;
        default:
            move_mass(next.inst.q.probs, rng, scale, false);
            break;
    }
    return next;
}

double objective(const State& s, std::uint64_t& evals) {
    ++evals;
    const DistortionReport rep = expected_distortion(s.inst);
    return rep.infinite ? -1.0 : rep.expected;
}

struct RestartOutcome {
    State best;
    double best_value = -1.0;
    std::uint64_t evaluations = 0;
    std::vector<std::string> trace;
};

RestartOutcome run_restart(const SearchConfig& cfg, int k) {
    Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(k));
    RestartOutcome out;
    State cur = k == 0 ? seeded_start(cfg, rng) : random_start(cfg, rng);
    double cur_value = objective(cur, out.evaluations);
    out.best = cur;
    out.best_value = cur_value;
    double temp = cfg.init_temp;
    for (int step = 0; step < cfg.steps_per_restart; ++step, temp *= cfg.cooling) {
        const double scale = std::max(temp, 1e-4);
        State next = propose(cur, cfg, rng, scale);
        const double v = objective(next, out.evaluations);
        if (v >= cur_value || rng.uniform() < std::exp((v - cur_value) / std::max(temp, 1e-12))) {
            cur = std::move(next);
            cur_value = v;
            if (v > out.best_value) {
                out.best = cur;
                out.best_value = v;
                if (cfg.record_trace) {
                    std::ostringstream os;
                    os.precision(17);
                    os << "{\"restart\":" << k << ",\"step\":" << step << ",\"value\":" << v << "}";
                    out.trace.push_back(os.str());
                }
            }
        }
    }
    return out;
}

}  // namespace

SearchResult search(const SearchConfig& cfg) {
    if (cfg.restarts < 1 || cfg.steps_per_restart < 1 || cfg.n < 2 ||
        !(cfg.cooling > 0.0 && cfg.cooling < 1.0))
        throw std::invalid_argument("search: bad config");

    std::vector<RestartOutcome> outcomes(cfg.restarts);
    std::atomic<int> next_job{0};
    auto worker = [&]() {
        for (;;) {
            const int k = next_job.fetch_add(1);
            if (k >= cfg.restarts) return;
            outcomes[k] = run_restart(cfg, k);
        }
    };
    const int pool = thread_pool_size(cfg.restarts);
    if (pool <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (int t = 0; t < pool; ++t) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }

    SearchResult res;
    int best_k = -1;
    std::string best_ser;
    for (int k = 0; k < cfg.restarts; ++k) {
        const RestartOutcome& o = outcomes[k];
        res.per_restart_bests.push_back(o.best_value);
        res.evaluations += o.evaluations;
        for (const std::string& t : o.trace) res.trace.push_back(t);
        const std::string ser = write_instance(o.best.inst);
        if (best_k < 0 || o.best_value > res.best_value ||
            (o.best_value == res.best_value && ser < best_ser)) {
            best_k = k;
            res.best_value = o.best_value;
            best_ser = ser;
        }
    }
    res.best_instance = outcomes[best_k].best.inst;
    res.is_line = outcomes[best_k].best.is_line;
    res.best_line = outcomes[best_k].best.line;
    // the stored value must match an independent re-evaluation
    res.best_value = expected_distortion(res.best_instance).expected;
    return res;
}

namespace {

void compositions(int total, int parts, std::vector<int>& cur,
                  std::vector<std::vector<double>>& out, double denom) {
    if (parts == 1) {
        std::vector<double> w;
        w.reserve(cur.size() + 1);
        for (int c : cur) w.push_back(c / denom);
        w.push_back(total / denom);
        out.push_back(std::move(w));
        return;
    }
    for (int c = 0; c <= total; ++c) {
        cur.push_back(c);
        compositions(total - c, parts - 1, cur, out, denom);
        cur.pop_back();
    }
}

std::vector<std::vector<double>> simplex_grid(int n, int resolution) {
    std::vector<std::vector<double>> out;
    std::vector<int> cur;
    compositions(resolution, n, cur, out, static_cast<double>(resolution));
    return out;
}

BruteForceResult brute_force_line(int n, int resolution) {
    const auto masses = simplex_grid(n, resolution);
    // interior positions: strictly increasing tuples from {1..res-1}/res
    std::vector<std::vector<double>> interiors;
    if (n == 2) {
        interiors.push_back({});
    } else {
        std::vector<int> cur;
        // iterative enumeration of increasing tuples
        auto rec = [&](auto&& self, int start, int left) -> void {
            if (left == 0) {
                std::vector<double> xs;
                for (int v : cur) xs.push_back(static_cast<double>(v) / resolution);
                interiors.push_back(std::move(xs));
                return;
            }
            for (int v = start; v <= resolution - left; ++v) {
                cur.push_back(v);
                self(self, v + 1, left - 1);
                cur.pop_back();
            }
        };
        rec(rec, 1, n - 2);
    }
    const double count = static_cast<double>(interiors.size()) * masses.size();
    if (count > 1e8) throw std::runtime_error("brute_force_small: grid exceeds 1e8 evaluations");

    BruteForceResult res;
    res.is_line = true;
    res.best_value = -1.0;
    LineInstance line;
    line.positions.resize(n);
    for (const auto& xs : interiors) {
        line.positions.front() = 0.0;
        for (int i = 0; i < n - 2; ++i) line.positions[i + 1] = xs[i];
        line.positions.back() = 1.0;
        for (const auto& m : masses) {
            line.p.probs = m;
            ++res.evaluations;
            const DistortionReport rep = expected_distortion(line_to_instance(line));
            if (!rep.infinite && rep.expected > res.best_value) {
                res.best_value = rep.expected;
                res.best_line = line;
            }
        }
    }
    res.best_instance = line_to_instance(res.best_line);
    return res;
}

BruteForceResult brute_force_metric(SearchSpace space, int n, int resolution) {
    // pair (0,1) anchored at distance 1 (the maximum); remaining pairs on the
    // grid {1..res}/res, filtered by the triangle inequality. For n = 3 the
    // relabeling 0 <-> 1 swaps the two free distances, so restrict d(0,2) <=
    // d(1,2).
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!(i == 0 && j == 1)) pairs.push_back({i, j});
    const int m = static_cast<int>(pairs.size());

    std::vector<FiniteMetric> tables;
    FiniteMetric metric(n);
    metric.at(0, 1) = metric.at(1, 0) = 1.0;
    auto rec = [&](auto&& self, int k) -> void {
        if (k == m) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int l = 0; l < n; ++l)
                        if (metric(i, j) > metric(i, l) + metric(l, j)) return;
            tables.push_back(metric);
            return;
        }
        for (int v = 1; v <= resolution; ++v) {
            const double d = static_cast<double>(v) / resolution;
            if (n == 3 && k == 1 && d < metric(0, 2)) continue;
            metric.at(pairs[k].first, pairs[k].second) = d;
            metric.at(pairs[k].second, pairs[k].first) = d;
            self(self, k + 1);
        }
    };
    rec(rec, 0);

    const auto grid = simplex_grid(n, resolution);
    const bool free_q = space == SearchSpace::metric_pq_free;
    const double count =
        static_cast<double>(tables.size()) * grid.size() * (free_q ? grid.size() : 1.0);
    if (count > 1e8) throw std::runtime_error("brute_force_small: grid exceeds 1e8 evaluations");

    BruteForceResult res;
    res.best_value = -1.0;
    Instance inst;
    std::vector<double> ratio(static_cast<size_t>(n) * n, 1.0);
    for (const FiniteMetric& table : tables) {
        inst.metric = table;
        for (const auto& q : grid) {
            inst.q.probs = q;
            const std::vector<double> costs = all_costs(inst);
            bool finite = true;
            for (int i = 0; i < n && finite; ++i)
                for (int j = i + 1; j < n; ++j) {
                    const PairOutcome po = pair_outcome(inst, costs, i, j);
                    if (std::isinf(po.ratio)) {
                        finite = false;
                        break;
                    }
                    ratio[static_cast<size_t>(i) * n + j] = po.ratio;
                }
            if (!finite) {
                res.evaluations += free_q ? grid.size() : 1;
                continue;
            }
            auto value_for = [&](const std::vector<double>& p) {
                double v = 0.0;
                for (int i = 0; i < n; ++i) {
                    v += p[i] * p[i];
                    for (int j = i + 1; j < n; ++j)
                        v += 2.0 * p[i] * p[j] * ratio[static_cast<size_t>(i) * n + j];
                }
                return v;
            };
            if (free_q) {
                for (const auto& p : grid) {
                    ++res.evaluations;
                    const double v = value_for(p);
                    if (v > res.best_value) {
                        res.best_value = v;
                        res.best_instance = inst;
                        res.best_instance.p.probs = p;
                    }
                }
            } else {
                ++res.evaluations;
                const double v = value_for(q);
                if (v > res.best_value) {
                    res.best_value = v;
                    res.best_instance = inst;
                    res.best_instance.p.probs = q;
                }
            }
        }
    }
    if (!free_q) res.best_instance.q = res.best_instance.p;
    return res;
}

}  // namespace

BruteForceResult brute_force_small(SearchSpace space, int n, int resolution) {
    if (n < 2 || n > 4) throw std::invalid_argument("brute_force_small: n must be in [2, 4]");
    if (resolution < 8) throw std::invalid_argument("brute_force_small: resolution >= 8 required");
    if (space == SearchSpace::line_pq_equal) return brute_force_line(n, resolution);
    return brute_force_metric(space, n, resolution);
}

}  // namespace distortion
