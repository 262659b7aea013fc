#include "distortion/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "distortion/rng.hpp"

namespace distortion {

namespace {

FiniteMetric line_metric(const std::vector<double>& xs) {
    FiniteMetric m(static_cast<int>(xs.size()));
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) m.at(i, j) = std::fabs(xs[i] - xs[j]);
    return m;
}

}  // namespace

Instance gen_example1(double eps) {
    if (!(eps > 0.0 && eps <= 0.1)) throw std::invalid_argument("gen_example1: eps outside (0, 0.1]");
    Instance inst;
    inst.metric = line_metric({-1.0, eps, 1.0});
    inst.p = Distribution({0.5, 0.0, 0.5});
    inst.q = Distribution({0.5 - eps, 0.5 + eps, 0.0});
    return inst;
}

LineInstance gen_example2_line_iid(double eps) {
    if (!(eps > 0.0 && eps <= 0.01))
        throw std::invalid_argument("gen_example2_line_iid: eps outside (0, 0.01]");
    LineInstance line;
    line.positions = {-1.0, eps, 1.0};
    const double s = 1.0 / std::sqrt(2.0);
    line.p = Distribution({0.5 - eps, 1.0 - s, s - 0.5 + eps});
    return line;
}

Instance gen_simplex_metric(int n, double eps) {
    if (n < 2) throw std::invalid_argument("gen_simplex_metric: n >= 2 required");
    if (!(eps > 0.0 && eps < 0.1))
        throw std::invalid_argument("gen_simplex_metric: eps outside (0, 0.1)");
    Instance inst;
    inst.metric = FiniteMetric(n + 1);
    for (int i = 1; i <= n; ++i) {
        inst.metric.at(0, i) = inst.metric.at(i, 0) = 1.0;
        for (int j = i + 1; j <= n; ++j) inst.metric.at(i, j) = inst.metric.at(j, i) = 1.0 - eps;
    }
    std::vector<double> p(n + 1, (1.0 + eps) / (2.0 * n));
    p[0] = (1.0 - eps) / 2.0;
    inst.p = Distribution(p);
    inst.q = inst.p;
    return inst;
}

Instance gen_diff_dist(double eps) {
    if (!(eps > 0.0 && eps <= 0.01))
        throw std::invalid_argument("gen_diff_dist: eps outside (0, 0.01]");
    return gen_example1(eps);
}

LineInstance random_line_instance(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_line_instance: n >= 1 required");
    Rng rng(seed);
    LineInstance line;
    line.positions.resize(n);
    for (double& x : line.positions) x = rng.uniform();
    std::sort(line.positions.begin(), line.positions.end());
    for (int i = 1; i < n; ++i)
        line.positions[i] = std::max(line.positions[i], line.positions[i - 1] + 1e-6);
    line.p = Distribution(rng.dirichlet(n));
    return line;
}

Instance random_metric_instance(int n, std::uint64_t seed, bool independent_q) {
    if (n < 1) throw std::invalid_argument("random_metric_instance: n >= 1 required");
    Rng rng(seed);
    FiniteMetric table(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double d;
            do {
                d = rng.uniform();
            } while (d == 0.0);
            table.at(i, j) = table.at(j, i) = d;
        }
    Instance inst;
    inst.metric = metric_closure(table);
    inst.p = Distribution(rng.dirichlet(n));
    inst.q = independent_q ? Distribution(rng.dirichlet(n)) : inst.p;
    return inst;
}

Instance lemma8_config(int k) {
    // k must be a power of two so the satellite masses sum to exactly 1/2 in
    // doubles; otherwise rounding breaks the exact half-vote tie at x.
    if (k < 1 || (k & (k - 1)) != 0)
        throw std::invalid_argument("lemma8_config: k must be a power of two");
    const int n = k + 2;
    Instance inst;
    inst.metric = FiniteMetric(n);
    inst.metric.at(0, 1) = inst.metric.at(1, 0) = 2.0;
    for (int v = 2; v < n; ++v) {
        inst.metric.at(0, v) = inst.metric.at(v, 0) = 1.0;
        inst.metric.at(1, v) = inst.metric.at(v, 1) = 1.0;
        for (int w = v + 1; w < n; ++w) inst.metric.at(v, w) = inst.metric.at(w, v) = 1.0;
    }
    std::vector<double> p(n, 0.5 / k);
    p[0] = 0.0;
    p[1] = 0.5;
    inst.p = Distribution(p);
    inst.q = inst.p;
    return inst;
}

}  // namespace distortion
