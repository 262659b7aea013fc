#include "distortion/line.hpp"

#include <algorithm>
#include <cmath>

namespace distortion {

namespace {

// Full ratio matrix, including zero-mass pairs (r_i sums need only positive-
// mass partners, but order checks look at every pair).
std::vector<double> ratio_matrix(const Instance& inst, const std::vector<double>& costs) {
    const int n = inst.n();
    std::vector<double> r(static_cast<size_t>(n) * n, 1.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double v = pair_outcome(inst, costs, i, j).ratio;
            r[static_cast<size_t>(i) * n + j] = v;
            r[static_cast<size_t>(j) * n + i] = v;
        }
    return r;
}

int median_index(const LineInstance& line) {
    CompensatedSum cum;
    for (int i = 0; i < line.n(); ++i) {
        cum.add(line.p[i]);
        const double c = cum.value();
        if (c >= 0.5) {
            if (c == 0.5)
                throw degenerate_median_error("cumulative mass hits exactly 1/2 at index " +
                                              std::to_string(i));
            return i;
        }
    }
    return line.n() - 1;  // unreachable for a valid distribution
}

int argmax_r(const std::vector<int>& idx, const std::vector<double>& r) {
    int best = idx.front();
    for (int i : idx)
        if (r[i] > r[best]) best = i;
    return best;
}

LineInstance move_mass(LineInstance line, int from, int to) {
    line.p.probs[to] += line.p.probs[from];
    line.p.probs[from] = 0.0;
    return compact(line);
}

double distortion_of(const LineInstance& line) {
    return expected_distortion(line_to_instance(line)).expected;
}

}  // namespace

LineInstance compact(const LineInstance& line) {
    LineInstance out;
    for (int i = 0; i < line.n(); ++i) {
        if (line.p[i] == 0.0) continue;
        if (!out.positions.empty() && line.positions[i] == out.positions.back())
            out.p.probs.back() += line.p[i];
        else {
            out.positions.push_back(line.positions[i]);
            out.p.probs.push_back(line.p[i]);
        }
    }
    return out;
}

LineInstance mirror(const LineInstance& line) {
    LineInstance out;
    const int n = line.n();
    out.positions.resize(n);
    out.p.probs.resize(n);
    for (int i = 0; i < n; ++i) {
        out.positions[i] = -line.positions[n - 1 - i];
        out.p.probs[i] = line.p[n - 1 - i];
    }
    return out;
}

LineStructure structure(const LineInstance& line) {
    LineStructure s;
    s.m = median_index(line);
    for (int i = 0; i < s.m; ++i) s.left.push_back(i);
    for (int i = s.m + 1; i < line.n(); ++i) s.right.push_back(i);

    const Instance inst = line_to_instance(line);
    s.report = expected_distortion(inst);
    const std::vector<double> rm = ratio_matrix(inst, s.report.costs);
    const int n = line.n();
    s.r.resize(n);
    for (int i = 0; i < n; ++i) {
        CompensatedSum acc;
        for (int j = 0; j < n; ++j) acc.add(line.p[j] * rm[static_cast<size_t>(i) * n + j]);
        s.r[i] = acc.value();
    }
    return s;
}

OrderReport check_vote_order(const LineInstance& line) {
    OrderReport rep;
    const int m = median_index(line);
    const Instance inst = line_to_instance(line);
    const double xm = line.positions[m];
    for (int i = 0; i < line.n(); ++i)
        for (int j = i + 1; j < line.n(); ++j) {
            const double di = std::fabs(line.positions[i] - xm);
            const double dj = std::fabs(line.positions[j] - xm);
            if (di == dj) continue;  // no claim for exactly tied distances
            const int expect = di < dj ? i : j;
            const int got = winner(inst, i, j);
            if (got != expect)
                rep.violations.push_back({i, j,
                                          "winner " + std::to_string(got) + " != closer-to-median " +
                                              std::to_string(expect)});
        }
    return rep;
}

OrderReport check_social_order(const LineInstance& line) {
    OrderReport rep;
    const int m = median_index(line);
    const Instance inst = line_to_instance(line);
    const std::vector<double> c = all_costs(inst);
    double cmax = 0.0;
    for (double v : c) cmax = std::max(cmax, v);
    const double tol = 1e-12 * cmax;
    const double xm = line.positions[m];
    auto check_pair = [&](int i, int j) {  // same side, i may be m
        const double di = std::fabs(line.positions[i] - xm);
        const double dj = std::fabs(line.positions[j] - xm);
        if (di == dj) return;
        const int closer = di < dj ? i : j;
        const int farther = di < dj ? j : i;
        if (c[closer] > c[farther] + tol)
            rep.violations.push_back({i, j,
                                      "cost(" + std::to_string(closer) + ") = " +
                                          std::to_string(c[closer]) + " > cost(" +
                                          std::to_string(farther) + ") = " +
                                          std::to_string(c[farther])});
    };
    for (int i = 0; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j) check_pair(i, j);
    for (int i = m; i < line.n(); ++i)
        for (int j = i + 1; j < line.n(); ++j) check_pair(i, j);
    return rep;
}

LineInstance merge_worst_right(const LineInstance& line) {
    const LineInstance c = compact(line);
    const LineStructure s = structure(c);
    if (s.right.empty()) throw std::invalid_argument("merge_worst_right: R is empty");
    const int ystar = argmax_r(s.right, s.r);
    LineInstance out = c;
    for (int y = ystar + 1; y < c.n(); ++y) {
        out.p.probs[ystar] += out.p.probs[y];
        out.p.probs[y] = 0.0;
    }
    return compact(out);
}

LineInstance merge_worst_left(const LineInstance& line) {
    const LineInstance c = compact(line);
    const LineStructure s = structure(c);
    if (s.left.empty()) throw std::invalid_argument("merge_worst_left: L is empty");
    const int xstar = argmax_r(s.left, s.r);
    LineInstance out = c;
    for (int x = 0; x < xstar; ++x) {
        out.p.probs[xstar] += out.p.probs[x];
        out.p.probs[x] = 0.0;
    }
    return compact(out);
}

LineInstance reduce_right(const LineInstance& line) {
    const LineInstance c = compact(line);
    const LineStructure s = structure(c);
    if (s.left.empty() || s.right.empty())
        throw std::invalid_argument("reduce_right: both sides of the median must be nonempty");
    if (s.right.size() == 1) return c;  // already collapsed
    const int n = c.n();
    // ties in r are broken toward the extreme point so the mirrored variant
    // agrees with this one
    if (s.r[0] < s.r[argmax_r(s.left, s.r)])
        throw std::invalid_argument("reduce_right: worst point of L is not leftmost");
    if (s.r[n - 1] < s.r[argmax_r(s.right, s.r)])
        throw std::invalid_argument("reduce_right: worst point of R is not rightmost");
    const double xm = c.positions[s.m];
    if (!(xm - c.positions[0] < c.positions[n - 1] - xm))
        throw std::invalid_argument("reduce_right: requires |x_m - x*| < |y* - x_m|");
    LineInstance out = c;
    for (int y : s.right)
        if (y != n - 1) {
            out.p.probs[n - 1] += out.p.probs[y];
            out.p.probs[y] = 0.0;
        }
    return compact(out);
}

LineInstance reduce_left(const LineInstance& line) {
    const LineInstance c = compact(line);
    const LineStructure s = structure(c);
    const int n = c.n();
    if (s.right.size() != 1) throw std::invalid_argument("reduce_left: requires |R| = 1");
    if (s.left.size() < 2) throw std::invalid_argument("reduce_left: requires |L| > 1");
    const double xm = c.positions[s.m];
    if (!(c.positions[n - 1] - xm > xm - c.positions[0]))
        throw std::invalid_argument("reduce_left: requires |y* - x_m| > |x_m - x*|");

    // m = n-2, L = {0, ..., n-3}, the lone right point is n-1.
    const std::vector<double> costs = all_costs(line_to_instance(c));

    // Case 1: the cheapest point of L (the one nearest the median) is no
    // worse than the right point; its mass moves onto the median.
    if (costs[n - 3] <= costs[n - 1]) return move_mass(c, n - 3, s.m);

    // Case 2: all of L is socially worse than the right point. With
    // everything but x2 := positions[1] fixed, the expected distortion is
    // (B + beta*x2)/(A - x2) plus a constant; the derivative's sign is the
    // sign of beta*A + B, so x2 moves to whichever endpoint of
    // [positions[0], positions[2]] the monotone piece favors.
    const double p2 = c.p[1];
    const double xn = c.positions[n - 1];
    CompensatedSum yacc;
    for (int j = 0; j < n; ++j)
        if (j != 1) yacc.add(c.p[j] * (xn - c.positions[j]));
    const double Y = yacc.value();

    auto mass_numerator = [&](double t) {
        // sum_{i in L} p_i * Cost_i with the point-1 mass at position t
        CompensatedSum acc;
        for (int i = 0; i <= n - 3; ++i) {
            CompensatedSum ci;
            for (int j = 0; j < n; ++j) {
                if (j == 1) continue;
                const double xi = i == 1 ? t : c.positions[i];
                ci.add(c.p[j] * std::fabs(xi - c.positions[j]));
            }
            if (i != 1) ci.add(p2 * std::fabs(c.positions[i] - t));
            acc.add(c.p[i] * ci.value());
        }
        return acc.value();
    };

    const double t0 = c.positions[0], t1 = c.positions[2];
    const double N0 = mass_numerator(t0), N1 = mass_numerator(t1);
    const double n1 = (N1 - N0) / (t1 - t0);
    const double n0 = N0 - n1 * t0;
    const double d1 = -p2;
    const double d0 = Y + p2 * xn;
    const double sign = n1 * d0 - n0 * d1;

    LineInstance out = c;
    out.positions[1] = sign > 0.0 ? t1 : t0;
    return compact(out);
}

ReductionResult reduce_to_three(const LineInstance& line) {
    ReductionResult res;
    res.instance = compact(line);
    const int max_steps = res.instance.n() * res.instance.n() + 16;
    for (int step = 0; step < max_steps; ++step) {
        LineInstance& cur = res.instance;
        const int n = cur.n();
        if (n <= 3) break;
        const LineStructure s = structure(cur);

        auto record = [&](const char* lemma) {
            res.trace.push_back({lemma, res.instance.n(), distortion_of(res.instance)});
        };

        if (s.left.empty() || s.right.empty()) {
            // distortion is exactly 1; collapsing onto the median preserves it
            LineInstance collapsed;
            collapsed.positions = {cur.positions[s.m]};
            collapsed.p = Distribution({1.0});
            cur = collapsed;
            record("mergeY");
            break;
        }

        if (s.r[n - 1] < s.r[argmax_r(s.right, s.r)]) {
            cur = merge_worst_right(cur);
            record("mergeY");
            continue;
        }
        if (s.r[0] < s.r[argmax_r(s.left, s.r)]) {
            cur = merge_worst_left(cur);
            record("mergeY");
            continue;
        }

        const double xm = cur.positions[s.m];
        const double dx = xm - cur.positions.front();
        const double dy = cur.positions.back() - xm;
        if (dx < dy) {
            if (s.right.size() > 1) {
                cur = reduce_right(cur);
                record("reduceR");
            } else {
                cur = reduce_left(cur);
                record("reduceL");
            }
        } else if (dy < dx) {
            if (s.left.size() > 1) {
                cur = mirror(reduce_right(mirror(cur)));
                record("reduceR");
            } else {
                cur = mirror(reduce_left(mirror(cur)));
                record("reduceL");
            }
        } else {
            throw degenerate_median_error(
                "reduce_to_three: extreme points exactly equidistant from the median");
        }
    }
    return res;
}

ThreePointValue three_point_social(double p1, double p2, double p3, double x2) {
    if (std::fabs(p1 + p2 + p3 - 1.0) > 1e-12)
        throw std::invalid_argument("three_point_social: probabilities must sum to 1");
    if (!(x2 > 0.5 && x2 < 1.0))
        throw std::invalid_argument("three_point_social: x2 must lie in (1/2, 1)");
    const double cost1 = p2 * x2 + p3;
    const double cost3 = p1 + p2 * (1.0 - x2);
    const bool median_ok = p1 < 0.5 && p1 + p2 >= 0.5;
    const bool social_ok = cost1 <= cost3;
    ThreePointValue out;
    if (median_ok && social_ok) {
        out.value = (1.0 - 2.0 * p1 * p3) + 2.0 * p1 * p3 * cost3 / cost1;
        return out;
    }
    out.in_regime = false;
    LineInstance l;
    l.positions = {0.0, x2, 1.0};
    l.p = Distribution({p1, p2, p3});
    out.value = distortion_of(l);
    return out;
}

ThreePointOptimum maximize_three_point() {
    auto f = [](double t) { return (1.0 - t) + t * (3.0 - 2.0 * t) / (1.0 + 2.0 * t); };
    double lo = 0.0, hi = 0.5;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = hi - inv_phi * (hi - lo);
    double b = lo + inv_phi * (hi - lo);
    double fa = f(a), fb = f(b);
    for (int it = 0; it < 120; ++it) {
        if (fa > fb) {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = f(b);
        }
    }
    ThreePointOptimum opt;
    opt.p3_star = 0.5 * (lo + hi);
    opt.value = f(opt.p3_star);
    const double closed = (std::sqrt(2.0) - 1.0) / 2.0;
    if (std::fabs(opt.p3_star - closed) > 1e-9)
        throw std::logic_error("maximize_three_point: golden section disagrees with closed form");
    return opt;
}

}  // namespace distortion
