#ifndef DISTORTION_RNG_HPP
#define DISTORTION_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace distortion {

// Deterministic RNG wrapper. mt19937_64 output is fully specified by the
// standard; the double conversions below avoid the implementation-defined
// std::uniform_real_distribution so streams are bit-identical everywhere.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Independent stream for restart/worker k derived from (seed, k).
    static Rng stream(std::uint64_t seed, std::uint64_t k) {
        return Rng(splitmix(seed + 0x9e3779b97f4a7c15ULL * (k + 1)));
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // modulo bias is irrelevant at these ranges but cheap to avoid
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % n;
    }

    int index(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

    // Symmetric triangular-ish perturbation in (-1, 1).
    double signed_unit() { return 2.0 * uniform() - 1.0; }

    // Uniform point on the probability simplex (flat Dirichlet).
    std::vector<double> dirichlet(int n) {
        std::vector<double> w(n);
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            double u;
            do {
                u = uniform();
            } while (u == 0.0);
            w[i] = -std::log(u);
            total += w[i];
        }
        for (double& v : w) v /= total;
        return w;
    }

  private:
    static std::uint64_t splitmix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }
    std::mt19937_64 gen_;
};

}  // namespace distortion

#endif
