#ifndef DISTORTION_TYPES_HPP
#define DISTORTION_TYPES_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace distortion {

// Symmetric distance table over n points. Stored dense, row-major.
struct FiniteMetric {
    int n = 0;
    std::vector<double> dist;  // n*n entries

    FiniteMetric() = default;
    explicit FiniteMetric(int n_) : n(n_), dist(static_cast<size_t>(n_) * n_, 0.0) {}

    double operator()(int i, int j) const { return dist[static_cast<size_t>(i) * n + j]; }
    double& at(int i, int j) { return dist[static_cast<size_t>(i) * n + j]; }
    const double* row(int i) const { return dist.data() + static_cast<size_t>(i) * n; }
};

// Probability vector over points.
struct Distribution {
    std::vector<double> probs;

    Distribution() = default;
    explicit Distribution(std::vector<double> p) : probs(std::move(p)) {}

    int n() const { return static_cast<int>(probs.size()); }
    double operator[](int i) const { return probs[static_cast<size_t>(i)]; }
};

// A finite metric plus candidate distribution p and voter distribution q.
struct Instance {
    FiniteMetric metric;
    Distribution p;  // candidates
    Distribution q;  // voters

    int n() const { return metric.n; }
};

// Sorted positions on the line with one distribution (p doubles as q).
struct LineInstance {
    std::vector<double> positions;
    Distribution p;

    int n() const { return static_cast<int>(positions.size()); }
};

struct Violation {
    std::string field;
    std::string what;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// well-formed JSON describing an invalid instance (bad metric / distribution)
struct invalid_instance_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Triangle-inequality slack used by validate: tau = 1e-9 * max distance.
ValidationReport validate(const Instance& inst);
ValidationReport validate(const LineInstance& line);

Instance line_to_instance(const LineInstance& line);

// All-pairs shortest-path closure of a symmetric nonnegative table with zero
// diagonal. Output satisfies the triangle inequality exactly and is
// entrywise <= the input; idempotent on valid metrics.
FiniteMetric metric_closure(const FiniteMetric& table);

// JSON I/O. Instance: {"distances": [[...]], "p": [...], "q": [...]}
// (q optional, omitted means q = p). LineInstance: {"positions": [...], "p": [...]}.
Instance read_instance(const std::string& text);
LineInstance read_line_instance(const std::string& text);
std::string write_instance(const Instance& inst);
std::string write_line_instance(const LineInstance& line);

// Either form; line instances are detected by the "positions" key.
struct ParsedDocument {
    Instance instance;
    bool is_line = false;
    LineInstance line;  // set when is_line
};
ParsedDocument read_any(const std::string& text);

}  // namespace distortion

#endif
