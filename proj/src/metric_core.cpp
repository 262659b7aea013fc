#include "distortion/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace distortion {

using nlohmann::json;

std::string ValidationReport::summary() const {
    if (violations.empty()) return "ok";
    std::ostringstream os;
    for (size_t k = 0; k < violations.size(); ++k) {
        if (k) os << "; ";
        os << violations[k].field << ": " << violations[k].what;
    }
    return os.str();
}

namespace {

void check_distribution(const Distribution& d, int n, const char* name,
                        std::vector<Violation>& out) {
    if (d.n() != n) {
        out.push_back({name, "length " + std::to_string(d.n()) + " != n = " + std::to_string(n)});
        return;
    }
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        if (!(d[i] >= 0.0)) {
            out.push_back({name, "entry " + std::to_string(i) + " negative or NaN (" +
                                     std::to_string(d[i]) + ")"});
        }
        sum += d[i];
    }
    if (std::fabs(sum - 1.0) > 1e-12) {
        out.push_back({name, "entries sum to " + std::to_string(sum) + ", not 1"});
    }
}

void check_metric(const FiniteMetric& m, std::vector<Violation>& out) {
    const int n = m.n;
    if (static_cast<int>(m.dist.size()) != n * n) {
        out.push_back({"distances", "table is not n x n"});
        return;
    }
    double max_d = 0.0;
    for (double v : m.dist) {
        if (!std::isfinite(v)) {
            out.push_back({"distances", "non-finite entry"});
            return;
        }
        max_d = std::max(max_d, v);
    }
    for (int i = 0; i < n; ++i) {
        if (m(i, i) != 0.0)
            out.push_back({"distances", "dist[" + std::to_string(i) + "][" + std::to_string(i) +
                                            "] = " + std::to_string(m(i, i)) + " != 0"});
        for (int j = i + 1; j < n; ++j) {
            if (m(i, j) < 0.0)
                out.push_back({"distances", "negative entry at (" + std::to_string(i) + "," +
                                                std::to_string(j) + ")"});
            if (m(i, j) != m(j, i))
                out.push_back({"distances", "asymmetry at (" + std::to_string(i) + "," +
                                                std::to_string(j) + "): " + std::to_string(m(i, j)) +
                                                " vs " + std::to_string(m(j, i))});
        }
    }
    const double tau = 1e-9 * max_d;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const double slack = m(i, k) - m(i, j) - m(j, k);
                if (slack > tau) {
                    out.push_back({"distances",
                                   "triangle violation (" + std::to_string(i) + "," +
                                       std::to_string(j) + "," + std::to_string(k) + "): " +
                                       std::to_string(m(i, k)) + " > " +
                                       std::to_string(m(i, j) + m(j, k)) + " by " +
                                       std::to_string(slack)});
                    if (out.size() > 100) return;  // cap report size
                }
            }
}

}  // namespace

ValidationReport validate(const Instance& inst) {
    ValidationReport rep;
    check_metric(inst.metric, rep.violations);
    check_distribution(inst.p, inst.n(), "p", rep.violations);
    check_distribution(inst.q, inst.n(), "q", rep.violations);
    return rep;
}

ValidationReport validate(const LineInstance& line) {
    ValidationReport rep;
    for (int i = 0; i + 1 < line.n(); ++i)
        if (!(line.positions[i] < line.positions[i + 1]))
            rep.violations.push_back({"positions", "not strictly increasing at index " +
                                                       std::to_string(i)});
    for (double x : line.positions)
        if (!std::isfinite(x)) rep.violations.push_back({"positions", "non-finite entry"});
    check_distribution(line.p, line.n(), "p", rep.violations);
    return rep;
}

Instance line_to_instance(const LineInstance& line) {
    const int n = line.n();
    for (int i = 0; i + 1 < n; ++i)
        if (!(line.positions[i] < line.positions[i + 1]))
            throw std::invalid_argument("line positions must be strictly increasing");
    Instance inst;
    inst.metric = FiniteMetric(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            inst.metric.at(i, j) = std::fabs(line.positions[i] - line.positions[j]);
    inst.p = line.p;
    inst.q = line.p;
    return inst;
}

FiniteMetric metric_closure(const FiniteMetric& table) {
    const int n = table.n;
    for (int i = 0; i < n; ++i) {
        if (table(i, i) != 0.0) throw std::invalid_argument("metric_closure: nonzero diagonal");
        for (int j = 0; j < n; ++j) {
            if (table(i, j) < 0.0) throw std::invalid_argument("metric_closure: negative entry");
            if (table(i, j) != table(j, i))
                throw std::invalid_argument("metric_closure: asymmetric table");
        }
    }
    FiniteMetric d = table;
    // Relax to a floating-point fixpoint. A single Floyd-Warshall sweep can
    // leave ulp-level triangle slack (a later relaxation shortens a leg whose
    // sums were already taken); at the fixpoint every d(i,j) <= d(i,k)+d(k,j)
    // holds exactly in doubles, which also makes the operation idempotent.
    for (bool changed = true; changed;) {
        changed = false;
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i) {
                const double dik = d(i, k);
                for (int j = 0; j < n; ++j) {
                    const double via = dik + d(k, j);
                    if (via < d(i, j)) {
                        d.at(i, j) = via;
                        changed = true;
                    }
                }
            }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (d(i, j) != d(j, i)) {
                    const double v = std::min(d(i, j), d(j, i));
                    d.at(i, j) = v;
                    d.at(j, i) = v;
                    changed = true;
                }
    }
    return d;
}

namespace {

std::vector<double> parse_number_array(const json& j, const char* name) {
    if (!j.is_array()) throw parse_error(std::string(name) + ": expected an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) throw parse_error(std::string(name) + ": expected numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

json parse_root(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw parse_error("malformed JSON");
    if (!j.is_object()) throw parse_error("expected a JSON object");
    return j;
}

void require_valid(const ValidationReport& rep) {
    if (!rep.ok()) throw invalid_instance_error(rep.summary());
}

}  // namespace

Instance read_instance(const std::string& text) {
    json j = parse_root(text);
    if (!j.contains("distances")) throw parse_error("distances: missing");
    const json& dj = j["distances"];
    if (!dj.is_array()) throw parse_error("distances: expected an n x n array");
    const int n = static_cast<int>(dj.size());
    Instance inst;
    inst.metric = FiniteMetric(n);
    for (int i = 0; i < n; ++i) {
        auto row = parse_number_array(dj[i], "distances");
        if (static_cast<int>(row.size()) != n) throw parse_error("distances: ragged row");
        for (int k = 0; k < n; ++k) inst.metric.at(i, k) = row[k];
    }
    if (!j.contains("p")) throw parse_error("p: missing");
    inst.p = Distribution(parse_number_array(j["p"], "p"));
    inst.q = j.contains("q") ? Distribution(parse_number_array(j["q"], "q")) : inst.p;
    require_valid(validate(inst));
    return inst;
}

LineInstance read_line_instance(const std::string& text) {
    json j = parse_root(text);
    if (!j.contains("positions")) throw parse_error("positions: missing");
    LineInstance line;
    line.positions = parse_number_array(j["positions"], "positions");
    if (!j.contains("p")) throw parse_error("p: missing");
    line.p = Distribution(parse_number_array(j["p"], "p"));
    require_valid(validate(line));
    return line;
}

std::string write_instance(const Instance& inst) {
    json j;
    j["distances"] = json::array();
    for (int i = 0; i < inst.n(); ++i) {
        json row = json::array();
        for (int k = 0; k < inst.n(); ++k) row.push_back(inst.metric(i, k));
        j["distances"].push_back(std::move(row));
    }
    j["p"] = inst.p.probs;
    j["q"] = inst.q.probs;
    return j.dump();
}

std::string write_line_instance(const LineInstance& line) {
    json j;
    j["positions"] = line.positions;
    j["p"] = line.p.probs;
    return j.dump();
}

ParsedDocument read_any(const std::string& text) {
    json j = parse_root(text);
    ParsedDocument doc;
    if (j.contains("positions")) {
        doc.is_line = true;
        doc.line = read_line_instance(text);
        doc.instance = line_to_instance(doc.line);
    } else {
        doc.instance = read_instance(text);
    }
    return doc;
}

}  // namespace distortion
