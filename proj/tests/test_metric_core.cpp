#include "doctest.h"

#include "distortion/rng.hpp"
#include "distortion/types.hpp"

using namespace distortion;

namespace {

FiniteMetric table3(double d01, double d02, double d12) {
    FiniteMetric m(3);
    m.at(0, 1) = m.at(1, 0) = d01;
    m.at(0, 2) = m.at(2, 0) = d02;
    m.at(1, 2) = m.at(2, 1) = d12;
    return m;
}

}  // namespace

TEST_CASE("singleton instance validates") {
    Instance inst;
    inst.metric = FiniteMetric(1);
    inst.p = Distribution({1.0});
    inst.q = inst.p;
    CHECK(validate(inst).ok());
}

TEST_CASE("asymmetry is reported") {
    Instance inst;
    inst.metric = FiniteMetric(2);
    inst.metric.at(0, 1) = 2.0;
    inst.metric.at(1, 0) = 1.0;
    inst.p = Distribution({0.5, 0.5});
    inst.q = inst.p;
    const ValidationReport rep = validate(inst);
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.summary().find("asymmetry") != std::string::npos);
}

TEST_CASE("triangle violation is reported") {
    Instance inst;
    inst.metric = table3(1.0, 3.0, 1.0);
    inst.p = Distribution({0.4, 0.3, 0.3});
    inst.q = inst.p;
    const ValidationReport rep = validate(inst);
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.summary().find("triangle") != std::string::npos);
}

TEST_CASE("bad probability sum names the field") {
    CHECK_THROWS_AS(
        (void)read_instance(R"({"distances":[[0,2],[2,0]],"p":[0.5,0.4],"q":[0.5,0.5]})"),
        invalid_instance_error);
    try {
        (void)read_instance(R"({"distances":[[0,2],[2,0]],"p":[0.5,0.4],"q":[0.5,0.5]})");
    } catch (const invalid_instance_error& e) {
        CHECK(std::string(e.what()).find("p") != std::string::npos);
    }
}

TEST_CASE("metric_closure fixes a single long edge") {
    const FiniteMetric closed = metric_closure(table3(1.0, 3.0, 1.0));
    CHECK(closed(0, 1) == 1.0);
    CHECK(closed(0, 2) == 2.0);
    CHECK(closed(1, 2) == 1.0);
}

TEST_CASE("metric_closure: idempotent, dominated, exact triangle") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + rng.index(6);
        FiniteMetric table(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) table.at(i, j) = table.at(j, i) = 0.1 + rng.uniform();
        const FiniteMetric closed = metric_closure(table);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                CHECK(closed(i, j) <= table(i, j));
                CHECK(closed(i, j) == closed(j, i));
                // exhaustive triple check, zero tolerance
                for (int k = 0; k < n; ++k) CHECK(closed(i, j) <= closed(i, k) + closed(k, j));
            }
        const FiniteMetric twice = metric_closure(closed);
        CHECK(twice.dist == closed.dist);
    }
}

TEST_CASE("line_to_instance produces absolute differences") {
    LineInstance line{{0.0, 0.6, 1.0}, Distribution({0.45, 0.30, 0.25})};
    const Instance inst = line_to_instance(line);
    CHECK(inst.metric(0, 1) == doctest::Approx(0.6));
    CHECK(inst.metric(0, 2) == doctest::Approx(1.0));
    CHECK(inst.metric(1, 2) == doctest::Approx(0.4));
    CHECK(inst.p.probs == line.p.probs);
    CHECK(inst.q.probs == line.p.probs);
    CHECK(validate(inst).ok());
}

TEST_CASE("line_to_instance rejects non-increasing positions") {
    LineInstance bad{{0.0, 0.0, 1.0}, Distribution({0.4, 0.3, 0.3})};
    CHECK_THROWS(line_to_instance(bad));
}

TEST_CASE("JSON round trip is exact at 17 digits") {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + rng.index(6);
        FiniteMetric table(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) table.at(i, j) = table.at(j, i) = 0.1 + rng.uniform();
        Instance inst;
        inst.metric = metric_closure(table);
        inst.p = Distribution(rng.dirichlet(n));
        inst.q = Distribution(rng.dirichlet(n));
        const Instance back = read_instance(write_instance(inst));
        CHECK(back.metric.dist == inst.metric.dist);
        CHECK(back.p.probs == inst.p.probs);
        CHECK(back.q.probs == inst.q.probs);
    }
}

TEST_CASE("omitted q means q = p") {
    const Instance inst = read_instance(R"({"distances":[[0,2],[2,0]],"p":[0.25,0.75]})");
    CHECK(inst.q.probs == inst.p.probs);
}

TEST_CASE("read_any detects both schemas") {
    const ParsedDocument line = read_any(R"({"positions":[-1,0.5,1],"p":[0.4,0.3,0.3]})");
    CHECK(line.is_line);
    CHECK(line.line.positions.size() == 3);
    const ParsedDocument inst = read_any(R"({"distances":[[0,1],[1,0]],"p":[0.5,0.5]})");
    CHECK_FALSE(inst.is_line);
}

TEST_CASE("line instance JSON round trip") {
    LineInstance line{{-1.0, 1e-4, 1.0}, Distribution({0.4999, 0.2928932188134524, 0.2072067811865476})};
    const LineInstance back = read_line_instance(write_line_instance(line));
    CHECK(back.positions == line.positions);
    CHECK(back.p.probs == line.p.probs);
}
