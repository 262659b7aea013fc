// Exercises the shared-library surface exactly as an external client would:
// only distortion_lab.h, no C++ internals.
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "distortion_lab.h"

namespace {

struct Str {
    char* s = nullptr;
    ~Str() { dl_string_free(s); }
    std::string get() const { return s ? s : ""; }
};

struct Inst {
    dl_instance* h = nullptr;
    ~Inst() { dl_instance_free(h); }
};

double field(const std::string& json, const std::string& key) {
    const size_t at = json.find("\"" + key + "\":");
    REQUIRE(at != std::string::npos);
    return std::strtod(json.c_str() + at + key.size() + 3, nullptr);
}

}  // namespace

TEST_CASE("status strings exist for every code") {
    for (int c = DL_OK; c <= DL_ERR_INTERNAL; ++c)
        CHECK(std::strlen(dl_strerror(static_cast<dl_status>(c))) > 0);
}

TEST_CASE("parse, serialize, evaluate through the C surface") {
    Inst inst;
    REQUIRE(dl_instance_from_json(R"({"positions":[-1,0.0001,1],
        "p":[0.4999,0.2928932188134524,0.2072067811865476]})", &inst.h) == DL_OK);
    Str text;
    REQUIRE(dl_instance_to_json(inst.h, &text.s) == DL_OK);
    CHECK(text.get().find("positions") != std::string::npos);
    Str report;
    REQUIRE(dl_eval(inst.h, 0, 0, &report.s) == DL_OK);
    CHECK(std::fabs(field(report.get(), "expected") - (4.0 - 2.0 * std::sqrt(2.0))) < 1e-3);
}

TEST_CASE("error paths: parse, invalid, domain") {
    dl_instance* h = nullptr;
    CHECK(dl_instance_from_json("not json", &h) == DL_ERR_PARSE);
    CHECK(h == nullptr);
    CHECK(std::strlen(dl_last_error()) > 0);
    CHECK(dl_instance_from_json(R"({"distances":[[0,1],[2,0]],"p":[0.5,0.5]})", &h) ==
          DL_ERR_INVALID);
    CHECK(h == nullptr);
    CHECK(dl_instance_gen("no_such_family", 0.01, 3, 0, &h) == DL_ERR_DOMAIN);
    CHECK(dl_instance_gen("example1", 0.5, 3, 0, &h) == DL_ERR_DOMAIN);
    CHECK(dl_instance_from_json(nullptr, &h) == DL_ERR_DOMAIN);
}

TEST_CASE("generation and monte carlo through the C surface") {
    Inst inst;
    REQUIRE(dl_instance_gen("diff_dist", 1e-4, 0, 0, &inst.h) == DL_OK);
    Str report;
    REQUIRE(dl_eval(inst.h, 100000, 7, &report.s) == DL_OK);
    CHECK(std::fabs(field(report.get(), "expected") - 2.0) < 1e-3);
    CHECK(report.get().find("monte_carlo") != std::string::npos);
}

TEST_CASE("reduce through the C surface") {
    Inst inst;
    REQUIRE(dl_instance_gen("random_line", 0.0, 9, 42, &inst.h) == DL_OK);
    Str out;
    REQUIRE(dl_reduce(inst.h, 0, &out.s) == DL_OK);
    CHECK(out.get().find("\"trace\"") != std::string::npos);
    CHECK(out.get().find("\"positions\"") != std::string::npos);

    Inst metric;
    REQUIRE(dl_instance_gen("random_metric", 0.0, 5, 1, &metric.h) == DL_OK);
    Str none;
    CHECK(dl_reduce(metric.h, 0, &none.s) == DL_ERR_DOMAIN);
}

TEST_CASE("reduce with a degenerate median needs the perturb flag") {
    Inst inst;
    REQUIRE(dl_instance_from_json(R"({"positions":[0,0.25,0.75,1],"p":[0.25,0.25,0.25,0.25]})",
                                  &inst.h) == DL_OK);
    Str out;
    CHECK(dl_reduce(inst.h, 0, &out.s) == DL_ERR_DOMAIN);
    Str fixed;
    CHECK(dl_reduce(inst.h, 1, &fixed.s) == DL_OK);
}

TEST_CASE("verify through the C surface") {
    Inst inst;
    REQUIRE(dl_instance_gen("simplex", 1e-3, 20, 0, &inst.h) == DL_OK);
    Str report;
    CHECK(dl_verify(inst.h, &report.s) == DL_OK);
    CHECK(report.get().find("\"ok\":true") != std::string::npos);
}

TEST_CASE("search through the C surface is deterministic") {
    const char* cfg = R"({"space":"metric_pq_free","n":4,"restarts":4,"steps":800,"seed":5})";
    Str a, b;
    REQUIRE(dl_search(cfg, &a.s) == DL_OK);
    REQUIRE(dl_search(cfg, &b.s) == DL_OK);
    CHECK(a.get() == b.get());
    CHECK(field(a.get(), "best_value") <= 2.0 + 1e-9);
    CHECK(field(a.get(), "upper_bound") == 2.0);
}

TEST_CASE("sweep emits the CSV contract") {
    const double eps[] = {1e-2, 1e-3, 1e-4};
    Str csv;
    REQUIRE(dl_sweep("example2", 0, eps, 3, &csv.s) == DL_OK);
    const std::string text = csv.get();
    CHECK(text.rfind("param,expected,max_pairwise\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}
