#include "distortion_lab.h"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <string>

#include "json.hpp"

#include "distortion/bounds.hpp"
#include "distortion/election.hpp"
#include "distortion/generators.hpp"
#include "distortion/line.hpp"
#include "distortion/search.hpp"
#include "distortion/types.hpp"

using nlohmann::json;
using namespace distortion;

struct dl_instance {
    ParsedDocument doc;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

struct violation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <typename F>
dl_status guarded(F&& f) {
    try {
        f();
        return DL_OK;
    } catch (const parse_error& e) {
        g_last_error = e.what();
        return DL_ERR_PARSE;
    } catch (const json::exception& e) {
        g_last_error = e.what();
        return DL_ERR_PARSE;
    } catch (const invalid_instance_error& e) {
        g_last_error = e.what();
        return DL_ERR_INVALID;
    } catch (const violation_error& e) {
        g_last_error = e.what();
        return DL_ERR_VIOLATION;
    } catch (const degenerate_median_error& e) {
        g_last_error = e.what();
        return DL_ERR_DOMAIN;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return DL_ERR_DOMAIN;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return DL_ERR_INTERNAL;
    }
}

json instance_json(const ParsedDocument& doc) {
    return json::parse(doc.is_line ? write_line_instance(doc.line) : write_instance(doc.instance));
}

json report_json(const VerifyReport& rep) {
    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"name", c.name},
                          {"lhs", c.lhs},
                          {"rhs", c.rhs},
                          {"pass", c.pass},
                          {"slack", c.slack()}});
    return {{"ok", rep.ok()}, {"checks", checks}};
}

}  // namespace

extern "C" {

const char* dl_strerror(dl_status status) {
    switch (status) {
        case DL_OK: return "ok";
        case DL_ERR_PARSE: return "parse error";
        case DL_ERR_INVALID: return "instance failed validation";
        case DL_ERR_DOMAIN: return "argument outside domain";
        case DL_ERR_VIOLATION: return "proven inequality violated";
        case DL_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* dl_last_error(void) { return g_last_error.c_str(); }

void dl_string_free(char* s) { delete[] s; }

void dl_instance_free(dl_instance* inst) { delete inst; }

dl_status dl_instance_from_json(const char* text, dl_instance** out) {
    if (!text || !out) {
        g_last_error = "null argument";
        return DL_ERR_DOMAIN;
    }
    *out = nullptr;
    dl_status invalid = DL_OK;
    const dl_status st = guarded([&] {
        auto handle = std::make_unique<dl_instance>();
        handle->doc = read_any(text);
        const ValidationReport rep = handle->doc.is_line ? validate(handle->doc.line)
                                                         : validate(handle->doc.instance);
        if (!rep.ok()) {
            g_last_error = rep.summary();
            invalid = DL_ERR_INVALID;
            return;
        }
        *out = handle.release();
    });
    return st != DL_OK ? st : invalid;
}

dl_status dl_instance_gen(const char* family, double eps, int n, uint64_t seed,
                          dl_instance** out) {
    if (!family || !out) {
        g_last_error = "null argument";
        return DL_ERR_DOMAIN;
    }
    *out = nullptr;
    return guarded([&] {
        auto handle = std::make_unique<dl_instance>();
        const std::string f = family;
        if (f == "example1") {
            handle->doc.instance = gen_example1(eps);
        } else if (f == "example2") {
            handle->doc.is_line = true;
            handle->doc.line = gen_example2_line_iid(eps);
            handle->doc.instance = line_to_instance(handle->doc.line);
        } else if (f == "simplex") {
            handle->doc.instance = gen_simplex_metric(n, eps);
        } else if (f == "diff_dist") {
            handle->doc.instance = gen_diff_dist(eps);
        } else if (f == "random_line") {
            handle->doc.is_line = true;
            handle->doc.line = random_line_instance(n, seed);
            handle->doc.instance = line_to_instance(handle->doc.line);
        } else if (f == "random_metric") {
            handle->doc.instance = random_metric_instance(n, seed);
        } else {
            throw std::invalid_argument("unknown family: " + f);
        }
        *out = handle.release();
    });
}

dl_status dl_instance_to_json(const dl_instance* inst, char** out_json) {
    if (!inst || !out_json) {
        g_last_error = "null argument";
        return DL_ERR_DOMAIN;
    }
    return guarded([&] {
        *out_json = dup_string(inst->doc.is_line ? write_line_instance(inst->doc.line)
                                                 : write_instance(inst->doc.instance));
    });
}

dl_status dl_eval(const dl_instance* inst, uint64_t mc_samples, uint64_t mc_seed,
                  char** report_json_out) {
    if (!inst || !report_json_out) {
        g_last_error = "null argument";
        return DL_ERR_DOMAIN;
    }
    return guarded([&] {
        const DistortionReport rep = expected_distortion(inst->doc.instance);
        json out = {{"costs", rep.costs},
                    {"expected", rep.expected},
                    {"max_pairwise", rep.max_pairwise},
                    {"infinite", rep.infinite}};
        if (mc_samples > 0) {
            const MonteCarloEstimate mc =
                monte_carlo_distortion(inst->doc.instance, mc_samples, mc_seed);
            out["monte_carlo"] = {{"estimate", mc.estimate},
                                  {"std_error", mc.std_error},
                                  {"samples", mc.samples}};
        }
        *report_json_out = dup_string(out.dump());
    });
}

dl_status dl_reduce(const dl_instance* inst, int perturb, char** out_json) {
    if (!inst || !out_json) {
        g_last_error = "null argument";
        return DL_ERR_DOMAIN;
    }
    if (!inst->doc.is_line) {
        g_last_error = "reduce requires a line instance";
        return DL_ERR_DOMAIN;
    }
    return guarded([&] {
        LineInstance line = inst->doc.line;
        ReductionResult red;
        try {
            red = reduce_to_three(line);
        } catch (const degenerate_median_error&) {
            if (!perturb) throw;
            // break the exact half-mass tie, renormalize
            const double nudge = 1e-12;
            line.p.probs.front() += nudge;
            double total = 0.0;
            for (double v : line.p.probs) total += v;
            for (double& v : line.p.probs) v /= total;
            red = reduce_to_three(line);
        }
        json trace = json::array();
        for (const auto& step : red.trace)
            trace.push_back({{"lemma", step.lemma},
                             {"support", step.support},
                             {"distortion", step.distortion}});
        const json out = {{"instance", json::parse(write_line_instance(red.instance))},
                          {"trace", trace}};
        *out_json = dup_string(out.dump());
    });
}

dl_status dl_verify(const dl_instance* inst, char** report_json_out) {
    if (!inst || !report_json_out) {
        g_last_error = "null argument";
        return DL_ERR_DOMAIN;
    }
    return guarded([&] {
        const VerifyReport rep = verify_instance(inst->doc.instance,
                                                 inst->doc.is_line ? &inst->doc.line : nullptr);
        *report_json_out = dup_string(report_json(rep).dump());
        if (!rep.ok()) throw violation_error("verify: a proven inequality failed");
    });
}

dl_status dl_search(const char* config_json, char** result_json) {
    if (!config_json || !result_json) {
        g_last_error = "null argument";
        return DL_ERR_DOMAIN;
    }
    return guarded([&] {
        const json cfg_in = json::parse(config_json);
        SearchConfig cfg;
        cfg.space = parse_space(cfg_in.at("space").get<std::string>());
        cfg.n = cfg_in.value("n", cfg.n);
        cfg.restarts = cfg_in.value("restarts", cfg.restarts);
        cfg.steps_per_restart = cfg_in.value("steps", cfg.steps_per_restart);
        cfg.seed = cfg_in.value("seed", cfg.seed);
        cfg.init_temp = cfg_in.value("init_temp", cfg.init_temp);
        cfg.cooling = cfg_in.value("cooling", cfg.cooling);
        cfg.record_trace = cfg_in.value("trace", false);

        const SearchResult res = search(cfg);
        json out = {{"space", space_name(cfg.space)},
                    {"best_value", res.best_value},
                    {"per_restart_bests", res.per_restart_bests},
                    {"evaluations", res.evaluations}};
        out["best_instance"] = json::parse(
            res.is_line ? write_line_instance(res.best_line) : write_instance(res.best_instance));
        json trace = json::array();
        for (const std::string& t : res.trace) trace.push_back(json::parse(t));
        out["trace"] = trace;
        switch (cfg.space) {
            case SearchSpace::line_pq_equal:
                out["upper_bound"] = 4.0 - 2.0 * std::sqrt(2.0);
                break;
            case SearchSpace::metric_pq_equal:
                out["upper_bound"] = 2.0 - 1.0 / 652.0;
                out["conjectured"] = 1.5;  // best known lower bound; the gap is open
                break;
            case SearchSpace::metric_pq_free:
                out["upper_bound"] = 2.0;
                break;
        }
        *result_json = dup_string(out.dump());
    });
}

dl_status dl_sweep(const char* family, int n, const double* eps_values, int count,
                   char** csv_out) {
    if (!family || !eps_values || !csv_out || count < 1) {
        g_last_error = "null argument";
        return DL_ERR_DOMAIN;
    }
    return guarded([&] {
        std::string csv = "param,expected,max_pairwise\n";
        for (int k = 0; k < count; ++k) {
            dl_instance* handle = nullptr;
            const dl_status st = dl_instance_gen(family, eps_values[k], n, 0, &handle);
            if (st != DL_OK) throw std::invalid_argument(g_last_error);
            const DistortionReport rep = expected_distortion(handle->doc.instance);
            dl_instance_free(handle);
            char buf[128];
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", eps_values[k], rep.expected,
                          rep.max_pairwise);
            csv += buf;
        }
        *csv_out = dup_string(csv);
    });
}

}  // extern "C"
