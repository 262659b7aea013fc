// Command-line front end; talks to the shared library through the C API only.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "distortion_lab.h"

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitBadInput = 2;

int exit_code(dl_status st) {
    if (st == DL_OK) return 0;
    if (st == DL_ERR_VIOLATION) return kExitViolation;
    return kExitBadInput;
}

std::string read_stream(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_stream(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << text;
}

struct OwnedString {
    char* s = nullptr;
    ~OwnedString() { dl_string_free(s); }
    std::string str() const { return s ? s : ""; }
};

struct OwnedInstance {
    dl_instance* h = nullptr;
    ~OwnedInstance() { dl_instance_free(h); }
};

int fail(dl_status st) {
    std::cerr << "error: " << dl_strerror(st) << ": " << dl_last_error() << "\n";
    return exit_code(st);
}

int load_instance(const std::string& path, OwnedInstance& inst) {
    const dl_status st = dl_instance_from_json(read_stream(path).c_str(), &inst.h);
    return st == DL_OK ? 0 : fail(st);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"expected-distortion toolbox for two-candidate elections on finite metrics"};
    app.require_subcommand(1);

    std::string family = "example2", in_path, out_path, trace_path, space = "line_pq_equal";
    std::string params_csv = "1e-2,1e-3,1e-4";
    double eps = 1e-4;
    int n = 2;
    std::uint64_t seed = 0, mc_samples = 0;
    int restarts = 8, steps = 5000;
    bool perturb = false;

    auto* gen = app.add_subcommand("gen", "write a named family instance as JSON");
    gen->add_option("--family", family,
                    "example1 | example2 | simplex | diff_dist | random_line | random_metric");
    gen->add_option("--eps", eps, "family parameter");
    gen->add_option("--n", n, "point count (simplex / random families)");
    gen->add_option("--seed", seed, "seed (random families)");
    gen->add_option("--out", out_path, "output path (default stdout)");

    auto* eval = app.add_subcommand("eval", "expected distortion of an instance");
    eval->add_option("--in", in_path, "instance JSON (default stdin)");
    eval->add_option("--mc", mc_samples, "also Monte Carlo with this many samples");
    eval->add_option("--seed", seed, "Monte Carlo seed");

    auto* reduce = app.add_subcommand("reduce", "shrink a line instance to support <= 3");
    reduce->add_option("--in", in_path, "line instance JSON (default stdin)");
    reduce->add_flag("--perturb", perturb, "nudge masses off an exact half-mass median");
    reduce->add_option("--out", out_path, "output path (default stdout)");

    auto* search = app.add_subcommand("search", "anneal for high-distortion instances");
    search->add_option("--space", space, "line_pq_equal | metric_pq_equal | metric_pq_free");
    search->add_option("--n", n, "support size")->default_val(6);
    search->add_option("--restarts", restarts, "independent restarts");
    search->add_option("--steps", steps, "steps per restart");
    search->add_option("--seed", seed, "seed");
    search->add_option("--out", out_path, "write the best instance JSON here");
    search->add_option("--trace", trace_path, "write improvement events as JSON lines");

    auto* verify = app.add_subcommand("verify", "check every applicable proven inequality");
    verify->add_option("--in", in_path, "instance JSON (default stdin)");

    auto* sweep = app.add_subcommand("sweep", "evaluate a family over a parameter grid (CSV)");
    sweep->add_option("--family", family, "family name");
    sweep->add_option("--n", n, "point count where applicable");
    sweep->add_option("--params", params_csv, "comma-separated eps values");
    sweep->add_option("--out", out_path, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            OwnedInstance inst;
            dl_status st = dl_instance_gen(family.c_str(), eps, n, seed, &inst.h);
            if (st != DL_OK) return fail(st);
            OwnedString text;
            st = dl_instance_to_json(inst.h, &text.s);
            if (st != DL_OK) return fail(st);
            write_stream(out_path, text.str() + "\n");
            return 0;
        }
        if (eval->parsed()) {
            OwnedInstance inst;
            if (int rc = load_instance(in_path, inst)) return rc;
            OwnedString report;
            const dl_status st = dl_eval(inst.h, mc_samples, seed, &report.s);
            if (st != DL_OK) return fail(st);
            std::cout << report.str() << "\n";
            return 0;
        }
        if (reduce->parsed()) {
            OwnedInstance inst;
            if (int rc = load_instance(in_path, inst)) return rc;
            OwnedString result;
            const dl_status st = dl_reduce(inst.h, perturb ? 1 : 0, &result.s);
            if (st != DL_OK) return fail(st);
            write_stream(out_path, result.str() + "\n");
            return 0;
        }
        if (search->parsed()) {
            const nlohmann::json cfg = {{"space", space},   {"n", n},
                                        {"restarts", restarts}, {"steps", steps},
                                        {"seed", seed},     {"trace", !trace_path.empty()}};
            OwnedString result;
            const dl_status st = dl_search(cfg.dump().c_str(), &result.s);
            if (st != DL_OK) return fail(st);
            const nlohmann::json res = nlohmann::json::parse(result.str());
            if (!out_path.empty()) write_stream(out_path, res["best_instance"].dump() + "\n");
            if (!trace_path.empty()) {
                std::string lines;
                for (const auto& ev : res["trace"]) lines += ev.dump() + "\n";
                write_stream(trace_path, lines);
            }
            std::cout << "space " << res["space"].get<std::string>() << "\n"
                      << "best_value " << res["best_value"].get<double>() << "\n"
                      << "upper_bound " << res["upper_bound"].get<double>() << "\n";
            if (res.contains("conjectured"))
                std::cout << "conjectured_supremum " << res["conjectured"].get<double>()
                          << " (gap to the proven bound is open)\n";
            std::cout << "evaluations " << res["evaluations"].get<std::uint64_t>() << "\n";
            return 0;
        }
        if (verify->parsed()) {
            OwnedInstance inst;
            if (int rc = load_instance(in_path, inst)) return rc;
            OwnedString report;
            const dl_status st = dl_verify(inst.h, &report.s);
            if (report.s) std::cout << report.str() << "\n";
            if (st != DL_OK && st != DL_ERR_VIOLATION) return fail(st);
            return exit_code(st);
        }
        if (sweep->parsed()) {
            std::vector<double> values;
            std::stringstream ss(params_csv);
            std::string tok;
            while (std::getline(ss, tok, ',')) values.push_back(std::stod(tok));
            OwnedString csv;
            const dl_status st = dl_sweep(family.c_str(), n, values.data(),
                                          static_cast<int>(values.size()), &csv.s);
            if (st != DL_OK) return fail(st);
            write_stream(out_path, csv.str());
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitBadInput;
}
