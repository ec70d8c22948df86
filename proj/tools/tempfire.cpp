#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "tempfire/cubic.hpp"
#include "tempfire/engine.hpp"
#include "tempfire/fptdp.hpp"
#include "tempfire/instances.hpp"
#include "tempfire/oracle.hpp"
#include "tempfire/tgraph.hpp"

namespace {

using nlohmann::json;
using namespace tempfire;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitNo = 3;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << content;
}

json fingerprint(const RootedInstance& inst) {
    return json{{"n", inst.graph.vertex_count()},
                {"lambda", inst.graph.lifetime()},
                {"omega", vim_sequence(inst.graph).width}};
}

std::string pick_algo(const std::string& requested, const RootedInstance& inst, int guard_n,
                      int guard_width) {
    if (requested != "auto") return requested;
    if (cubic_applicable(inst)) return "cubic";
    if (vim_sequence(inst.graph).width <= guard_width) return "fpt";
    if (inst.graph.vertex_count() <= guard_n) return "brute";
    throw GuardExceeded("no solver fits: width over " + std::to_string(guard_width) +
                        " and n over " + std::to_string(guard_n));
}

int run_solve(const std::string& input, const std::string& algo_flag, bool no_prune,
              const std::string& emit_strategy, const std::string& trace_path, int guard_n,
              int guard_width, bool decide_mode, int k) {
    RootedInstance inst = load_instance_file(input);
    std::string algo = pick_algo(algo_flag, inst, guard_n, guard_width);

    Timer timer;
    json report;
    int max_saved = 0;
    std::string witness_text;

    if (algo == "brute") {
        OracleOptions opt;
        opt.max_n = guard_n;
        OracleResult r = solve_temporal(inst, opt);
        max_saved = r.max_saved;
        witness_text = format_strategy(r.witness);
        report["states_explored"] = r.states_explored;
    } else if (algo == "fpt") {
        FptOptions opt;
        opt.dominance_prune = !no_prune;
        opt.max_width = guard_width;
        opt.keep_layers = !trace_path.empty();
        FptResult r = solve_fpt(inst, opt);
        max_saved = r.max_saved;
        witness_text = format_reserve_strategy(r.witness);
        report["layer_entries"] = r.total_entries;
        if (!trace_path.empty()) write_output(trace_path, dump_layer_trace(r.layers));
    } else if (algo == "cubic") {
        CubicOptions opt;
        opt.fpt_max_width = guard_width;
        CubicResult r = solve_cubic(inst, opt);
        max_saved = r.max_saved;
        witness_text = format_strategy(r.witness);
        report["fallback"] = r.used_fallback;
        if (!r.fallback_reason.empty()) report["fallback_reason"] = r.fallback_reason;
    } else {
        throw Error("unknown algorithm \"" + algo + "\"");
    }

    report["algorithm"] = algo;
    report["max_saved"] = max_saved;
    report["witness"] = witness_text;
    report["wall_time_s"] = timer.seconds();
    report["instance"] = fingerprint(inst);
    if (decide_mode) {
        report["k"] = k;
        report["decision"] = max_saved >= k;
    }
    if (!emit_strategy.empty()) write_output(emit_strategy, witness_text);
    std::cout << report.dump() << "\n";
    if (decide_mode && max_saved < k) return kExitNo;
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tempfire: exact solvers and instance tools for firefighting on temporal graphs"};
    app.require_subcommand(1);

    std::string input, algo = "auto", strategy_path, emit_strategy, out_path, trace_path;
    std::string kind = "gnp", mode = "surrogate";
    int k = 0, c = 1, n = 8, omega = 4;
    int guard_n = 20, guard_width = 10;
    Timestep lambda = 5;
    double p = 0.4, label_prob = 0.4;
    std::uint64_t seed = 1;
    bool no_prune = false, reserve = false, as_json = false, force = false;

    auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("--input", input, "instance file (text or JSON)")->required();
    };
    auto add_guards = [&](CLI::App* cmd) {
        cmd->add_option("--guard-n", guard_n, "brute-force vertex guard");
        cmd->add_option("--guard-width", guard_width, "FPT width guard");
    };

    CLI::App* solve = app.add_subcommand("solve", "maximum savable vertices");
    add_input(solve);
    solve->add_option("--algo", algo)->check(CLI::IsMember({"auto", "brute", "fpt", "cubic"}));
    solve->add_option("--emit-strategy", emit_strategy, "write the witness strategy to a file");
    solve->add_option("--trace", trace_path, "write the FPT layer trace (JSON lines)");
    solve->add_flag("--no-prune", no_prune, "disable FPT dominance pruning");
    add_guards(solve);

    CLI::App* decide = app.add_subcommand("decide", "can k vertices be saved? exit 0 yes, 3 no");
    add_input(decide);
    decide->add_option("--k", k)->required();
    decide->add_option("--algo", algo)->check(CLI::IsMember({"auto", "brute", "fpt", "cubic"}));
    decide->add_flag("--no-prune", no_prune);
    add_guards(decide);

    CLI::App* simulate_cmd = app.add_subcommand("simulate", "replay a strategy file");
    add_input(simulate_cmd);
    simulate_cmd->add_option("--strategy", strategy_path, "strategy file")->required();
    simulate_cmd->add_flag("--reserve", reserve, "interpret as a reserve strategy");

    CLI::App* vimw = app.add_subcommand("vimw", "vertex interval membership sequence");
    add_input(vimw);

    CLI::App* classify_cmd = app.add_subcommand("classify", "degree-3 vertex classification");
    add_input(classify_cmd);
    classify_cmd->add_flag("--force", force, "report the built strategy even if assertions fail");
    add_guards(classify_cmd);

    CLI::App* reduce = app.add_subcommand("reduce", "static-to-temporal reductions");
    add_input(reduce);
    reduce->add_option("--mode", mode)->check(CLI::IsMember({"surrogate", "clique"}));
    reduce->add_option("--c", c, "clique reduction exponent");
    reduce->add_option("--out", out_path, "output file (default stdout)");
    reduce->add_flag("--json", as_json, "emit JSON instead of text");

    CLI::App* gen = app.add_subcommand("gen", "instance generators");
    gen->add_option("--kind", kind)->check(CLI::IsMember({"gnp", "subcubic", "lowvimw"}));
    gen->add_option("--n", n, "vertex count");
    gen->add_option("--lambda", lambda, "lifetime");
    gen->add_option("--p", p, "edge probability (gnp)");
    gen->add_option("--label-prob", label_prob, "per-timestep label probability (gnp)");
    gen->add_option("--omega", omega, "width target (lowvimw)");
    gen->add_option("--seed", seed);
    gen->add_option("--out", out_path, "output file (default stdout)");
    gen->add_flag("--json", as_json, "emit JSON instead of text");

    CLI::App* trace = app.add_subcommand("trace", "dump the FPT layers as JSON lines");
    add_input(trace);
    trace->add_option("--trace", trace_path, "output file (default stdout)");
    trace->add_flag("--no-prune", no_prune);
    add_guards(trace);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (solve->parsed())
            return run_solve(input, algo, no_prune, emit_strategy, trace_path, guard_n,
                             guard_width, false, 0);
        if (decide->parsed())
            return run_solve(input, algo, no_prune, "", "", guard_n, guard_width, true, k);

        if (simulate_cmd->parsed()) {
            RootedInstance inst = load_instance_file(input);
            SimOutcome o = reserve
                               ? simulate_reserve(inst, parse_reserve_strategy(read_file(strategy_path)))
                               : simulate(inst, parse_strategy(read_file(strategy_path)));
            std::cout << outcome_to_json(o) << "\n";
            return kExitOk;
        }

        if (vimw->parsed()) {
            RootedInstance inst = load_instance_file(input);
            VimSequence v = vim_sequence(inst.graph);
            json rep{{"omega", v.width}, {"F", v.F}};
            std::cout << rep.dump() << "\n";
            return kExitOk;
        }

        if (classify_cmd->parsed()) {
            RootedInstance inst = load_instance_file(input);
            CubicClassification cls = classify(inst);
            json verts = json::array();
            static const char* names[] = {"V0", "V1", "Vc", "none"};
            for (Vertex v = 0; v < static_cast<Vertex>(cls.info.size()); ++v) {
                const auto& rec = cls.info[v];
                json rv{{"v", v}, {"class", names[static_cast<int>(rec.cls)]}, {"dist", rec.dist}};
                if (rec.cls == CubicClass::Vc) rv["cycle"] = rec.cycle_len;
                if (rec.cls != CubicClass::None) rv["f"] = rec.score;
                verts.push_back(rv);
            }
            CubicOptions copt;
            copt.force = force;
            copt.fpt_max_width = guard_width;
            CubicResult r = solve_cubic(inst, copt);
            json rep{{"vertices", verts},
                     {"chosen", r.chosen},
                     {"min_f", r.min_score},
                     {"max_saved", r.max_saved},
                     {"fallback", r.used_fallback}};
            if (!r.fallback_reason.empty()) rep["diagnostic"] = r.fallback_reason;
            rep["witness"] = format_strategy(r.witness);
            rep["instance"] = fingerprint(inst);
            std::cout << rep.dump() << "\n";
            return kExitOk;
        }

        if (reduce->parsed()) {
            RootedInstance inst = load_instance_file(input);
            StaticGraph g = underlying(inst.graph);
            RootedInstance out =
                mode == "clique" ? clique_reduction(g, inst.root, c) : static_to_temporal(g, inst.root);
            write_output(out_path, as_json ? dump_instance_json(out) : dump_instance_text(out));
            return kExitOk;
        }

        if (gen->parsed()) {
            RootedInstance inst = kind == "gnp" ? gen_random(n, p, lambda, label_prob, seed)
                                  : kind == "subcubic" ? gen_subcubic(n, lambda, seed)
                                                       : gen_low_vimw(n, lambda, omega, seed);
            write_output(out_path, as_json ? dump_instance_json(inst) : dump_instance_text(inst));
            return kExitOk;
        }

        if (trace->parsed()) {
            RootedInstance inst = load_instance_file(input);
            FptOptions opt;
            opt.dominance_prune = !no_prune;
            opt.max_width = guard_width;
            opt.keep_layers = true;
            FptResult r = solve_fpt(inst, opt);
            write_output(trace_path, dump_layer_trace(r.layers));
            return kExitOk;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitUsage;
}
