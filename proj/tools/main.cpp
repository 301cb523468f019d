// Copyright (c) wrshapes contributors.
// SPDX-License-Identifier: Apache-2.0
//
// wrshapes: weakly-relational shape domains on the command line.
//   analyze  run the fixpoint analyzer on a toy-language program
//   op       apply a single domain operation to matrix files
//   search   look for a divergence witness for the close-interleaved widening
//
// Exit codes: 0 success, 1 input error, 2 leq answered false,
//             3 analysis hit the iteration cap, 4 search exhausted.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wrshapes/analyzer.hpp"
#include "wrshapes/io.hpp"
#include "wrshapes/widening.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace wrshapes;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitLeqFalse = 2;
constexpr int kExitUnstable = 3;
constexpr int kExitNoWitness = 4;

struct Options {
    std::string domain;  // empty: dbm for analyze/search, inferred for op
    std::string widening = "standard";
    bool second_arg_closed = true;
    bool close_interleave = false;
    std::string thresholds = "auto";
    bool thresholds_global = false;
    int delay = 0;
    int descend = 1;
    int iter_cap = 64;
    std::string output = "text";
    std::uint64_t seed = 1;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot read file: " + path);
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

WideningStrategy strategy_from(const Options& opt) {
    WideningStrategy s;
    s.kind = opt.widening == "syntactic" ? WideningStrategy::Kind::Syntactic
                                         : WideningStrategy::Kind::Standard;
    s.second_arg_closed = opt.second_arg_closed;
    s.close_interleave = opt.close_interleave;
    s.delay = opt.delay;
    return s;
}

json strategy_json(const Options& opt) {
    json j;
    j["widening"] = opt.widening;
    j["second_arg_closed"] = opt.second_arg_closed;
    j["close_interleave"] = opt.close_interleave;
    j["thresholds"] = opt.thresholds;
    j["delay"] = opt.delay;
    j["descend"] = opt.descend;
    j["iter_cap"] = opt.iter_cap;
    return j;
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

template <typename S>
int report_analysis(const lang::Program& program, const lang::Cfg& cfg,
                    const lang::AnalysisResultT<S>& result, const Options& opt,
                    const std::string& path) {
    auto point_constraints = [&](int v) { return pretty_constraints(result.invariants[v], program.vars); };
    auto point_empty = [&](int v) { return result.invariants[v].is_empty(); };
    auto point_stable = [&](int v) { return result.head_iterations[v] <= opt.iter_cap; };

    if (opt.output == "json") {
        json j;
        j["program"] = path;
        j["domain"] = opt.domain;
        j["strategy"] = strategy_json(opt);
        j["stabilized"] = result.stabilized;
        j["points"] = json::array();
        for (int v = 0; v < cfg.node_count; ++v) {
            json p;
            p["id"] = v;
            p["desc"] = cfg.node_desc[v];
            p["empty"] = point_empty(v);
            p["constraints"] = point_constraints(v);
            p["iterations"] = result.head_iterations[v];
            p["stabilized"] = point_stable(v);
            j["points"].push_back(std::move(p));
        }
        std::cout << j.dump(2) << "\n";
    } else if (opt.output == "csv") {
        std::cout << "point,desc,empty,constraints,iterations,stabilized\n";
        for (int v = 0; v < cfg.node_count; ++v) {
            auto cs = point_constraints(v);
            std::string joined;
            for (std::size_t i = 0; i < cs.size(); ++i) {
                if (i) {
                    joined += "; ";
                }
                joined += cs[i];
            }
            std::cout << v << ',' << csv_quote(cfg.node_desc[v]) << ',' << (point_empty(v) ? 1 : 0)
                      << ',' << csv_quote(joined) << ',' << result.head_iterations[v] << ','
                      << (point_stable(v) ? 1 : 0) << "\n";
        }
    } else {
        std::cout << "== analysis (domain " << opt.domain << ", widening " << opt.widening
                  << ") ==\n";
        for (int v = 0; v < cfg.node_count; ++v) {
            std::cout << "point " << v << " (" << cfg.node_desc[v] << ")";
            if (cfg.loop_head[v]) {
                std::cout << " [iterations " << result.head_iterations[v] << "]";
            }
            std::cout << ": ";
            if (point_empty(v)) {
                std::cout << "empty";
            } else {
                auto cs = point_constraints(v);
                if (cs.empty()) {
                    std::cout << "top";
                }
                for (std::size_t i = 0; i < cs.size(); ++i) {
                    std::cout << (i ? ", " : "") << cs[i];
                }
            }
            std::cout << "\n";
        }
        std::cout << "stabilized: " << (result.stabilized ? "true" : "false") << "\n";
    }
    return result.stabilized ? kExitOk : kExitUnstable;
}

int cmd_analyze(const std::string& path, const Options& opt_in) {
    Options opt = opt_in;
    if (opt.domain.empty()) {
        opt.domain = "dbm";
    }
    lang::Program program = lang::parse_program(read_file(path));
    lang::Cfg cfg = lang::build_cfg(program);

    lang::AnalyzerConfig config;
    config.domain = opt.domain == "oct" ? lang::DomainKind::Oct : lang::DomainKind::Dbm;
    config.strategy = strategy_from(opt);
    config.descend = opt.descend;
    config.iter_cap = opt.iter_cap;
    config.thresholds_global = opt.thresholds_global;
    if (opt.thresholds == "auto") {
        config.threshold_mode = lang::AnalyzerConfig::Thresholds::Auto;
    } else if (opt.thresholds == "none") {
        config.threshold_mode = lang::AnalyzerConfig::Thresholds::None;
    } else {
        config.threshold_mode = lang::AnalyzerConfig::Thresholds::Explicit;
        std::string text = read_file(opt.thresholds);
        if (config.domain == lang::DomainKind::Dbm) {
            config.explicit_thresholds = thresholds_from(parse_dbm_constraints(text));
        } else {
            config.explicit_thresholds = thresholds_from(
                parse_oct_constraints(text), static_cast<int>(program.vars.size()));
        }
    }

    if (config.domain == lang::DomainKind::Dbm) {
        return report_analysis(program, cfg, lang::analyze_dbm(program, cfg, config), opt, path);
    }
    return report_analysis(program, cfg, lang::analyze_oct(program, cfg, config), opt, path);
}

// ---------------------------------------------------------------------------
// op
// ---------------------------------------------------------------------------

Dbm as_dbm(const ParsedMatrix& m, const std::string& path) {
    if (!std::holds_alternative<Dbm>(m)) {
        throw std::invalid_argument(path + ": expected a dbm matrix");
    }
    return std::get<Dbm>(m);
}

OctMatrix as_oct(const ParsedMatrix& m, const std::string& path) {
    if (!std::holds_alternative<OctMatrix>(m)) {
        throw std::invalid_argument(path + ": expected an oct matrix");
    }
    return std::get<OctMatrix>(m);
}

void check_domain_flag(const Options& opt, bool got_oct, const std::string& path) {
    if (opt.domain.empty()) {
        return;  // infer from the file header
    }
    if (opt.domain == "dbm" && got_oct) {
        throw std::invalid_argument(path + ": oct matrix under --domain dbm");
    }
    if (opt.domain == "oct" && !got_oct) {
        throw std::invalid_argument(path + ": dbm matrix under --domain oct");
    }
}

template <typename S, typename M>
int op_widen(const S& s1, const M& m2raw, const Options& opt, int vars) {
    WideningStrategy strategy = strategy_from(opt);
    std::optional<ThresholdSet> thresholds;
    if (opt.thresholds == "auto") {
        if (!s1.is_empty()) {
            thresholds = harvest_thresholds(s1);
        }
    } else if (opt.thresholds != "none") {
        std::string text = read_file(opt.thresholds);
        if constexpr (std::is_same_v<M, Dbm>) {
            thresholds = thresholds_from(parse_dbm_constraints(text));
        } else {
            thresholds = thresholds_from(parse_oct_constraints(text), vars);
        }
    }

    if (strategy.kind == WideningStrategy::Kind::Syntactic) {
        // Purely per-entry, on the representations as given in the files.
        if (s1.is_empty()) {
            throw std::invalid_argument("widen: empty first argument in syntactic mode");
        }
        std::cout << to_text(widen_syntactic(s1.matrix(), m2raw));
        return kExitOk;
    }

    S result = [&] {
        if (opt.second_arg_closed) {
            S s2 = [&] {
                if constexpr (std::is_same_v<M, Dbm>) {
                    return close(m2raw);
                } else {
                    return strong_close(m2raw);
                }
            }();
            if (thresholds && !thresholds->empty()) {
                return widen_upto(s1, s2, *thresholds, strategy);
            }
            return widen_standard(s1, s2);
        }
        return widen_standard_rep(s1, m2raw);
    }();
    std::cout << to_text(result);
    return kExitOk;
}

int cmd_op(const std::string& name, const std::vector<std::string>& files, const Options& opt) {
    std::vector<ParsedMatrix> mats;
    for (const auto& f : files) {
        ParsedMatrix m = parse_matrix(read_file(f));
        check_domain_flag(opt, std::holds_alternative<OctMatrix>(m), f);
        mats.push_back(std::move(m));
    }
    auto need = [&](std::size_t n) {
        if (mats.size() != n) {
            throw std::invalid_argument("op " + name + ": expected " + std::to_string(n) +
                                        " matrix file(s)");
        }
    };
    auto same_kind = [&] {
        if (std::holds_alternative<Dbm>(mats[0]) != std::holds_alternative<Dbm>(mats[1])) {
            throw std::invalid_argument("op " + name + ": mixed dbm/oct arguments");
        }
    };

    if (name == "close") {
        need(1);
        std::cout << to_text(close(as_dbm(mats[0], files[0])));
        return kExitOk;
    }
    if (name == "strong-close") {
        need(1);
        std::cout << to_text(strong_close(as_oct(mats[0], files[0])));
        return kExitOk;
    }
    if (name == "reduce") {
        need(1);
        Shape s = close(as_dbm(mats[0], files[0]));
        std::cout << to_text(transitive_reduce(s));
        return kExitOk;
    }
    if (name == "strong-reduce") {
        need(1);
        OctShape s = strong_close(as_oct(mats[0], files[0]));
        std::cout << to_text(strong_reduce(s));
        return kExitOk;
    }
    if (name == "widen") {
        need(2);
        same_kind();
        if (std::holds_alternative<Dbm>(mats[0])) {
            Dbm m2 = as_dbm(mats[1], files[1]);
            return op_widen(close(as_dbm(mats[0], files[0])), m2, opt, m2.vars());
        }
        OctMatrix m2 = as_oct(mats[1], files[1]);
        return op_widen(strong_close(as_oct(mats[0], files[0])), m2, opt, m2.vars());
    }
    if (name == "join" || name == "meet" || name == "leq") {
        need(2);
        same_kind();
        if (std::holds_alternative<Dbm>(mats[0])) {
            Shape a = close(as_dbm(mats[0], files[0]));
            Shape b = close(as_dbm(mats[1], files[1]));
            if (name == "join") {
                std::cout << to_text(join(a, b));
            } else if (name == "meet") {
                std::cout << to_text(meet(a, b));
            } else {
                bool r = leq(a, b);
                std::cout << (r ? "true" : "false") << "\n";
                return r ? kExitOk : kExitLeqFalse;
            }
            return kExitOk;
        }
        OctShape a = strong_close(as_oct(mats[0], files[0]));
        OctShape b = strong_close(as_oct(mats[1], files[1]));
        if (name == "join") {
            std::cout << to_text(oct_join(a, b));
        } else if (name == "meet") {
            std::cout << to_text(oct_meet(a, b));
        } else {
            bool r = oct_leq(a, b);
            std::cout << (r ? "true" : "false") << "\n";
            return r ? kExitOk : kExitLeqFalse;
        }
        return kExitOk;
    }
    throw std::invalid_argument("unknown op: " + name);
}

// ---------------------------------------------------------------------------
// search
// ---------------------------------------------------------------------------

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::invalid_argument("cannot write file: " + path.string());
    }
    out << content;
}

int cmd_search(const Options& opt_in, int max_vars, long max_bound, int max_iters, int trials,
               const std::string& out_dir) {
    Options opt = opt_in;
    if (opt.domain.empty()) {
        opt.domain = "dbm";
    }
    SearchConfig cfg;
    cfg.mode = opt.domain == "oct" ? SearchConfig::Mode::Oct : SearchConfig::Mode::Dbm;
    cfg.max_vars = max_vars;
    cfg.max_bound = max_bound;
    cfg.max_iters = max_iters;
    cfg.max_trials = trials;
    cfg.seed = opt.seed;

    WitnessReport report = search_divergence(cfg);

    fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw std::invalid_argument("cannot create output directory: " + out_dir);
    }

    json manifest;
    manifest["mode"] = opt.domain;
    manifest["max_vars"] = max_vars;
    manifest["max_bound"] = max_bound;
    manifest["max_iters"] = max_iters;
    manifest["trials_run"] = report.trials;
    manifest["program_trials_run"] = report.program_trials;
    manifest["seed"] = opt.seed;
    manifest["found"] = report.found;
    manifest["sequence_witness"] = report.witness.has_value();
    manifest["program_witness"] = report.program_witness.has_value();
    manifest["files"] = json::array();

    if (report.found) {
        const DivergenceWitness& w = *report.witness;
        manifest["vars"] = w.vars;
        manifest["standard_changes"] = w.standard_changes;
        auto dump_sequence = [&](const auto& seq) {
            char name[32];
            for (std::size_t k = 0; k < seq.size(); ++k) {
                std::snprintf(name, sizeof name, k == 0 ? "x%03zu.mat" : "y%03zu.mat", k);
                write_file(dir / name, to_text(seq[k]));
                manifest["files"].push_back(name);
            }
        };
        if (w.oct) {
            dump_sequence(std::get<std::vector<OctMatrix>>(w.sequence));
        } else {
            dump_sequence(std::get<std::vector<Dbm>>(w.sequence));
        }
        write_file(dir / "trace_interleaved.csv", trace_csv(w.interleaved_trace));
        write_file(dir / "trace_standard.csv", trace_csv(w.standard_trace));
        manifest["files"].push_back("trace_interleaved.csv");
        manifest["files"].push_back("trace_standard.csv");
    }
    if (report.program_witness) {
        write_file(dir / "program_witness.toy", *report.program_witness);
        manifest["files"].push_back("program_witness.toy");
    }
    write_file(dir / "manifest.json", manifest.dump(2) + "\n");

    if (report.found) {
        std::cout << "witness found (" << (report.witness ? "sequence" : "")
                  << (report.witness && report.program_witness ? " and " : "")
                  << (report.program_witness ? "program" : "") << ") after " << report.trials
                  << " sequence and " << report.program_trials << " program trial(s); report in "
                  << out_dir << "\n";
        return kExitOk;
    }
    std::cout << "no witness within bounds after " << report.trials << " sequence and "
              << report.program_trials << " program trial(s)\n";
    return kExitNoWitness;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weakly-relational shape domains: DBMs and octagons with terminating widenings"};
    app.require_subcommand(1);

    Options opt;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--domain", opt.domain, "dbm or oct")
            ->check(CLI::IsMember({"dbm", "oct"}));
        cmd->add_option("--output", opt.output, "text, json or csv")
            ->check(CLI::IsMember({"text", "json", "csv"}));
        cmd->add_option("--seed", opt.seed, "seed for randomized behavior");
    };
    auto add_widening = [&](CLI::App* cmd) {
        cmd->add_option("--widening", opt.widening, "standard or syntactic")
            ->check(CLI::IsMember({"standard", "syntactic"}));
        cmd->add_option("--second-arg-closed", opt.second_arg_closed,
                        "use the closed second argument (default true)");
        cmd->add_flag("--close-interleave", opt.close_interleave,
                      "canonicalize each widening iterate (divergent with syntactic)");
        cmd->add_option("--thresholds", opt.thresholds, "auto, none, or a constraint file");
        cmd->add_option("--delay", opt.delay, "join instead of widen for the first N steps");
    };

    std::string program_file;
    CLI::App* analyze_cmd = app.add_subcommand("analyze", "analyze a toy-language program");
    analyze_cmd->add_option("file", program_file, "program file")->required();
    add_common(analyze_cmd);
    add_widening(analyze_cmd);
    analyze_cmd->add_option("--descend", opt.descend, "descending passes after stabilization");
    analyze_cmd->add_option("--iter-cap", opt.iter_cap, "iteration cap per loop head");
    analyze_cmd->add_flag("--thresholds-global", opt.thresholds_global,
                          "share harvested thresholds across all loop heads");

    std::string op_name;
    std::vector<std::string> op_files;
    CLI::App* op_cmd = app.add_subcommand("op", "apply one domain operation to matrix files");
    op_cmd->add_option("name", op_name,
                       "close|strong-close|reduce|strong-reduce|widen|join|meet|leq")
        ->required();
    op_cmd->add_option("files", op_files, "matrix files")->required();
    add_common(op_cmd);
    add_widening(op_cmd);
    op_cmd->get_option("--thresholds")->default_str("none");

    int max_vars = 3;
    long max_bound = 4;
    int max_iters = 32;
    int trials = 500;
    std::string out_dir = "witness";
    CLI::App* search_cmd = app.add_subcommand("search", "search for a divergence witness");
    add_common(search_cmd);
    search_cmd->add_option("--max-vars", max_vars, "maximum variable count");
    search_cmd->add_option("--max-bound", max_bound, "bound magnitude for initial shapes");
    search_cmd->add_option("--max-iters", max_iters, "steps a witness must keep growing");
    search_cmd->add_option("--trials", trials, "maximum number of trials");
    search_cmd->add_option("--out", out_dir, "output directory for the report");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze_cmd->parsed()) {
            return cmd_analyze(program_file, opt);
        }
        if (op_cmd->parsed()) {
            if (op_name == "widen" && opt.thresholds == "auto" && !op_cmd->count("--thresholds")) {
                opt.thresholds = "none";  // op-level default; analyze defaults to auto
            }
            return cmd_op(op_name, op_files, opt);
        }
        return cmd_search(opt, max_vars, max_bound, max_iters, trials, out_dir);
    } catch (const lang::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}
