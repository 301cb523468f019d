// Copyright (c) wrshapes contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wrshapes/reduction.hpp"
#include "wrshapes/widening.hpp"

namespace wrshapes::lang {

struct SourcePos {
    int line = 1;
    int col = 1;
};

class ParseError : public std::runtime_error {
  public:
    ParseError(SourcePos pos, const std::string& msg)
        : std::runtime_error("parse error at " + std::to_string(pos.line) + ":" +
                             std::to_string(pos.col) + ": " + msg),
          pos(pos) {}
    SourcePos pos;
};

// Conditions in canonical linear form a*x + b*y <= c with a in {-1,+1} and
// b in {-1,0,+1}; "x >= c" parses to -x <= -c.
struct Cond {
    enum class Kind { True, Nondet, Lin };
    Kind kind = Kind::True;
    int a = 0;
    int x = -1;  // variable ids (0-based)
    int b = 0;
    int y = -1;
    long c = 0;
};

struct Stmt;

// var := sign * src + add, or var := add when src < 0.
struct Assign {
    int var = 0;
    int src = -1;
    int sign = 1;
    long add = 0;
};
struct Havoc {
    int var = 0;
};
struct Assume {
    Cond cond;
};
struct If {
    Cond cond;
    std::vector<Stmt> then_body;
    std::vector<Stmt> else_body;
};
struct While {
    Cond cond;
    std::vector<Stmt> body;
};

struct Stmt {
    std::variant<Assign, Havoc, Assume, If, While> node;
    SourcePos pos;
};

struct Program {
    std::vector<Stmt> stmts;
    std::vector<std::string> vars;  // in first-use order; ids are indices
};

Program parse_program(std::string_view text);

// ---------------------------------------------------------------------------
// Control-flow graph
// ---------------------------------------------------------------------------

struct TransferOp {
    enum class Kind { Nop, Assign, Havoc, AssumeCond, AssumeNegCond, AssumeFalse };
    Kind kind = Kind::Nop;
    Assign assign{};
    int var = 0;  // Havoc
    Cond cond{};
};

struct CfgEdge {
    int src = 0;
    int dst = 0;
    TransferOp op;
};

struct Cfg {
    int node_count = 0;
    int entry = 0;
    int exit = 0;
    std::vector<CfgEdge> edges;
    std::vector<std::vector<int>> in_edges;  // per node, edge indices
    std::vector<bool> loop_head;
    std::vector<std::string> node_desc;
    std::vector<int> rpo;        // reverse postorder over nodes
    std::vector<int> rpo_index;  // node -> position in rpo
};

Cfg build_cfg(const Program& p);

// ---------------------------------------------------------------------------
// Fixpoint engine
// ---------------------------------------------------------------------------

enum class DomainKind { Dbm, Oct };

struct AnalyzerConfig {
    DomainKind domain = DomainKind::Dbm;
    WideningStrategy strategy{};
    enum class Thresholds { Auto, None, Explicit };
    Thresholds threshold_mode = Thresholds::Auto;
    ThresholdSet explicit_thresholds{};
    bool thresholds_global = false;  // share harvested thresholds across heads
    int descend = 1;
    int iter_cap = 64;
    bool record_traces = false;
};

template <typename S>
struct AnalysisResultT {
    std::vector<S> invariants;       // per CFG node
    std::vector<int> head_iterations;  // per node; 0 for non-heads
    bool stabilized = true;
    std::map<int, std::vector<S>> head_traces;  // when record_traces
};

AnalysisResultT<Shape> analyze_dbm(const Program& p, const Cfg& cfg, const AnalyzerConfig& config);
AnalysisResultT<OctShape> analyze_oct(const Program& p, const Cfg& cfg,
                                      const AnalyzerConfig& config);

using AnalysisResult = std::variant<AnalysisResultT<Shape>, AnalysisResultT<OctShape>>;
AnalysisResult analyze(const Program& p, const Cfg& cfg, const AnalyzerConfig& config);

}  // namespace wrshapes::lang
