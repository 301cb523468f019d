// Copyright (c) wrshapes contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include "wrshapes/analyzer.hpp"

namespace wrshapes::lang {

namespace {

class CfgBuilder {
  public:
    explicit CfgBuilder(const Program& p) : program_(p) {}

    Cfg build() {
        cfg_.entry = new_node("entry");
        int cur = cfg_.entry;
        cur = seq(program_.stmts, cur);
        cfg_.exit = cur;
        cfg_.node_desc[cur] += " (exit)";
        finish();
        return std::move(cfg_);
    }

  private:
    int new_node(std::string desc) {
        cfg_.node_desc.push_back(std::move(desc));
        cfg_.loop_head.push_back(false);
        return cfg_.node_count++;
    }

    void add_edge(int src, int dst, TransferOp op) {
        cfg_.edges.push_back(CfgEdge{src, dst, std::move(op)});
    }

    static TransferOp nop() { return TransferOp{}; }

    static TransferOp assume_op(const Cond& c, bool negated) {
        TransferOp op;
        if (c.kind == Cond::Kind::Nondet) {
            op.kind = TransferOp::Kind::Nop;
        } else if (c.kind == Cond::Kind::True) {
            op.kind = negated ? TransferOp::Kind::AssumeFalse : TransferOp::Kind::Nop;
        } else {
            op.kind = negated ? TransferOp::Kind::AssumeNegCond : TransferOp::Kind::AssumeCond;
            op.cond = c;
        }
        return op;
    }

    int seq(const std::vector<Stmt>& stmts, int cur) {
        for (const Stmt& s : stmts) {
            cur = one(s, cur);
        }
        return cur;
    }

    int one(const Stmt& s, int cur) {
        const std::string at = "line " + std::to_string(s.pos.line);
        if (const auto* a = std::get_if<Assign>(&s.node)) {
            int next = new_node("after assign, " + at);
            TransferOp op;
            op.kind = TransferOp::Kind::Assign;
            op.assign = *a;
            add_edge(cur, next, op);
            return next;
        }
        if (const auto* h = std::get_if<Havoc>(&s.node)) {
            int next = new_node("after havoc, " + at);
            TransferOp op;
            op.kind = TransferOp::Kind::Havoc;
            op.var = h->var;
            add_edge(cur, next, op);
            return next;
        }
        if (const auto* asm_ = std::get_if<Assume>(&s.node)) {
            int next = new_node("after assume, " + at);
            add_edge(cur, next, assume_op(asm_->cond, false));
            return next;
        }
        if (const auto* iff = std::get_if<If>(&s.node)) {
            int then_in = new_node("then branch, " + at);
            int else_in = new_node("else branch, " + at);
            add_edge(cur, then_in, assume_op(iff->cond, false));
            add_edge(cur, else_in, assume_op(iff->cond, true));
            int then_out = seq(iff->then_body, then_in);
            int else_out = seq(iff->else_body, else_in);
            int join_node = new_node("join, " + at);
            add_edge(then_out, join_node, nop());
            add_edge(else_out, join_node, nop());
            return join_node;
        }
        const auto& w = std::get<While>(s.node);
        int head = new_node("loop head, " + at);
        add_edge(cur, head, nop());
        int body_in = new_node("loop body, " + at);
        add_edge(head, body_in, assume_op(w.cond, false));
        int body_out = seq(w.body, body_in);
        add_edge(body_out, head, nop());  // back edge
        int exit_node = new_node("loop exit, " + at);
        add_edge(head, exit_node, assume_op(w.cond, true));
        return exit_node;
    }

    void finish() {
        cfg_.in_edges.assign(cfg_.node_count, {});
        std::vector<std::vector<int>> out(cfg_.node_count);
        for (std::size_t e = 0; e < cfg_.edges.size(); ++e) {
            cfg_.in_edges[cfg_.edges[e].dst].push_back(static_cast<int>(e));
            out[cfg_.edges[e].src].push_back(static_cast<int>(e));
        }
        // Iterative DFS for postorder; back edges (to a node on the stack)
        // mark natural loop heads. Structured construction only produces
        // while-heads, and this confirms it.
        std::vector<int> state(cfg_.node_count, 0);  // 0 new, 1 on stack, 2 done
        std::vector<int> post;
        struct Frame {
            int node;
            std::size_t next = 0;
        };
        std::vector<Frame> stack{{cfg_.entry}};
        state[cfg_.entry] = 1;
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.next < out[f.node].size()) {
                int dst = cfg_.edges[out[f.node][f.next++]].dst;
                if (state[dst] == 0) {
                    state[dst] = 1;
                    stack.push_back({dst});
                } else if (state[dst] == 1) {
                    cfg_.loop_head[dst] = true;
                }
            } else {
                state[f.node] = 2;
                post.push_back(f.node);
                stack.pop_back();
            }
        }
        cfg_.rpo.assign(post.rbegin(), post.rend());
        cfg_.rpo_index.assign(cfg_.node_count, -1);
        for (std::size_t i = 0; i < cfg_.rpo.size(); ++i) {
            cfg_.rpo_index[cfg_.rpo[i]] = static_cast<int>(i);
        }
    }

    const Program& program_;
    Cfg cfg_;
};

}  // namespace

Cfg build_cfg(const Program& p) {
    return CfgBuilder(p).build();
}

}  // namespace wrshapes::lang
