// Copyright (c) wrshapes contributors.
// SPDX-License-Identifier: Apache-2.0
#include <set>

#include "domain_traits.hpp"
#include "wrshapes/analyzer.hpp"

namespace wrshapes::lang {

namespace {

using wrshapes::detail::dom;

// Constraint injection: tighten the cell(s) denoting a*x + b*y <= c and
// re-canonicalize. Variable ids are the language's 0-based ids.
Shape meet_lin(const Shape& s, int a, int x, int b, int y, const Bound& c) {
    if (s.is_empty()) {
        return s;
    }
    if (a != 0 && b != 0 && a == b) {
        throw std::invalid_argument("octagonal constraint in dbm mode");
    }
    Dbm m = s.matrix();
    if (b == 0) {
        if (a > 0) {
            m.tighten(x + 1, 0, c);
        } else {
            m.tighten(0, x + 1, c);
        }
    } else if (a > 0) {
        m.tighten(x + 1, y + 1, c);  // x - y <= c
    } else {
        m.tighten(y + 1, x + 1, c);  // -x + y <= c
    }
    return close(m);
}

OctShape meet_lin(const OctShape& s, int a, int x, int b, int y, const Bound& c) {
    if (s.is_empty()) {
        return s;
    }
    OctConstraint oc;
    oc.a = a == 0 ? 1 : a;
    oc.k = x;
    oc.b = b;
    oc.l = b == 0 ? x : y;
    oc.bound = c;
    OctMatrix unit = oct_from_constraints(s.vars(), std::span<const OctConstraint>(&oc, 1));
    OctMatrix m = s.matrix();
    for (int i = 0; i < m.size(); ++i) {
        for (int j = 0; j < m.size(); ++j) {
            m.tighten(i, j, unit.at(i, j));
        }
    }
    return strong_close(m);
}

// Exact shift of variable v by delta (the x := x + c transfer).
Shape shift_var(const Shape& s, int v0, long delta) {
    if (s.is_empty()) {
        return s;
    }
    Dbm m = s.matrix();
    const int v = v0 + 1;
    const Bound d(delta);
    const Bound nd(-delta);
    for (int t = 0; t < m.size(); ++t) {
        if (t == v) {
            continue;
        }
        m.set(v, t, m.at(v, t) + d);
        m.set(t, v, m.at(t, v) + nd);
    }
    return wrap_closed(std::move(m));
}

OctShape shift_var(const OctShape& s, int v0, long delta) {
    if (s.is_empty()) {
        return s;
    }
    OctMatrix m = s.matrix();
    auto contrib = [&](int idx) -> long {
        if (idx == 2 * v0) {
            return 1;
        }
        if (idx == 2 * v0 + 1) {
            return -1;
        }
        return 0;
    };
    for (int i = 0; i < m.size(); ++i) {
        for (int j = 0; j < m.size(); ++j) {
            if (i == j) {
                continue;
            }
            long f = contrib(i) - contrib(j);
            if (f != 0) {
                m.set(i, j, m.at(i, j) + Bound(f * delta));
            }
        }
    }
    return oct_wrap_closed(std::move(m));
}

// x := -x + c, octagons only: swap the +x/-x rows and columns, then shift.
OctShape negate_shift_var(const OctShape& s, int v0, long delta) {
    if (s.is_empty()) {
        return s;
    }
    const OctMatrix& src = s.matrix();
    OctMatrix m = src;
    auto sigma = [&](int idx) {
        if (idx == 2 * v0) {
            return 2 * v0 + 1;
        }
        if (idx == 2 * v0 + 1) {
            return 2 * v0;
        }
        return idx;
    };
    for (int i = 0; i < m.size(); ++i) {
        for (int j = 0; j < m.size(); ++j) {
            m.set(i, j, src.at(sigma(i), sigma(j)));
        }
    }
    return shift_var(oct_wrap_closed(std::move(m)), v0, delta);
}

template <typename S>
S apply_assign(const S& s, const Assign& a) {
    using D = dom<S>;
    if (s.is_empty()) {
        return s;
    }
    if (a.src < 0) {
        // var := c
        S t = D::forget_var(s, a.var + 1);
        t = meet_lin(t, 1, a.var, 0, -1, Bound(a.add));
        return meet_lin(t, -1, a.var, 0, -1, Bound(-a.add));
    }
    if (a.src == a.var) {
        if (a.sign > 0) {
            return shift_var(s, a.var, a.add);
        }
        if constexpr (D::is_oct) {
            return negate_shift_var(s, a.var, a.add);
        } else {
            throw std::invalid_argument("octagonal assignment in dbm mode");
        }
    }
    if (a.sign < 0 && !D::is_oct) {
        throw std::invalid_argument("octagonal assignment in dbm mode");
    }
    // var := +-src + c: forget, then pin the relation from both sides.
    S t = D::forget_var(s, a.var + 1);
    t = meet_lin(t, 1, a.var, -a.sign, a.src, Bound(a.add));
    return meet_lin(t, -1, a.var, a.sign, a.src, Bound(-a.add));
}

template <typename S>
S apply_cond(const S& s, const Cond& c, bool negated) {
    using D = dom<S>;
    if (c.kind != Cond::Kind::Lin) {
        return s;  // handled by the CFG builder
    }
    int a = c.a, b = c.b;
    long k = c.c;
    if (negated) {
        // Integer semantics: not(lin <= c) is lin >= c+1.
        a = -a;
        b = -b;
        k = -k - 1;
    }
    if (b != 0 && c.x == c.y) {
        if (a == -b) {
            // x - x <= k: tautology or contradiction.
            return k >= 0 ? s : D::empty(s.vars());
        }
        // x + x <= k collapses to the unary bound a*x <= k/2.
        return meet_lin(s, a, c.x, 0, -1, Bound(k).half());
    }
    if (!D::is_oct && a != 0 && b != 0 && a == b) {
        throw std::invalid_argument("octagonal condition in dbm mode");
    }
    return meet_lin(s, a, c.x, b, c.y, Bound(k));
}

template <typename S>
S apply_op(const S& s, const TransferOp& op) {
    using D = dom<S>;
    switch (op.kind) {
        case TransferOp::Kind::Nop:
            return s;
        case TransferOp::Kind::AssumeFalse:
            return D::empty(s.vars());
        case TransferOp::Kind::Assign:
            return apply_assign(s, op.assign);
        case TransferOp::Kind::Havoc:
            return s.is_empty() ? s : D::forget_var(s, op.var + 1);
        case TransferOp::Kind::AssumeCond:
            return apply_cond(s, op.cond, false);
        case TransferOp::Kind::AssumeNegCond:
            return apply_cond(s, op.cond, true);
    }
    return s;
}

template <typename S>
AnalysisResultT<S> run(const Program& p, const Cfg& cfg, const AnalyzerConfig& config) {
    using D = dom<S>;
    const int nvars = static_cast<int>(p.vars.size());

    AnalysisResultT<S> result;
    result.invariants.assign(cfg.node_count, D::empty(nvars));
    result.head_iterations.assign(cfg.node_count, 0);
    result.invariants[cfg.entry] = D::top_shape(nvars);

    std::map<int, WideningPoint<S>> points;
    std::map<int, bool> harvested;
    ThresholdSet global_thresholds = config.threshold_mode == AnalyzerConfig::Thresholds::Explicit
                                         ? config.explicit_thresholds
                                         : ThresholdSet{};
    for (int v = 0; v < cfg.node_count; ++v) {
        if (cfg.loop_head[v]) {
            WideningStrategy strat = config.strategy;
            if (config.threshold_mode == AnalyzerConfig::Thresholds::Explicit) {
                strat.thresholds = config.explicit_thresholds;
            } else {
                strat.thresholds.reset();
            }
            points.emplace(v, WideningPoint<S>(strat));
            harvested[v] = false;
        }
    }

    auto incoming = [&](int v) {
        S acc = D::empty(nvars);
        for (int e : cfg.in_edges[v]) {
            const CfgEdge& edge = cfg.edges[e];
            acc = D::join(acc, apply_op(result.invariants[edge.src], edge.op));
        }
        return acc;
    };

    // Ascending phase: deterministic worklist in reverse-postorder priority.
    std::set<int> work;  // rpo positions
    for (int v : cfg.rpo) {
        if (v != cfg.entry) {
            work.insert(cfg.rpo_index[v]);
        }
    }
    while (!work.empty() && result.stabilized) {
        int v = cfg.rpo[*work.begin()];
        work.erase(work.begin());
        S in = incoming(v);
        S next = in;
        if (cfg.loop_head[v]) {
            WideningPoint<S>& point = points.at(v);
            if (config.threshold_mode == AnalyzerConfig::Thresholds::Auto && !harvested[v] &&
                !in.is_empty()) {
                // M0: the first shape reaching this head seeds the 'up to'
                // thresholds with the constraints its reduction drops.
                harvested[v] = true;
                if (config.thresholds_global) {
                    global_thresholds.merge(D::harvest(in));
                    for (auto& [head, pt] : points) {
                        pt.set_thresholds(global_thresholds);
                    }
                } else {
                    point.set_thresholds(D::harvest(in));
                }
            }
            const S& old_value = result.invariants[v];
            S target = D::join(old_value, in);
            next = point.apply(old_value, target);
            if (next != old_value) {
                if (!D::leq(old_value, next)) {
                    throw std::logic_error("analyze: non-ascending iteration at a loop head");
                }
                ++result.head_iterations[v];
                if (result.head_iterations[v] > config.iter_cap) {
                    result.stabilized = false;  // cap hit is data, not a crash
                    break;
                }
                if (config.record_traces) {
                    result.head_traces[v].push_back(next);
                }
            }
        }
        if (next != result.invariants[v]) {
            result.invariants[v] = std::move(next);
            for (const CfgEdge& e : cfg.edges) {
                if (e.src == v && e.dst != cfg.entry) {
                    work.insert(cfg.rpo_index[e.dst]);
                }
            }
        }
    }

    // Descending passes: recompute in RPO and meet at loop heads. Skipped
    // when the ascending phase hit the cap.
    if (result.stabilized) {
        for (int pass = 0; pass < config.descend; ++pass) {
            for (int v : cfg.rpo) {
                if (v == cfg.entry) {
                    continue;
                }
                S in = incoming(v);
                result.invariants[v] =
                    cfg.loop_head[v] ? D::meet(result.invariants[v], in) : std::move(in);
            }
        }
    }
    return result;
}

}  // namespace

AnalysisResultT<Shape> analyze_dbm(const Program& p, const Cfg& cfg,
                                   const AnalyzerConfig& config) {
    return run<Shape>(p, cfg, config);
}

AnalysisResultT<OctShape> analyze_oct(const Program& p, const Cfg& cfg,
                                      const AnalyzerConfig& config) {
    return run<OctShape>(p, cfg, config);
}

AnalysisResult analyze(const Program& p, const Cfg& cfg, const AnalyzerConfig& config) {
    if (config.domain == DomainKind::Dbm) {
        return analyze_dbm(p, cfg, config);
    }
    return analyze_oct(p, cfg, config);
}

}  // namespace wrshapes::lang
