// Copyright (c) wrshapes contributors.
// SPDX-License-Identifier: Apache-2.0
#include <sstream>
#include <stdexcept>

#include "domain_traits.hpp"
#include "wrshapes/analyzer.hpp"
#include "wrshapes/rng.hpp"
#include "wrshapes/widening.hpp"

namespace wrshapes {

namespace {

template <typename S>
TraceRow make_row(int iter, const S& value, const S& previous) {
    TraceRow row;
    row.iter = iter;
    row.finite_cells = detail::finite_cell_count(value);
    row.reduced_cells = static_cast<int>(detail::dom<S>::reduce(value).kept.size());
    row.stabilized = iter > 0 && value == previous;
    return row;
}

// Runs both iterations over a fixed monotone sequence:
//   interleaved:  X_{k+1} = close(widen_syntactic(closed X_k, closed Z_{k+1}))
//   standard:     X_{k+1} = widen_standard(X_k, Z_{k+1})
// with Z_{k+1} = join(X_k, Y_{k+1}) so the widening precondition holds.
template <typename S>
ReplayResult replay_impl(const std::vector<typename detail::dom<S>::matrix>& sequence,
                         int max_iters) {
    using D = detail::dom<S>;
    if (sequence.empty()) {
        throw std::invalid_argument("replay_divergence: empty sequence");
    }
    ReplayResult out;
    S xi = D::close(sequence[0]);
    S xs = xi;
    if (xi.is_empty()) {
        throw std::invalid_argument("replay_divergence: empty initial shape");
    }
    out.interleaved_trace.push_back(make_row(0, xi, xi));
    out.standard_trace.push_back(make_row(0, xs, xs));
    bool all_changed = true;
    int steps = 0;
    for (std::size_t k = 1; k < sequence.size() && steps < max_iters; ++k, ++steps) {
        S y = D::close(sequence[k]);
        S zi = D::join(xi, y);
        S next_i = D::close(widen_syntactic(xi.matrix(), zi.matrix()));
        out.interleaved_trace.push_back(make_row(static_cast<int>(k), next_i, xi));
        if (next_i == xi) {
            all_changed = false;
        }
        xi = next_i;

        S zs = D::join(xs, y);
        S next_s = widen_standard(xs, zs);
        out.standard_trace.push_back(make_row(static_cast<int>(k), next_s, xs));
        if (next_s != xs) {
            ++out.standard_changes;
        }
        xs = next_s;
    }
    out.interleaved_diverged = all_changed && steps >= max_iters;
    return out;
}

template <typename S>
typename detail::dom<S>::matrix random_matrix(Rng& rng, int vars, long max_bound) {
    using D = detail::dom<S>;
    auto m = D::top(vars);
    for (auto [i, j] : D::semantic_cells(vars)) {
        if (rng.chance(1, 2)) {
            D::set_cell(m, i, j, Bound(rng.uniform(-max_bound, max_bound)));
        }
    }
    return m;
}

// Adversarial trial: starting from a random consistent shape, repeatedly
// bump one cell of the Y sequence so that the close-interleaved iterate
// keeps growing a finite entry (the widened cell gets re-derived, larger,
// by closure through cells that stayed stable). A trial fails as soon as no
// single-cell bump produces growth.
template <typename S>
std::optional<DivergenceWitness> run_trial(Rng& rng, const SearchConfig& cfg) {
    using D = detail::dom<S>;
    // Resurrection needs at least two variables; stay within max_vars.
    const long lo = cfg.max_vars < 2 ? 1 : 2;
    const int n = static_cast<int>(rng.uniform(lo, cfg.max_vars));
    S x0 = D::close(random_matrix<S>(rng, n, cfg.max_bound));
    if (x0.is_empty()) {
        return std::nullopt;
    }
    std::vector<typename D::matrix> sequence{x0.matrix()};
    S xi = x0;
    S y = x0;
    const auto cells = D::semantic_cells(n);
    for (int k = 1; k <= cfg.max_iters; ++k) {
        const std::size_t offset = rng.next() % cells.size();
        bool bumped = false;
        for (std::size_t t = 0; t < cells.size() && !bumped; ++t) {
            auto [i, j] = cells[(t + offset) % cells.size()];
            if (!xi.matrix().at(i, j).is_finite()) {
                continue;
            }
            Bound raised = xi.matrix().at(i, j) + Bound(1L);
            auto candidate = y.matrix();
            D::raise_cell(candidate, i, j, raised);
            S y2 = D::close(candidate);
            if (!(xi.matrix().at(i, j) < y2.matrix().at(i, j))) {
                continue;  // the raise did not survive closure
            }
            S zi = D::join(xi, y2);
            S next = D::close(widen_syntactic(xi.matrix(), zi.matrix()));
            // Keep only bumps that strictly grow some still-finite entry.
            bool grew = false;
            for (auto [a, b] : cells) {
                if (next.matrix().at(a, b).is_finite() && xi.matrix().at(a, b).is_finite() &&
                    xi.matrix().at(a, b) < next.matrix().at(a, b)) {
                    grew = true;
                    break;
                }
            }
            if (!grew) {
                continue;
            }
            y = y2;
            xi = next;
            sequence.push_back(y.matrix());
            bumped = true;
        }
        if (!bumped) {
            return std::nullopt;
        }
    }
    ReplayResult replay = replay_impl<S>(sequence, cfg.max_iters);
    if (!replay.interleaved_diverged) {
        return std::nullopt;
    }
    // The standard widening must have settled within its certificate bound.
    if (replay.standard_changes > D::cell_count(n)) {
        throw std::logic_error("search_divergence: standard widening exceeded certificate");
    }
    DivergenceWitness w;
    w.vars = n;
    w.oct = D::is_oct;
    w.sequence = std::move(sequence);
    w.interleaved_trace = std::move(replay.interleaved_trace);
    w.standard_trace = std::move(replay.standard_trace);
    w.standard_changes = replay.standard_changes;
    return w;
}

// Random single-loop programs over the toy grammar. Octagon mode may use
// the negated forms; dbm mode sticks to difference syntax.
std::string random_program(Rng& rng, const SearchConfig& cfg) {
    const int n = static_cast<int>(rng.uniform(1, std::min(cfg.max_vars, 3)));
    auto var = [&](int v) { return std::string(1, static_cast<char>('a' + v)); };
    auto offset = [](long c) {
        return (c < 0 ? " - " : " + ") + std::to_string(c < 0 ? -c : c);
    };
    std::ostringstream src;
    for (int v = 0; v < n; ++v) {
        src << var(v) << " := " << rng.uniform(-cfg.max_bound, cfg.max_bound) << ";\n";
    }
    src << "while (?) {\n";
    const int body = static_cast<int>(rng.uniform(1, 3));
    for (int s = 0; s < body; ++s) {
        int v = static_cast<int>(rng.uniform(0, n - 1));
        int w = static_cast<int>(rng.uniform(0, n - 1));
        long c = rng.uniform(-2, 2);
        switch (rng.uniform(0, 4)) {
            case 0:
                src << "  " << var(v) << " := " << var(w) << offset(c) << ";\n";
                break;
            case 1:
                src << "  " << var(v) << " := " << var(v) << offset(c) << ";\n";
                break;
            case 2:
                src << "  " << var(v) << " := " << c << ";\n";
                break;
            case 3:
                if (cfg.mode == SearchConfig::Mode::Oct && rng.chance(1, 2)) {
                    src << "  assume(" << var(v) << " + " << var(w) << " <= "
                        << rng.uniform(0, 2 * cfg.max_bound) << ");\n";
                } else if (v != w) {
                    src << "  assume(" << var(v) << " - " << var(w) << " <= "
                        << rng.uniform(0, 2) << ");\n";
                } else {
                    src << "  assume(" << var(v) << " <= "
                        << rng.uniform(0, 2 * cfg.max_bound) << ");\n";
                }
                break;
            default:
                src << "  if (?) { " << var(v) << " := " << var(w) << " + 1; } else { "
                    << var(w) << " := " << var(v) << " + 1; }\n";
                break;
        }
    }
    src << "}\n";
    return src.str();
}

// Analyze one random program under both configurations; a witness program
// fails to stabilize under the close-interleaved syntactic widening within
// the cap while stabilizing under the standard widening.
bool program_diverges(const std::string& source, const SearchConfig& cfg) {
    lang::Program p = lang::parse_program(source);
    lang::Cfg graph = lang::build_cfg(p);
    lang::AnalyzerConfig divergent;
    divergent.domain = cfg.mode == SearchConfig::Mode::Oct ? lang::DomainKind::Oct
                                                           : lang::DomainKind::Dbm;
    divergent.strategy.kind = WideningStrategy::Kind::Syntactic;
    divergent.strategy.close_interleave = true;
    divergent.threshold_mode = lang::AnalyzerConfig::Thresholds::None;
    divergent.iter_cap = cfg.max_iters;
    lang::AnalyzerConfig standard = divergent;
    standard.strategy = WideningStrategy{};

    bool unstable, stable;
    if (divergent.domain == lang::DomainKind::Dbm) {
        unstable = !lang::analyze_dbm(p, graph, divergent).stabilized;
        stable = lang::analyze_dbm(p, graph, standard).stabilized;
    } else {
        unstable = !lang::analyze_oct(p, graph, divergent).stabilized;
        stable = lang::analyze_oct(p, graph, standard).stabilized;
    }
    return unstable && stable;
}

}  // namespace

WitnessReport search_divergence(const SearchConfig& cfg) {
    if (cfg.max_vars < 1 || cfg.max_iters < 1 || cfg.max_trials < 1) {
        throw std::invalid_argument("search_divergence: bounds must be positive");
    }
    WitnessReport report;
    report.config = cfg;
    Rng rng(cfg.seed);
    for (int trial = 0; trial < cfg.max_trials; ++trial) {
        ++report.trials;
        std::optional<DivergenceWitness> w;
        if (cfg.mode == SearchConfig::Mode::Dbm) {
            w = run_trial<Shape>(rng, cfg);
        } else {
            w = run_trial<OctShape>(rng, cfg);
        }
        if (w) {
            report.found = true;
            report.witness = std::move(w);
            break;
        }
    }
    // Loop-program phase, on an independent stream so the sequence search is
    // unaffected by its draws.
    Rng prog_rng(cfg.seed ^ 0x70c7a6u);
    const int program_budget = std::min(cfg.max_trials, 200);
    for (int trial = 0; trial < program_budget; ++trial) {
        ++report.program_trials;
        std::string source = random_program(prog_rng, cfg);
        if (program_diverges(source, cfg)) {
            report.found = true;
            report.program_witness = std::move(source);
            break;
        }
    }
    return report;
}

ReplayResult replay_divergence(const std::vector<Dbm>& sequence, int max_iters) {
    return replay_impl<Shape>(sequence, max_iters);
}

ReplayResult replay_divergence(const std::vector<OctMatrix>& sequence, int max_iters) {
    return replay_impl<OctShape>(sequence, max_iters);
}

std::string trace_csv(const std::vector<TraceRow>& rows) {
    std::ostringstream os;
    os << "iter,finite_cells,reduced_cells,stabilized\n";
    for (const TraceRow& r : rows) {
        os << r.iter << ',' << r.finite_cells << ',' << r.reduced_cells << ','
           << (r.stabilized ? 1 : 0) << '\n';
    }
    return os.str();
}

}  // namespace wrshapes
