// Copyright (c) wrshapes contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wrshapes/dbm.hpp"
#include "wrshapes/octagon.hpp"
#include "wrshapes/reduction.hpp"

namespace wrshapes {

struct WideningStrategy {
    enum class Kind { Syntactic, Standard };

    Kind kind = Kind::Standard;
    // Use the closed matrix of the second argument (the precise default);
    // callers may instead hand a raw representation to the *_rep variants.
    bool second_arg_closed = true;
    // Canonicalize each iterate before the next widening step. Combined with
    // Kind::Syntactic this is the historically divergent configuration.
    bool close_interleave = false;
    int delay = 0;
    std::optional<ThresholdSet> thresholds;
};

// Per-entry widening: keep m1's entry where m2's entry is <= it, else +inf.
// Result dominates both arguments entrywise. Purely syntactic; the caller
// controls representations.
Dbm widen_syntactic(const Dbm& m1, const Dbm& m2);
OctMatrix widen_syntactic(const OctMatrix& m1, const OctMatrix& m2);

// Standard widening on shapes: the per-entry widening applied to the
// transitively reduced representation of the first argument, re-closed.
// Requires leq(s1, s2); widen(Empty, s2) = s2.
Shape widen_standard(const Shape& s1, const Shape& s2);
OctShape widen_standard(const OctShape& s1, const OctShape& s2);

// Same, with a caller-given (possibly unclosed) representation of the
// second argument; close(rep2) must contain s1.
Shape widen_standard_rep(const Shape& s1, const Dbm& rep2);
OctShape widen_standard_rep(const OctShape& s1, const OctMatrix& rep2);

// Widening up to thresholds: widen per strategy, then install, per cell
// widened to +inf, the smallest threshold satisfied by the second argument;
// re-close.
Shape widen_upto(const Shape& s1, const Shape& s2, const ThresholdSet& t,
                 const WideningStrategy& strategy = {});
OctShape widen_upto(const OctShape& s1, const OctShape& s2, const ThresholdSet& t,
                    const WideningStrategy& strategy = {});

// Stateful widening operator for one widening point: join for the first
// `delay` applications, then the configured widening. For the
// non-canonicalizing syntactic configuration it carries the raw matrix
// iterate between applications.
template <typename S>
class WideningPoint {
  public:
    explicit WideningPoint(WideningStrategy strategy) : strategy_(std::move(strategy)) {}

    // current: the value at the point; target: an upper bound of current
    // (typically join(current, new contribution)).
    S apply(const S& current, const S& target);

    int applications() const { return applications_; }
    const WideningStrategy& strategy() const { return strategy_; }
    void set_thresholds(ThresholdSet t) { strategy_.thresholds = std::move(t); }

  private:
    WideningStrategy strategy_;
    int applications_ = 0;
    std::optional<typename std::conditional<std::is_same_v<S, Shape>, Dbm, OctMatrix>::type>
        raw_;
};

extern template class WideningPoint<Shape>;
extern template class WideningPoint<OctShape>;

// ---------------------------------------------------------------------------
// Divergence search
// ---------------------------------------------------------------------------

struct SearchConfig {
    enum class Mode { Dbm, Oct };
    Mode mode = Mode::Dbm;
    int max_vars = 3;
    long max_bound = 4;
    int max_iters = 32;
    int max_trials = 500;
    std::uint64_t seed = 1;
};

struct TraceRow {
    int iter = 0;
    int finite_cells = 0;   // semantic constraints (coherent pairs count once)
    int reduced_cells = 0;  // |reduced system| of the iterate
    bool stabilized = false;
};

// A shape sequence on which the close-interleaved syntactic iteration fails
// to stabilize within max_iters while the standard widening stabilizes
// within its certificate bound.
struct DivergenceWitness {
    int vars = 0;
    bool oct = false;
    std::variant<std::vector<Dbm>, std::vector<OctMatrix>> sequence;  // x0 then y1..ym
    std::vector<TraceRow> interleaved_trace;
    std::vector<TraceRow> standard_trace;
    int standard_changes = 0;
};

struct WitnessReport {
    SearchConfig config;
    bool found = false;
    int trials = 0;  // sequence trials run
    std::optional<DivergenceWitness> witness;
    // Random loop programs analyzed under both configurations. A program
    // counts as a witness when the close-interleaved syntactic analysis hits
    // the iteration cap while the standard one stabilizes.
    int program_trials = 0;
    std::optional<std::string> program_witness;
};

WitnessReport search_divergence(const SearchConfig& cfg);

// Deterministic re-execution of a witness sequence; used to verify reports.
struct ReplayResult {
    std::vector<TraceRow> interleaved_trace;
    std::vector<TraceRow> standard_trace;
    bool interleaved_diverged = false;
    int standard_changes = 0;
};
ReplayResult replay_divergence(const std::vector<Dbm>& sequence, int max_iters);
ReplayResult replay_divergence(const std::vector<OctMatrix>& sequence, int max_iters);

std::string trace_csv(const std::vector<TraceRow>& rows);

}  // namespace wrshapes
