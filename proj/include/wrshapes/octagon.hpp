// Copyright (c) wrshapes contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <optional>
#include <vector>

#include "wrshapes/bound.hpp"

namespace wrshapes {

// Mirror index in the doubled-variable encoding: 2k <-> 2k+1.
inline int oct_bar(int i) { return i ^ 1; }

// An octagonal constraint a*x_k + b*x_l <= bound with a, b in {-1, 0, +1}.
// k and l are 0-based variable indices; unary constraints have b == 0 and
// carry l == k by convention. The bound is the semantic constant (unary
// bounds are stored halved relative to their matrix cells).
struct OctConstraint {
    int a = 0;
    int b = 0;
    int k = 0;
    int l = 0;
    Bound bound;  // always finite
};

// Coherent DBM over doubled variables: index 2k encodes +x_k and 2k+1
// encodes -x_k. Entry (i,j) means v_i - v_j <= at(i,j); coherence demands
// at(i,j) == at(bar(j), bar(i)). Unary bound x_k <= c sits at (2k, 2k+1)
// with value 2c, and x_k >= c at (2k+1, 2k) with value -2c.
class OctMatrix {
  public:
    explicit OctMatrix(int vars);
    static OctMatrix top(int vars) { return OctMatrix(vars); }

    int vars() const { return vars_; }
    int size() const { return 2 * vars_; }

    const Bound& at(int i, int j) const { return cells_[idx(i, j)]; }
    void set(int i, int j, Bound b) { cells_[idx(i, j)] = std::move(b); }
    void tighten(int i, int j, const Bound& b);

    bool is_coherent() const;
    // Per-cell min with the mirror cell; raw input is never assumed coherent.
    void enforce_coherence();

    friend bool operator==(const OctMatrix& a, const OctMatrix& b) {
        return a.vars_ == b.vars_ && a.cells_ == b.cells_;
    }
    friend bool operator!=(const OctMatrix& a, const OctMatrix& b) { return !(a == b); }

  private:
    int idx(int i, int j) const { return i * 2 * vars_ + j; }

    int vars_;
    std::vector<Bound> cells_;
};

// Octagonal shape: Empty or a strongly closed coherent matrix.
class OctShape {
  public:
    static OctShape empty(int vars) { return OctShape(vars); }
    static OctShape top(int vars) { return OctShape(vars, OctMatrix::top(vars)); }

    int vars() const { return vars_; }
    bool is_empty() const { return !mat_.has_value(); }
    const OctMatrix& matrix() const;

    friend bool operator==(const OctShape& a, const OctShape& b) {
        return a.vars_ == b.vars_ && a.mat_ == b.mat_;
    }
    friend bool operator!=(const OctShape& a, const OctShape& b) { return !(a == b); }

  private:
    explicit OctShape(int vars) : vars_(vars) {}
    OctShape(int vars, OctMatrix m) : vars_(vars), mat_(std::move(m)) {}

    friend OctShape oct_wrap_closed(OctMatrix m);

    int vars_;
    std::optional<OctMatrix> mat_;
};

OctShape oct_wrap_closed(OctMatrix m);

// Strong closure: shortest-path closure plus the strengthening rule
//   at(i,j) <- min(at(i,j), (at(i,bar(i)) + at(bar(j),j)) / 2)
// iterated to a fixpoint. Returns Empty iff unsatisfiable; otherwise the
// entrywise-least coherent matrix with the same solution set.
OctShape strong_close(const OctMatrix& m);

OctMatrix oct_from_constraints(int vars, std::span<const OctConstraint> cs);

bool oct_leq(const OctShape& a, const OctShape& b);
OctShape oct_join(const OctShape& a, const OctShape& b);
OctShape oct_meet(const OctShape& a, const OctShape& b);

// Existential projection of variable v (1 <= v <= n): clears both rows and
// columns 2(v-1) and 2(v-1)+1.
OctShape oct_forget(const OctShape& s, int v);

// One constraint per coherent cell pair, deterministic row-major order of
// the representative cell; unary cells are halved exactly.
std::vector<OctConstraint> oct_to_constraints(const OctShape& s);

}  // namespace wrshapes
