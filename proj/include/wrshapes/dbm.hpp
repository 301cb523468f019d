// Copyright (c) wrshapes contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <optional>
#include <vector>

#include "wrshapes/bound.hpp"

namespace wrshapes {

// A potential constraint v_i - v_j <= bound over matrix indices.
// Index 0 is the constant zero; index i >= 1 is variable x_i.
struct Constraint {
    int i = 0;
    int j = 0;
    Bound bound;  // always finite
};

// Difference-bound matrix over variables x_1..x_n plus the zero index.
// Entry (i,j) encodes v_i - v_j <= at(i,j), with v_0 = 0: at(i,0) is an upper
// bound on x_i and at(0,j) is the negated lower bound of x_j.
class Dbm {
  public:
    explicit Dbm(int vars);
    static Dbm top(int vars) { return Dbm(vars); }

    int vars() const { return vars_; }
    int size() const { return vars_ + 1; }

    const Bound& at(int i, int j) const { return cells_[idx(i, j)]; }
    void set(int i, int j, Bound b) { cells_[idx(i, j)] = std::move(b); }
    void tighten(int i, int j, const Bound& b);

    friend bool operator==(const Dbm& a, const Dbm& b) {
        return a.vars_ == b.vars_ && a.cells_ == b.cells_;
    }
    friend bool operator!=(const Dbm& a, const Dbm& b) { return !(a == b); }

  private:
    int idx(int i, int j) const { return i * (vars_ + 1) + j; }

    int vars_;
    std::vector<Bound> cells_;
};

// A difference-bound shape: the geometric element. Either Empty or a matrix
// that is a fixpoint of close() with zero diagonal. Equality is entrywise
// equality of the closed matrices, which is geometric equality by uniqueness
// of the closed form.
class Shape {
  public:
    static Shape empty(int vars) { return Shape(vars); }
    static Shape top(int vars) { return Shape(vars, Dbm::top(vars)); }

    int vars() const { return vars_; }
    bool is_empty() const { return !mat_.has_value(); }
    const Dbm& matrix() const;

    friend bool operator==(const Shape& a, const Shape& b) {
        return a.vars_ == b.vars_ && a.mat_ == b.mat_;
    }
    friend bool operator!=(const Shape& a, const Shape& b) { return !(a == b); }

  private:
    explicit Shape(int vars) : vars_(vars) {}
    Shape(int vars, Dbm m) : vars_(vars), mat_(std::move(m)) {}

    friend Shape wrap_closed(Dbm m);

    int vars_;
    std::optional<Dbm> mat_;
};

// Internal factory: wraps a matrix already known to be closed and consistent.
Shape wrap_closed(Dbm m);

// Shortest-path closure. Returns Empty iff the matrix has a negative-weight
// cycle; otherwise the entrywise-least matrix with the same solution set.
// A kernel operator: monotone, idempotent, entrywise-reductive.
Shape close(const Dbm& m);

// Top matrix refined by taking, per cell, the minimum of all listed bounds.
Dbm from_constraints(int vars, std::span<const Constraint> cs);

bool leq(const Shape& a, const Shape& b);
Shape join(const Shape& a, const Shape& b);
Shape meet(const Shape& a, const Shape& b);

// Existential projection of variable v (1 <= v <= n) on the closed matrix.
Shape forget(const Shape& s, int v);

// All finite off-diagonal entries of the closed matrix, row-major.
std::vector<Constraint> to_constraints(const Shape& s);

}  // namespace wrshapes
