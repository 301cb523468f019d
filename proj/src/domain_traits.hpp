// Copyright (c) wrshapes contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "wrshapes/dbm.hpp"
#include "wrshapes/octagon.hpp"
#include "wrshapes/reduction.hpp"

namespace wrshapes::detail {

// Uniform view of the two domains for the widening, search and fixpoint
// machinery. "Semantic cells" enumerate one cell per constraint slot: every
// off-diagonal cell for DBMs, the row-major representative of each coherent
// pair for octagons.
template <typename S>
struct dom;

template <>
struct dom<Shape> {
    using shape = Shape;
    using matrix = Dbm;
    using constraint = Constraint;
    static constexpr bool is_oct = false;

    static shape close(const matrix& m) { return wrshapes::close(m); }
    static matrix top(int vars) { return Dbm::top(vars); }
    static shape top_shape(int vars) { return Shape::top(vars); }
    static shape empty(int vars) { return Shape::empty(vars); }
    static bool leq(const shape& a, const shape& b) { return wrshapes::leq(a, b); }
    static shape join(const shape& a, const shape& b) { return wrshapes::join(a, b); }
    static shape meet(const shape& a, const shape& b) { return wrshapes::meet(a, b); }
    static shape forget_var(const shape& s, int v) { return wrshapes::forget(s, v); }
    static ReducedSystem<constraint> reduce(const shape& s) { return transitive_reduce(s); }
    static matrix place(int vars, const std::vector<constraint>& kept) {
        return from_constraints(vars, kept);
    }
    static ThresholdSet harvest(const shape& s) { return harvest_thresholds(s); }
    static int cell_count(int vars) { return (vars + 1) * (vars + 1); }

    static std::vector<std::pair<int, int>> semantic_cells(int vars) {
        std::vector<std::pair<int, int>> out;
        for (int i = 0; i <= vars; ++i) {
            for (int j = 0; j <= vars; ++j) {
                if (i != j) {
                    out.emplace_back(i, j);
                }
            }
        }
        return out;
    }

    static void raise_cell(matrix& m, int i, int j, const Bound& v) {
        if (m.at(i, j) < v) {
            m.set(i, j, v);
        }
    }

    static void set_cell(matrix& m, int i, int j, Bound v) { m.set(i, j, std::move(v)); }
};

template <>
struct dom<OctShape> {
    using shape = OctShape;
    using matrix = OctMatrix;
    using constraint = OctConstraint;
    static constexpr bool is_oct = true;

    static shape close(const matrix& m) { return strong_close(m); }
    static matrix top(int vars) { return OctMatrix::top(vars); }
    static shape top_shape(int vars) { return OctShape::top(vars); }
    static shape empty(int vars) { return OctShape::empty(vars); }
    static bool leq(const shape& a, const shape& b) { return oct_leq(a, b); }
    static shape join(const shape& a, const shape& b) { return oct_join(a, b); }
    static shape meet(const shape& a, const shape& b) { return oct_meet(a, b); }
    static shape forget_var(const shape& s, int v) { return oct_forget(s, v); }
    static ReducedSystem<constraint> reduce(const shape& s) { return strong_reduce(s); }
    static matrix place(int vars, const std::vector<constraint>& kept) {
        return oct_from_constraints(vars, kept);
    }
    static ThresholdSet harvest(const shape& s) { return harvest_thresholds(s); }
    static int cell_count(int vars) { return 4 * vars * vars; }

    static std::vector<std::pair<int, int>> semantic_cells(int vars) {
        std::vector<std::pair<int, int>> out;
        const int s = 2 * vars;
        for (int i = 0; i < s; ++i) {
            for (int j = 0; j < s; ++j) {
                if (i == j) {
                    continue;
                }
                int mi = oct_bar(j);
                int mj = oct_bar(i);
                if (mi < i || (mi == i && mj < j)) {
                    continue;  // mirror representative already listed
                }
                out.emplace_back(i, j);
            }
        }
        return out;
    }

    static void raise_cell(matrix& m, int i, int j, const Bound& v) {
        if (m.at(i, j) < v) {
            m.set(i, j, v);
        }
        if (m.at(oct_bar(j), oct_bar(i)) < v) {
            m.set(oct_bar(j), oct_bar(i), v);
        }
    }

    static void set_cell(matrix& m, int i, int j, Bound v) {
        m.set(oct_bar(j), oct_bar(i), v);
        m.set(i, j, std::move(v));
    }
};

// Finite semantic cells of a non-empty shape.
template <typename S>
int finite_cell_count(const S& s) {
    int count = 0;
    for (auto [i, j] : dom<S>::semantic_cells(s.vars())) {
        if (s.matrix().at(i, j).is_finite()) {
            ++count;
        }
    }
    return count;
}

}  // namespace wrshapes::detail
