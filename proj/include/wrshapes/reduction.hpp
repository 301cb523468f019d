// Copyright (c) wrshapes contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "wrshapes/dbm.hpp"
#include "wrshapes/octagon.hpp"

namespace wrshapes {

// A non-redundant constraint system: closing (or strongly closing) `kept`
// reproduces exactly the shape it was derived from, and no proper subset
// does. Deterministic for a given input.
template <typename C>
struct ReducedSystem {
    int vars = 0;
    std::vector<C> kept;
};

// Minimal subset of a closed DBM whose closure equals the input shape.
// Zero-weight cycles are handled by partitioning indices into
// zero-equivalence classes (i ~ j iff m[i][j] + m[j][i] = 0), keeping one
// directed cycle through each class in ascending index order, and keeping
// only non-redundant edges between class representatives (lowest index).
ReducedSystem<Constraint> transitive_reduce(const Shape& s);

// Minimal subset of a strongly closed octagon whose strong closure equals
// the input shape. Redundancy accounts for both triangle inferences and the
// strengthening rule: greedy deletion in row-major order of the
// representative cell, checking strong-closure equivalence, with coherent
// cell pairs deleted (and counted) as one constraint.
ReducedSystem<OctConstraint> strong_reduce(const OctShape& s);

// Per-cell strictly ascending lists of finite bounds, keyed by matrix cell.
class ThresholdSet {
  public:
    void add(int i, int j, const Bound& b);
    // Smallest threshold for cell (i,j) that is >= floor, if any.
    std::optional<Bound> smallest_at_least(int i, int j, const Bound& floor) const;

    bool empty() const { return cells_.empty(); }
    const std::map<std::pair<int, int>, std::vector<Bound>>& cells() const { return cells_; }
    void merge(const ThresholdSet& other);

  private:
    std::map<std::pair<int, int>, std::vector<Bound>> cells_;
};

// The 'up to' thresholds harvested from a first iterate M0: every finite
// cell of the closed matrix that the reduction drops contributes its
// closed-form bound. Empty input yields an empty set.
ThresholdSet harvest_thresholds(const Shape& m0);
ThresholdSet harvest_thresholds(const OctShape& m0);

}  // namespace wrshapes
