// Copyright (c) wrshapes contributors.
// SPDX-License-Identifier: Apache-2.0
#include "wrshapes/reduction.hpp"

#include <algorithm>
#include <stdexcept>

namespace wrshapes {

ReducedSystem<Constraint> transitive_reduce(const Shape& s) {
    if (s.is_empty()) {
        throw std::invalid_argument("transitive_reduce: Empty input");
    }
    const Dbm& m = s.matrix();
    const int sz = m.size();
    const Bound zero(0L);

    // Zero-equivalence classes: i ~ j iff m[i][j] + m[j][i] = 0.
    std::vector<int> cls(sz, -1);
    std::vector<std::vector<int>> classes;
    for (int i = 0; i < sz; ++i) {
        if (cls[i] >= 0) {
            continue;
        }
        int id = static_cast<int>(classes.size());
        classes.push_back({i});
        cls[i] = id;
        for (int j = i + 1; j < sz; ++j) {
            if (cls[j] >= 0) {
                continue;
            }
            if (m.at(i, j).is_finite() && m.at(j, i).is_finite() &&
                m.at(i, j) + m.at(j, i) == zero) {
                cls[j] = id;
                classes[id].push_back(j);
            }
        }
    }

    ReducedSystem<Constraint> out;
    out.vars = s.vars();

    // One directed cycle through each class with >= 2 members, in ascending
    // member order; the exact closed bounds telescope around the cycle.
    for (const auto& members : classes) {
        const int k = static_cast<int>(members.size());
        if (k < 2) {
            continue;
        }
        for (int t = 0; t < k; ++t) {
            int from = members[t];
            int to = members[(t + 1) % k];
            out.kept.push_back(Constraint{from, to, m.at(from, to)});
        }
    }

    // Inter-class edges between representatives (lowest index per class):
    // keep (r,t) iff no third representative u realizes the same bound.
    std::vector<int> reps;
    reps.reserve(classes.size());
    for (const auto& members : classes) {
        reps.push_back(members.front());
    }
    std::sort(reps.begin(), reps.end());
    for (int r : reps) {
        for (int t : reps) {
            if (r == t || !m.at(r, t).is_finite()) {
                continue;
            }
            bool redundant = false;
            for (int u : reps) {
                if (u == r || u == t) {
                    continue;
                }
                if (m.at(r, u).is_finite() && m.at(u, t).is_finite() &&
                    m.at(r, u) + m.at(u, t) <= m.at(r, t)) {
                    redundant = true;
                    break;
                }
            }
            if (!redundant) {
                out.kept.push_back(Constraint{r, t, m.at(r, t)});
            }
        }
    }

    // Deterministic row-major output order.
    std::sort(out.kept.begin(), out.kept.end(), [](const Constraint& a, const Constraint& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    return out;
}

ReducedSystem<OctConstraint> strong_reduce(const OctShape& s) {
    if (s.is_empty()) {
        throw std::invalid_argument("strong_reduce: Empty input");
    }
    // Candidates: one per coherent pair, already in row-major representative
    // order. Greedy deletion against strong-closure equivalence; a deleted
    // pair removes both mirror cells at once.
    std::vector<OctConstraint> candidates = oct_to_constraints(s);
    const int n = s.vars();
    std::vector<bool> alive(candidates.size(), true);
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        std::vector<OctConstraint> rest;
        rest.reserve(candidates.size());
        for (std::size_t t = 0; t < candidates.size(); ++t) {
            if (t != c && alive[t]) {
                rest.push_back(candidates[t]);
            }
        }
        if (strong_close(oct_from_constraints(n, rest)) == s) {
            alive[c] = false;
        }
    }
    ReducedSystem<OctConstraint> out;
    out.vars = n;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (alive[c]) {
            out.kept.push_back(candidates[c]);
        }
    }
    return out;
}

void ThresholdSet::add(int i, int j, const Bound& b) {
    if (!b.is_finite()) {
        return;
    }
    auto& list = cells_[{i, j}];
    auto it = std::lower_bound(list.begin(), list.end(), b);
    if (it == list.end() || *it != b) {
        list.insert(it, b);
    }
}

std::optional<Bound> ThresholdSet::smallest_at_least(int i, int j, const Bound& floor) const {
    auto it = cells_.find({i, j});
    if (it == cells_.end()) {
        return std::nullopt;
    }
    auto pos = std::lower_bound(it->second.begin(), it->second.end(), floor);
    if (pos == it->second.end()) {
        return std::nullopt;
    }
    return *pos;
}

void ThresholdSet::merge(const ThresholdSet& other) {
    for (const auto& [cell, list] : other.cells_) {
        for (const Bound& b : list) {
            add(cell.first, cell.second, b);
        }
    }
}

ThresholdSet harvest_thresholds(const Shape& m0) {
    ThresholdSet out;
    if (m0.is_empty()) {
        return out;
    }
    ReducedSystem<Constraint> red = transitive_reduce(m0);
    std::vector<std::pair<int, int>> kept_cells;
    for (const Constraint& c : red.kept) {
        kept_cells.emplace_back(c.i, c.j);
    }
    const Dbm& m = m0.matrix();
    for (int i = 0; i < m.size(); ++i) {
        for (int j = 0; j < m.size(); ++j) {
            if (i == j || !m.at(i, j).is_finite()) {
                continue;
            }
            if (std::find(kept_cells.begin(), kept_cells.end(), std::make_pair(i, j)) ==
                kept_cells.end()) {
                out.add(i, j, m.at(i, j));
            }
        }
    }
    return out;
}

ThresholdSet harvest_thresholds(const OctShape& m0) {
    ThresholdSet out;
    if (m0.is_empty()) {
        return out;
    }
    ReducedSystem<OctConstraint> red = strong_reduce(m0);
    // Mark both mirror cells of every kept pair.
    OctMatrix keptmask = oct_from_constraints(m0.vars(), red.kept);
    const OctMatrix& m = m0.matrix();
    for (int i = 0; i < m.size(); ++i) {
        for (int j = 0; j < m.size(); ++j) {
            if (i == j || !m.at(i, j).is_finite()) {
                continue;
            }
            if (!keptmask.at(i, j).is_finite()) {
                out.add(i, j, m.at(i, j));
            }
        }
    }
    return out;
}

}  // namespace wrshapes
