// Copyright (c) wrshapes contributors.
// SPDX-License-Identifier: Apache-2.0
#include "wrshapes/octagon.hpp"

#include <stdexcept>
#include <string>

namespace wrshapes {

OctMatrix::OctMatrix(int vars) : vars_(vars) {
    if (vars < 0) {
        throw std::invalid_argument("OctMatrix: negative dimension");
    }
    int s = 2 * vars;
    cells_.assign(static_cast<std::size_t>(s) * s, Bound::infinity());
    for (int i = 0; i < s; ++i) {
        set(i, i, Bound(0L));
    }
}

void OctMatrix::tighten(int i, int j, const Bound& b) {
    if (b < at(i, j)) {
        set(i, j, b);
    }
}

bool OctMatrix::is_coherent() const {
    const int s = size();
    for (int i = 0; i < s; ++i) {
        for (int j = 0; j < s; ++j) {
            if (at(i, j) != at(oct_bar(j), oct_bar(i))) {
                return false;
            }
        }
    }
    return true;
}

void OctMatrix::enforce_coherence() {
    const int s = size();
    for (int i = 0; i < s; ++i) {
        for (int j = 0; j < s; ++j) {
            const Bound& mirror = at(oct_bar(j), oct_bar(i));
            if (mirror < at(i, j)) {
                set(i, j, mirror);
            }
        }
    }
}

const OctMatrix& OctShape::matrix() const {
    if (!mat_) {
        throw std::logic_error("OctShape::matrix on Empty");
    }
    return *mat_;
}

OctShape oct_wrap_closed(OctMatrix m) {
    int n = m.vars();
    return OctShape(n, std::move(m));
}

namespace {

// Floyd-Warshall pass; returns true if any entry changed.
bool shortest_paths(OctMatrix& d) {
    const int s = d.size();
    bool changed = false;
    for (int k = 0; k < s; ++k) {
        for (int i = 0; i < s; ++i) {
            const Bound& ik = d.at(i, k);
            if (!ik.is_finite()) {
                continue;
            }
            for (int j = 0; j < s; ++j) {
                const Bound& kj = d.at(k, j);
                if (!kj.is_finite()) {
                    continue;
                }
                Bound via = ik + kj;
                if (via < d.at(i, j)) {
                    d.set(i, j, std::move(via));
                    changed = true;
                }
            }
        }
    }
    return changed;
}

// One strengthening sweep over every cell, diagonal included so that a
// negative unary pair surfaces as a negative diagonal entry.
bool strengthen(OctMatrix& d) {
    const int s = d.size();
    bool changed = false;
    for (int i = 0; i < s; ++i) {
        const Bound& ib = d.at(i, oct_bar(i));
        if (!ib.is_finite()) {
            continue;
        }
        for (int j = 0; j < s; ++j) {
            const Bound& bj = d.at(oct_bar(j), j);
            if (!bj.is_finite()) {
                continue;
            }
            Bound inferred = (ib + bj).half();
            if (inferred < d.at(i, j)) {
                d.set(i, j, std::move(inferred));
                changed = true;
            }
        }
    }
    return changed;
}

bool has_negative_diagonal(const OctMatrix& d) {
    const Bound zero(0L);
    for (int i = 0; i < d.size(); ++i) {
        if (d.at(i, i) < zero) {
            return true;
        }
    }
    return false;
}

}  // namespace

OctShape strong_close(const OctMatrix& m) {
    const int n = m.vars();
    OctMatrix d = m;
    d.enforce_coherence();
    const Bound zero(0L);
    for (int i = 0; i < d.size(); ++i) {
        if (zero < d.at(i, i)) {
            d.set(i, i, zero);
        }
    }
    // For rational octagons one closure + one strengthening sweep reaches the
    // fixpoint; the loop re-checks rather than assuming it.
    int rounds = 0;
    for (;;) {
        bool changed = shortest_paths(d);
        if (has_negative_diagonal(d)) {
            return OctShape::empty(n);
        }
        changed = strengthen(d) || changed;
        if (has_negative_diagonal(d)) {
            return OctShape::empty(n);
        }
        if (!changed) {
            break;
        }
        if (++rounds > 2 * n + 2) {
            throw std::logic_error("strong_close: fixpoint bound exceeded");
        }
    }
    for (int i = 0; i < d.size(); ++i) {
        d.set(i, i, zero);
    }
    return oct_wrap_closed(std::move(d));
}

OctMatrix oct_from_constraints(int vars, std::span<const OctConstraint> cs) {
    OctMatrix m = OctMatrix::top(vars);
    for (const OctConstraint& c : cs) {
        if (c.a < -1 || c.a > 1 || c.b < -1 || c.b > 1) {
            throw std::invalid_argument("oct_from_constraints: coefficient not in {-1,0,1}");
        }
        if (c.a == 0 && c.b == 0) {
            throw std::invalid_argument("oct_from_constraints: zero coefficient pair");
        }
        if (!c.bound.is_finite()) {
            throw std::invalid_argument("oct_from_constraints: infinite bound");
        }
        // Normalize so the first coefficient is the nonzero one.
        int a = c.a, b = c.b, k = c.k, l = c.l;
        if (a == 0) {
            std::swap(a, b);
            std::swap(k, l);
        }
        if (k < 0 || k >= vars || (b != 0 && (l < 0 || l >= vars))) {
            throw std::invalid_argument("oct_from_constraints: index out of range");
        }
        if (b == 0) {
            // a*x_k <= c: doubled unary cell.
            Bound two_c = c.bound.doubled();
            if (a > 0) {
                m.tighten(2 * k, 2 * k + 1, two_c);
            } else {
                m.tighten(2 * k + 1, 2 * k, two_c);
            }
            continue;
        }
        if (k == l) {
            throw std::invalid_argument("oct_from_constraints: repeated variable in binary constraint");
        }
        int i, j;
        if (a > 0 && b < 0) {
            i = 2 * k;
            j = 2 * l;  // x_k - x_l
        } else if (a > 0 && b > 0) {
            i = 2 * k;
            j = 2 * l + 1;  // x_k + x_l
        } else if (a < 0 && b < 0) {
            i = 2 * k + 1;
            j = 2 * l;  // -x_k - x_l
        } else {
            i = 2 * l;
            j = 2 * k;  // -x_k + x_l == x_l - x_k
        }
        m.tighten(i, j, c.bound);
        m.tighten(oct_bar(j), oct_bar(i), c.bound);
    }
    return m;
}

namespace {

void oct_require_same_dim(const OctShape& a, const OctShape& b, const char* op) {
    if (a.vars() != b.vars()) {
        throw std::invalid_argument(std::string(op) + ": dimension mismatch");
    }
}

}  // namespace

bool oct_leq(const OctShape& a, const OctShape& b) {
    oct_require_same_dim(a, b, "oct_leq");
    if (a.is_empty()) {
        return true;
    }
    if (b.is_empty()) {
        return false;
    }
    const int s = a.matrix().size();
    for (int i = 0; i < s; ++i) {
        for (int j = 0; j < s; ++j) {
            if (!(a.matrix().at(i, j) <= b.matrix().at(i, j))) {
                return false;
            }
        }
    }
    return true;
}

OctShape oct_join(const OctShape& a, const OctShape& b) {
    oct_require_same_dim(a, b, "oct_join");
    if (a.is_empty()) {
        return b;
    }
    if (b.is_empty()) {
        return a;
    }
    // Entrywise max preserves both coherence and strong closure.
    OctMatrix m = a.matrix();
    const int s = m.size();
    for (int i = 0; i < s; ++i) {
        for (int j = 0; j < s; ++j) {
            if (m.at(i, j) < b.matrix().at(i, j)) {
                m.set(i, j, b.matrix().at(i, j));
            }
        }
    }
    return oct_wrap_closed(std::move(m));
}

OctShape oct_meet(const OctShape& a, const OctShape& b) {
    oct_require_same_dim(a, b, "oct_meet");
    if (a.is_empty() || b.is_empty()) {
        return OctShape::empty(a.vars());
    }
    OctMatrix m = a.matrix();
    const int s = m.size();
    for (int i = 0; i < s; ++i) {
        for (int j = 0; j < s; ++j) {
            m.tighten(i, j, b.matrix().at(i, j));
        }
    }
    return strong_close(m);
}

OctShape oct_forget(const OctShape& s, int v) {
    if (s.is_empty()) {
        throw std::invalid_argument("oct_forget: Empty input");
    }
    if (v < 1 || v > s.vars()) {
        throw std::invalid_argument("oct_forget: variable out of range");
    }
    OctMatrix m = s.matrix();
    const int sz = m.size();
    const int r0 = 2 * (v - 1);
    const int r1 = r0 + 1;
    for (int t = 0; t < sz; ++t) {
        if (t != r0) {
            m.set(r0, t, Bound::infinity());
            m.set(t, r0, Bound::infinity());
        }
        if (t != r1) {
            m.set(r1, t, Bound::infinity());
            m.set(t, r1, Bound::infinity());
        }
    }
    return oct_wrap_closed(std::move(m));
}

std::vector<OctConstraint> oct_to_constraints(const OctShape& s) {
    if (s.is_empty()) {
        throw std::invalid_argument("oct_to_constraints: Empty input");
    }
    std::vector<OctConstraint> out;
    const OctMatrix& m = s.matrix();
    const int sz = m.size();
    for (int i = 0; i < sz; ++i) {
        for (int j = 0; j < sz; ++j) {
            if (i == j || !m.at(i, j).is_finite()) {
                continue;
            }
            // Emit each coherent pair once, from its row-major representative.
            int mi = oct_bar(j);
            int mj = oct_bar(i);
            if (mi < i || (mi == i && mj < j)) {
                continue;
            }
            int k = i / 2;
            int l = j / 2;
            const Bound& b = m.at(i, j);
            if (k == l) {
                // Unary cell (2k, 2k+1) or (2k+1, 2k); halve exactly.
                out.push_back(OctConstraint{(i % 2 == 0) ? 1 : -1, 0, k, k, b.half()});
            } else {
                int a = (i % 2 == 0) ? 1 : -1;
                int bb = (j % 2 == 0) ? -1 : 1;
                out.push_back(OctConstraint{a, bb, k, l, b});
            }
        }
    }
    return out;
}

}  // namespace wrshapes
