// Copyright (c) wrshapes contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Test-only oracles and generators. The oracles deliberately avoid the
// implementation paths they check: shortest paths are computed by repeated
// single-edge relaxation instead of Floyd-Warshall, and semantics are checked
// by enumerating grid points against the raw constraints.
#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "wrshapes/dbm.hpp"
#include "wrshapes/octagon.hpp"
#include "wrshapes/reduction.hpp"
#include "wrshapes/rng.hpp"

namespace testsupport {

using namespace wrshapes;

// ---------------------------------------------------------------------------
// Independent all-pairs shortest-path oracle (repeated relaxation).
// Returns std::nullopt on a negative cycle.
// ---------------------------------------------------------------------------
inline std::optional<Dbm> relaxation_closure(const Dbm& m) {
    const int s = m.size();
    Dbm d = m;
    const Bound zero(0L);
    for (int i = 0; i < s; ++i) {
        if (zero < d.at(i, i)) {
            d.set(i, i, zero);
        }
    }
    for (int round = 0; round <= s + 1; ++round) {
        bool changed = false;
        for (int i = 0; i < s; ++i) {
            for (int k = 0; k < s; ++k) {
                for (int j = 0; j < s; ++j) {
                    Bound via = d.at(i, k) + d.at(k, j);
                    if (via < d.at(i, j)) {
                        d.set(i, j, via);
                        changed = true;
                    }
                }
            }
        }
        for (int i = 0; i < s; ++i) {
            if (d.at(i, i) < zero) {
                return std::nullopt;
            }
        }
        if (!changed) {
            return d;
        }
    }
    // Still changing after enough rounds: some negative cycle is pumping.
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Grid-point oracles. Points are integer or half-integer; coordinates are
// handled as doubled integers so all arithmetic stays in int64.
// ---------------------------------------------------------------------------

// All points of [-range, range]^n with the given doubled step (2 = integers,
// 1 = half-integers). Coordinates are doubled values.
inline std::vector<std::vector<long>> grid_points(int n, long range, long step2) {
    std::vector<std::vector<long>> points{{}};
    for (int v = 0; v < n; ++v) {
        std::vector<std::vector<long>> next;
        for (const auto& p : points) {
            for (long c = -2 * range; c <= 2 * range; c += step2) {
                auto q = p;
                q.push_back(c);
                next.push_back(std::move(q));
            }
        }
        points = std::move(next);
    }
    return points;
}

// v_i - v_j <= bound with doubled coordinates: 2*v_i - 2*v_j <= 2*bound.
inline bool dbm_satisfies(const Dbm& m, const std::vector<long>& doubled) {
    const int s = m.size();
    auto coord = [&](int i) { return i == 0 ? 0L : doubled[i - 1]; };
    for (int i = 0; i < s; ++i) {
        for (int j = 0; j < s; ++j) {
            const Bound& b = m.at(i, j);
            if (!b.is_finite()) {
                continue;
            }
            if (Bound(b.value() * 2) < Bound(coord(i) - coord(j))) {
                return false;
            }
        }
    }
    return true;
}

inline bool oct_satisfies(const OctMatrix& m, const std::vector<long>& doubled) {
    const int s = m.size();
    auto coord = [&](int i) {
        long v = doubled[i / 2];
        return i % 2 == 0 ? v : -v;
    };
    for (int i = 0; i < s; ++i) {
        for (int j = 0; j < s; ++j) {
            const Bound& b = m.at(i, j);
            if (!b.is_finite()) {
                continue;
            }
            if (Bound(b.value() * 2) < Bound(coord(i) - coord(j))) {
                return false;
            }
        }
    }
    return true;
}

template <typename M, typename Sat>
std::vector<std::size_t> satisfying_points(const M& m, const std::vector<std::vector<long>>& pts,
                                           Sat sat) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (sat(m, pts[i])) {
            out.push_back(i);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rational witness construction from a closed matrix: assign variables in
// index order, each from the interval its constraints against already-fixed
// variables allow. Closure guarantees the interval is non-empty.
// ---------------------------------------------------------------------------
inline std::vector<mpq_class> dbm_witness(const Dbm& m) {
    std::vector<mpq_class> vals;  // v_1..v_n
    const int s = m.size();
    for (int i = 1; i < s; ++i) {
        std::optional<mpq_class> lo, hi;
        auto fixed = [&](int t) { return t == 0 ? mpq_class(0) : vals[t - 1]; };
        for (int t = 0; t < i; ++t) {
            if (m.at(i, t).is_finite()) {
                mpq_class h = fixed(t) + m.at(i, t).value();
                if (!hi || h < *hi) {
                    hi = h;
                }
            }
            if (m.at(t, i).is_finite()) {
                mpq_class l = fixed(t) - m.at(t, i).value();
                if (!lo || *lo < l) {
                    lo = l;
                }
            }
        }
        mpq_class v;
        if (lo && hi) {
            v = (*lo + *hi) / 2;
        } else if (lo) {
            v = *lo;
        } else if (hi) {
            v = *hi;
        }
        vals.push_back(v);
    }
    return vals;
}

inline bool dbm_satisfies_exact(const Dbm& m, const std::vector<mpq_class>& vals) {
    const int s = m.size();
    auto coord = [&](int i) { return i == 0 ? mpq_class(0) : vals[i - 1]; };
    for (int i = 0; i < s; ++i) {
        for (int j = 0; j < s; ++j) {
            if (m.at(i, j).is_finite() && coord(i) - coord(j) > m.at(i, j).value()) {
                return false;
            }
        }
    }
    return true;
}

inline std::vector<mpq_class> oct_witness(const OctMatrix& m) {
    std::vector<mpq_class> vals;  // x_0..x_{n-1}
    const int n = m.vars();
    for (int k = 0; k < n; ++k) {
        std::optional<mpq_class> lo, hi;
        auto upd_hi = [&](const mpq_class& h) {
            if (!hi || h < *hi) {
                hi = h;
            }
        };
        auto upd_lo = [&](const mpq_class& l) {
            if (!lo || *lo < l) {
                lo = l;
            }
        };
        if (m.at(2 * k, 2 * k + 1).is_finite()) {
            upd_hi(m.at(2 * k, 2 * k + 1).value() / 2);
        }
        if (m.at(2 * k + 1, 2 * k).is_finite()) {
            upd_lo(-m.at(2 * k + 1, 2 * k).value() / 2);
        }
        for (int l = 0; l < k; ++l) {
            // x_k - x_l <= c and x_k + x_l <= c give upper bounds; their
            // mirrored forms give lower bounds.
            if (m.at(2 * k, 2 * l).is_finite()) {
                upd_hi(vals[l] + m.at(2 * k, 2 * l).value());
            }
            if (m.at(2 * k, 2 * l + 1).is_finite()) {
                upd_hi(-vals[l] + m.at(2 * k, 2 * l + 1).value());
            }
            if (m.at(2 * l, 2 * k).is_finite()) {
                upd_lo(vals[l] - m.at(2 * l, 2 * k).value());
            }
            if (m.at(2 * k + 1, 2 * l).is_finite()) {
                upd_lo(-vals[l] - m.at(2 * k + 1, 2 * l).value());
            }
        }
        mpq_class v;
        if (lo && hi) {
            v = (*lo + *hi) / 2;
        } else if (lo) {
            v = *lo;
        } else if (hi) {
            v = *hi;
        }
        vals.push_back(v);
    }
    return vals;
}

inline bool oct_satisfies_exact(const OctMatrix& m, const std::vector<mpq_class>& vals) {
    const int s = m.size();
    auto coord = [&](int i) { return i % 2 == 0 ? vals[i / 2] : mpq_class(-vals[i / 2]); };
    for (int i = 0; i < s; ++i) {
        for (int j = 0; j < s; ++j) {
            if (i != j && m.at(i, j).is_finite() &&
                coord(i) - coord(j) > m.at(i, j).value()) {
                return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Greedy-deletion reduction oracle: drop each constraint in order, re-close,
// keep it only when the shape grows. Uses the library closure, which is
// verified separately against the relaxation oracle.
// ---------------------------------------------------------------------------
inline std::vector<Constraint> greedy_deletion_reduce(const Shape& s) {
    std::vector<Constraint> cs = to_constraints(s);
    std::vector<bool> alive(cs.size(), true);
    for (std::size_t c = 0; c < cs.size(); ++c) {
        std::vector<Constraint> rest;
        for (std::size_t t = 0; t < cs.size(); ++t) {
            if (t != c && alive[t]) {
                rest.push_back(cs[t]);
            }
        }
        if (close(from_constraints(s.vars(), rest)) == s) {
            alive[c] = false;
        }
    }
    std::vector<Constraint> kept;
    for (std::size_t c = 0; c < cs.size(); ++c) {
        if (alive[c]) {
            kept.push_back(cs[c]);
        }
    }
    return kept;
}

// ---------------------------------------------------------------------------
// Random generators (deterministic via wrshapes::Rng).
// ---------------------------------------------------------------------------
inline Dbm random_dbm(Rng& rng, int n, long mag, int fill_num = 1, int fill_den = 2) {
    Dbm m = Dbm::top(n);
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            if (i != j && rng.chance(fill_num, fill_den)) {
                m.set(i, j, Bound(rng.uniform(-mag, mag)));
            }
        }
    }
    return m;
}

inline OctMatrix random_oct(Rng& rng, int n, long mag, int fill_num = 1, int fill_den = 2) {
    OctMatrix m = OctMatrix::top(n);
    const int s = 2 * n;
    for (int i = 0; i < s; ++i) {
        for (int j = 0; j < s; ++j) {
            if (i != j && rng.chance(fill_num, fill_den)) {
                Bound b(rng.uniform(-mag, mag));
                if (b < m.at(i, j)) {
                    m.set(i, j, b);
                }
                if (b < m.at(oct_bar(j), oct_bar(i))) {
                    m.set(oct_bar(j), oct_bar(i), b);
                }
            }
        }
    }
    return m;
}

inline Shape random_shape(Rng& rng, int n, long mag) {
    for (;;) {
        Shape s = close(random_dbm(rng, n, mag));
        if (!s.is_empty()) {
            return s;
        }
    }
}

inline OctShape random_oct_shape(Rng& rng, int n, long mag) {
    for (;;) {
        OctShape s = strong_close(random_oct(rng, n, mag));
        if (!s.is_empty()) {
            return s;
        }
    }
}

// A shape with at least one variable equality (a zero cycle).
inline Shape random_shape_with_equality(Rng& rng, int n, long mag) {
    for (;;) {
        Dbm m = random_dbm(rng, n, mag, 1, 3);
        int a = static_cast<int>(rng.uniform(0, n));
        int b = static_cast<int>(rng.uniform(0, n));
        if (a == b) {
            b = (a + 1) % (n + 1);
        }
        long c = rng.uniform(-mag, mag);
        m.set(a, b, Bound(c));
        m.set(b, a, Bound(-c));
        Shape s = close(m);
        if (!s.is_empty() && s.matrix().at(a, b) + s.matrix().at(b, a) == Bound(0L)) {
            return s;
        }
    }
}

inline OctShape random_oct_shape_with_equality(Rng& rng, int n, long mag) {
    for (;;) {
        OctMatrix m = random_oct(rng, n, mag, 1, 3);
        int k = static_cast<int>(rng.uniform(0, n - 1));
        long c = rng.uniform(-mag, mag);
        // Pin x_k = c.
        m.set(2 * k, 2 * k + 1, Bound(2 * c));
        m.set(2 * k + 1, 2 * k, Bound(-2 * c));
        OctShape s = strong_close(m);
        if (!s.is_empty()) {
            return s;
        }
    }
}

// Monotone ascending shape sequence: start from a random shape and raise one
// random finite cell per step, re-closing.
template <typename S, typename RaiseFn, typename CloseFn>
std::vector<S> ascending_sequence(Rng& rng, const S& start, int steps, RaiseFn raise,
                                  CloseFn reclose) {
    std::vector<S> out{start};
    S cur = start;
    for (int k = 0; k < steps; ++k) {
        auto m = cur.matrix();
        const int sz = m.size();
        int i = static_cast<int>(rng.uniform(0, sz - 1));
        int j = static_cast<int>(rng.uniform(0, sz - 1));
        if (i != j && m.at(i, j).is_finite()) {
            raise(m, i, j, m.at(i, j) + Bound(rng.uniform(1, 3)));
        }
        cur = reclose(m);
        out.push_back(cur);
    }
    return out;
}

}  // namespace testsupport
