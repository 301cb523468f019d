// Copyright (c) wrshapes contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "../src/domain_traits.hpp"
#include "support.hpp"

using namespace wrshapes;
using namespace testsupport;

namespace {

OctShape oct_of(int n, const std::vector<OctConstraint>& cs) {
    return strong_close(oct_from_constraints(n, cs));
}

OctConstraint upper(int k, long c) { return OctConstraint{1, 0, k, k, Bound(c)}; }
OctConstraint lower(int k, long c) { return OctConstraint{-1, 0, k, k, Bound(-c)}; }  // x_k >= c

}  // namespace

TEST_CASE("oct_from_constraints placement") {
    // x + y <= 4 lands at (0,3) and its mirror (2,1).
    OctMatrix m = oct_from_constraints(2, {{OctConstraint{1, 1, 0, 1, Bound(4L)}}});
    CHECK(m.at(0, 3) == Bound(4L));
    CHECK(m.at(2, 1) == Bound(4L));
    CHECK(m.is_coherent());

    // x <= 3 doubles to (0,1) = 6.
    CHECK(oct_from_constraints(1, {{upper(0, 3)}}).at(0, 1) == Bound(6L));

    // -x <= -1 doubles to (1,0) = -2.
    CHECK(oct_from_constraints(1, {{lower(0, 1)}}).at(1, 0) == Bound(-2L));

    CHECK_THROWS_AS(oct_from_constraints(1, {{OctConstraint{0, 0, 0, 0, Bound(1L)}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(oct_from_constraints(1, {{OctConstraint{1, 1, 0, 1, Bound(1L)}}}),
                    std::invalid_argument);
}

TEST_CASE("strong_close: top is a fixpoint") {
    OctShape s = strong_close(OctMatrix::top(2));
    REQUIRE(!s.is_empty());
    CHECK(s.matrix() == OctMatrix::top(2));
}

TEST_CASE("strengthening derives x + y <= 3 from x <= 1 and y <= 2") {
    OctShape s = oct_of(2, {upper(0, 1), upper(1, 2)});
    REQUIRE(!s.is_empty());
    CHECK(s.matrix().at(0, 3) == Bound(3L));
    CHECK(s.matrix().at(2, 1) == Bound(3L));
    // Grid oracle: x + y <= 3 is entailed, and tight (a grid point attains 3).
    auto pts = grid_points(2, 6, 1);
    OctMatrix raw = oct_from_constraints(2, {{upper(0, 1), upper(1, 2)}});
    bool attained = false;
    for (const auto& p : pts) {
        if (oct_satisfies(raw, p)) {
            CHECK(p[0] + p[1] <= 6);  // doubled coordinates
            attained = attained || (p[0] + p[1] == 6);
        }
    }
    CHECK(attained);
}

TEST_CASE("contradictory unary pair is Empty") {
    // x <= 1 and x >= 2.
    CHECK(oct_of(1, {upper(0, 1), lower(0, 2)}).is_empty());
}

TEST_CASE("oct lattice basics") {
    OctShape s = oct_of(2, {upper(0, 1)});
    CHECK(oct_join(OctShape::empty(2), s) == s);
    CHECK(oct_leq(OctShape::empty(2), s));
    CHECK(oct_leq(s, OctShape::top(2)));

    // {x + y <= 3} meet {-x - y <= -4} is Empty.
    OctShape a = oct_of(2, {{OctConstraint{1, 1, 0, 1, Bound(3L)}}});
    OctShape b = oct_of(2, {{OctConstraint{-1, -1, 0, 1, Bound(-4L)}}});
    CHECK(oct_meet(a, b).is_empty());

    CHECK_THROWS_AS(oct_leq(s, OctShape::top(1)), std::invalid_argument);
}

TEST_CASE("oct_forget uses strong closure inferences before projecting") {
    // {x >= 1, x + y <= 3}: strong closure derives y <= 2 before projection.
    OctShape s = oct_of(2, {lower(0, 1), OctConstraint{1, 1, 0, 1, Bound(3L)}});
    REQUIRE(!s.is_empty());
    OctShape f = oct_forget(s, 1);
    CHECK(f.matrix().at(2, 3) == Bound(4L));  // y <= 2, doubled
    // Integer-point oracle on the projection: y is in the projection iff
    // some x >= 1 satisfies x + y <= 3, i.e. iff y <= 2.
    for (long y2 = -12; y2 <= 12; ++y2) {
        bool in_proj = y2 <= 4;
        CHECK(in_proj == oct_satisfies(f.matrix(), {0, y2}));
    }
    CHECK_THROWS_AS(oct_forget(OctShape::empty(2), 1), std::invalid_argument);
}

TEST_CASE("oct_to_constraints halves unary cells and round trips") {
    OctShape s = oct_of(2, {upper(0, 1), upper(1, 2)});
    auto cs = oct_to_constraints(s);
    bool saw_unary = false;
    for (const auto& c : cs) {
        if (c.a == 1 && c.b == 0 && c.k == 0) {
            CHECK(c.bound == Bound(1L));
            saw_unary = true;
        }
    }
    CHECK(saw_unary);
    CHECK(oct_of(2, cs) == s);
    CHECK_THROWS_AS(oct_to_constraints(OctShape::empty(1)), std::invalid_argument);
}

TEST_CASE("strong_close is a kernel operator and preserves coherence (random)") {
    Rng rng(0x0c7a);
    for (int t = 0; t < 150; ++t) {
        int n = static_cast<int>(rng.uniform(0, 2));
        OctMatrix m = random_oct(rng, n, 8);
        OctShape s = strong_close(m);
        if (s.is_empty()) {
            continue;
        }
        CHECK(s.matrix().is_coherent());
        // Idempotent.
        CHECK(strong_close(s.matrix()) == s);
        // Entrywise reductive.
        const int sz = m.size();
        for (int i = 0; i < sz; ++i) {
            for (int j = 0; j < sz; ++j) {
                CHECK(s.matrix().at(i, j) <= m.at(i, j));
            }
        }
        // Monotone against a loosening.
        OctMatrix m2 = m;
        for (auto [i, j] : wrshapes::detail::dom<OctShape>::semantic_cells(n)) {
            if (m2.at(i, j).is_finite() && rng.chance(1, 3)) {
                Bound v = m2.at(i, j) + Bound(rng.uniform(0, 3));
                m2.set(i, j, v);
                m2.set(oct_bar(j), oct_bar(i), v);
            }
        }
        CHECK(oct_leq(s, strong_close(m2)));
    }
}

TEST_CASE("strong closure preserves the half-integer grid solution set") {
    Rng rng(0x0c7b);
    for (int t = 0; t < 80; ++t) {
        int n = static_cast<int>(rng.uniform(1, 2));
        OctMatrix m = random_oct(rng, n, 4);
        OctShape s = strong_close(m);
        auto pts = grid_points(n, 6, 1);
        auto before = satisfying_points(m, pts, oct_satisfies);
        if (s.is_empty()) {
            CHECK(before.empty());
            continue;
        }
        auto after = satisfying_points(s.matrix(), pts, oct_satisfies);
        CHECK(before == after);
        // A strongly closed octagon yields an exact rational witness.
        auto w = oct_witness(s.matrix());
        CHECK(oct_satisfies_exact(s.matrix(), w));
        CHECK(oct_satisfies_exact(m, w));
    }
}

TEST_CASE("strengthening inferences are entailed by their sources") {
    Rng rng(0x57e6);
    for (int t = 0; t < 40; ++t) {
        int n = 2;
        OctMatrix m = random_oct(rng, n, 4);
        auto pts = grid_points(n, 6, 2);
        const int sz = m.size();
        for (int i = 0; i < sz; ++i) {
            for (int j = 0; j < sz; ++j) {
                if (i == j || !m.at(i, oct_bar(i)).is_finite() ||
                    !m.at(oct_bar(j), j).is_finite()) {
                    continue;
                }
                Bound inferred = (m.at(i, oct_bar(i)) + m.at(oct_bar(j), j)).half();
                OctMatrix sources = OctMatrix::top(n);
                sources.set(i, oct_bar(i), m.at(i, oct_bar(i)));
                sources.set(oct_bar(j), j, m.at(oct_bar(j), j));
                OctMatrix with_inference = sources;
                with_inference.tighten(i, j, inferred);
                for (const auto& p : pts) {
                    if (oct_satisfies(sources, p)) {
                        CHECK(oct_satisfies(with_inference, p));
                    }
                }
            }
        }
    }
}

TEST_CASE("difference-only systems round trip through the octagon domain") {
    Rng rng(0xd1ff);
    for (int t = 0; t < 80; ++t) {
        int n = static_cast<int>(rng.uniform(1, 2));
        Dbm dm = random_dbm(rng, n, 4);
        Shape ds = close(dm);

        std::vector<OctConstraint> ocs;
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= n; ++j) {
                if (i == j || !dm.at(i, j).is_finite()) {
                    continue;
                }
                if (i > 0 && j > 0) {
                    ocs.push_back(OctConstraint{1, -1, i - 1, j - 1, dm.at(i, j)});
                } else if (j == 0) {
                    ocs.push_back(OctConstraint{1, 0, i - 1, i - 1, dm.at(i, 0)});
                } else {
                    ocs.push_back(OctConstraint{-1, 0, j - 1, j - 1, dm.at(0, j)});
                }
            }
        }
        OctShape os = strong_close(oct_from_constraints(n, ocs));
        CHECK(ds.is_empty() == os.is_empty());
        if (ds.is_empty()) {
            continue;
        }
        // Closed DBM entries agree with the strongly closed octagon cells.
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= n; ++j) {
                if (i == j) {
                    continue;
                }
                Bound expected = ds.matrix().at(i, j);
                if (i > 0 && j > 0) {
                    CHECK(os.matrix().at(2 * (i - 1), 2 * (j - 1)) == expected);
                } else if (j == 0) {
                    CHECK(os.matrix().at(2 * (i - 1), 2 * (i - 1) + 1) ==
                          (expected.is_finite() ? expected.doubled() : expected));
                } else {
                    CHECK(os.matrix().at(2 * (j - 1) + 1, 2 * (j - 1)) ==
                          (expected.is_finite() ? expected.doubled() : expected));
                }
            }
        }
    }
}

TEST_CASE("octagon n = 0 is legal") {
    OctShape s = OctShape::top(0);
    CHECK(!s.is_empty());
    CHECK(strong_close(OctMatrix::top(0)) == s);
    CHECK(oct_to_constraints(s).empty());
}
