// Copyright (c) wrshapes contributors.
// SPDX-License-Identifier: Apache-2.0
#include "wrshapes/dbm.hpp"

#include <stdexcept>
#include <string>

namespace wrshapes {

Dbm::Dbm(int vars) : vars_(vars) {
    if (vars < 0) {
        throw std::invalid_argument("Dbm: negative dimension");
    }
    int s = vars + 1;
    cells_.assign(static_cast<std::size_t>(s) * s, Bound::infinity());
    for (int i = 0; i < s; ++i) {
        set(i, i, Bound(0L));
    }
}

void Dbm::tighten(int i, int j, const Bound& b) {
    if (b < at(i, j)) {
        set(i, j, b);
    }
}

const Dbm& Shape::matrix() const {
    if (!mat_) {
        throw std::logic_error("Shape::matrix on Empty");
    }
    return *mat_;
}

Shape wrap_closed(Dbm m) {
    int n = m.vars();
    return Shape(n, std::move(m));
}

Shape close(const Dbm& m) {
    const int s = m.size();
    Dbm d = m;
    const Bound zero(0L);
    for (int i = 0; i < s; ++i) {
        if (zero < d.at(i, i)) {
            d.set(i, i, zero);
        }
    }
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
                d.tighten(i, j, ik + kj);
            }
        }
    }
    for (int i = 0; i < s; ++i) {
        if (d.at(i, i) < zero) {
            return Shape::empty(m.vars());
        }
        d.set(i, i, zero);
    }
    return wrap_closed(std::move(d));
}

Dbm from_constraints(int vars, std::span<const Constraint> cs) {
    Dbm m = Dbm::top(vars);
    for (const Constraint& c : cs) {
        if (c.i < 0 || c.i > vars || c.j < 0 || c.j > vars) {
            throw std::invalid_argument("from_constraints: index out of range");
        }
        if (c.i == c.j) {
            throw std::invalid_argument("from_constraints: diagonal constraint");
        }
        if (!c.bound.is_finite()) {
            throw std::invalid_argument("from_constraints: infinite bound");
        }
        m.tighten(c.i, c.j, c.bound);
    }
    return m;
}

namespace {

void require_same_dim(const Shape& a, const Shape& b, const char* op) {
    if (a.vars() != b.vars()) {
        throw std::invalid_argument(std::string(op) + ": dimension mismatch");
    }
}

}  // namespace

bool leq(const Shape& a, const Shape& b) {
    require_same_dim(a, b, "leq");
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

Shape join(const Shape& a, const Shape& b) {
    require_same_dim(a, b, "join");
    if (a.is_empty()) {
        return b;
    }
    if (b.is_empty()) {
        return a;
    }
    // The entrywise max of two closed matrices is closed.
    const int s = a.matrix().size();
    Dbm m = a.matrix();
    for (int i = 0; i < s; ++i) {
        for (int j = 0; j < s; ++j) {
            if (m.at(i, j) < b.matrix().at(i, j)) {
                m.set(i, j, b.matrix().at(i, j));
            }
        }
    }
    return wrap_closed(std::move(m));
}

Shape meet(const Shape& a, const Shape& b) {
    require_same_dim(a, b, "meet");
    if (a.is_empty() || b.is_empty()) {
        return Shape::empty(a.vars());
    }
    const int s = a.matrix().size();
    Dbm m = a.matrix();
    for (int i = 0; i < s; ++i) {
        for (int j = 0; j < s; ++j) {
            m.tighten(i, j, b.matrix().at(i, j));
        }
    }
    return close(m);
}

Shape forget(const Shape& s, int v) {
    if (s.is_empty()) {
        throw std::invalid_argument("forget: Empty input");
    }
    if (v < 1 || v > s.vars()) {
        throw std::invalid_argument("forget: variable out of range");
    }
    // Clearing row and column v of a closed matrix keeps it closed.
    Dbm m = s.matrix();
    const int sz = m.size();
    for (int t = 0; t < sz; ++t) {
        if (t != v) {
            m.set(v, t, Bound::infinity());
            m.set(t, v, Bound::infinity());
        }
    }
    return wrap_closed(std::move(m));
}

std::vector<Constraint> to_constraints(const Shape& s) {
    if (s.is_empty()) {
        throw std::invalid_argument("to_constraints: Empty input");
    }
    std::vector<Constraint> out;
    const int sz = s.matrix().size();
    for (int i = 0; i < sz; ++i) {
        for (int j = 0; j < sz; ++j) {
            if (i != j && s.matrix().at(i, j).is_finite()) {
                out.push_back(Constraint{i, j, s.matrix().at(i, j)});
            }
        }
    }
    return out;
}

}  // namespace wrshapes
