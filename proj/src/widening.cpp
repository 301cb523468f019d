// Copyright (c) wrshapes contributors.
// SPDX-License-Identifier: Apache-2.0
#include "wrshapes/widening.hpp"

#include <stdexcept>

#include "domain_traits.hpp"

namespace wrshapes {

namespace {

template <typename M>
M widen_entrywise(const M& m1, const M& m2) {
    if (m1.vars() != m2.vars()) {
        throw std::invalid_argument("widen_syntactic: dimension mismatch");
    }
    M out = m1;
    const int s = m1.size();
    for (int i = 0; i < s; ++i) {
        for (int j = 0; j < s; ++j) {
            if (i != j && !(m2.at(i, j) <= m1.at(i, j))) {
                out.set(i, j, Bound::infinity());
            }
        }
    }
    return out;
}

template <typename S>
void check_widen_pre(const S& s1, const S& s2) {
    if (s1.vars() != s2.vars()) {
        throw std::invalid_argument("widen: dimension mismatch");
    }
    if (!detail::dom<S>::leq(s1, s2)) {
        throw std::invalid_argument("widen: first argument not contained in second");
    }
}

template <typename S>
S widen_standard_impl(const S& s1, const typename detail::dom<S>::matrix& rep2) {
    using D = detail::dom<S>;
    auto reduced = D::reduce(s1);
    auto base = D::place(s1.vars(), reduced.kept);
    return D::close(widen_entrywise(base, rep2));
}

// Install, per cell the widening sent to +inf, the smallest threshold that
// the second argument still satisfies; then re-close.
template <typename S>
S widen_upto_impl(const S& s1, const S& s2, const ThresholdSet& t,
                  const WideningStrategy& strategy) {
    using D = detail::dom<S>;
    check_widen_pre(s1, s2);
    if (s1.is_empty()) {
        return s2;
    }
    typename D::matrix w = strategy.kind == WideningStrategy::Kind::Standard
                               ? widen_entrywise(D::place(s1.vars(), D::reduce(s1).kept),
                                                 s2.matrix())
                               : widen_entrywise(s1.matrix(), s2.matrix());
    const int sz = w.size();
    for (int i = 0; i < sz; ++i) {
        for (int j = 0; j < sz; ++j) {
            if (i == j || w.at(i, j).is_finite()) {
                continue;
            }
            const Bound& floor = s2.matrix().at(i, j);
            if (!floor.is_finite()) {
                continue;
            }
            if (auto rescue = t.smallest_at_least(i, j, floor)) {
                w.set(i, j, *rescue);
            }
        }
    }
    return D::close(w);
}

}  // namespace

Dbm widen_syntactic(const Dbm& m1, const Dbm& m2) {
    return widen_entrywise(m1, m2);
}

OctMatrix widen_syntactic(const OctMatrix& m1, const OctMatrix& m2) {
    return widen_entrywise(m1, m2);
}

Shape widen_standard(const Shape& s1, const Shape& s2) {
    check_widen_pre(s1, s2);
    if (s1.is_empty()) {
        return s2;
    }
    return widen_standard_impl(s1, s2.matrix());
}

OctShape widen_standard(const OctShape& s1, const OctShape& s2) {
    check_widen_pre(s1, s2);
    if (s1.is_empty()) {
        return s2;
    }
    return widen_standard_impl(s1, s2.matrix());
}

Shape widen_standard_rep(const Shape& s1, const Dbm& rep2) {
    Shape s2 = close(rep2);
    check_widen_pre(s1, s2);
    if (s1.is_empty()) {
        return s2;
    }
    return widen_standard_impl(s1, rep2);
}

OctShape widen_standard_rep(const OctShape& s1, const OctMatrix& rep2) {
    OctShape s2 = strong_close(rep2);
    check_widen_pre(s1, s2);
    if (s1.is_empty()) {
        return s2;
    }
    return widen_standard_impl(s1, rep2);
}

Shape widen_upto(const Shape& s1, const Shape& s2, const ThresholdSet& t,
                 const WideningStrategy& strategy) {
    return widen_upto_impl(s1, s2, t, strategy);
}

OctShape widen_upto(const OctShape& s1, const OctShape& s2, const ThresholdSet& t,
                    const WideningStrategy& strategy) {
    return widen_upto_impl(s1, s2, t, strategy);
}

template <typename S>
S WideningPoint<S>::apply(const S& current, const S& target) {
    using D = detail::dom<S>;
    if (current.is_empty()) {
        return target;  // bottom rule, not a widening application
    }
    if (applications_ < strategy_.delay) {
        ++applications_;
        return D::join(current, target);
    }
    ++applications_;
    const bool has_thresholds = strategy_.thresholds && !strategy_.thresholds->empty();
    if (strategy_.kind == WideningStrategy::Kind::Standard) {
        return has_thresholds ? widen_upto(current, target, *strategy_.thresholds, strategy_)
                              : widen_standard(current, target);
    }
    if (strategy_.close_interleave) {
        // Canonicalize every iterate: the divergent configuration.
        return has_thresholds ? widen_upto(current, target, *strategy_.thresholds, strategy_)
                              : D::close(widen_entrywise(current.matrix(), target.matrix()));
    }
    // Raw iteration: entries only ever move to +inf (or to a threshold),
    // so the sequence of raw matrices stabilizes on its own.
    if (!raw_) {
        raw_ = current.matrix();
    }
    auto next = widen_entrywise(*raw_, target.matrix());
    if (has_thresholds) {
        const int sz = next.size();
        for (int i = 0; i < sz; ++i) {
            for (int j = 0; j < sz; ++j) {
                if (i == j || next.at(i, j).is_finite()) {
                    continue;
                }
                const Bound& floor = target.matrix().at(i, j);
                if (!floor.is_finite()) {
                    continue;
                }
                if (auto rescue = strategy_.thresholds->smallest_at_least(i, j, floor)) {
                    next.set(i, j, *rescue);
                }
            }
        }
    }
    raw_ = std::move(next);
    return D::close(*raw_);
}

template class WideningPoint<Shape>;
template class WideningPoint<OctShape>;

}  // namespace wrshapes
