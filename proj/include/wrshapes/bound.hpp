// Copyright (c) wrshapes contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace wrshapes {

// An upper bound: an exact rational or +infinity. There is no -infinity;
// an absent constraint is always encoded as +infinity.
class Bound {
  public:
    Bound() : finite_(true), q_(0) {}
    explicit Bound(long v) : finite_(true), q_(v) {}
    explicit Bound(mpq_class q) : finite_(true), q_(std::move(q)) {}

    static Bound infinity() {
        Bound b;
        b.finite_ = false;
        b.q_ = 0;
        return b;
    }
    static Bound ratio(long num, long den);

    bool is_finite() const { return finite_; }

    // Finite bounds only; throws std::logic_error on +infinity.
    const mpq_class& value() const;

    Bound half() const;     // exact rational halving; infinity stays infinity
    Bound doubled() const;  // infinity stays infinity
    Bound negated() const;  // finite bounds only

    // Canonical text: "inf", an integer, or "p/q" in lowest terms with q > 0.
    std::string str() const;
    static std::optional<Bound> parse(std::string_view text);

    friend Bound operator+(const Bound& a, const Bound& b);

    friend bool operator==(const Bound& a, const Bound& b);
    friend bool operator!=(const Bound& a, const Bound& b) { return !(a == b); }
    friend bool operator<(const Bound& a, const Bound& b);
    friend bool operator<=(const Bound& a, const Bound& b);
    friend bool operator>(const Bound& a, const Bound& b) { return b < a; }
    friend bool operator>=(const Bound& a, const Bound& b) { return b <= a; }

  private:
    bool finite_;
    mpq_class q_;  // zero when infinite
};

}  // namespace wrshapes
