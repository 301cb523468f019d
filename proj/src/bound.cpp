// Copyright (c) wrshapes contributors.
// SPDX-License-Identifier: Apache-2.0
#include "wrshapes/bound.hpp"

#include <stdexcept>

namespace wrshapes {

Bound Bound::ratio(long num, long den) {
    if (den == 0) {
        throw std::invalid_argument("Bound::ratio: zero denominator");
    }
    mpq_class q(num, den);
    q.canonicalize();
    return Bound(std::move(q));
}

const mpq_class& Bound::value() const {
    if (!finite_) {
        throw std::logic_error("Bound::value on +infinity");
    }
    return q_;
}

Bound Bound::half() const {
    if (!finite_) {
        return *this;
    }
    mpq_class q = q_ / 2;
    return Bound(std::move(q));
}

Bound Bound::doubled() const {
    if (!finite_) {
        return *this;
    }
    return Bound(mpq_class(q_ * 2));
}

Bound Bound::negated() const {
    if (!finite_) {
        throw std::logic_error("Bound::negated on +infinity");
    }
    return Bound(mpq_class(-q_));
}

Bound operator+(const Bound& a, const Bound& b) {
    if (!a.finite_ || !b.finite_) {
        return Bound::infinity();
    }
    return Bound(mpq_class(a.q_ + b.q_));
}

bool operator==(const Bound& a, const Bound& b) {
    if (a.finite_ != b.finite_) {
        return false;
    }
    return !a.finite_ || a.q_ == b.q_;
}

bool operator<(const Bound& a, const Bound& b) {
    if (!a.finite_) {
        return false;  // infinity is the unique maximum
    }
    if (!b.finite_) {
        return true;
    }
    return a.q_ < b.q_;
}

bool operator<=(const Bound& a, const Bound& b) {
    return a == b || a < b;
}

std::string Bound::str() const {
    if (!finite_) {
        return "inf";
    }
    return q_.get_str();
}

std::optional<Bound> Bound::parse(std::string_view text) {
    if (text == "inf") {
        return Bound::infinity();
    }
    if (text.empty()) {
        return std::nullopt;
    }
    // mpq_class accepts "p" and "p/q"; rule out anything else explicitly so
    // that malformed tokens never parse by accident.
    std::size_t slash = text.find('/');
    auto digits_ok = [](std::string_view s) {
        if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
            s.remove_prefix(1);
        }
        if (s.empty()) {
            return false;
        }
        for (char ch : s) {
            if (ch < '0' || ch > '9') {
                return false;
            }
        }
        return true;
    };
    if (slash == std::string_view::npos) {
        if (!digits_ok(text)) {
            return std::nullopt;
        }
    } else {
        if (!digits_ok(text.substr(0, slash)) || !digits_ok(text.substr(slash + 1))) {
            return std::nullopt;
        }
    }
    mpq_class q;
    if (q.set_str(std::string(text), 10) != 0) {
        return std::nullopt;
    }
    if (q.get_den() == 0) {
        return std::nullopt;
    }
    q.canonicalize();
    return Bound(std::move(q));
}

}  // namespace wrshapes
