// Copyright (c) wrshapes contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace wrshapes {

// splitmix64: tiny deterministic generator, identical output on every
// platform. All randomized behavior in the library funnels through this.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [lo, hi], inclusive.
    long uniform(long lo, long hi) {
        if (hi <= lo) {
            return lo;
        }
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long>(next() % span);
    }

    bool chance(int num, int den) { return uniform(0, den - 1) < num; }

  private:
    std::uint64_t state_;
};

}  // namespace wrshapes
