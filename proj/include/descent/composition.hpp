#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "descent/numeric.hpp"

namespace descent {

/// A subset S of [n-1] stored as a bit mask. Element i corresponds to
/// bit i-1; this convention is shared by every table and cache format.
struct DescentSet {
    int n = 1;
    u64 mask = 0;

    DescentSet() = default;
    DescentSet(int n_, u64 mask_) : n(n_), mask(mask_) {
        if (n < 1) throw std::invalid_argument("DescentSet: n must be >= 1");
        if (n <= 64 && n >= 1) {
            u64 limit = (n == 1) ? 0 : ((u64{1} << (n - 1)) - 1);
            if (mask & ~limit)
                throw std::invalid_argument("DescentSet: mask has elements outside [1, n-1]");
        }
    }

    bool contains(int i) const { return i >= 1 && i <= n - 1 && (mask >> (i - 1)) & 1; }
    int size() const { return std::popcount(mask); }

    std::vector<int> elements() const {
        std::vector<int> out;
        for (u64 m = mask; m != 0; m &= m - 1)
            out.push_back(std::countr_zero(m) + 1);
        return out;
    }
};

/// A composition of n: positive parts summing to n. Round-trips with
/// DescentSet via partial sums.
struct Composition {
    std::vector<int> parts;

    Composition() = default;
    explicit Composition(std::vector<int> p) : parts(std::move(p)) {
        for (int c : parts)
            if (c < 1) throw std::invalid_argument("Composition: parts must be positive");
    }

    int total() const {
        int t = 0;
        for (int c : parts) t += c;
        return t;
    }

    bool operator==(const Composition&) const = default;
};

inline Composition to_composition(const DescentSet& s) {
    std::vector<int> parts;
    int prev = 0;
    for (int e : s.elements()) {
        parts.push_back(e - prev);
        prev = e;
    }
    parts.push_back(s.n - prev);
    return Composition{std::move(parts)};
}

inline DescentSet to_descent_set(const Composition& c) {
    if (c.parts.empty()) throw std::invalid_argument("to_descent_set: empty composition");
    int n = c.total();
    u64 mask = 0;
    int acc = 0;
    for (std::size_t i = 0; i + 1 < c.parts.size(); ++i) {
        acc += c.parts[i];
        mask |= u64{1} << (acc - 1);
    }
    return DescentSet{n, mask};
}

/// co(S) for a raw mask, avoiding the DescentSet wrapper in hot paths.
inline Composition mask_composition(int n, u64 mask) {
    return to_composition(DescentSet{n, mask});
}

}  // namespace descent
