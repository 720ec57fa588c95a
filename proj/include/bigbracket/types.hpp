#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

namespace bigbracket {

/// Exact rational coefficient type. All arithmetic in the engine is exact.
using Rat = mpq_class;

inline std::string to_string(const Rat& q) { return q.get_str(); }

/// Unshifted bidegree (k, l), both components non-negative for any monomial.
/// The shifted bidegree is (k-1, l-1); the big bracket has shifted bidegree
/// (0, 0), i.e. it removes (1, 1) from the sum of its arguments.
struct Bidegree {
    int k = 0;
    int l = 0;

    friend Bidegree operator+(Bidegree a, Bidegree b) { return {a.k + b.k, a.l + b.l}; }
    friend bool operator==(const Bidegree&, const Bidegree&) = default;
    friend auto operator<=>(const Bidegree&, const Bidegree&) = default;

    int total() const { return k + l; }
    int parity() const { return ((k + l) % 2 + 2) % 2; }

    int shifted_k() const { return k - 1; }
    int shifted_l() const { return l - 1; }
    int shifted_total() const { return k + l - 2; }
};

/// Shifted bidegree as a value of its own, for interfaces that speak the
/// shifted language (structure components, twist functions).
struct ShiftedBidegree {
    int p = 0;
    int q = 0;

    friend bool operator==(const ShiftedBidegree&, const ShiftedBidegree&) = default;
    friend auto operator<=>(const ShiftedBidegree&, const ShiftedBidegree&) = default;

    Bidegree unshifted() const { return {p + 1, q + 1}; }
};

inline ShiftedBidegree shifted(Bidegree b) { return {b.k - 1, b.l - 1}; }

}  // namespace bigbracket
