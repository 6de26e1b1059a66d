#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ortho {

class NotAUnitError : public std::domain_error {
    using std::domain_error::domain_error;
};

/// Arithmetic in the finite local ring Z/p^k, p an odd prime, k >= 1.
/// Elements are canonical representatives in [0, p^k); every operation
/// takes and returns canonical representatives. All arithmetic is exact.
struct RingDesc {
    std::int64_t p = 0;
    std::int64_t k = 0;
    std::int64_t modulus = 0;  // p^k

    // Rejects p = 2 (2 must be invertible), composite p, k < 1.
    static RingDesc make(std::int64_t p, std::int64_t k);

    std::int64_t reduce(std::int64_t x) const noexcept {
        std::int64_t r = x % modulus;
        return r < 0 ? r + modulus : r;
    }
    std::int64_t add(std::int64_t a, std::int64_t b) const noexcept { return (a + b) % modulus; }
    std::int64_t sub(std::int64_t a, std::int64_t b) const noexcept {
        std::int64_t r = (a - b) % modulus;
        return r < 0 ? r + modulus : r;
    }
    std::int64_t mul(std::int64_t a, std::int64_t b) const noexcept { return (a * b) % modulus; }
    std::int64_t neg(std::int64_t a) const noexcept { return a == 0 ? 0 : modulus - a; }

    // x is a unit iff p does not divide it.
    bool is_unit(std::int64_t x) const noexcept { return reduce(x) % p != 0; }

    // Multiplicative inverse of a unit; throws NotAUnitError otherwise.
    std::int64_t inv(std::int64_t x) const;

    // 2^{-1}; always exists since p is odd.
    std::int64_t half() const { return inv(2 % modulus); }

    // Image in the residue field F_p.
    std::int64_t residue(std::int64_t x) const noexcept { return reduce(x) % p; }

    // Largest t <= k with p^t dividing x; valuation(0) = k.
    int valuation(std::int64_t x) const noexcept;

    std::int64_t unit_count() const noexcept { return modulus - modulus / p; }

    std::string str() const;  // "F_3", "Z/9", ...

    friend auto operator<=>(const RingDesc&, const RingDesc&) = default;
};

}  // namespace ortho
