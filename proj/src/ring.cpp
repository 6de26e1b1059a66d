#include "ortho/ring.hpp"

namespace ortho {

namespace {

bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace

RingDesc RingDesc::make(std::int64_t p, std::int64_t k) {
    if (p == 2) throw std::invalid_argument("2 must be invertible: p = 2 is not supported");
    if (!is_prime(p)) throw std::invalid_argument("p must be an odd prime, got " + std::to_string(p));
    if (k < 1) throw std::invalid_argument("exponent k must be >= 1");
    std::int64_t m = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        if (m > (std::int64_t{1} << 31) / p)
            throw std::invalid_argument("modulus p^k too large");
        m *= p;
    }
    return RingDesc{p, k, m};
}

std::int64_t RingDesc::inv(std::int64_t x) const {
    x = reduce(x);
    if (!is_unit(x)) throw NotAUnitError("not a unit: " + std::to_string(x) + " in " + str());
    // extended Euclid: u*x + v*modulus = 1
    std::int64_t a = x, b = modulus, u = 1, v = 0;
    while (b != 0) {
        std::int64_t q = a / b;
        std::int64_t t = a - q * b;
        a = b;
        b = t;
        t = u - q * v;
        u = v;
        v = t;
    }
    return reduce(u);
}

int RingDesc::valuation(std::int64_t x) const noexcept {
    x = reduce(x);
    if (x == 0) return static_cast<int>(k);
    int t = 0;
    while (x % p == 0) {
        x /= p;
        ++t;
    }
    return t;
}

std::string RingDesc::str() const {
    if (k == 1) return "F_" + std::to_string(p);
    return "Z/" + std::to_string(modulus);
}

}  // namespace ortho
