#pragma once

#include "ortho/hyperbolic.hpp"

#include <random>

namespace ortho {

/// Seeded, deterministic sampler. Orthogonal elements are drawn uniformly:
/// g = w * t with w the transitivity witness of a uniform element of IU_1
/// and t uniform over the stabilizer T_1 (x uniform, B recursively
/// uniform, c determined) -- the coset decomposition makes this exactly
/// uniform over O_{n,n}.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t below(std::uint64_t bound);  // uniform in [0, bound)
    std::int64_t element(const RingDesc& ring);
    std::int64_t unit(const RingDesc& ring);
    Vec vector(const RingDesc& ring, int dim);
    Vec isotropic_unimodular_vector(const HyperbolicSpace& space);  // rejection
    IsotropicSequence iu_sequence(const HyperbolicSpace& space, int k);  // g * (e_1..e_k)
    OrthogonalElement orthogonal(const HyperbolicSpace& space);
    std::int64_t integer_in(std::int64_t lo, std::int64_t hi);  // inclusive

    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace ortho
