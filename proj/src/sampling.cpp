#include "ortho/sampling.hpp"

#include "ortho/stabilizer.hpp"
#include "ortho/witt.hpp"

namespace ortho {

std::uint64_t Sampler::below(std::uint64_t bound) {
    return bound == 0 ? 0 : rng_() % bound;
}

std::int64_t Sampler::element(const RingDesc& ring) {
    return static_cast<std::int64_t>(below(static_cast<std::uint64_t>(ring.modulus)));
}

std::int64_t Sampler::unit(const RingDesc& ring) {
    for (;;) {
        std::int64_t a = element(ring);
        if (ring.is_unit(a)) return a;
    }
}

Vec Sampler::vector(const RingDesc& ring, int dim) {
    Vec v(static_cast<std::size_t>(dim));
    for (auto& t : v) t = element(ring);
    return v;
}

Vec Sampler::isotropic_unimodular_vector(const HyperbolicSpace& space) {
    for (;;) {
        Vec v = vector(space.ring, space.dim());
        if (!space.is_isotropic(v)) continue;
        bool unim = false;
        for (auto t : v)
            if (space.ring.is_unit(t)) {
                unim = true;
                break;
            }
        if (unim) return v;
    }
}

OrthogonalElement Sampler::orthogonal(const HyperbolicSpace& space) {
    const RingDesc& ring = space.ring;
    if (space.n == 0) return OrthogonalElement{space, Mat(ring, 0, 0)};
    Vec v = isotropic_unimodular_vector(space);
    OrthogonalElement w = transitivity_witness(IsotropicSequence(space, {v}));
    HyperbolicSpace sub{ring, space.n - 1};
    OrthogonalElement B = orthogonal(sub);
    Vec x = vector(ring, sub.dim());
    std::int64_t c = ring.neg(ring.mul(ring.half(), sub.inner(x, x)));
    OrthogonalElement t =
        build_stabilizer_element(StabilizerParams::make(space, 1, {{c}}, {x}, B.matrix));
    return w * t;
}

IsotropicSequence Sampler::iu_sequence(const HyperbolicSpace& space, int k) {
    if (k > space.n) throw std::invalid_argument("iu_sequence: k must be <= n");
    OrthogonalElement g = orthogonal(space);
    std::vector<Vec> vs;
    for (int i = 1; i <= k; ++i) vs.push_back(g.apply(space.e(i)));
    return IsotropicSequence(space, std::move(vs));
}

std::int64_t Sampler::integer_in(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
}

}  // namespace ortho
