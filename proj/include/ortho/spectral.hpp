#pragma once

#include "ortho/complex.hpp"
#include "ortho/sampling.hpp"

#include <string>

namespace ortho {

/// Outcome of an exact matrix-identity suite. Failures carry a
/// reproducing description; every identity is exact, no tolerances.
struct KappaReport {
    std::string proposition;
    Mat kappa;
    std::vector<std::string> identities;
    std::uint64_t samples = 0;
    std::uint64_t checks = 0;
    bool passed = true;
    std::string counterexample;
};

/// Conjugation by the standard similitude B_a: preserves O_{n,n}, maps
/// IU_k to IU_k, and has associated unit a.
KappaReport kappa_check_global(const HyperbolicSpace& space, std::int64_t a, std::uint64_t samples,
                               std::uint64_t seed);

/// The scaling identity B_{a^-2} = D_{a,n} * (a^-1 * 1), triviality of
/// conjugation by scalars, and the sequence identity
/// B_{a^-2} (v_1..v_k) = D_{a,n} (a^-1 v_1, ..., a^-1 v_k).
KappaReport kappa_check_scaling(const HyperbolicSpace& space, std::int64_t a, std::uint64_t samples,
                                std::uint64_t seed);

/// Conjugation by D_{a,k} preserves T_k; D_{a,k} (a^-1 e_i) = e_i.
KappaReport kappa_check_stabilizer(const HyperbolicSpace& space, std::int64_t a, int k,
                                   std::uint64_t samples, std::uint64_t seed);

/// The q = 0 coinvariant value of d^1: the alternating face sum on orbit
/// classes, each face certified to lie in the single orbit by a
/// transitivity witness. Equals 1 for p odd and 0 for p even.
int d1_coinvariants(const RingDesc& ring, int n, int p);

/// Every enumerated element of IU_p admits a transitivity witness
/// (single-orbit certification by enumeration; used where IU_p is small).
bool verify_single_orbit(const HyperbolicSpace& space, int p, std::uint64_t cap = kDefaultVectorCap);

/// The chain map C_*(n-2)[-2] -> C_*(n): signed sum of the three padded
/// insertions (e1, e2, .), (e1, e2-e1, .), (e2, e2-e1, .).
Chain tau_map(const Chain& c);

/// The two hyperbolic-basis matrices behind the tau identities: checks
/// membership in O_{n,n}, the sequence identities against the tau images
/// of (e_1..e_{p-2}) for every 2 <= p <= n, and that both matrices
/// centralize the embedded O_{n-p,n-p} on sampled elements.
KappaReport tau_matrices_check(const RingDesc& ring, int n, std::uint64_t samples, std::uint64_t seed);

Mat tau_matrix_first(const HyperbolicSpace& space);   // e2 -> e2 - e1, f1 -> f1 + f2
Mat tau_matrix_second(const HyperbolicSpace& space);  // e1 -> e2, f2 -> -f1 variant

/// The pair-permutation matrix of the d^1 proof: A (e_1,..,^e_i,..,e_p) =
/// (e_1,..,e_{p-1}), A in O_{n,n}, and A centralizes the embedded
/// O_{n-p,n-p} on sampled elements.
KappaReport d1_permutation_check(const RingDesc& ring, int n, int p, int i, std::uint64_t samples,
                                 std::uint64_t seed);

Mat d1_permutation_matrix(const HyperbolicSpace& space, int p, int i);

}  // namespace ortho
