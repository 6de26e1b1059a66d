#pragma once

#include "ortho/hyperbolic.hpp"

#include <cstdint>
#include <optional>

namespace ortho {

/// 2n ordered columns (u_1, u_1#, ..., u_n, u_n#) whose Gram matrix is
/// exactly the hyperbolic form; validated on construction.
struct HyperbolicBasis {
    HyperbolicSpace space;
    std::vector<Vec> columns;

    static HyperbolicBasis checked(const HyperbolicSpace& space, std::vector<Vec> columns);
    Mat as_matrix() const { return Mat::from_columns(space.ring, space.dim(), columns); }
};

/// Extends a totally isotropic unimodular sequence of length p <= n to a
/// hyperbolic basis whose odd-position columns 1..p are exactly the input.
/// Duals are solved from the surjection x -> (<u_i, x>)_i, then corrected
/// to be isotropic and mutually orthogonal; the Gram matrix is checked
/// before returning.
HyperbolicBasis hyperbolic_complete(const IsotropicSequence& seq);

/// g in O_{n,n} with g * e_i = seq[i] for i = 1..p; the matrix of the
/// completed hyperbolic basis.
OrthogonalElement transitivity_witness(const IsotropicSequence& seq);

/// Basis of the orthogonal complement of span(basis); requires the Gram
/// matrix of the input to be nondegenerate (unit determinant). The
/// complement has rank 2n - m and the form restricts nondegenerately.
std::vector<Vec> orth_complement(const HyperbolicSpace& space, const std::vector<Vec>& basis);

/// T = (w_1..w_k'), S = (v_1..v_k), k <= k', both totally isotropic bases:
/// true iff the k' x k pairing matrix (<w_i, v_j>) has a left inverse,
/// which is returned as the witness.
std::optional<Mat> is_general_position(const HyperbolicSpace& space, const std::vector<Vec>& T,
                                       const std::vector<Vec>& S);

struct GeneralPositionCertificate {
    HyperbolicSpace space;
    std::vector<Vec> w_basis;                        // n columns, totally isotropic summand
    std::vector<std::vector<Vec>> targets;           // echo of the inputs
    std::vector<Mat> witnesses;                      // one left inverse per target
    std::vector<std::vector<Vec>> intersections;     // basis of W cap V_i^perp, rank n - k_i
    std::uint64_t trial_index = 0;
    std::uint64_t seed = 0;
    std::string via;                                 // "standard" | "search" | "exhaustive"
};

inline constexpr std::uint64_t kDefaultGpBudget = 10'000;

/// Searches for a rank-n totally isotropic summand in general position with
/// every target (each of size <= n-1). Seed-driven randomized search over
/// images of the standard Lagrangian under products of named generators,
/// with an exhaustive scan over all Lagrangians as fallback when 2n <= 4
/// and the ring is F_3 or F_5. nullopt = search exhausted, which is a legal
/// outcome over small finite rings.
std::optional<GeneralPositionCertificate> find_general_position(
    const HyperbolicSpace& space, const std::vector<std::vector<Vec>>& targets, std::uint64_t seed,
    std::uint64_t budget = kDefaultGpBudget);

/// Re-runs every pairing check of a certificate from scratch.
bool verify_certificate(const GeneralPositionCertificate& cert);

/// Basis of {w in span(W) : <w, v> = 0 for all v in S}; W a basis of a
/// totally isotropic summand, pairing matrix of full residue column rank.
std::vector<Vec> intersect_with_perp(const HyperbolicSpace& space, const std::vector<Vec>& W,
                                     const std::vector<Vec>& S);

}  // namespace ortho
