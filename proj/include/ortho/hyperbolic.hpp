#pragma once

#include "ortho/linalg.hpp"
#include "ortho/mat.hpp"

#include <compare>
#include <optional>

namespace ortho {

/// R^{2n} with the standard hyperbolic symmetric bilinear form.
/// Basis order is fixed globally as e_1, f_1, ..., e_n, f_n with
/// <e_i, f_j> = delta_ij and <e_i, e_j> = <f_i, f_j> = 0.
struct HyperbolicSpace {
    RingDesc ring;
    int n = 0;

    int dim() const { return 2 * n; }

    Mat gram() const;       // the form matrix, block sum of n antidiagonal 2x2 blocks
    Vec e(int i) const;     // 1 <= i <= n
    Vec f(int i) const;

    std::int64_t inner(const Vec& u, const Vec& v) const;

    bool is_isotropic(const Vec& v) const { return inner(v, v) == 0; }
    bool is_totally_isotropic(const std::vector<Vec>& seq) const;
    // full residue rank of the column matrix; equivalent to the
    // subsequence-wise definition over a local ring since linear
    // independence over the residue field is hereditary
    bool is_unimodular(const std::vector<Vec>& seq) const;
    bool is_isotropic_unimodular(const std::vector<Vec>& seq) const;

    friend bool operator==(const HyperbolicSpace&, const HyperbolicSpace&) = default;
    friend auto operator<=>(const HyperbolicSpace&, const HyperbolicSpace&) = default;
};

/// A validated element of IU_k(R^{2n}): ordered, totally isotropic,
/// unimodular. Cannot be constructed invalid.
class IsotropicSequence {
public:
    IsotropicSequence(HyperbolicSpace space, std::vector<Vec> vectors);
    static IsotropicSequence empty(const HyperbolicSpace& space) { return IsotropicSequence(space, {}); }

    int length() const { return static_cast<int>(vecs_.size()); }
    const std::vector<Vec>& vectors() const { return vecs_; }
    const HyperbolicSpace& space() const { return space_; }

    IsotropicSequence face(int i) const;  // drop the i-th vector, 1-based

    friend bool operator==(const IsotropicSequence&, const IsotropicSequence&) = default;
    friend auto operator<=>(const IsotropicSequence&, const IsotropicSequence&) = default;

private:
    HyperbolicSpace space_;
    std::vector<Vec> vecs_;
};

/// tA * gram * A == gram, exactly.
bool check_orthogonal(const HyperbolicSpace& space, const Mat& A);

/// The associated unit a with tA * gram * A == a * gram, or nullopt.
std::optional<std::int64_t> check_similitude(const HyperbolicSpace& space, const Mat& A);

struct OrthogonalElement {
    HyperbolicSpace space;
    Mat matrix;

    static OrthogonalElement checked(const HyperbolicSpace& space, Mat m);

    OrthogonalElement operator*(const OrthogonalElement& rhs) const;
    OrthogonalElement inverted() const;  // gram * tA * gram
    Vec apply(const Vec& v) const { return matrix.apply(v); }
    IsotropicSequence apply(const IsotropicSequence& s) const;

    friend bool operator==(const OrthogonalElement&, const OrthogonalElement&) = default;
};

struct SimilitudeElement {
    HyperbolicSpace space;
    Mat matrix;
    std::int64_t unit = 1;

    static SimilitudeElement checked(const HyperbolicSpace& space, Mat m);
};

// Named matrices.
// pair_scaling(a, k): scales e_i by a and f_i by a^{-1} on the first k
// hyperbolic pairs, identity elsewhere. Lies in O_{n,n}.
Mat pair_scaling(const HyperbolicSpace& space, std::int64_t a, int k);
// standard_similitude(a): scales all f-coordinates by a; the canonical
// similitude with associated unit a.
Mat standard_similitude(const HyperbolicSpace& space, std::int64_t a);
// a * identity; a unit. Similitude with unit a^2.
Mat scalar_matrix(const HyperbolicSpace& space, std::int64_t a);
// swaps e_i and f_i at pair i, identity elsewhere. Lies in O_{n,n}.
Mat pair_swap(const HyperbolicSpace& space, int i);
// permutation of hyperbolic pairs: pair i of the source goes to pair
// perm[i-1] (1-based values). Lies in O_{n,n}.
Mat pair_permutation(const HyperbolicSpace& space, const std::vector<int>& perm);
// 1_{2m} (+) inner: embeds O_{n,n} into O_{n+m,n+m} acting on the last
// n pairs; fixes e_1, f_1, ..., e_m, f_m of the new pairs.
Mat block_embed(const HyperbolicSpace& target, const Mat& inner, int m);

/// All elements of IU_k in lexicographic order (sequence order induced by
/// the global vector enumeration).
std::vector<IsotropicSequence> enumerate_iu(const HyperbolicSpace& space, int k,
                                            std::uint64_t cap = kDefaultVectorCap);

}  // namespace ortho
