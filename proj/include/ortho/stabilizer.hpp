#pragma once

#include "ortho/hyperbolic.hpp"

#include <cstdint>
#include <string>

namespace ortho {

/// Parameters (c, x, B) of an element of T_k = St(e_1, ..., e_k):
/// a k x k grid c, columns x_i in R^{2(n-k)}, and B orthogonal of rank
/// n-k, subject to c^i_j + c^j_i + <x_i, x_j> = 0 for all i, j. The row
/// u_i is always derived as -tB psi x_i, never stored.
struct StabilizerParams {
    HyperbolicSpace space;  // the ambient space, rank n
    int k = 0;
    std::vector<std::vector<std::int64_t>> c;  // k x k
    std::vector<Vec> x;                        // k columns in R^{2(n-k)}
    Mat B;                                     // 2(n-k) x 2(n-k)

    // validates the parameter equations; error names the offending (i, j)
    static StabilizerParams make(const HyperbolicSpace& space, int k,
                                 std::vector<std::vector<std::int64_t>> c, std::vector<Vec> x, Mat B);

    HyperbolicSpace sub_space() const { return HyperbolicSpace{space.ring, space.n - k}; }
    friend bool operator==(const StabilizerParams&, const StabilizerParams&) = default;
};

/// Assembles the block matrix of the parametrization; the result fixes
/// e_1, ..., e_k and is orthogonal (checked).
OrthogonalElement build_stabilizer_element(const StabilizerParams& params);

/// Extracts (c, x, B) from an orthogonal element fixing e_1, ..., e_k;
/// the forced unit/zero pattern of the fixed rows and columns is checked.
StabilizerParams read_stabilizer_params(const OrthogonalElement& A, int k);

/// The projection T_k ->> O_{n-k,n-k}, A -> B block.
OrthogonalElement rho(const OrthogonalElement& A, int k);

/// Kernel membership: B block is the identity.
bool is_in_Lk(const OrthogonalElement& A, int k);

/// Conjugation by the pair scaling D_{a,k}; asserts agreement with the
/// closed form (c, x, B) -> (a^2 c, a x, B) before returning.
OrthogonalElement local_action(std::int64_t a, const OrthogonalElement& A, int k);

struct CentralExtensionReport {
    std::string ring;
    int n = 0, k = 0;
    std::string mode;  // "exhaustive" | "sampled"
    std::uint64_t checks = 0;
    bool passed = true;
    std::string counterexample;  // first failed identity, reproducing data
};

/// Verifies the short exact sequence R^(k choose 2) -> L_k -> (R^{2(n-k)})^k:
/// both arrows are homomorphisms, exactness in the middle, centrality of
/// the kernel, and the (b^2, b) equivariance weights of the unit action.
CentralExtensionReport central_extension_check(const RingDesc& ring, int n, int k, bool exhaustive,
                                               std::uint64_t samples = 10000, std::uint64_t seed = 1);

/// Kernel arrow of the central extension: upper grid entries (i < j) are
/// free, c^j_i = -c^i_j, diagonal 0, x = 0, B = 1.
OrthogonalElement kernel_extension_element(const HyperbolicSpace& space, int k, const Vec& upper_grid);

/// Quotient arrow: the tuple (x_1, ..., x_k).
std::vector<Vec> quotient_projection(const OrthogonalElement& A, int k);

struct OrbitStabilizerReport {
    std::string ring;
    int n = 0, p = 0;
    std::uint64_t iu_count = 0;       // enumeration
    std::uint64_t stabilizer_count = 0;  // enumeration of T_p
    std::uint64_t group_order = 0;    // exhaustive membership scan
    bool product_ok = false;          // iu_count * stabilizer_count == group_order
};

/// Orbit-stabilizer counting: |IU_p| * |T_p| = |O_{n,n}| with the group
/// order obtained by exhaustive membership scan over all candidate
/// matrices (column-pruned, logically complete).
OrbitStabilizerReport orbit_stabilizer_audit(const RingDesc& ring, int n, int p, int workers = 1);

/// Exhaustive membership scan; requires modulus^{2n} within the cap.
std::uint64_t orthogonal_group_order_scan(const RingDesc& ring, int n, int workers = 1,
                                          std::uint64_t column_cap = 4096);

/// All elements, by the same scan.
std::vector<Mat> enumerate_orthogonal_group(const RingDesc& ring, int n,
                                            std::uint64_t column_cap = 4096);

/// Generator BFS over reflections in unit-norm vectors; an independent
/// engine, trusted only where cross-checked against the scan.
std::uint64_t orthogonal_group_order_bfs(const RingDesc& ring, int n);

/// All elements of T_k by parameter enumeration (x tuples, free upper
/// grid, B from the scan of O_{n-k,n-k}).
std::vector<OrthogonalElement> enumerate_stabilizer(const HyperbolicSpace& space, int k);

/// Reflection in a vector of unit norm.
Mat reflection(const HyperbolicSpace& space, const Vec& v);

/// Exploratory (no acceptance weight): abelianizations of the scanned
/// groups and the map induced by the block embedding, the closest
/// machine-checkable shadow of a degree-1 differential.
struct AbelianizationReport {
    std::string ring;
    int n = 0;
    std::uint64_t group_order = 0;
    std::uint64_t commutator_order = 0;
    std::uint64_t abelianization_order = 0;
    std::vector<std::uint64_t> coset_orders;  // element orders in G^ab, sorted
};
AbelianizationReport abelianization_report(const RingDesc& ring, int n);

struct H1InclusionReport {
    AbelianizationReport source;  // O_{n-1,n-1}
    AbelianizationReport target;  // O_{n,n}
    std::uint64_t image_order = 0;
    bool injective = false;
    bool surjective = false;
};
H1InclusionReport h1_inclusion_report(const RingDesc& ring, int n);

}  // namespace ortho
