#pragma once

#include "ortho/snf.hpp"
#include "ortho/witt.hpp"

#include <map>
#include <string>

namespace ortho {

/// Formal Z-linear combination of isotropic unimodular sequences of one
/// degree; degree 0 is Z via the empty sequence.
class Chain {
public:
    Chain(HyperbolicSpace space, int degree) : space_(space), degree_(degree) {
        if (degree < 0) throw std::invalid_argument("chain degree must be >= 0");
    }

    const HyperbolicSpace& space() const { return space_; }
    int degree() const { return degree_; }
    const std::map<IsotropicSequence, std::int64_t>& terms() const { return terms_; }

    void add_term(const IsotropicSequence& s, std::int64_t coeff);
    bool is_zero() const { return terms_.empty(); }

    Chain operator+(const Chain& rhs) const;
    Chain operator-(const Chain& rhs) const;
    Chain scaled(std::int64_t c) const;

    friend bool operator==(const Chain&, const Chain&) = default;

private:
    HyperbolicSpace space_;
    int degree_;
    std::map<IsotropicSequence, std::int64_t> terms_;
};

/// Alternating sum of face maps; degree-1 chains land on the empty
/// sequence, realizing the augmentation. Throws on degree-0 input.
Chain apply_d(const Chain& c);

/// Coefficient sum; the augmentation of a degree-1 chain.
std::int64_t augmentation_of_chain(const Chain& c);

struct HomologyGroup {
    std::int64_t free_rank = 0;
    std::vector<BigInt> torsion;  // invariant factors > 1, dividing successively
    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
    std::string str() const;
};

struct BoundaryMatrix {
    SparseIntMatrix matrix;                 // rows: IU_{k-1} (or the empty sequence), cols: IU_k
    std::vector<IsotropicSequence> rows;
    std::vector<IsotropicSequence> cols;
};

/// Matrix of d: C_k -> C_{k-1} in the canonical enumeration bases.
BoundaryMatrix boundary_matrix(const HyperbolicSpace& space, int k, std::uint64_t cap = kDefaultVectorCap);

/// H_i for i <= max_degree from Smith normal forms of the boundary
/// matrices; exact integral homology.
std::vector<HomologyGroup> homology(const HyperbolicSpace& space, int max_degree,
                                    std::uint64_t cap = kDefaultVectorCap);

class GeneralPositionUnavailable : public std::runtime_error {
    using std::runtime_error::runtime_error;
};
class FreshVectorUnavailable : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// v in span(L), unimodular, extending every support sequence to a
/// unimodular sequence; deterministic scan of span(L) in enumeration
/// order. Requires rank(L) > max support length.
Vec fresh_vector(const HyperbolicSpace& space, const std::vector<Vec>& L_basis,
                 const std::vector<std::vector<Vec>>& supports);

struct BoundCycleOptions {
    std::uint64_t gp_budget = kDefaultGpBudget;
    // fallback engine allowed while |IU_k| * |IU_{k+1}| stays below this
    std::uint64_t snf_cell_cap = 1'000'000;
    bool allow_snf_fallback = true;
};

struct BoundCycleResult {
    Chain bounding;       // tau with d(tau) = z, verified before return
    std::string engine;   // "recursion" | "snf"
};

/// The constructive cycle-bounding recursion: find W in general position
/// with all supports, peel one prefix vector per step, cone inside W.
/// When a fresh-vector scan exhausts (possible over a finite residue
/// field), the cone is replaced by an exact localized boundary solve
/// inside the relevant span; used_local_solve reports that. Throws
/// GeneralPositionUnavailable / FreshVectorUnavailable when even these
/// fail (legal over small rings).
Chain bound_cycle_recursion(const Chain& z, std::uint64_t seed,
                            std::uint64_t gp_budget = kDefaultGpBudget,
                            bool* used_local_solve = nullptr);

/// Generic engine: solve d x = z over Z via the Smith form of the
/// boundary matrix. nullopt if z is not a boundary.
std::optional<Chain> bound_cycle_snf(const Chain& z, std::uint64_t cap = kDefaultVectorCap);

/// Paper recursion first; falls back to the SNF engine when the recursion
/// reports unavailability and the matrices fit.
BoundCycleResult bound_cycle(const Chain& z, std::uint64_t seed, const BoundCycleOptions& opt = {});

}  // namespace ortho
