#pragma once

#include "ortho/mat.hpp"

#include <cstdint>
#include <optional>

namespace ortho {

class CapExceededError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Rank of M over the residue field F_p (Gaussian elimination mod p).
/// Over a local ring this decides unimodularity of column sequences.
int residue_rank(const Mat& M);

/// L with L*M = I_cols, or nullopt iff residue_rank(M) < cols.
/// Requires rows >= cols. Computed by solving tM*y = e_j columnwise:
/// a mod-p solution lifted through k-1 Hensel refinement steps.
std::optional<Mat> left_inverse(const Mat& M);

/// Any x with M*x = b, or nullopt if the system is insoluble.
/// Elimination with p-valuation pivoting, exact over Z/p^k.
std::optional<Vec> solve_linear(const Mat& M, const Vec& b);

/// Inverse of a square matrix of full residue rank; throws if singular.
Mat inverse(const Mat& M);

/// Basis of ker(M) for M of full residue row rank. The kernel is then a
/// free direct summand of rank cols - rows; unit-pivot elimination.
std::vector<Vec> kernel_basis(const Mat& M);

/// Reduced row echelon basis of the row space mod p (nonzero rows only);
/// canonical for a given span, so usable as a span key over F_p.
std::vector<Vec> row_space_echelon_mod_p(const RingDesc& ring, const std::vector<Vec>& rows);

inline constexpr std::uint64_t kDefaultVectorCap = 100'000'000;

/// All vectors of R^dim exactly once, in lexicographic order of canonical
/// representatives (first coordinate most significant).
class VectorEnumeration {
public:
    VectorEnumeration(const RingDesc& ring, int dim, std::uint64_t cap = kDefaultVectorCap);

    std::uint64_t size() const { return size_; }
    Vec at(std::uint64_t index) const;

private:
    RingDesc ring_;
    int dim_;
    std::uint64_t size_;
};

}  // namespace ortho
