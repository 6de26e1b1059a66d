#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ortho {

using BigInt = boost::multiprecision::cpp_int;

/// Sparse integer matrix with exact 64-bit entries (boundary matrices stay
/// tiny; Smith reduction promotes to arbitrary precision).
class SparseIntMatrix {
public:
    SparseIntMatrix() = default;
    SparseIntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows)) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void add(int r, int c, std::int64_t delta);
    std::int64_t value(int r, int c) const;
    const std::map<int, std::int64_t>& row(int r) const { return data_[static_cast<std::size_t>(r)]; }

    SparseIntMatrix operator*(const SparseIntMatrix& rhs) const;
    bool is_zero() const;
    std::int64_t column_sum(int c) const;
    std::size_t nonzeros() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<std::map<int, std::int64_t>> data_;  // per-row {col: value}
};

/// Dense matrix over Z with arbitrary-precision entries.
class DenseBigMat {
public:
    DenseBigMat() = default;
    DenseBigMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}
    static DenseBigMat identity(int n);
    static DenseBigMat from_sparse(const SparseIntMatrix& s);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    BigInt& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    const BigInt& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

    DenseBigMat operator*(const DenseBigMat& rhs) const;
    std::vector<BigInt> apply(const std::vector<BigInt>& v) const;
    friend bool operator==(const DenseBigMat&, const DenseBigMat&) = default;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<BigInt> a_;
};

/// U * A * V = diag(d_1, ..., d_r, 0, ...) with d_1 | d_2 | ... | d_r > 0
/// and U, V products of elementary (unimodular) operations.
struct SmithResult {
    std::vector<BigInt> diagonal;  // length min(rows, cols); zeros at the end
    DenseBigMat U;                 // rows x rows
    DenseBigMat V;                 // cols x cols
    int rank() const;
    std::vector<BigInt> invariant_factors_gt1() const;
};

/// Pivoting on the smallest nonzero magnitude; exact over Z.
SmithResult smith_normal_form(const SparseIntMatrix& A);

/// A solution x of A x = b recovered from the Smith form, or nullopt.
std::optional<std::vector<BigInt>> solve_integer(const SmithResult& snf, const std::vector<BigInt>& b);

/// Sparse integer solve of A x = b by fraction-free row elimination with
/// gcd pivoting; suited to boundary matrices (entries small, few nonzeros
/// per column) where dense transforms would not fit.
std::optional<std::vector<BigInt>> sparse_solve_integer(const SparseIntMatrix& A,
                                                        const std::vector<BigInt>& b);

}  // namespace ortho
