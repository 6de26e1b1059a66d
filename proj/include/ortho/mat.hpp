#pragma once

#include "ortho/ring.hpp"

#include <vector>

namespace ortho {

/// Column vector over Z/p^k, entries canonical.
using Vec = std::vector<std::int64_t>;

/// Dense matrix over Z/p^k, row-major, entries kept canonical.
class Mat {
public:
    Mat() = default;
    Mat(const RingDesc& ring, int rows, int cols)
        : ring_(ring), rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0) {}

    static Mat identity(const RingDesc& ring, int n);
    static Mat from_columns(const RingDesc& ring, int dim, const std::vector<Vec>& cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const RingDesc& ring() const { return ring_; }

    std::int64_t operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    void set(int r, int c, std::int64_t v) { a_[static_cast<std::size_t>(r) * cols_ + c] = ring_.reduce(v); }

    Mat operator*(const Mat& rhs) const;
    Vec apply(const Vec& v) const;  // M * v
    Mat transpose() const;
    Mat operator-(const Mat& rhs) const;

    Vec column(int j) const;
    Vec row(int i) const;
    std::vector<Vec> columns() const;
    void set_column(int j, const Vec& v);

    bool is_zero() const;

    friend bool operator==(const Mat&, const Mat&) = default;

private:
    RingDesc ring_{};
    int rows_ = 0, cols_ = 0;
    std::vector<std::int64_t> a_;
};

// u and v as elements of R^dim; componentwise ring ops.
Vec vec_add(const RingDesc&, const Vec& u, const Vec& v);
Vec vec_sub(const RingDesc&, const Vec& u, const Vec& v);
Vec vec_scale(const RingDesc&, std::int64_t c, const Vec& v);
Vec vec_reduce(const RingDesc&, Vec v);
bool vec_is_zero(const Vec& v);

}  // namespace ortho
