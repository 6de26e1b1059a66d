#include "ortho/mat.hpp"

#include <algorithm>

namespace ortho {

Mat Mat::identity(const RingDesc& ring, int n) {
    Mat m(ring, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Mat Mat::from_columns(const RingDesc& ring, int dim, const std::vector<Vec>& cols) {
    Mat m(ring, dim, static_cast<int>(cols.size()));
    for (int j = 0; j < m.cols(); ++j) {
        if (static_cast<int>(cols[j].size()) != dim)
            throw std::invalid_argument("from_columns: column dimension mismatch");
        for (int i = 0; i < dim; ++i) m.set(i, j, cols[j][i]);
    }
    return m;
}

Mat Mat::operator*(const Mat& rhs) const {
    if (cols_ != rhs.rows_ || !(ring_ == rhs.ring_))
        throw std::invalid_argument("matrix product: shape or ring mismatch");
    Mat out(ring_, rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < rhs.cols_; ++j) {
            std::int64_t s = 0;
            for (int t = 0; t < cols_; ++t)
                s = ring_.add(s, ring_.mul((*this)(i, t), rhs(t, j)));
            out.set(i, j, s);
        }
    return out;
}

Vec Mat::apply(const Vec& v) const {
    if (static_cast<int>(v.size()) != cols_)
        throw std::invalid_argument("matrix apply: dimension mismatch");
    Vec out(static_cast<std::size_t>(rows_), 0);
    for (int i = 0; i < rows_; ++i) {
        std::int64_t s = 0;
        for (int t = 0; t < cols_; ++t) s = ring_.add(s, ring_.mul((*this)(i, t), ring_.reduce(v[t])));
        out[i] = s;
    }
    return out;
}

Mat Mat::transpose() const {
    Mat out(ring_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.set(j, i, (*this)(i, j));
    return out;
}

Mat Mat::operator-(const Mat& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("matrix difference: shape mismatch");
    Mat out(ring_, rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.set(i, j, ring_.sub((*this)(i, j), rhs(i, j)));
    return out;
}

Vec Mat::column(int j) const {
    Vec v(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

Vec Mat::row(int i) const {
    Vec v(static_cast<std::size_t>(cols_));
    for (int j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
    return v;
}

std::vector<Vec> Mat::columns() const {
    std::vector<Vec> out;
    out.reserve(cols_);
    for (int j = 0; j < cols_; ++j) out.push_back(column(j));
    return out;
}

void Mat::set_column(int j, const Vec& v) {
    if (static_cast<int>(v.size()) != rows_)
        throw std::invalid_argument("set_column: dimension mismatch");
    for (int i = 0; i < rows_; ++i) set(i, j, v[i]);
}

bool Mat::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](std::int64_t x) { return x == 0; });
}

Vec vec_add(const RingDesc& ring, const Vec& u, const Vec& v) {
    if (u.size() != v.size()) throw std::invalid_argument("vec_add: dimension mismatch");
    Vec out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = ring.add(ring.reduce(u[i]), ring.reduce(v[i]));
    return out;
}

Vec vec_sub(const RingDesc& ring, const Vec& u, const Vec& v) {
    if (u.size() != v.size()) throw std::invalid_argument("vec_sub: dimension mismatch");
    Vec out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = ring.sub(ring.reduce(u[i]), ring.reduce(v[i]));
    return out;
}

Vec vec_scale(const RingDesc& ring, std::int64_t c, const Vec& v) {
    Vec out(v.size());
    c = ring.reduce(c);
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = ring.mul(c, ring.reduce(v[i]));
    return out;
}

Vec vec_reduce(const RingDesc& ring, Vec v) {
    for (auto& x : v) x = ring.reduce(x);
    return v;
}

bool vec_is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

}  // namespace ortho
