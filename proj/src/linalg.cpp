#include "ortho/linalg.hpp"

#include <cassert>
#include <string>

namespace ortho {

namespace {

// Gaussian elimination of M mod p. Returns pivot columns; on exit `a` is in
// row echelon form over F_p. Row-reduced fully (entries above pivots cleared)
// so callers can read off solutions.
std::vector<int> rref_mod_p(std::vector<std::vector<std::int64_t>>& a, std::int64_t p) {
    int m = static_cast<int>(a.size());
    int n = m == 0 ? 0 : static_cast<int>(a[0].size());
    std::vector<int> pivots;
    int r = 0;
    for (int j = 0; j < n && r < m; ++j) {
        int piv = -1;
        for (int i = r; i < m; ++i)
            if (a[i][j] % p != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[r], a[piv]);
        // normalize pivot to 1 mod p
        std::int64_t inv = 1, x = a[r][j] % p;
        for (std::int64_t c = 1; c < p; ++c)
            if ((x * c) % p == 1) {
                inv = c;
                break;
            }
        for (int t = 0; t < n; ++t) a[r][t] = (a[r][t] * inv) % p;
        for (int i = 0; i < m; ++i) {
            if (i == r) continue;
            std::int64_t f = a[i][j] % p;
            if (f == 0) continue;
            for (int t = 0; t < n; ++t) a[i][t] = ((a[i][t] - f * a[r][t]) % p + p * p) % p;
        }
        pivots.push_back(j);
        ++r;
    }
    return pivots;
}

// One solution of M*y = b mod p (entries of M, b arbitrary canonical reps),
// or nullopt. Free variables set to 0.
std::optional<Vec> solve_mod_p(const Mat& M, const Vec& b) {
    std::int64_t p = M.ring().p;
    int m = M.rows(), n = M.cols();
    std::vector<std::vector<std::int64_t>> a(m, std::vector<std::int64_t>(n + 1));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = M(i, j) % p;
        a[i][n] = b[i] % p;
    }
    auto pivots = rref_mod_p(a, p);
    if (!pivots.empty() && pivots.back() == n) return std::nullopt;  // pivot in the b column
    // rows below the pivot rows are zero rows; their b entries were cleared by
    // rref only if consistent
    for (int i = static_cast<int>(pivots.size()); i < m; ++i)
        if (a[i][n] % p != 0) return std::nullopt;
    Vec y(static_cast<std::size_t>(n), 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) y[pivots[r]] = a[r][n] % p;
    return y;
}

}  // namespace

int residue_rank(const Mat& M) {
    std::int64_t p = M.ring().p;
    int m = M.rows(), n = M.cols();
    std::vector<std::vector<std::int64_t>> a(m, std::vector<std::int64_t>(n));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = M(i, j) % p;
    return static_cast<int>(rref_mod_p(a, p).size());
}

std::optional<Mat> left_inverse(const Mat& M) {
    if (M.rows() < M.cols()) throw std::invalid_argument("left_inverse: requires rows >= cols");
    const RingDesc& ring = M.ring();
    int m = M.rows(), n = M.cols();
    if (residue_rank(M) < n) return std::nullopt;
    Mat A = M.transpose();  // n x m, full residue row rank
    Mat Y(ring, m, n);
    for (int j = 0; j < n; ++j) {
        Vec e(static_cast<std::size_t>(n), 0);
        e[j] = 1;
        auto y0 = solve_mod_p(A, e);
        assert(y0.has_value());  // full residue row rank makes A surjective mod p
        Vec y = *y0;
        std::int64_t q = ring.p;
        for (std::int64_t step = 1; step < ring.k; ++step, q *= ring.p) {
            Vec r = vec_sub(ring, e, A.apply(y));
            Vec rq(r.size());
            for (std::size_t t = 0; t < r.size(); ++t) {
                assert(r[t] % q == 0);
                rq[t] = r[t] / q;
            }
            auto delta = solve_mod_p(A, rq);
            assert(delta.has_value());
            y = vec_add(ring, y, vec_scale(ring, q, *delta));
        }
        Y.set_column(j, y);
    }
    Mat L = Y.transpose();
    assert(L * M == Mat::identity(ring, n));
    return L;
}

std::optional<Vec> solve_linear(const Mat& M, const Vec& b) {
    const RingDesc& ring = M.ring();
    int m = M.rows(), n = M.cols();
    if (static_cast<int>(b.size()) != m) throw std::invalid_argument("solve_linear: dimension mismatch");

    // augmented system, canonical entries
    std::vector<Vec> a(m, Vec(static_cast<std::size_t>(n) + 1));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = M(i, j);
        a[i][n] = ring.reduce(b[i]);
    }

    std::vector<std::int64_t> ppow(static_cast<std::size_t>(ring.k) + 1, 1);
    for (int t = 1; t <= ring.k; ++t) ppow[t] = ppow[t - 1] * ring.p;

    std::vector<char> col_used(static_cast<std::size_t>(n), 0);
    std::vector<std::pair<int, int>> pivots;  // (row, col), pivot value p^a
    std::vector<int> pivot_val;
    int r = 0;
    while (r < m) {
        // entry of minimal p-valuation among rows >= r, unused columns
        int best_i = -1, best_j = -1, best_v = static_cast<int>(ring.k);
        for (int j = 0; j < n; ++j) {
            if (col_used[j]) continue;
            for (int i = r; i < m; ++i) {
                int v = ring.valuation(a[i][j]);
                if (v < best_v) {
                    best_v = v;
                    best_i = i;
                    best_j = j;
                }
            }
        }
        if (best_i < 0) break;  // remaining submatrix is zero
        std::swap(a[r], a[best_i]);
        // scale the row so the pivot becomes exactly p^a
        std::int64_t unit_part = a[r][best_j] / ppow[best_v];
        std::int64_t s = ring.inv(unit_part);
        for (auto& x : a[r]) x = ring.mul(s, x);
        for (int i = r + 1; i < m; ++i) {
            std::int64_t e = a[i][best_j];
            if (e == 0) continue;
            std::int64_t f = e / ppow[best_v];  // exact: valuation(e) >= a
            for (int t = 0; t <= n; ++t) a[i][t] = ring.sub(a[i][t], ring.mul(f, a[r][t]));
        }
        col_used[best_j] = 1;
        pivots.emplace_back(r, best_j);
        pivot_val.push_back(best_v);
        ++r;
    }
    for (int i = r; i < m; ++i)
        if (a[i][n] != 0) return std::nullopt;

    Vec x(static_cast<std::size_t>(n), 0);
    for (int t = static_cast<int>(pivots.size()) - 1; t >= 0; --t) {
        auto [row, col] = pivots[t];
        std::int64_t rhs = a[row][n];
        for (int j = 0; j < n; ++j)
            if (j != col) rhs = ring.sub(rhs, ring.mul(a[row][j], x[j]));
        std::int64_t pa = ppow[pivot_val[t]];
        if (rhs % pa != 0) return std::nullopt;
        x[col] = rhs / pa;
    }
    return x;
}

Mat inverse(const Mat& M) {
    if (M.rows() != M.cols()) throw std::invalid_argument("inverse: matrix not square");
    int n = M.rows();
    if (residue_rank(M) < n) throw std::invalid_argument("inverse: matrix is singular");
    Mat out(M.ring(), n, n);
    for (int j = 0; j < n; ++j) {
        Vec e(static_cast<std::size_t>(n), 0);
        e[j] = 1;
        auto x = solve_linear(M, e);
        assert(x.has_value());
        out.set_column(j, *x);
    }
    return out;
}

std::vector<Vec> kernel_basis(const Mat& M) {
    const RingDesc& ring = M.ring();
    int m = M.rows(), n = M.cols();
    if (residue_rank(M) < m)
        throw std::invalid_argument("kernel_basis: matrix must have full residue row rank");

    // unit-pivot reduced row echelon form over the ring
    std::vector<Vec> a(m, Vec(static_cast<std::size_t>(n)));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = M(i, j);
    std::vector<int> pivots;
    int r = 0;
    for (int j = 0; j < n && r < m; ++j) {
        int piv = -1;
        for (int i = r; i < m; ++i)
            if (ring.is_unit(a[i][j])) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[r], a[piv]);
        std::int64_t s = ring.inv(a[r][j]);
        for (auto& x : a[r]) x = ring.mul(s, x);
        for (int i = 0; i < m; ++i) {
            if (i == r) continue;
            std::int64_t f = a[i][j];
            if (f == 0) continue;
            for (int t = 0; t < n; ++t) a[i][t] = ring.sub(a[i][t], ring.mul(f, a[r][t]));
        }
        pivots.push_back(j);
        ++r;
    }
    assert(static_cast<int>(pivots.size()) == m);

    std::vector<char> is_pivot(static_cast<std::size_t>(n), 0);
    for (int j : pivots) is_pivot[j] = 1;
    std::vector<Vec> basis;
    for (int j = 0; j < n; ++j) {
        if (is_pivot[j]) continue;
        Vec v(static_cast<std::size_t>(n), 0);
        v[j] = 1;
        for (int t = 0; t < m; ++t) v[pivots[t]] = ring.neg(a[t][j]);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Vec> row_space_echelon_mod_p(const RingDesc& ring, const std::vector<Vec>& rows) {
    std::vector<std::vector<std::int64_t>> a;
    for (const auto& r : rows) {
        std::vector<std::int64_t> row(r.size());
        for (std::size_t j = 0; j < r.size(); ++j) row[j] = ring.reduce(r[j]) % ring.p;
        a.push_back(std::move(row));
    }
    auto pivots = rref_mod_p(a, ring.p);
    std::vector<Vec> out;
    for (std::size_t i = 0; i < pivots.size(); ++i) out.push_back(Vec(a[i].begin(), a[i].end()));
    return out;
}

VectorEnumeration::VectorEnumeration(const RingDesc& ring, int dim, std::uint64_t cap)
    : ring_(ring), dim_(dim) {
    std::uint64_t s = 1;
    for (int i = 0; i < dim; ++i) {
        if (s > cap / static_cast<std::uint64_t>(ring.modulus))
            throw CapExceededError("vector enumeration would exceed cap of " + std::to_string(cap) +
                                   " (ring " + ring.str() + ", dim " + std::to_string(dim) + ")");
        s *= static_cast<std::uint64_t>(ring.modulus);
    }
    size_ = s;
}

Vec VectorEnumeration::at(std::uint64_t index) const {
    Vec v(static_cast<std::size_t>(dim_));
    std::uint64_t m = static_cast<std::uint64_t>(ring_.modulus);
    for (int i = dim_ - 1; i >= 0; --i) {
        v[i] = static_cast<std::int64_t>(index % m);
        index /= m;
    }
    return v;
}

}  // namespace ortho
