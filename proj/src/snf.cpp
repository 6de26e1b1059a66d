#include "ortho/snf.hpp"

#include <cassert>
#include <queue>
#include <set>

namespace ortho {

void SparseIntMatrix::add(int r, int c, std::int64_t delta) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("sparse add: index");
    auto& row = data_[static_cast<std::size_t>(r)];
    auto it = row.find(c);
    if (it == row.end()) {
        if (delta != 0) row.emplace(c, delta);
    } else {
        it->second += delta;
        if (it->second == 0) row.erase(it);
    }
}

std::int64_t SparseIntMatrix::value(int r, int c) const {
    const auto& row = data_[static_cast<std::size_t>(r)];
    auto it = row.find(c);
    return it == row.end() ? 0 : it->second;
}

SparseIntMatrix SparseIntMatrix::operator*(const SparseIntMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("sparse product: shape mismatch");
    SparseIntMatrix out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
        for (const auto& [t, v] : data_[static_cast<std::size_t>(i)])
            for (const auto& [j, w] : rhs.data_[static_cast<std::size_t>(t)]) out.add(i, j, v * w);
    return out;
}

bool SparseIntMatrix::is_zero() const {
    for (const auto& row : data_)
        if (!row.empty()) return false;
    return true;
}

std::int64_t SparseIntMatrix::column_sum(int c) const {
    std::int64_t s = 0;
    for (const auto& row : data_) {
        auto it = row.find(c);
        if (it != row.end()) s += it->second;
    }
    return s;
}

std::size_t SparseIntMatrix::nonzeros() const {
    std::size_t s = 0;
    for (const auto& row : data_) s += row.size();
    return s;
}

DenseBigMat DenseBigMat::identity(int n) {
    DenseBigMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

DenseBigMat DenseBigMat::from_sparse(const SparseIntMatrix& s) {
    DenseBigMat m(s.rows(), s.cols());
    for (int i = 0; i < s.rows(); ++i)
        for (const auto& [j, v] : s.row(i)) m.at(i, j) = v;
    return m;
}

DenseBigMat DenseBigMat::operator*(const DenseBigMat& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("dense product: shape mismatch");
    DenseBigMat out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int t = 0; t < cols_; ++t) {
            const BigInt& v = at(i, t);
            if (v == 0) continue;
            for (int j = 0; j < rhs.cols_; ++j) out.at(i, j) += v * rhs.at(t, j);
        }
    return out;
}

std::vector<BigInt> DenseBigMat::apply(const std::vector<BigInt>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("dense apply: dimension");
    std::vector<BigInt> out(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != 0) out[i] += at(i, j) * v[j];
    return out;
}

int SmithResult::rank() const {
    int r = 0;
    for (const auto& d : diagonal)
        if (d != 0) ++r;
    return r;
}

std::vector<BigInt> SmithResult::invariant_factors_gt1() const {
    std::vector<BigInt> out;
    for (const auto& d : diagonal)
        if (d > 1) out.push_back(d);
    return out;
}

SmithResult smith_normal_form(const SparseIntMatrix& A) {
    int m = A.rows(), n = A.cols();
    DenseBigMat D = DenseBigMat::from_sparse(A);
    DenseBigMat U = DenseBigMat::identity(m);
    DenseBigMat V = DenseBigMat::identity(n);

    auto swap_rows = [&](int a, int b) {
        if (a == b) return;
        for (int j = 0; j < n; ++j) std::swap(D.at(a, j), D.at(b, j));
        for (int j = 0; j < m; ++j) std::swap(U.at(a, j), U.at(b, j));
    };
    auto swap_cols = [&](int a, int b) {
        if (a == b) return;
        for (int i = 0; i < m; ++i) std::swap(D.at(i, a), D.at(i, b));
        for (int i = 0; i < n; ++i) std::swap(V.at(i, a), V.at(i, b));
    };
    auto row_op = [&](int dst, int src, const BigInt& q) {  // row dst -= q * row src
        if (q == 0) return;
        for (int j = 0; j < n; ++j) D.at(dst, j) -= q * D.at(src, j);
        for (int j = 0; j < m; ++j) U.at(dst, j) -= q * U.at(src, j);
    };
    auto col_op = [&](int dst, int src, const BigInt& q) {  // col dst -= q * col src
        if (q == 0) return;
        for (int i = 0; i < m; ++i) D.at(i, dst) -= q * D.at(i, src);
        for (int i = 0; i < n; ++i) V.at(i, dst) -= q * V.at(i, src);
    };
    auto negate_row = [&](int r) {
        for (int j = 0; j < n; ++j) D.at(r, j) = -D.at(r, j);
        for (int j = 0; j < m; ++j) U.at(r, j) = -U.at(r, j);
    };

    int t = 0;
    int bound = std::min(m, n);
    while (t < bound) {
        // pivot: smallest nonzero magnitude in the trailing submatrix
        int pi = -1, pj = -1;
        BigInt best;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j) {
                if (D.at(i, j) == 0) continue;
                BigInt a = abs(D.at(i, j));
                if (pi < 0 || a < best) {
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;  // trailing submatrix is zero
        swap_rows(t, pi);
        swap_cols(t, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < m; ++i) {
                if (D.at(i, t) == 0) continue;
                BigInt q = D.at(i, t) / D.at(t, t);
                row_op(i, t, q);
                if (D.at(i, t) != 0) {  // remainder strictly smaller: promote it
                    swap_rows(t, i);
                    clean = false;
                }
            }
            for (int j = t + 1; j < n; ++j) {
                if (D.at(t, j) == 0) continue;
                BigInt q = D.at(t, j) / D.at(t, t);
                col_op(j, t, q);
                if (D.at(t, j) != 0) {
                    swap_cols(t, j);
                    clean = false;
                }
            }
        }
        if (D.at(t, t) < 0) negate_row(t);

        // divisibility: pivot must divide every trailing entry
        bool divides = true;
        for (int i = t + 1; i < m && divides; ++i)
            for (int j = t + 1; j < n; ++j)
                if (D.at(i, j) % D.at(t, t) != 0) {
                    // fold row i into row t and redo the clearing
                    row_op(t, i, BigInt(-1));
                    divides = false;
                    break;
                }
        if (!divides) continue;  // re-enter clearing at the same t
        ++t;
    }

    SmithResult res;
    res.diagonal.resize(static_cast<std::size_t>(bound));
    for (int i = 0; i < bound; ++i) res.diagonal[static_cast<std::size_t>(i)] = D.at(i, i);
    res.U = std::move(U);
    res.V = std::move(V);
    return res;
}

std::optional<std::vector<BigInt>> sparse_solve_integer(const SparseIntMatrix& A,
                                                        const std::vector<BigInt>& b) {
    int m = A.rows(), n = A.cols();
    if (static_cast<int>(b.size()) != m) throw std::invalid_argument("sparse solve: dimension");
    std::vector<std::map<int, BigInt>> rows(static_cast<std::size_t>(m));
    std::vector<BigInt> rhs(b);
    // column index over the unprocessed rows
    std::vector<std::set<int>> col_rows(static_cast<std::size_t>(n));
    for (int i = 0; i < m; ++i)
        for (const auto& [j, v] : A.row(i)) {
            rows[static_cast<std::size_t>(i)][j] = v;
            col_rows[static_cast<std::size_t>(j)].insert(i);
        }

    auto row_op = [&](int dst, int src, const BigInt& q) {  // row dst -= q * row src
        if (q == 0) return;
        for (const auto& [j, v] : rows[static_cast<std::size_t>(src)]) {
            auto it = rows[static_cast<std::size_t>(dst)].find(j);
            if (it == rows[static_cast<std::size_t>(dst)].end()) {
                rows[static_cast<std::size_t>(dst)].emplace(j, -q * v);
                col_rows[static_cast<std::size_t>(j)].insert(dst);
            } else {
                it->second -= q * v;
                if (it->second == 0) {
                    rows[static_cast<std::size_t>(dst)].erase(it);
                    col_rows[static_cast<std::size_t>(j)].erase(dst);
                }
            }
        }
        rhs[static_cast<std::size_t>(dst)] -= q * rhs[static_cast<std::size_t>(src)];
    };
    auto swap_rows = [&](int a, int bb) {
        for (const auto& [j, v] : rows[static_cast<std::size_t>(a)])
            col_rows[static_cast<std::size_t>(j)].erase(a);
        for (const auto& [j, v] : rows[static_cast<std::size_t>(bb)])
            col_rows[static_cast<std::size_t>(j)].erase(bb);
        std::swap(rows[static_cast<std::size_t>(a)], rows[static_cast<std::size_t>(bb)]);
        std::swap(rhs[static_cast<std::size_t>(a)], rhs[static_cast<std::size_t>(bb)]);
        for (const auto& [j, v] : rows[static_cast<std::size_t>(a)])
            col_rows[static_cast<std::size_t>(j)].insert(a);
        for (const auto& [j, v] : rows[static_cast<std::size_t>(bb)])
            col_rows[static_cast<std::size_t>(j)].insert(bb);
    };

    std::vector<char> processed(static_cast<std::size_t>(m), 0);
    std::vector<std::pair<int, int>> pivots;  // (row, col) in elimination order
    // lazy min-heap over (nnz, row); stale entries are skipped on pop
    std::priority_queue<std::pair<std::size_t, int>, std::vector<std::pair<std::size_t, int>>,
                        std::greater<>>
        heap;
    for (int i = 0; i < m; ++i)
        if (!rows[static_cast<std::size_t>(i)].empty())
            heap.emplace(rows[static_cast<std::size_t>(i)].size(), i);
    for (;;) {
        int pr = -1;
        while (!heap.empty()) {
            auto [nnz, i] = heap.top();
            if (processed[static_cast<std::size_t>(i)] || rows[static_cast<std::size_t>(i)].empty() ||
                rows[static_cast<std::size_t>(i)].size() != nnz) {
                heap.pop();
                if (!processed[static_cast<std::size_t>(i)] &&
                    !rows[static_cast<std::size_t>(i)].empty())
                    heap.emplace(rows[static_cast<std::size_t>(i)].size(), i);
                continue;
            }
            pr = i;
            break;
        }
        if (pr < 0) break;
        int pc = -1;
        BigInt best;
        for (const auto& [j, v] : rows[static_cast<std::size_t>(pr)]) {
            BigInt a = abs(v);
            if (pc < 0 || a < best) {
                pc = j;
                best = a;
            }
        }
        // clear the pivot column from the other unprocessed rows, promoting
        // remainders (Euclid on the column)
        for (;;) {
            bool again = false;
            std::vector<int> touchers(col_rows[static_cast<std::size_t>(pc)].begin(),
                                      col_rows[static_cast<std::size_t>(pc)].end());
            for (int i : touchers) {
                if (i == pr || processed[static_cast<std::size_t>(i)]) continue;
                auto it = rows[static_cast<std::size_t>(i)].find(pc);
                if (it == rows[static_cast<std::size_t>(i)].end()) continue;
                BigInt q = it->second / rows[static_cast<std::size_t>(pr)].at(pc);
                row_op(i, pr, q);
                if (rows[static_cast<std::size_t>(i)].count(pc)) {
                    swap_rows(i, pr);
                    again = true;
                }
                if (!rows[static_cast<std::size_t>(i)].empty())
                    heap.emplace(rows[static_cast<std::size_t>(i)].size(), i);
            }
            if (!again) break;
        }
        processed[static_cast<std::size_t>(pr)] = 1;
        for (const auto& [j, v] : rows[static_cast<std::size_t>(pr)])
            col_rows[static_cast<std::size_t>(j)].erase(pr);
        pivots.emplace_back(pr, pc);
    }
    for (int i = 0; i < m; ++i)
        if (!processed[static_cast<std::size_t>(i)] && rhs[static_cast<std::size_t>(i)] != 0)
            return std::nullopt;

    std::vector<BigInt> x(static_cast<std::size_t>(n));
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
        auto [r, c] = *it;
        BigInt acc = rhs[static_cast<std::size_t>(r)];
        for (const auto& [j, v] : rows[static_cast<std::size_t>(r)])
            if (j != c) acc -= v * x[static_cast<std::size_t>(j)];
        const BigInt& piv = rows[static_cast<std::size_t>(r)].at(c);
        if (acc % piv != 0) return std::nullopt;
        x[static_cast<std::size_t>(c)] = acc / piv;
    }
    return x;
}

std::optional<std::vector<BigInt>> solve_integer(const SmithResult& snf, const std::vector<BigInt>& b) {
    int m = snf.U.rows(), n = snf.V.rows();
    if (static_cast<int>(b.size()) != m) throw std::invalid_argument("solve_integer: dimension");
    std::vector<BigInt> y = snf.U.apply(b);
    std::vector<BigInt> z(static_cast<std::size_t>(n));
    int bound = static_cast<int>(snf.diagonal.size());
    for (int i = 0; i < m; ++i) {
        const BigInt d = i < bound ? snf.diagonal[static_cast<std::size_t>(i)] : BigInt(0);
        if (d == 0) {
            if (y[i] != 0) return std::nullopt;
        } else {
            if (y[i] % d != 0) return std::nullopt;
            z[static_cast<std::size_t>(i)] = y[i] / d;
        }
    }
    return snf.V.apply(z);
}

}  // namespace ortho
