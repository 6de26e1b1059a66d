#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ortho/snf.hpp"

#include <numeric>
#include <random>

using namespace ortho;

namespace {

// independent oracle: invariant factors via determinantal divisors,
// d_k = D_k / D_{k-1} with D_k = gcd of all k x k minors
BigInt minor_det(const std::vector<std::vector<BigInt>>& a) {
    int n = static_cast<int>(a.size());
    if (n == 1) return a[0][0];
    BigInt det = 0;
    for (int j = 0; j < n; ++j) {
        if (a[0][j] == 0) continue;
        std::vector<std::vector<BigInt>> sub;
        for (int i = 1; i < n; ++i) {
            std::vector<BigInt> row;
            for (int t = 0; t < n; ++t)
                if (t != j) row.push_back(a[i][t]);
            sub.push_back(std::move(row));
        }
        BigInt term = a[0][j] * minor_det(sub);
        det += j % 2 == 0 ? term : -term;
    }
    return det;
}

std::vector<BigInt> determinantal_oracle(const SparseIntMatrix& M) {
    int m = M.rows(), n = M.cols();
    std::vector<BigInt> divisors;  // D_1, D_2, ...
    for (int r = 1; r <= std::min(m, n); ++r) {
        BigInt g = 0;
        std::vector<int> ri(r), ci(r);
        std::iota(ri.begin(), ri.end(), 0);
        auto next_comb = [](std::vector<int>& idx, int bound) {
            int k = static_cast<int>(idx.size());
            for (int i = k - 1; i >= 0; --i) {
                if (idx[i] < bound - (k - i)) {
                    ++idx[i];
                    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                    return true;
                }
            }
            return false;
        };
        do {
            std::iota(ci.begin(), ci.end(), 0);
            do {
                std::vector<std::vector<BigInt>> sub(r, std::vector<BigInt>(r));
                for (int i = 0; i < r; ++i)
                    for (int j = 0; j < r; ++j) sub[i][j] = M.value(ri[i], ci[j]);
                g = gcd(g, minor_det(sub));
            } while (next_comb(ci, n));
        } while (next_comb(ri, m));
        divisors.push_back(g);
        if (g == 0) break;
    }
    std::vector<BigInt> factors;
    BigInt prev = 1;
    for (const auto& d : divisors) {
        if (d == 0) break;
        factors.push_back(d / prev);
        prev = d;
    }
    return factors;
}

SparseIntMatrix random_sparse(std::mt19937_64& rng, int m, int n, int spread) {
    SparseIntMatrix M(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            std::int64_t v = static_cast<std::int64_t>(rng() % (2 * spread + 1)) - spread;
            if (v != 0) M.add(i, j, v);
        }
    return M;
}

}  // namespace

TEST_CASE("smith form of simple matrices") {
    SparseIntMatrix M(2, 2);
    M.add(0, 0, 2);
    M.add(1, 1, 3);
    SmithResult s = smith_normal_form(M);
    CHECK(s.diagonal == std::vector<BigInt>{1, 6});  // 2 and 3 mix into 1 | 6
    CHECK(s.rank() == 2);

    SparseIntMatrix Z(3, 2);
    SmithResult sz = smith_normal_form(Z);
    CHECK(sz.rank() == 0);

    SparseIntMatrix row(1, 4);
    for (int j = 0; j < 4; ++j) row.add(0, j, 1);
    SmithResult sr = smith_normal_form(row);
    CHECK(sr.diagonal == std::vector<BigInt>{1});
}

TEST_CASE("U A V equals the diagonal") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        int m = 1 + static_cast<int>(rng() % 5), n = 1 + static_cast<int>(rng() % 5);
        SparseIntMatrix M = random_sparse(rng, m, n, 4);
        SmithResult s = smith_normal_form(M);
        DenseBigMat prod = s.U * DenseBigMat::from_sparse(M) * s.V;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) {
                BigInt expect = i == j && i < static_cast<int>(s.diagonal.size())
                                    ? s.diagonal[static_cast<std::size_t>(i)]
                                    : BigInt(0);
                CHECK(prod.at(i, j) == expect);
            }
        // successive divisibility
        for (std::size_t i = 0; i + 1 < s.diagonal.size(); ++i) {
            if (s.diagonal[i + 1] == 0) break;
            CHECK(s.diagonal[i] != 0);
            CHECK(s.diagonal[i + 1] % s.diagonal[i] == 0);
        }
    }
}

TEST_CASE("invariant factors match the determinantal divisor oracle") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        int m = 1 + static_cast<int>(rng() % 4), n = 1 + static_cast<int>(rng() % 4);
        SparseIntMatrix M = random_sparse(rng, m, n, 5);
        SmithResult s = smith_normal_form(M);
        std::vector<BigInt> expect = determinantal_oracle(M);
        std::vector<BigInt> got;
        for (const auto& d : s.diagonal)
            if (d != 0) got.push_back(d);
        CHECK(got == expect);
    }
}

TEST_CASE("integer solving through the smith form") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        int m = 1 + static_cast<int>(rng() % 5), n = 1 + static_cast<int>(rng() % 5);
        SparseIntMatrix M = random_sparse(rng, m, n, 3);
        SmithResult s = smith_normal_form(M);
        // consistent system: b = M x0
        std::vector<BigInt> x0(static_cast<std::size_t>(n));
        for (auto& v : x0) v = static_cast<std::int64_t>(rng() % 7) - 3;
        std::vector<BigInt> b = DenseBigMat::from_sparse(M).apply(x0);
        auto x = solve_integer(s, b);
        REQUIRE(x.has_value());
        CHECK(DenseBigMat::from_sparse(M).apply(*x) == b);
    }
    // insoluble system
    SparseIntMatrix M(1, 1);
    M.add(0, 0, 2);
    CHECK(!solve_integer(smith_normal_form(M), {BigInt(1)}).has_value());
}

TEST_CASE("sparse product and column sums") {
    SparseIntMatrix A(2, 3), B(3, 2);
    A.add(0, 0, 1);
    A.add(0, 2, -2);
    A.add(1, 1, 3);
    B.add(0, 0, 4);
    B.add(2, 0, 1);
    B.add(1, 1, -1);
    SparseIntMatrix C = A * B;
    CHECK(C.value(0, 0) == 2);
    CHECK(C.value(1, 1) == -3);
    CHECK(C.column_sum(0) == 2);
    CHECK(!C.is_zero());
}
