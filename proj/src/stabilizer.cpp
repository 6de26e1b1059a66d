#include "ortho/stabilizer.hpp"

#include <cassert>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <thread>

namespace ortho {

namespace {

// u_i = -tB psi x_i in the rank n-k subspace
Vec derived_u(const HyperbolicSpace& sub, const Mat& B, const Vec& x) {
    const RingDesc& ring = sub.ring;
    Vec psix(x.size());
    for (std::size_t i = 0; i + 1 < x.size(); i += 2) {
        psix[i] = ring.reduce(x[i + 1]);
        psix[i + 1] = ring.reduce(x[i]);
    }
    if (x.empty()) return {};
    Vec u = B.transpose().apply(psix);
    for (auto& t : u) t = ring.neg(t);
    return u;
}

}  // namespace

StabilizerParams StabilizerParams::make(const HyperbolicSpace& space, int k,
                                        std::vector<std::vector<std::int64_t>> c, std::vector<Vec> x,
                                        Mat B) {
    if (k < 1 || k > space.n) throw std::invalid_argument("stabilizer params: k out of range");
    HyperbolicSpace sub{space.ring, space.n - k};
    const RingDesc& ring = space.ring;
    if (static_cast<int>(c.size()) != k) throw std::invalid_argument("stabilizer params: c must be k x k");
    for (auto& row : c) {
        if (static_cast<int>(row.size()) != k)
            throw std::invalid_argument("stabilizer params: c must be k x k");
        for (auto& v : row) v = ring.reduce(v);
    }
    if (static_cast<int>(x.size()) != k) throw std::invalid_argument("stabilizer params: need k columns x");
    for (auto& xi : x) {
        if (static_cast<int>(xi.size()) != sub.dim())
            throw std::invalid_argument("stabilizer params: x_i must lie in R^{2(n-k)}");
        xi = vec_reduce(ring, std::move(xi));
    }
    if (B.rows() != sub.dim() || B.cols() != sub.dim())
        throw std::invalid_argument("stabilizer params: B has wrong size");
    if (!check_orthogonal(sub, B))
        throw std::invalid_argument("stabilizer params: B is not orthogonal");
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            std::int64_t lhs = ring.add(ring.add(c[i][j], c[j][i]), sub.inner(x[i], x[j]));
            if (lhs != 0) {
                std::ostringstream os;
                os << "stabilizer params: c^" << (i + 1) << "_" << (j + 1) << " + c^" << (j + 1) << "_"
                   << (i + 1) << " + <x_" << (i + 1) << ", x_" << (j + 1) << "> = " << lhs << " != 0";
                throw std::invalid_argument(os.str());
            }
        }
    return StabilizerParams{space, k, std::move(c), std::move(x), std::move(B)};
}

OrthogonalElement build_stabilizer_element(const StabilizerParams& params) {
    const HyperbolicSpace& space = params.space;
    const RingDesc& ring = space.ring;
    int k = params.k;
    HyperbolicSpace sub{ring, space.n - k};
    Mat A(ring, space.dim(), space.dim());
    for (int i = 1; i <= k; ++i) {
        A.set(2 * (i - 1), 2 * (i - 1), 1);          // column of e_i
        A.set(2 * (i - 1) + 1, 2 * (i - 1) + 1, 1);  // row of f_i
    }
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) A.set(2 * i, 2 * j + 1, params.c[i][j]);
    for (int i = 0; i < k; ++i) {
        Vec u = derived_u(sub, params.B, params.x[i]);
        for (int t = 0; t < sub.dim(); ++t) A.set(2 * i, 2 * k + t, u[t]);
    }
    for (int j = 0; j < k; ++j)
        for (int t = 0; t < sub.dim(); ++t) A.set(2 * k + t, 2 * j + 1, params.x[j][t]);
    for (int s = 0; s < sub.dim(); ++s)
        for (int t = 0; t < sub.dim(); ++t) A.set(2 * k + s, 2 * k + t, params.B(s, t));
    OrthogonalElement g = OrthogonalElement::checked(space, std::move(A));
    for (int i = 1; i <= k; ++i) assert(g.apply(space.e(i)) == space.e(i));
    return g;
}

StabilizerParams read_stabilizer_params(const OrthogonalElement& A, int k) {
    const HyperbolicSpace& space = A.space;
    const RingDesc& ring = space.ring;
    if (k < 1 || k > space.n) throw std::invalid_argument("read_stabilizer_params: k out of range");
    HyperbolicSpace sub{ring, space.n - k};
    const Mat& m = A.matrix;
    for (int i = 1; i <= k; ++i)
        if (!(A.apply(space.e(i)) == space.e(i)))
            throw std::invalid_argument("read_stabilizer_params: element does not fix e_" +
                                        std::to_string(i));
    // forced rows: the f_i row is the i-th f unit row
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < space.dim(); ++j) {
            std::int64_t expect = j == 2 * i + 1 ? 1 : 0;
            if (m(2 * i + 1, j) != expect)
                throw std::invalid_argument("read_stabilizer_params: forced row pattern violated at f_" +
                                            std::to_string(i + 1));
        }
    std::vector<std::vector<std::int64_t>> c(static_cast<std::size_t>(k),
                                             std::vector<std::int64_t>(static_cast<std::size_t>(k)));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) c[i][j] = m(2 * i, 2 * j + 1);
    std::vector<Vec> x;
    for (int j = 0; j < k; ++j) {
        Vec xj(static_cast<std::size_t>(sub.dim()));
        for (int t = 0; t < sub.dim(); ++t) xj[t] = m(2 * k + t, 2 * j + 1);
        x.push_back(std::move(xj));
    }
    Mat B(ring, sub.dim(), sub.dim());
    for (int s = 0; s < sub.dim(); ++s)
        for (int t = 0; t < sub.dim(); ++t) B.set(s, t, m(2 * k + s, 2 * k + t));
    // the tail of the e_i rows must be the derived u_i
    for (int i = 0; i < k; ++i) {
        Vec u = derived_u(sub, B, x[i]);
        for (int t = 0; t < sub.dim(); ++t)
            if (m(2 * i, 2 * k + t) != u[t])
                throw std::invalid_argument("read_stabilizer_params: u_" + std::to_string(i + 1) +
                                            " does not match -tB psi x");
    }
    return StabilizerParams::make(space, k, std::move(c), std::move(x), std::move(B));
}

OrthogonalElement rho(const OrthogonalElement& A, int k) {
    StabilizerParams p = read_stabilizer_params(A, k);
    return OrthogonalElement::checked(p.sub_space(), p.B);
}

bool is_in_Lk(const OrthogonalElement& A, int k) {
    StabilizerParams p = read_stabilizer_params(A, k);
    return p.B == Mat::identity(A.space.ring, p.sub_space().dim());
}

OrthogonalElement local_action(std::int64_t a, const OrthogonalElement& A, int k) {
    const HyperbolicSpace& space = A.space;
    const RingDesc& ring = space.ring;
    if (!ring.is_unit(a)) throw NotAUnitError("local_action: a must be a unit");
    Mat D = pair_scaling(space, a, k);
    Mat Dinv = pair_scaling(space, ring.inv(a), k);
    OrthogonalElement conj{space, D * A.matrix * Dinv};

    StabilizerParams p = read_stabilizer_params(A, k);
    std::int64_t a2 = ring.mul(a, a);
    std::vector<std::vector<std::int64_t>> c2 = p.c;
    for (auto& row : c2)
        for (auto& v : row) v = ring.mul(a2, v);
    std::vector<Vec> x2;
    for (const auto& xi : p.x) x2.push_back(vec_scale(ring, a, xi));
    OrthogonalElement closed =
        build_stabilizer_element(StabilizerParams::make(space, k, std::move(c2), std::move(x2), p.B));
    if (!(conj.matrix == closed.matrix))
        throw std::logic_error("local_action: conjugation disagrees with the closed form");
    return conj;
}

OrthogonalElement kernel_extension_element(const HyperbolicSpace& space, int k, const Vec& upper_grid) {
    const RingDesc& ring = space.ring;
    int pairs = k * (k - 1) / 2;
    if (static_cast<int>(upper_grid.size()) != pairs)
        throw std::invalid_argument("kernel_extension_element: grid size mismatch");
    std::vector<std::vector<std::int64_t>> c(static_cast<std::size_t>(k),
                                             std::vector<std::int64_t>(static_cast<std::size_t>(k), 0));
    int t = 0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            c[i][j] = ring.reduce(upper_grid[t]);
            c[j][i] = ring.neg(c[i][j]);
            ++t;
        }
    HyperbolicSpace sub{ring, space.n - k};
    std::vector<Vec> x(static_cast<std::size_t>(k), Vec(static_cast<std::size_t>(sub.dim()), 0));
    return build_stabilizer_element(
        StabilizerParams::make(space, k, std::move(c), std::move(x), Mat::identity(ring, sub.dim())));
}

std::vector<Vec> quotient_projection(const OrthogonalElement& A, int k) {
    return read_stabilizer_params(A, k).x;
}

namespace {

struct LkEnumerator {
    // L_k elements are parametrized by the x tuple and the free upper grid
    HyperbolicSpace space;
    int k;
    VectorEnumeration x_en;   // over R^{2(n-k)k}
    VectorEnumeration g_en;   // over R^{k(k-1)/2}

    LkEnumerator(const HyperbolicSpace& s, int kk)
        : space(s),
          k(kk),
          x_en(s.ring, 2 * (s.n - kk) * kk),
          g_en(s.ring, kk * (kk - 1) / 2) {}

    std::uint64_t size() const { return x_en.size() * g_en.size(); }

    OrthogonalElement at(std::uint64_t idx) const {
        Vec xs = x_en.at(idx / g_en.size());
        Vec grid = g_en.at(idx % g_en.size());
        return build(xs, grid);
    }

    OrthogonalElement build(const Vec& xs, const Vec& grid) const {
        const RingDesc& ring = space.ring;
        HyperbolicSpace sub{ring, space.n - k};
        std::vector<Vec> x;
        for (int i = 0; i < k; ++i)
            x.emplace_back(xs.begin() + i * sub.dim(), xs.begin() + (i + 1) * sub.dim());
        std::vector<std::vector<std::int64_t>> c(
            static_cast<std::size_t>(k), std::vector<std::int64_t>(static_cast<std::size_t>(k), 0));
        int t = 0;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                c[i][j] = ring.reduce(grid[t]);
                c[j][i] = ring.sub(ring.neg(c[i][j]), sub.inner(x[i], x[j]));
                ++t;
            }
        for (int i = 0; i < k; ++i) c[i][i] = ring.neg(ring.mul(ring.half(), sub.inner(x[i], x[i])));
        return build_stabilizer_element(
            StabilizerParams::make(space, k, std::move(c), std::move(x), Mat::identity(ring, sub.dim())));
    }
};

}  // namespace

CentralExtensionReport central_extension_check(const RingDesc& ring, int n, int k, bool exhaustive,
                                               std::uint64_t samples, std::uint64_t seed) {
    HyperbolicSpace space{ring, n};
    CentralExtensionReport rep;
    rep.ring = ring.str();
    rep.n = n;
    rep.k = k;
    rep.mode = exhaustive ? "exhaustive" : "sampled";
    LkEnumerator lk(space, k);
    int pairs = k * (k - 1) / 2;
    VectorEnumeration grid_en(ring, pairs);

    std::mt19937_64 rng(seed);
    auto rand_grid = [&]() { return grid_en.at(rng() % grid_en.size()); };
    auto rand_lk = [&]() { return lk.at(rng() % lk.size()); };
    std::vector<std::int64_t> units;
    for (std::int64_t a = 1; a < ring.modulus; ++a)
        if (ring.is_unit(a)) units.push_back(a);

    auto fail = [&](const std::string& what) {
        if (rep.passed) {
            rep.passed = false;
            rep.counterexample = what;
        }
    };

    auto check_pair_grid = [&](const Vec& s, const Vec& t) {
        ++rep.checks;
        Vec sum(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) sum[i] = ring.add(ring.reduce(s[i]), ring.reduce(t[i]));
        OrthogonalElement lhs = kernel_extension_element(space, k, sum);
        OrthogonalElement rhs{space,
                              kernel_extension_element(space, k, s).matrix *
                                  kernel_extension_element(space, k, t).matrix};
        if (!(lhs.matrix == rhs.matrix)) fail("kernel arrow not a homomorphism");
    };
    auto check_pair_lk = [&](const OrthogonalElement& A, const OrthogonalElement& B) {
        ++rep.checks;
        auto pa = quotient_projection(A, k);
        auto pb = quotient_projection(B, k);
        auto pab = quotient_projection(OrthogonalElement{space, A.matrix * B.matrix}, k);
        for (int i = 0; i < k; ++i)
            if (!(pab[i] == vec_add(ring, pa[i], pb[i]))) {
                fail("quotient arrow not a homomorphism");
                return;
            }
    };
    auto check_exactness = [&](const OrthogonalElement& A) {
        ++rep.checks;
        auto px = quotient_projection(A, k);
        bool in_kernel = true;
        for (const auto& xi : px)
            if (!vec_is_zero(xi)) in_kernel = false;
        if (in_kernel) {
            // must equal the kernel element built from its own upper grid
            StabilizerParams p = read_stabilizer_params(A, k);
            Vec grid(static_cast<std::size_t>(pairs));
            int t = 0;
            for (int i = 0; i < k; ++i)
                for (int j = i + 1; j < k; ++j) grid[t++] = p.c[i][j];
            if (!(kernel_extension_element(space, k, grid).matrix == A.matrix))
                fail("exactness: kernel of quotient arrow exceeds image of kernel arrow");
        }
    };
    auto check_central = [&](const Vec& s, const OrthogonalElement& A) {
        ++rep.checks;
        Mat K = kernel_extension_element(space, k, s).matrix;
        if (!(K * A.matrix == A.matrix * K)) fail("image of kernel arrow is not central in L_k");
    };
    auto check_equivariance = [&](std::int64_t b, const Vec& s, const OrthogonalElement& A) {
        ++rep.checks;
        std::int64_t b2 = ring.mul(b, b);
        Mat D = pair_scaling(space, b, k);
        Mat Dinv = pair_scaling(space, ring.inv(b), k);
        // kernel: conjugation by D_{b,k} multiplies the grid by b^2
        Vec bs(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) bs[i] = ring.mul(b2, ring.reduce(s[i]));
        Mat lhs = D * kernel_extension_element(space, k, s).matrix * Dinv;
        if (!(lhs == kernel_extension_element(space, k, bs).matrix))
            fail("kernel equivariance weight is not b^2 (b=" + std::to_string(b) + ")");
        // quotient: conjugation multiplies the x tuple by b
        auto conj = OrthogonalElement{space, D * A.matrix * Dinv};
        auto pc = quotient_projection(conj, k);
        auto pa = quotient_projection(A, k);
        for (int i = 0; i < k; ++i)
            if (!(pc[i] == vec_scale(ring, b, pa[i])))
                fail("quotient equivariance weight is not b (b=" + std::to_string(b) + ")");
    };

    if (exhaustive) {
        for (std::uint64_t i = 0; i < grid_en.size(); ++i)
            for (std::uint64_t j = 0; j < grid_en.size(); ++j)
                check_pair_grid(grid_en.at(i), grid_en.at(j));
        std::vector<OrthogonalElement> all;
        for (std::uint64_t i = 0; i < lk.size(); ++i) all.push_back(lk.at(i));
        for (const auto& A : all)
            for (const auto& B : all) check_pair_lk(A, B);
        for (const auto& A : all) check_exactness(A);
        for (std::uint64_t i = 0; i < grid_en.size(); ++i)
            for (const auto& A : all) check_central(grid_en.at(i), A);
        for (std::int64_t b : units)
            for (std::uint64_t i = 0; i < grid_en.size(); ++i)
                for (const auto& A : all) check_equivariance(b, grid_en.at(i), A);
    } else {
        for (std::uint64_t t = 0; t < samples; ++t) {
            check_pair_grid(rand_grid(), rand_grid());
            check_pair_lk(rand_lk(), rand_lk());
            check_exactness(rand_lk());
            check_central(rand_grid(), rand_lk());
            check_equivariance(units[rng() % units.size()], rand_grid(), rand_lk());
        }
    }
    return rep;
}

namespace {

void scan_columns(const HyperbolicSpace& space, const VectorEnumeration& en, std::vector<Vec>& cols,
                  int next, std::uint64_t& count, std::vector<Mat>* collect) {
    int dim = space.dim();
    if (next == dim) {
        ++count;
        if (collect) collect->push_back(Mat::from_columns(space.ring, dim, cols));
        return;
    }
    Mat psi = space.gram();
    for (std::uint64_t i = 0; i < en.size(); ++i) {
        Vec v = en.at(i);
        bool ok = space.inner(v, v) == psi(next, next);
        for (int j = 0; ok && j < next; ++j) ok = space.inner(cols[j], v) == psi(j, next);
        if (!ok) continue;
        cols.push_back(std::move(v));
        scan_columns(space, en, cols, next + 1, count, collect);
        cols.pop_back();
    }
}

}  // namespace

std::uint64_t orthogonal_group_order_scan(const RingDesc& ring, int n, int workers,
                                          std::uint64_t column_cap) {
    if (n == 0) return 1;
    HyperbolicSpace space{ring, n};
    VectorEnumeration en(ring, space.dim(), column_cap);
    if (workers <= 1) {
        std::vector<Vec> cols;
        std::uint64_t count = 0;
        scan_columns(space, en, cols, 0, count, nullptr);
        return count;
    }
    // partition the first-column candidates across workers
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(workers), 0);
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) {
        threads.emplace_back([&, w]() {
            Mat psi = space.gram();
            for (std::uint64_t i = static_cast<std::uint64_t>(w); i < en.size();
                 i += static_cast<std::uint64_t>(workers)) {
                Vec v = en.at(i);
                if (space.inner(v, v) != psi(0, 0)) continue;
                std::vector<Vec> cols{v};
                scan_columns(space, en, cols, 1, counts[static_cast<std::size_t>(w)], nullptr);
            }
        });
    }
    for (auto& t : threads) t.join();
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    return total;
}

std::vector<Mat> enumerate_orthogonal_group(const RingDesc& ring, int n, std::uint64_t column_cap) {
    HyperbolicSpace space{ring, n};
    if (n == 0) return {Mat(ring, 0, 0)};
    VectorEnumeration en(ring, space.dim(), column_cap);
    std::vector<Vec> cols;
    std::vector<Mat> out;
    std::uint64_t count = 0;
    scan_columns(space, en, cols, 0, count, &out);
    return out;
}

Mat reflection(const HyperbolicSpace& space, const Vec& v) {
    const RingDesc& ring = space.ring;
    std::int64_t q = space.inner(v, v);
    if (!ring.is_unit(q)) throw NotAUnitError("reflection: <v, v> must be a unit");
    std::int64_t c = ring.mul(2 % ring.modulus, ring.inv(q));
    Mat M = Mat::identity(ring, space.dim());
    // M = 1 - c * v * (tv psi)
    for (int i = 0; i < space.dim(); ++i) {
        Vec ei(static_cast<std::size_t>(space.dim()), 0);
        ei[i] = 1;
        std::int64_t w = space.inner(v, ei);  // (tv psi)_i
        std::int64_t f = ring.mul(c, w);
        for (int r = 0; r < space.dim(); ++r)
            M.set(r, i, ring.sub(M(r, i), ring.mul(f, ring.reduce(v[r]))));
    }
    return M;
}

std::uint64_t orthogonal_group_order_bfs(const RingDesc& ring, int n) {
    if (n == 0) return 1;
    HyperbolicSpace space{ring, n};
    VectorEnumeration en(ring, space.dim());
    std::vector<Mat> gens;
    for (std::uint64_t i = 0; i < en.size(); ++i) {
        Vec v = en.at(i);
        if (ring.is_unit(space.inner(v, v))) gens.push_back(reflection(space, v));
    }
    auto key = [&](const Mat& m) {
        std::vector<std::int64_t> k;
        k.reserve(static_cast<std::size_t>(m.rows()) * m.cols());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) k.push_back(m(i, j));
        return k;
    };
    std::set<std::vector<std::int64_t>> seen;
    std::vector<Mat> frontier{Mat::identity(ring, space.dim())};
    seen.insert(key(frontier[0]));
    while (!frontier.empty()) {
        std::vector<Mat> next;
        for (const auto& m : frontier)
            for (const auto& g : gens) {
                Mat prod = g * m;
                auto kk = key(prod);
                if (seen.insert(kk).second) next.push_back(std::move(prod));
            }
        frontier = std::move(next);
    }
    return seen.size();
}

std::vector<OrthogonalElement> enumerate_stabilizer(const HyperbolicSpace& space, int k) {
    const RingDesc& ring = space.ring;
    HyperbolicSpace sub{ring, space.n - k};
    std::vector<Mat> blocks = enumerate_orthogonal_group(ring, space.n - k);
    VectorEnumeration x_en(ring, 2 * (space.n - k) * k);
    VectorEnumeration g_en(ring, k * (k - 1) / 2);
    std::vector<OrthogonalElement> out;
    for (const auto& B : blocks)
        for (std::uint64_t xi = 0; xi < x_en.size(); ++xi) {
            Vec xs = x_en.at(xi);
            std::vector<Vec> x;
            for (int i = 0; i < k; ++i)
                x.emplace_back(xs.begin() + i * sub.dim(), xs.begin() + (i + 1) * sub.dim());
            for (std::uint64_t gi = 0; gi < g_en.size(); ++gi) {
                Vec grid = g_en.at(gi);
                std::vector<std::vector<std::int64_t>> c(
                    static_cast<std::size_t>(k), std::vector<std::int64_t>(static_cast<std::size_t>(k), 0));
                int t = 0;
                for (int i = 0; i < k; ++i)
                    for (int j = i + 1; j < k; ++j) {
                        c[i][j] = ring.reduce(grid[t]);
                        c[j][i] = ring.sub(ring.neg(c[i][j]), sub.inner(x[i], x[j]));
                        ++t;
                    }
                for (int i = 0; i < k; ++i)
                    c[i][i] = ring.neg(ring.mul(ring.half(), sub.inner(x[i], x[i])));
                out.push_back(
                    build_stabilizer_element(StabilizerParams::make(space, k, c, x, B)));
            }
        }
    return out;
}

namespace {

using MatKey = std::vector<std::int64_t>;

MatKey key_of(const Mat& m) {
    MatKey k;
    k.reserve(static_cast<std::size_t>(m.rows()) * m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) k.push_back(m(i, j));
    return k;
}

// subgroup closure of a generating set inside a scanned ambient group
std::set<MatKey> subgroup_closure(const RingDesc& ring, int dim, const std::vector<Mat>& gens) {
    std::set<MatKey> seen;
    std::vector<Mat> frontier{Mat::identity(ring, dim)};
    seen.insert(key_of(frontier[0]));
    while (!frontier.empty()) {
        std::vector<Mat> next;
        for (const auto& m : frontier)
            for (const auto& g : gens) {
                Mat prod = g * m;
                if (seen.insert(key_of(prod)).second) next.push_back(std::move(prod));
            }
        frontier = std::move(next);
    }
    return seen;
}

struct AbelianizationData {
    std::vector<Mat> elements;
    std::set<MatKey> commutator;
    std::map<MatKey, int> coset_of;  // element key -> coset id
    std::vector<Mat> coset_reps;
};

AbelianizationData abelianization_data(const RingDesc& ring, int n) {
    AbelianizationData d;
    d.elements = enumerate_orthogonal_group(ring, n);
    int dim = 2 * n;
    std::vector<Mat> commutators;
    std::set<MatKey> comm_keys;
    HyperbolicSpace space{ring, n};
    Mat psi = space.gram();
    auto inv = [&](const Mat& a) { return psi * a.transpose() * psi; };
    for (const auto& a : d.elements)
        for (const auto& b : d.elements) {
            Mat c = a * b * inv(a) * inv(b);
            if (comm_keys.insert(key_of(c)).second) commutators.push_back(c);
        }
    d.commutator = subgroup_closure(ring, dim, commutators);
    // canonical coset keys: minimum over the commutator subgroup
    std::map<MatKey, int> canon_to_id;
    for (const auto& g : d.elements) {
        MatKey gk = key_of(g);
        if (d.coset_of.count(gk)) continue;
        MatKey best;
        bool first = true;
        std::vector<MatKey> members;
        for (const auto& ck : d.commutator) {
            Mat c(ring, dim, dim);
            int t = 0;
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) c.set(i, j, ck[static_cast<std::size_t>(t++)]);
            MatKey mk = key_of(g * c);
            members.push_back(mk);
            if (first || mk < best) {
                best = mk;
                first = false;
            }
        }
        int id;
        auto it = canon_to_id.find(best);
        if (it == canon_to_id.end()) {
            id = static_cast<int>(d.coset_reps.size());
            canon_to_id.emplace(best, id);
            d.coset_reps.push_back(g);
        } else {
            id = it->second;
        }
        for (const auto& mk : members) d.coset_of.emplace(mk, id);
    }
    return d;
}

}  // namespace

namespace {

AbelianizationReport report_from_data(const RingDesc& ring, int n, const AbelianizationData& d) {
    AbelianizationReport rep;
    rep.ring = ring.str();
    rep.n = n;
    rep.group_order = d.elements.size();
    rep.commutator_order = d.commutator.size();
    rep.abelianization_order = d.coset_reps.size();
    int id0 = d.coset_of.at(key_of(Mat::identity(ring, 2 * n)));
    for (const auto& g : d.coset_reps) {
        Mat acc = g;
        std::uint64_t ord = 1;
        while (d.coset_of.at(key_of(acc)) != id0) {
            acc = acc * g;
            ++ord;
        }
        rep.coset_orders.push_back(ord);
    }
    std::sort(rep.coset_orders.begin(), rep.coset_orders.end());
    return rep;
}

}  // namespace

AbelianizationReport abelianization_report(const RingDesc& ring, int n) {
    return report_from_data(ring, n, abelianization_data(ring, n));
}

H1InclusionReport h1_inclusion_report(const RingDesc& ring, int n) {
    if (n < 1) throw std::invalid_argument("h1_inclusion_report: requires n >= 1");
    H1InclusionReport rep;
    AbelianizationData src = abelianization_data(ring, n - 1);
    AbelianizationData dst = abelianization_data(ring, n);
    rep.source = report_from_data(ring, n - 1, src);
    rep.target = report_from_data(ring, n, dst);
    HyperbolicSpace big{ring, n};
    std::set<int> image;
    std::map<int, int> induced;  // source coset -> target coset
    bool inj = true;
    for (const auto& g : src.elements) {
        int sc = src.coset_of.at(key_of(g));
        int tc = dst.coset_of.at(key_of(block_embed(big, g, 1)));
        auto it = induced.find(sc);
        if (it == induced.end())
            induced.emplace(sc, tc);
        else if (it->second != tc)
            throw std::logic_error("h1_inclusion_report: induced map ill-defined");
        image.insert(tc);
    }
    // injective iff distinct source cosets land on distinct targets
    std::set<int> distinct;
    for (const auto& [sc, tc] : induced)
        if (!distinct.insert(tc).second) inj = false;
    rep.image_order = image.size();
    rep.injective = inj;
    rep.surjective = image.size() == rep.target.abelianization_order;
    return rep;
}

OrbitStabilizerReport orbit_stabilizer_audit(const RingDesc& ring, int n, int p, int workers) {
    HyperbolicSpace space{ring, n};
    OrbitStabilizerReport rep;
    rep.ring = ring.str();
    rep.n = n;
    rep.p = p;
    rep.iu_count = enumerate_iu(space, p).size();
    auto stab = enumerate_stabilizer(space, p);
    // the parametrization is a bijection; verify distinctness anyway
    std::set<std::vector<std::int64_t>> keys;
    for (const auto& g : stab) {
        std::vector<std::int64_t> k;
        for (int i = 0; i < g.matrix.rows(); ++i)
            for (int j = 0; j < g.matrix.cols(); ++j) k.push_back(g.matrix(i, j));
        keys.insert(std::move(k));
    }
    rep.stabilizer_count = keys.size();
    rep.group_order = orthogonal_group_order_scan(ring, n, workers);
    rep.product_ok = rep.iu_count * rep.stabilizer_count == rep.group_order;
    return rep;
}

}  // namespace ortho
