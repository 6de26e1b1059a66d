#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ortho/sampling.hpp"
#include "ortho/stabilizer.hpp"

#include <set>

using namespace ortho;

namespace {

std::vector<std::int64_t> mat_key(const Mat& m) {
    std::vector<std::int64_t> k;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) k.push_back(m(i, j));
    return k;
}

}  // namespace

TEST_CASE("trivial stabilizer parameters build the identity") {
    RingDesc f3 = RingDesc::make(3, 1);
    HyperbolicSpace sp{f3, 2};
    // k = n: no B block, no x; zero grid gives the identity
    auto params = StabilizerParams::make(sp, 2, {{0, 0}, {0, 0}}, {Vec{}, Vec{}}, Mat(f3, 0, 0));
    OrthogonalElement g = build_stabilizer_element(params);
    CHECK(g.matrix == Mat::identity(f3, 4));
}

TEST_CASE("the worked k=1 example over F_3") {
    RingDesc f3 = RingDesc::make(3, 1);
    HyperbolicSpace sp{f3, 2};
    // x = (1,0) in the rank-1 tail: <x,x> = 0, so c = 0 and u = -psi x
    Vec x{1, 0};
    auto params = StabilizerParams::make(sp, 1, {{0}}, {x}, Mat::identity(f3, 2));
    OrthogonalElement g = build_stabilizer_element(params);
    CHECK(check_orthogonal(sp, g.matrix));
    CHECK(g.apply(sp.e(1)) == sp.e(1));
    // u = -psi_2 x = -(0,1) = (0,2)
    CHECK(g.matrix(0, 2) == 0);
    CHECK(g.matrix(0, 3) == 2);
}

TEST_CASE("violated parameter equation is rejected with the pair named") {
    RingDesc f3 = RingDesc::make(3, 1);
    HyperbolicSpace sp{f3, 2};
    // 2c + <x,x> != 0
    Vec x{1, 1};  // <x,x> = 2 in the rank-1 tail
    CHECK_THROWS_WITH_AS(StabilizerParams::make(sp, 1, {{0}}, {x}, Mat::identity(f3, 2)),
                         doctest::Contains("c^1_1"), std::invalid_argument);
}

TEST_CASE("read/build round trip and forced pattern") {
    RingDesc f3 = RingDesc::make(3, 1);
    HyperbolicSpace sp{f3, 2};
    auto id_params = read_stabilizer_params(
        OrthogonalElement::checked(sp, Mat::identity(f3, 4)), 1);
    CHECK(id_params.c[0][0] == 0);
    CHECK(vec_is_zero(id_params.x[0]));
    CHECK(id_params.B == Mat::identity(f3, 2));

    Sampler s(3);
    for (int t = 0; t < 50; ++t) {
        HyperbolicSpace sub{f3, 1};
        Vec x = s.vector(f3, 2);
        std::int64_t c = f3.neg(f3.mul(f3.half(), sub.inner(x, x)));
        Mat B = s.orthogonal(sub).matrix;
        auto params = StabilizerParams::make(sp, 1, {{c}}, {x}, B);
        OrthogonalElement g = build_stabilizer_element(params);
        auto back = read_stabilizer_params(g, 1);
        CHECK(back == params);
    }
}

TEST_CASE("stabilizer bijection over F_3 (exhaustive)") {
    RingDesc f3 = RingDesc::make(3, 1);
    for (auto [n, k] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {2, 2}}) {
        HyperbolicSpace sp{f3, n};
        auto group = enumerate_orthogonal_group(f3, n);
        std::set<std::vector<std::int64_t>> fixing;
        for (const auto& m : group) {
            bool fixes = true;
            for (int i = 1; i <= k && fixes; ++i) fixes = m.apply(sp.e(i)) == sp.e(i);
            if (!fixes) continue;
            // every such element parses with all equations satisfied
            auto params = read_stabilizer_params(OrthogonalElement::checked(sp, m), k);
            CHECK(build_stabilizer_element(params).matrix == m);
            fixing.insert(mat_key(m));
        }
        // and every parameter choice builds an element fixing e_1..e_k
        auto built = enumerate_stabilizer(sp, k);
        std::set<std::vector<std::int64_t>> built_keys;
        for (const auto& g : built) {
            for (int i = 1; i <= k; ++i) CHECK(g.apply(sp.e(i)) == sp.e(i));
            built_keys.insert(mat_key(g.matrix));
        }
        CHECK(built_keys == fixing);
    }
}

TEST_CASE("rho is a multiplicative retraction of the block embedding") {
    RingDesc f3 = RingDesc::make(3, 1);
    HyperbolicSpace sp{f3, 2};
    HyperbolicSpace sub{f3, 1};
    Sampler s(5);
    for (int t = 0; t < 40; ++t) {
        Mat B = s.orthogonal(sub).matrix;
        OrthogonalElement emb = OrthogonalElement::checked(sp, block_embed(sp, B, 1));
        CHECK(rho(emb, 1).matrix == B);  // section of rho

        HyperbolicSpace tail{f3, 1};
        Vec x = s.vector(f3, 2);
        std::int64_t c = f3.neg(f3.mul(f3.half(), tail.inner(x, x)));
        OrthogonalElement a = build_stabilizer_element(
            StabilizerParams::make(sp, 1, {{c}}, {x}, s.orthogonal(sub).matrix));
        OrthogonalElement b = build_stabilizer_element(
            StabilizerParams::make(sp, 1, {{0}}, {Vec{0, 0}}, s.orthogonal(sub).matrix));
        CHECK(rho(a * b, 1).matrix == rho(a, 1).matrix * rho(b, 1).matrix);
        CHECK(is_in_Lk(a * a.inverted(), 1));
    }
}

TEST_CASE("kernel size |L_1| = 9 for n = 2 over F_3") {
    RingDesc f3 = RingDesc::make(3, 1);
    HyperbolicSpace sp{f3, 2};
    auto stab = enumerate_stabilizer(sp, 1);
    int kernel = 0;
    for (const auto& g : stab)
        if (is_in_Lk(g, 1)) ++kernel;
    CHECK(kernel == 9);  // x free in R^2, c determined
    CHECK(stab.size() == 36);
}

TEST_CASE("local action: conjugation equals the closed form") {
    RingDesc f3 = RingDesc::make(3, 1);
    HyperbolicSpace sp{f3, 2};
    auto stab = enumerate_stabilizer(sp, 1);
    for (const auto& g : stab) {
        // a = 1 acts trivially
        CHECK(local_action(1, g, 1).matrix == g.matrix);
        for (std::int64_t a : {2}) {
            OrthogonalElement conj = local_action(a, g, 1);
            auto p0 = read_stabilizer_params(g, 1);
            auto p1 = read_stabilizer_params(conj, 1);
            std::int64_t a2 = f3.mul(a, a);
            CHECK(p1.c[0][0] == f3.mul(a2, p0.c[0][0]));
            CHECK(p1.x[0] == vec_scale(f3, a, p0.x[0]));
            CHECK(p1.B == p0.B);
        }
    }
}

TEST_CASE("local action composes like the unit group") {
    RingDesc z9 = RingDesc::make(3, 2);
    HyperbolicSpace sp{z9, 2};
    Sampler s(11);
    HyperbolicSpace sub{z9, 1};
    for (int t = 0; t < 30; ++t) {
        Vec x = s.vector(z9, 2);
        std::int64_t c = z9.neg(z9.mul(z9.half(), sub.inner(x, x)));
        OrthogonalElement g = build_stabilizer_element(
            StabilizerParams::make(sp, 1, {{c}}, {x}, s.orthogonal(sub).matrix));
        std::int64_t a = s.unit(z9), b = s.unit(z9);
        OrthogonalElement lhs = local_action(a, local_action(b, g, 1), 1);
        OrthogonalElement rhs = local_action(z9.mul(a, b), g, 1);
        CHECK(lhs.matrix == rhs.matrix);
        // restriction to the embedded block is trivial
        OrthogonalElement emb = OrthogonalElement::checked(sp, block_embed(sp, s.orthogonal(sub).matrix, 1));
        CHECK(local_action(a, emb, 1).matrix == emb.matrix);
    }
}

TEST_CASE("central extension exhaustive at (2,2) over F_3") {
    RingDesc f3 = RingDesc::make(3, 1);
    auto rep = central_extension_check(f3, 2, 2, true);
    CHECK(rep.passed);
    CHECK(rep.checks > 0);
    // |L_2| = 3: one free grid entry, no x part
    HyperbolicSpace sp{f3, 2};
    auto stab = enumerate_stabilizer(sp, 2);
    CHECK(stab.size() == 3);
}

TEST_CASE("central extension sampled at (3,2) over F_3") {
    RingDesc f3 = RingDesc::make(3, 1);
    auto rep = central_extension_check(f3, 3, 2, false, 500, 7);
    CHECK(rep.passed);
    CHECK(rep.mode == "sampled");
}

TEST_CASE("k=1 kernel is abelian") {
    RingDesc f3 = RingDesc::make(3, 1);
    HyperbolicSpace sp{f3, 2};
    auto stab = enumerate_stabilizer(sp, 1);
    std::vector<OrthogonalElement> l1;
    for (const auto& g : stab)
        if (is_in_Lk(g, 1)) l1.push_back(g);
    for (const auto& a : l1)
        for (const auto& b : l1) CHECK(a.matrix * b.matrix == b.matrix * a.matrix);
}

TEST_CASE("group orders: scan vs reflection BFS") {
    RingDesc f3 = RingDesc::make(3, 1);
    CHECK(orthogonal_group_order_scan(f3, 1) == 4);
    CHECK(orthogonal_group_order_bfs(f3, 1) == 4);
    CHECK(orthogonal_group_order_scan(f3, 2) == 1152);
    CHECK(orthogonal_group_order_bfs(f3, 2) == 1152);
    RingDesc f5 = RingDesc::make(5, 1);
    CHECK(orthogonal_group_order_scan(f5, 1) == 8);
    CHECK(orthogonal_group_order_bfs(f5, 1) == 8);
    // workers partition without changing the count
    CHECK(orthogonal_group_order_scan(f3, 2, 4) == 1152);
}

TEST_CASE("orbit-stabilizer audits") {
    RingDesc f3 = RingDesc::make(3, 1);
    auto rep1 = orbit_stabilizer_audit(f3, 1, 1);
    CHECK(rep1.iu_count == 4);
    CHECK(rep1.stabilizer_count == 1);
    CHECK(rep1.group_order == 4);
    CHECK(rep1.product_ok);

    auto rep2 = orbit_stabilizer_audit(f3, 2, 1, 2);
    CHECK(rep2.iu_count == 32);
    CHECK(rep2.stabilizer_count == 36);
    CHECK(rep2.group_order == 1152);
    CHECK(rep2.product_ok);

    auto rep3 = orbit_stabilizer_audit(f3, 2, 2);
    CHECK(rep3.iu_count == 384);
    CHECK(rep3.stabilizer_count == 3);
    CHECK(rep3.product_ok);
}
