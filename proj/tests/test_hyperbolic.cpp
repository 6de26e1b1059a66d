#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ortho/hyperbolic.hpp"

#include <random>

using namespace ortho;

TEST_CASE("inner products of the standard basis") {
    RingDesc f3 = RingDesc::make(3, 1);
    HyperbolicSpace sp{f3, 2};
    CHECK(sp.inner(sp.e(1), sp.f(1)) == 1);
    CHECK(sp.inner(sp.e(1), sp.e(2)) == 0);
    CHECK(sp.inner(sp.f(1), sp.f(2)) == 0);
    CHECK(sp.inner(sp.e(2), sp.f(2)) == 1);
    CHECK(sp.inner(sp.e(1), sp.f(2)) == 0);
    Vec s = vec_add(f3, sp.e(1), sp.f(1));
    CHECK(sp.inner(s, s) == 2);
    CHECK_THROWS_AS(sp.inner(Vec{1, 0}, sp.e(1)), std::invalid_argument);
}

TEST_CASE("inner product is symmetric") {
    RingDesc z9 = RingDesc::make(3, 2);
    HyperbolicSpace sp{z9, 2};
    std::mt19937_64 rng(2);
    for (int t = 0; t < 200; ++t) {
        Vec u(4), v(4);
        for (auto& x : u) x = static_cast<std::int64_t>(rng() % 9);
        for (auto& x : v) x = static_cast<std::int64_t>(rng() % 9);
        CHECK(sp.inner(u, v) == sp.inner(v, u));
    }
}

TEST_CASE("isotropic unimodular validation") {
    RingDesc f3 = RingDesc::make(3, 1);
    RingDesc z9 = RingDesc::make(3, 2);
    HyperbolicSpace sp{f3, 2};
    CHECK(sp.is_isotropic_unimodular({sp.e(1), sp.e(2)}));
    CHECK(!sp.is_isotropic_unimodular({sp.e(1), sp.f(1)}));  // <e1,f1> = 1
    HyperbolicSpace sp9{z9, 2};
    CHECK(!sp9.is_isotropic_unimodular({sp9.e(1), vec_scale(z9, 3, sp9.e(2))}));  // residue rank 1

    CHECK_NOTHROW(IsotropicSequence(sp, {sp.e(1), sp.e(2)}));
    CHECK_THROWS_AS(IsotropicSequence(sp, {sp.e(1), sp.f(1)}), std::invalid_argument);
    CHECK_THROWS_AS(IsotropicSequence(sp9, {vec_scale(z9, 3, sp9.e(1))}), std::invalid_argument);
    CHECK(IsotropicSequence::empty(sp).length() == 0);
}

TEST_CASE("orthogonality and similitude checks") {
    RingDesc f5 = RingDesc::make(5, 1);
    HyperbolicSpace sp{f5, 2};
    Mat id = Mat::identity(f5, 4);
    CHECK(check_orthogonal(sp, id));
    CHECK(check_similitude(sp, id) == 1);

    Mat D = pair_scaling(sp, 2, 1);
    CHECK(check_orthogonal(sp, D));  // D_{a,k} lies in O_{n,n}

    Mat B = standard_similitude(sp, 2);
    CHECK(!check_orthogonal(sp, B));
    CHECK(check_similitude(sp, B) == 2);  // associated unit is a

    Mat two = scalar_matrix(sp, 2);
    CHECK(check_similitude(sp, two) == 4);
}

TEST_CASE("named matrices match their displays") {
    RingDesc f5 = RingDesc::make(5, 1);
    HyperbolicSpace sp1{f5, 1};
    Mat D = pair_scaling(sp1, 2, 1);
    CHECK(D(0, 0) == 2);
    CHECK(D(1, 1) == 3);  // 2^{-1} = 3 in F_5

    HyperbolicSpace sp2{f5, 2};
    Mat B = standard_similitude(sp2, 2);
    CHECK(B(0, 0) == 1);
    CHECK(B(1, 1) == 2);
    CHECK(B(2, 2) == 1);
    CHECK(B(3, 3) == 2);

    CHECK(pair_scaling(sp2, 1, 2) == Mat::identity(f5, 4));
    CHECK_THROWS_AS(pair_scaling(sp2, 5, 1), NotAUnitError);
    CHECK_THROWS_AS(standard_similitude(sp2, 0), NotAUnitError);
}

TEST_CASE("group closure of named orthogonal generators") {
    RingDesc z9 = RingDesc::make(3, 2);
    HyperbolicSpace sp{z9, 2};
    std::vector<Mat> gens = {pair_scaling(sp, 2, 1), pair_scaling(sp, 4, 2), pair_swap(sp, 1),
                             pair_swap(sp, 2), pair_permutation(sp, {2, 1})};
    for (const auto& g : gens) CHECK(check_orthogonal(sp, g));
    std::mt19937_64 rng(4);
    for (int t = 0; t < 100; ++t) {
        const Mat& a = gens[rng() % gens.size()];
        const Mat& b = gens[rng() % gens.size()];
        Mat prod = a * b;
        CHECK(check_orthogonal(sp, prod));
        OrthogonalElement el = OrthogonalElement::checked(sp, prod);
        CHECK(check_orthogonal(sp, el.inverted().matrix));
        CHECK(el.matrix * el.inverted().matrix == Mat::identity(z9, 4));
    }
}

TEST_CASE("similitude unit is multiplicative") {
    RingDesc f5 = RingDesc::make(5, 1);
    HyperbolicSpace sp{f5, 2};
    std::mt19937_64 rng(9);
    for (int t = 0; t < 50; ++t) {
        std::int64_t a = 1 + static_cast<std::int64_t>(rng() % 4);
        std::int64_t b = 1 + static_cast<std::int64_t>(rng() % 4);
        Mat prod = standard_similitude(sp, a) * standard_similitude(sp, b);
        CHECK(check_similitude(sp, prod) == f5.mul(a, b));
    }
}

TEST_CASE("block embedding preserves orthogonality and fixes the new pair") {
    RingDesc f3 = RingDesc::make(3, 1);
    HyperbolicSpace small{f3, 1};
    HyperbolicSpace big{f3, 2};
    Mat inner = pair_swap(small, 1);
    Mat embedded = block_embed(big, inner, 1);
    CHECK(check_orthogonal(big, embedded));
    CHECK(embedded.apply(big.e(1)) == big.e(1));
    CHECK(embedded.apply(big.f(1)) == big.f(1));
    CHECK(embedded.apply(big.e(2)) == big.f(2));

    HyperbolicSpace bigger{f3, 3};
    Mat twice = block_embed(bigger, inner, 2);
    CHECK(check_orthogonal(bigger, twice));
    CHECK(twice.apply(bigger.e(2)) == bigger.e(2));
}

TEST_CASE("scalar identity B_{a^-2} = D_{a,n} scalar(a^-1)") {
    for (RingDesc ring : {RingDesc::make(5, 1), RingDesc::make(3, 2), RingDesc::make(5, 2)}) {
        HyperbolicSpace sp{ring, 2};
        for (std::int64_t a = 1; a < ring.modulus; ++a) {
            if (!ring.is_unit(a)) continue;
            std::int64_t ainv = ring.inv(a);
            Mat lhs = standard_similitude(sp, ring.mul(ainv, ainv));
            Mat rhs = pair_scaling(sp, a, 2) * scalar_matrix(sp, ainv);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("IU enumeration counts") {
    RingDesc f3 = RingDesc::make(3, 1);
    HyperbolicSpace plane{f3, 1};
    CHECK(enumerate_iu(plane, 1).size() == 4);
    CHECK(enumerate_iu(plane, 2).empty());  // no rank-2 isotropic span in the plane

    HyperbolicSpace four{f3, 2};
    CHECK(enumerate_iu(four, 1).size() == 32);

    HyperbolicSpace zero{f3, 0};
    CHECK(enumerate_iu(zero, 1).empty());
    CHECK(enumerate_iu(zero, 0).size() == 1);  // the empty sequence
}
