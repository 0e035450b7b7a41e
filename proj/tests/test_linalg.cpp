#include <catch2/catch_amalgamated.hpp>

#include "quadweb/linalg.hpp"

using namespace quadweb;

TEST_CASE("rank and kernels of the identity are trivial") {
    Fp k(65537);
    auto rk = rank_kernel(Mat<Fp>::identity(k, 8));
    REQUIRE(rk.rank == 8);
    REQUIRE(rk.kernel.dim() == 0);
    REQUIRE(rk.left_kernel.dim() == 0);
}

TEST_CASE("kernel of diag(1,1,1,1,1,1,0,0) is the last two coordinates") {
    Fp k(65537);
    Mat<Fp> d(k, 8, 8);
    for (int i = 0; i < 6; ++i) d.at(i, i) = 1;
    auto rk = rank_kernel(d);
    REQUIRE(rk.rank == 6);
    REQUIRE(rk.kernel == Subspace<Fp>::span_of_coordinates(k, 8, {6, 7}));
    REQUIRE(rk.left_kernel == rk.kernel);
}

TEST_CASE("constructed rank-r products have rank exactly r") {
    Fp k(65537);
    Rng rng(301);
    for (std::size_t r = 1; r <= 8; ++r) {
        for (int trial = 0; trial < 13; ++trial) {
            auto m = random_matrix(k, 8, r, rng) * random_matrix(k, r, 8, rng);
            auto rk = rank_kernel(m);
            REQUIRE(rk.rank == r);
            REQUIRE(rk.kernel.dim() == 8 - r);
            REQUIRE(rk.left_kernel.dim() == 8 - r);
            for (std::size_t c = 0; c < rk.kernel.dim(); ++c) {
                auto v = rk.kernel.basis().column(c);
                for (auto x : m.apply(v)) REQUIRE(x == 0);
            }
            for (std::size_t c = 0; c < rk.left_kernel.dim(); ++c) {
                auto v = rk.left_kernel.basis().column(c);
                for (auto x : m.transpose().apply(v)) REQUIRE(x == 0);
            }
        }
    }
}

TEST_CASE("rank_kernel over the rationals stays exact") {
    Rationals q;
    Rng rng(302);
    auto m = random_matrix(q, 6, 3, rng) * random_matrix(q, 3, 6, rng);
    REQUIRE(rank_kernel(m).rank == 3);
}

TEST_CASE("subspace canonical form is independent of the spanning set") {
    Fp k(65537);
    Rng rng(303);
    for (int trial = 0; trial < 20; ++trial) {
        auto b = random_matrix(k, 8, 3, rng);
        // same space, different generators: shuffle by a random invertible mix
        Mat<Fp> mix(k, 3, 5);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 5; ++j) mix.at(i, j) = k.uniform(rng);
        Subspace<Fp> s1(k, 8, b);
        Subspace<Fp> s2(k, 8, b * mix);
        if (s2.dim() != 3) continue;  // unlucky mix lost rank
        REQUIRE(s1 == s2);
        REQUIRE(s1.basis() == s2.basis());
        REQUIRE(s1.contains(b.column(1)));
    }
}

TEST_CASE("restricting the identity form to two coordinates gives the 2x2 identity") {
    Fp k(65537);
    auto s = Subspace<Fp>::span_of_coordinates(k, 8, {0, 1});
    REQUIRE(restrict_form(Mat<Fp>::identity(k, 8), s) == Mat<Fp>::identity(k, 2));
}

TEST_CASE("restrict_form rejects asymmetric input") {
    Fp k(65537);
    Mat<Fp> m(k, 3, 3);
    m.at(0, 1) = 1;
    REQUIRE_THROWS_AS(restrict_form(m, Subspace<Fp>::span_of_coordinates(k, 3, {0})), PreconditionError);
}

TEST_CASE("restricted form values agree with evaluation in the ambient space") {
    Fp k(65537);
    Rng rng(304);
    for (int trial = 0; trial < 50; ++trial) {
        auto a = random_matrix(k, 8, 8, rng);
        Mat<Fp> sym = a + a.transpose();
        Subspace<Fp> s(k, 8, random_matrix(k, 8, 4, rng));
        auto restricted = restrict_form(sym, s);
        std::vector<Fp::Elem> v(s.dim());
        for (auto& x : v) x = k.uniform(rng);
        auto embedded = s.basis().apply(v);
        REQUIRE(vec_dot(k, v, restricted.apply(v)) == vec_dot(k, embedded, sym.apply(embedded)));
    }
}

TEST_CASE("span_join basics") {
    Fp k(65537);
    auto e0 = Subspace<Fp>::span_of_coordinates(k, 8, {0});
    auto e1 = Subspace<Fp>::span_of_coordinates(k, 8, {1});
    REQUIRE(span_join(e0, e1).dim() == 2);
    Rng rng = Rng::derive(1, 1);
    auto a = Subspace<Fp>(k, 8, random_matrix(k, 8, 3, rng));
    REQUIRE(span_join(a, a) == a);
}

TEST_CASE("dimension formula dim(a+b) = dim a + dim b - dim(a intersect b)") {
    Fp k(65537);
    Rng rng(305);
    for (int trial = 0; trial < 50; ++trial) {
        Subspace<Fp> a(k, 8, random_matrix(k, 8, 1 + rng.below(5), rng));
        Subspace<Fp> b(k, 8, random_matrix(k, 8, 1 + rng.below(5), rng));
        auto join = span_join(a, b);
        auto meet = subspace_intersect(a, b);
        REQUIRE(join.dim() + meet.dim() == a.dim() + b.dim());
        for (std::size_t c = 0; c < meet.dim(); ++c) {
            REQUIRE(a.contains(meet.basis().column(c)));
            REQUIRE(b.contains(meet.basis().column(c)));
        }
    }
}

TEST_CASE("mat_det matches cofactor expansion on small matrices") {
    Fp k(65537);
    Rng rng(306);
    for (int trial = 0; trial < 100; ++trial) {
        auto m = random_matrix(k, 3, 3, rng);
        Fp::Elem want = k.zero();
        // 3x3 rule written out
        want = k.add(want, k.mul(m.at(0, 0), k.sub(k.mul(m.at(1, 1), m.at(2, 2)), k.mul(m.at(1, 2), m.at(2, 1)))));
        want = k.sub(want, k.mul(m.at(0, 1), k.sub(k.mul(m.at(1, 0), m.at(2, 2)), k.mul(m.at(1, 2), m.at(2, 0)))));
        want = k.add(want, k.mul(m.at(0, 2), k.sub(k.mul(m.at(1, 0), m.at(2, 1)), k.mul(m.at(1, 1), m.at(2, 0)))));
        REQUIRE(mat_det(m) == want);
    }
    REQUIRE(mat_det(Mat<Fp>::identity(k, 8)) == 1);
    Mat<Fp> swapped = Mat<Fp>::identity(k, 4);
    std::swap(swapped.at(0, 0), swapped.at(0, 1));
    std::swap(swapped.at(1, 0), swapped.at(1, 1));
    REQUIRE(mat_det(swapped) == k.from_int(-1));
}

TEST_CASE("projective normalization pins the first nonzero coordinate to 1") {
    Fp k(7);
    std::vector<Fp::Elem> v = {0, 3, 5};
    auto n = projective_normalize(k, v);
    REQUIRE(n == std::vector<Fp::Elem>{0, 1, k.mul(5, k.inv(3))});
    REQUIRE_THROWS_AS(projective_normalize(k, std::vector<Fp::Elem>{0, 0}), PreconditionError);
}

TEST_CASE("shape and context mismatches raise") {
    Fp k7(7), k11(11);
    Mat<Fp> a(k7, 2, 2), b(k11, 2, 2), c(k7, 3, 2);
    REQUIRE_THROWS_AS(a + b, ContextMismatchError);
    REQUIRE_THROWS_AS(a + c, PreconditionError);
    REQUIRE_THROWS_AS(a * c, PreconditionError);
}
