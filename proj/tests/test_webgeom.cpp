#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "quadweb/webgeom.hpp"

using namespace quadweb;

namespace {

Web<Fp> plane_web(const Fp& k, std::uint64_t seed) {
    return sample_web(k, seed, Plane<Fp>::coordinate_default(k));
}

/// The running example quadric x0 x5 + x1 x6 + x2 x7 + x3^2 + x4^2
/// packaged in a web with three independent fillers supported away from
/// the last three coordinates.
Web<Fp> worked_example_web(const Fp& k) {
    Mat<Fp> q0(k, kAmbient, kAmbient);
    const auto half = k.inv(k.from_int(2));
    q0.at(0, 5) = q0.at(5, 0) = half;
    q0.at(1, 6) = q0.at(6, 1) = half;
    q0.at(2, 7) = q0.at(7, 2) = half;
    q0.at(3, 3) = k.one();
    q0.at(4, 4) = k.one();
    std::array<Mat<Fp>, kWebSize> qs{q0, Mat<Fp>(k, kAmbient, kAmbient),
                                     Mat<Fp>(k, kAmbient, kAmbient), Mat<Fp>(k, kAmbient, kAmbient)};
    qs[1].at(1, 1) = k.one();  // x1^2
    qs[2].at(2, 2) = k.one();  // x2^2
    qs[3].at(3, 3) = k.one();  // x3^2
    return Web<Fp>{std::move(qs), Plane<Fp>::coordinate_default(k), 0};
}

}  // namespace

TEST_CASE("sampled plane-webs vanish on the plane and carry a degree-8 octic") {
    Fp k(65537);
    for (std::uint64_t seed : {1, 2, 3}) {
        auto w = plane_web(k, seed);
        REQUIRE(w.plane.has_value());
        for (const auto& q : w.quadrics) {
            REQUIRE(q.is_symmetric());
            REQUIRE(restrict_form(q, w.plane->space()).is_zero());
        }
        auto octic = det_octic(w);
        REQUIRE(octic.det_poly.total_degree() == 8);
        REQUIRE(octic.det_poly.is_homogeneous());
        REQUIRE(octic.gradient.size() == 4);
        for (const auto& g : octic.gradient) REQUIRE(g.total_degree() == 7);
    }
}

TEST_CASE("web sampling is deterministic in the seed") {
    Fp k(65537);
    auto a = plane_web(k, 77);
    auto b = plane_web(k, 77);
    for (std::size_t i = 0; i < kWebSize; ++i) REQUIRE(a.quadrics[i] == b.quadrics[i]);
}

TEST_CASE("octic of a diagonal web is the product of its diagonal forms") {
    Fp k(65537);
    Rng rng(501);
    std::array<Mat<Fp>, kWebSize> qs{Mat<Fp>(k, 8, 8), Mat<Fp>(k, 8, 8), Mat<Fp>(k, 8, 8),
                                     Mat<Fp>(k, 8, 8)};
    for (auto& q : qs)
        for (std::size_t i = 0; i < 8; ++i) q.at(i, i) = k.uniform(rng);
    Web<Fp> w{qs, std::nullopt, 0};
    auto octic = det_octic(w);
    auto expect = MultiPoly<Fp>::constant(k, 4, k.one());
    for (std::size_t i = 0; i < 8; ++i) {
        MultiPoly<Fp> linear(k, 4);
        for (std::size_t j = 0; j < 4; ++j) {
            MultiPoly<Fp>::Expo e(4, 0);
            e[j] = 1;
            linear.add_term(e, qs[j].at(i, i));
        }
        expect = expect * linear;
    }
    REQUIRE(octic.det_poly == expect);
}

TEST_CASE("octic evaluation equals the numeric determinant of the member") {
    Fp k(65537);
    auto w = plane_web(k, 4);
    auto octic = det_octic(w);
    Rng rng(502);
    for (int i = 0; i < 200; ++i) {
        auto m = sample_member(w, rng);
        REQUIRE(octic.det_poly.eval(m.lambda) == mat_det(m.matrix));
    }
}

TEST_CASE("tangent hull has dimension 5 and contains the plane") {
    Fp k(65537);
    Rng rng(503);
    for (std::uint64_t seed : {10, 11, 12, 13, 14, 15, 16, 17, 18, 19}) {
        auto w = plane_web(k, seed);
        for (int trial = 0; trial < 100; ++trial) {
            auto m = sample_member(w, rng);
            auto hull = tangent_hull(m, *w.plane);
            REQUIRE(hull.dim() == 5);
            for (std::size_t c = 0; c < 3; ++c)
                REQUIRE(hull.contains(w.plane->basis().column(c)));
        }
    }
}

TEST_CASE("worked example: hull, binary form, discriminant, and 3-spaces") {
    Fp k(65537);
    auto w = worked_example_web(k);
    auto m = web_member(w, {k.one(), k.zero(), k.zero(), k.zero()});

    auto hull = tangent_hull(m, *w.plane);
    REQUIRE(hull == Subspace<Fp>::span_of_coordinates(k, 8, {3, 4, 5, 6, 7}));

    auto res = quadric_to_points(w, m);
    // restricted form is y0^2 + y1^2 on the quotient directions (e3, e4)
    REQUIRE(res.a == 1);
    REQUIRE(res.b == 0);
    REQUIRE(res.c == 1);
    REQUIRE(res.discriminant == k.from_int(-1));
    // 65537 = 1 mod 4, so -1 splits and the 3-spaces are {x3 = +-i x4} over the hull
    REQUIRE(res.split == DiscSplit::TwoDistinct);
    REQUIRE(res.three_spaces.size() == 2);
    auto i_root = k.sqrt(k.from_int(-1));
    REQUIRE(i_root.has_value());
    for (const auto& v : res.three_spaces) {
        REQUIRE(v.dim() == 4);
        // contains P and the direction (x3, x4) = (t, 1) with t^2 = -1
        for (std::size_t c = 0; c < 3; ++c) REQUIRE(v.contains(w.plane->basis().column(c)));
        std::vector<Fp::Elem> dir(8, k.zero());
        dir[3] = *i_root;
        dir[4] = k.one();
        std::vector<Fp::Elem> dir2(8, k.zero());
        dir2[3] = k.neg(*i_root);
        dir2[4] = k.one();
        REQUIRE((v.contains(dir) || v.contains(dir2)));
        // the whole 3-space sits inside the quadric, so the residual is
        // the plane doubled: rank-1 coefficient matrix, DoublePlane tag
    }
    REQUIRE(res.residuals[0].form_rank == 1);
    REQUIRE(res.residuals[0].tag == ResidualTag::DoublePlane);
    REQUIRE(res.points.empty());

    // over F_7 the discriminant -1 is a non-residue: conjugate pair, no spaces
    Fp k7(7);
    auto w7 = worked_example_web(k7);
    auto m7 = web_member(w7, {k7.one(), k7.zero(), k7.zero(), k7.zero()});
    auto res7 = quadric_to_points(w7, m7);
    REQUIRE(res7.discriminant == k7.from_int(-1));
    REQUIRE(res7.split == DiscSplit::ConjugatePair);
    REQUIRE(res7.three_spaces.empty());
}

TEST_CASE("forced residual classifications") {
    Fp k(65537);
    // quadrics x0*l(x) with l picked so the coefficient rows are exact
    auto row_quadric = [&](std::initializer_list<long long> coeffs) {
        // coeffs = (a, b, c, d) for q = x0 (a x0 + b x5 + c x6 + d x7)
        Mat<Fp> q(k, 8, 8);
        auto it = coeffs.begin();
        const auto half = k.inv(k.from_int(2));
        q.at(0, 0) = k.from_int(*it++);
        q.at(0, 5) = q.at(5, 0) = k.mul(half, k.from_int(*it++));
        q.at(0, 6) = q.at(6, 0) = k.mul(half, k.from_int(*it++));
        q.at(0, 7) = q.at(7, 0) = k.mul(half, k.from_int(*it++));
        return q;
    };
    auto diag_filler = [&](std::size_t i) {
        Mat<Fp> q(k, 8, 8);
        q.at(i, i) = k.one();
        return q;
    };
    auto v = Subspace<Fp>::span_of_coordinates(k, 8, {0, 5, 6, 7});

    SECTION("rank 3 kernel off the plane: point at (1:0:...:0)") {
        Web<Fp> w{{row_quadric({0, 1, 0, 0}), row_quadric({0, 0, 1, 0}), row_quadric({0, 0, 0, 1}),
                   diag_filler(1)},
                  Plane<Fp>::coordinate_default(k), 0};
        auto res = residual_intersection(w, v);
        REQUIRE(res.form_rank == 3);
        REQUIRE(res.tag == ResidualTag::PointOffPlane);
        std::vector<Fp::Elem> e0(8, k.zero());
        e0[0] = k.one();
        REQUIRE(res.point == e0);
    }

    SECTION("rank 2: residual line meeting the plane") {
        Web<Fp> w{{row_quadric({0, 1, 0, 0}), row_quadric({0, 0, 1, 0}), diag_filler(1),
                   diag_filler(2)},
                  Plane<Fp>::coordinate_default(k), 0};
        auto res = residual_intersection(w, v);
        REQUIRE(res.form_rank == 2);
        REQUIRE(res.tag == ResidualTag::LineProper);
        REQUIRE(res.line.has_value());
        // the line {z1 = z2 = 0} = span(e0, e7) in ambient terms
        Subspace<Fp> line(k, 8, *res.line);
        REQUIRE(line == Subspace<Fp>::span_of_coordinates(k, 8, {0, 7}));
    }

    SECTION("rank 4: residual empty beyond the plane") {
        Web<Fp> w{{row_quadric({1, 0, 0, 0}), row_quadric({0, 1, 0, 0}), row_quadric({0, 0, 1, 0}),
                   row_quadric({0, 0, 0, 1})},
                  Plane<Fp>::coordinate_default(k), 0};
        auto res = residual_intersection(w, v);
        REQUIRE(res.form_rank == 4);
        REQUIRE(res.tag == ResidualTag::PlaneOnly);
    }

    SECTION("rank 0: the whole 3-space lies in every quadric") {
        Web<Fp> w{{diag_filler(1), diag_filler(2), diag_filler(3), diag_filler(4)},
                  Plane<Fp>::coordinate_default(k), 0};
        auto res = residual_intersection(w, v);
        REQUIRE(res.form_rank == 0);
        REQUIRE(res.tag == ResidualTag::All);
    }

    SECTION("subspace not containing the plane is rejected") {
        Web<Fp> w{{diag_filler(1), diag_filler(2), diag_filler(3), diag_filler(4)},
                  Plane<Fp>::coordinate_default(k), 0};
        auto bad = Subspace<Fp>::span_of_coordinates(k, 8, {0, 1, 2, 3});
        REQUIRE_THROWS_AS(residual_intersection(w, bad), PreconditionError);
    }
}

TEST_CASE("generic correspondence: tags, point counts, and round trips") {
    Fp k(65537);
    int split_trials = 0, rejected = 0, on_plane_points = 0;
    for (std::uint64_t seed : {21, 22, 23}) {
        auto w = plane_web(k, seed);
        auto octic = det_octic(w);
        Rng rng = Rng::derive(seed, 1);
        for (int trial = 0; trial < 100; ++trial) {
            auto m = sample_member(w, rng);
            auto res = quadric_to_points(w, m);
            const bool on_octic = k.is_zero(octic.det_poly.eval(m.lambda));
            REQUIRE_FALSE(on_octic);  // random members miss a hypersurface
            REQUIRE_FALSE(k.is_zero(res.discriminant));
            if (res.split == DiscSplit::ConjugatePair) {
                ++rejected;
                continue;
            }
            ++split_trials;
            REQUIRE(res.split == DiscSplit::TwoDistinct);
            REQUIRE(res.three_spaces.size() == 2);
            REQUIRE(res.points.size() == 2);
            REQUIRE_FALSE(res.three_spaces[0] == res.three_spaces[1]);
            REQUIRE(res.points[0] != res.points[1]);
            for (const auto& res_tag : res.residuals)
                REQUIRE((res_tag.tag == ResidualTag::PointOffPlane ||
                         res_tag.tag == ResidualTag::PointOnPlane));
            for (const auto& p : res.points) {
                REQUIRE(in_base_locus(w, p));
                if (w.plane->contains(p)) ++on_plane_points;
                // round trip: the point reconstructs the member
                auto back = point_to_quadric(w, p);
                REQUIRE(back.lambda == m.lambda);
            }
        }
    }
    REQUIRE(split_trials + rejected == 300);
    REQUIRE(on_plane_points == 0);
    // non-square discriminants appear for about half the trials
    REQUIRE(rejected > 300 * 0.35);
    REQUIRE(rejected < 300 * 0.65);
}

TEST_CASE("forward trip: point determines member determines point") {
    Fp k(65537);
    auto w = plane_web(k, 31);
    Rng rng(504);
    int done = 0;
    while (done < 500) {
        auto m = sample_member(w, rng);
        auto res = quadric_to_points(w, m);
        if (res.split != DiscSplit::TwoDistinct) continue;
        for (const auto& p : res.points) {
            auto member = point_to_quadric(w, p);
            auto again = quadric_to_points(w, member);
            bool found = false;
            for (const auto& p2 : again.points) found = found || p2 == p;
            REQUIRE(found);
            ++done;
        }
    }
}

TEST_CASE("octic samples: discriminant zero, one residual point, rank 7") {
    Fp k(65537);
    auto w = plane_web(k, 41);
    auto octic = det_octic(w);
    Rng rng(505);
    for (int trial = 0; trial < 20; ++trial) {
        auto m = sample_octic_point(w, octic, rng);
        REQUIRE(octic.det_poly.eval(m.lambda) == 0);
        REQUIRE(rank_kernel(m.matrix).rank == 7);
        REQUIRE(classify_member(w, octic, m) == MemberClass::OcticSmoothPoint);
        auto res = quadric_to_points(w, m);
        REQUIRE(res.discriminant == 0);
        REQUIRE(res.split == DiscSplit::DoubleRoot);
        REQUIRE(res.three_spaces.size() == 1);
        REQUIRE(res.points.size() == 1);
        REQUIRE(in_base_locus(w, res.points[0]));
        // the single point inverts to the same member
        REQUIRE(point_to_quadric(w, res.points[0]).lambda == m.lambda);
    }
}

TEST_CASE("branch equivalence: discriminant vanishes exactly on the octic") {
    Fp k(65537);
    auto w = plane_web(k, 51);
    auto octic = det_octic(w);
    Rng rng(506);
    int checked = 0;
    for (int trial = 0; trial < 250; ++trial) {
        auto m = sample_member(w, rng);
        auto res = quadric_to_points(w, m);
        REQUIRE(k.is_zero(res.discriminant) == k.is_zero(octic.det_poly.eval(m.lambda)));
        ++checked;
    }
    for (int trial = 0; trial < 250; ++trial) {
        auto m = sample_octic_point(w, octic, rng);
        auto res = quadric_to_points(w, m);
        REQUIRE(k.is_zero(res.discriminant));
        REQUIRE(k.is_zero(octic.det_poly.eval(m.lambda)));
        ++checked;
    }
    REQUIRE(checked == 500);
}

TEST_CASE("classification: smooth members and the planted rank-6 member") {
    Fp k(65537);
    auto [w, planted] = planted_rank6_web(k, 61);
    auto octic = det_octic(w);
    REQUIRE(rank_kernel(planted.matrix).rank == 6);
    REQUIRE(restrict_form(planted.matrix, w.plane->space()).is_zero());
    REQUIRE(classify_member(w, octic, planted) == MemberClass::RankLE6);
    REQUIRE(octic.gradient_vanishes_at(planted.lambda));

    Rng rng(507);
    auto m = sample_member(w, rng);
    if (!k.is_zero(octic.det_poly.eval(m.lambda)))
        REQUIRE(classify_member(w, octic, m) == MemberClass::Smooth);
}

TEST_CASE("node census at the working prime: at most 10 nodes, all certified") {
    Fp k(65537);
    auto w = plane_web(k, 71);
    auto octic = det_octic(w);
    auto nodes = node_census(w, octic);
    REQUIRE(nodes.size() <= 10);

    std::set<std::vector<Fp::Elem>> lambdas;
    for (const auto& n : nodes) {
        REQUIRE(n.jacobian_rank <= 3);
        REQUIRE(w.plane->contains(n.point));
        auto rk = rank_kernel(n.member.matrix);
        REQUIRE(rk.rank == 7);
        REQUIRE(w.plane->contains(rk.kernel.basis().column(0)));
        REQUIRE(octic.gradient_vanishes_at(n.member.lambda));
        REQUIRE(classify_member(w, octic, n.member) == MemberClass::Rank7SingOnPlane);
        // tangency degenerates at a node member: M*B drops below rank 3
        REQUIRE_THROWS_AS(tangent_hull(n.member, *w.plane), NonGenericError);
        lambdas.insert(n.member.lambda);
    }
    REQUIRE(lambdas.size() == nodes.size());
}

TEST_CASE("nodes found by both census modes coincide at a small prime") {
    Fp k(127);
    int webs_with_nodes = 0;
    for (std::uint64_t seed : {81, 82, 83, 84, 85}) {
        auto w = plane_web(k, seed);
        auto octic = det_octic(w);
        std::vector<NodeRecord<Fp>> brute, walk;
        try {
            brute = node_census(w, octic, CensusMode::Brute);
            walk = node_census(w, octic, CensusMode::CurveWalk);
        } catch (const NonGenericError&) {
            continue;  // small prime, occasional degenerate web
        }
        REQUIRE(brute.size() == walk.size());
        for (std::size_t i = 0; i < brute.size(); ++i) {
            REQUIRE(brute[i].point == walk[i].point);
            REQUIRE(brute[i].member.lambda == walk[i].member.lambda);
        }
        if (!brute.empty()) ++webs_with_nodes;
    }
    REQUIRE(webs_with_nodes >= 1);  // rational nodes do appear at p = 127
}

TEST_CASE("maps demand a plane and base-locus membership") {
    Fp k(65537);
    auto w = sample_web<Fp>(k, 91);  // no plane
    Rng rng(508);
    auto m = sample_member(w, rng);
    REQUIRE_THROWS_AS(quadric_to_points(w, m), PreconditionError);
    REQUIRE_THROWS_AS(node_census(w, det_octic(w)), PreconditionError);

    auto wp = plane_web(k, 92);
    std::vector<Fp::Elem> not_on_locus(8, k.one());
    while (in_base_locus(wp, not_on_locus)) not_on_locus[0] = k.add(not_on_locus[0], k.one());
    REQUIRE_THROWS_AS(point_to_quadric(wp, not_on_locus), PreconditionError);
}
