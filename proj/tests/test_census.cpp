#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <vector>

#include "quadweb/census.hpp"
#include "quadweb/errors.hpp"
#include "quadweb/fp.hpp"
#include "quadweb/webgeom.hpp"

using namespace quadweb;

TEST_CASE("census case names round trip") {
    for (CensusCase c : all_census_cases()) REQUIRE(census_case_from_string(to_string(c)) == c);
    REQUIRE_THROWS_AS(census_case_from_string("octic84"), PreconditionError);
    REQUIRE(all_census_cases().size() == 4);
}

TEST_CASE("nodes10: five quartics cut out ten points") {
    const Fp k(65537);
    const auto w = sample_web(k, 1201, Plane<Fp>::coordinate_default(k));
    const auto sys = census_nodes10(w);

    REQUIRE(sys.nvars == 3);
    REQUIRE(sys.gens.size() == 5);
    for (const auto& g : sys.gens) {
        REQUIRE(g.is_homogeneous());
        REQUIRE(g.total_degree() == 4);
    }

    const auto out = census_degree(k, sys);
    REQUIRE(out.conclusive);
    REQUIRE(out.proj_dim == sys.expected_dim);
    REQUIRE(out.degree == sys.expected_degree);

    // the rational census finds at most that many, and each of its
    // points satisfies every generator (plane is coordinate-aligned)
    const auto octic = det_octic(w);
    const auto nodes = node_census(w, octic);
    REQUIRE(nodes.size() <= 10);
    for (const auto& n : nodes) {
        const std::vector<Fp::Elem> y{n.point[5], n.point[6], n.point[7]};
        for (const auto& g : sys.gens) REQUIRE(k.is_zero(g.eval(y)));
    }
}

TEST_CASE("bezout16: a random 4-space meets the base locus in sixteen points") {
    const Fp k(65537);

    SECTION("web without a distinguished plane") {
        const auto w = sample_web(k, 1301);
        const auto sys = census_bezout16(w, 1301);
        REQUIRE(sys.nvars == 5);
        REQUIRE(sys.gens.size() == 4);
        for (const auto& g : sys.gens) {
            REQUIRE(g.is_homogeneous());
            REQUIRE(g.total_degree() == 2);
        }
        const auto out = census_degree(k, sys);
        REQUIRE(out.conclusive);
        REQUIRE(out.proj_dim == 0);
        REQUIRE(out.degree == 16);
    }
    SECTION("a plane in the base locus does not change the top cycle") {
        const auto w = sample_web(k, 1302, Plane<Fp>::coordinate_default(k));
        const auto out = census_degree(k, census_bezout16(w, 77));
        REQUIRE(out.conclusive);
        REQUIRE(out.proj_dim == 0);
        REQUIRE(out.degree == 16);
    }
}

TEST_CASE("veronese4: sliced rank-one locus with planted points") {
    SECTION("degree four at the working prime") {
        const Fp k(65537);
        const auto sys = census_veronese4(k, 1501);
        REQUIRE(sys.nvars == 6);
        REQUIRE(sys.gens.size() == 9 + 2);
        const auto out = census_degree(k, sys);
        REQUIRE(out.conclusive);
        REQUIRE(out.proj_dim == 0);
        REQUIRE(out.degree == 4);
    }
    SECTION("brute enumeration over a small field agrees") {
        const Fp k(127);
        const auto sys = census_veronese4(k, 1502);
        const auto out = census_degree(k, sys);
        REQUIRE(out.conclusive);
        REQUIRE(out.degree == 4);

        // every point of the zero set lies on the surface, so scanning
        // P^2 and testing the two linear slices counts it exactly
        const auto& l1 = sys.gens[9];
        const auto& l2 = sys.gens[10];
        const auto count_on = [&](const std::vector<Fp::Elem>& p) {
            std::vector<Fp::Elem> v(6);
            std::size_t col = 0;
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = i; j < 3; ++j) v[col++] = k.mul(p[i], p[j]);
            return k.is_zero(l1.eval(v)) && k.is_zero(l2.eval(v)) ? 1 : 0;
        };
        long long found = 0;
        for (std::uint64_t s = 0; s < 127; ++s)
            for (std::uint64_t t = 0; t < 127; ++t) found += count_on({1, s, t});
        for (std::uint64_t t = 0; t < 127; ++t) found += count_on({0, 1, t});
        found += count_on({0, 0, 1});
        REQUIRE(found == 4);
    }
}

TEST_CASE("rank84-slice: system shape and honest budget behaviour") {
    const Fp k(65537);
    const auto w = sample_web(k, 1401);
    const auto sys = census_rank84(w);

    REQUIRE(sys.nvars == 4);
    REQUIRE(sys.gens.size() == 36);
    REQUIRE(sys.expected_degree == 84);
    for (const auto& g : sys.gens) {
        REQUIRE(g.is_homogeneous());
        REQUIRE(g.total_degree() == 7);
    }

    gb::GbOptions opts;
    opts.max_pairs = 3;
    const auto out = census_degree(k, sys, opts);
    REQUIRE_FALSE(out.conclusive);
    REQUIRE(out.degree == -1);
    REQUIRE(out.budget_spent > 0);
    REQUIRE(!out.note.empty());
}

TEST_CASE("rank84-slice: full degree computation") {
    const Fp k(65537);
    const auto sys = census_rank84(sample_web(k, 1401));
    gb::GbOptions opts;
    opts.max_pairs = 2000000;
    opts.max_degree = 40;
    const auto out = census_degree(k, sys, opts);
    REQUIRE(out.conclusive);
    REQUIRE(out.proj_dim == 0);
    REQUIRE(out.degree == 84);
}

TEST_CASE("make_census_system dispatch is deterministic") {
    const Fp k(65537);
    for (CensusCase c : {CensusCase::Nodes10, CensusCase::Bezout16, CensusCase::Veronese4}) {
        const auto a = make_census_system(k, c, 7001);
        const auto b = make_census_system(k, c, 7001);
        REQUIRE(a.name == to_string(c));
        REQUIRE(a.gens.size() == b.gens.size());
        for (std::size_t i = 0; i < a.gens.size(); ++i)
            REQUIRE(a.gens[i].to_string() == b.gens[i].to_string());
        REQUIRE(a.expected_dim == 0);
    }
    // the slow case still builds quickly; only the basis is expensive
    const auto r = make_census_system(k, CensusCase::Rank84Slice, 7001);
    REQUIRE(r.gens.size() == 36);
}
