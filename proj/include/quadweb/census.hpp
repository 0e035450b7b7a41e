#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "quadweb/errors.hpp"
#include "quadweb/field.hpp"
#include "quadweb/groebner.hpp"
#include "quadweb/linalg.hpp"
#include "quadweb/multipoly.hpp"
#include "quadweb/rng.hpp"
#include "quadweb/webgeom.hpp"

// Named polynomial systems whose degree is known in closed form, used
// to pin the Groebner and Hilbert machinery against independent counts:
// the ten singular plane points of a web, the sixteen points of a
// four-quadric intersection on a random 4-space, the eighty-four
// rank-drop members of a generic web, and a sliced Veronese surface
// with four planted rational points.

namespace quadweb {

enum class CensusCase { Nodes10, Bezout16, Rank84Slice, Veronese4 };

inline const char* to_string(CensusCase c) {
    switch (c) {
        case CensusCase::Nodes10: return "nodes10";
        case CensusCase::Bezout16: return "bezout16";
        case CensusCase::Rank84Slice: return "rank84-slice";
        case CensusCase::Veronese4: return "veronese4";
    }
    return "?";
}

inline CensusCase census_case_from_string(const std::string& s) {
    for (CensusCase c : {CensusCase::Nodes10, CensusCase::Bezout16, CensusCase::Rank84Slice,
                         CensusCase::Veronese4})
        if (s == to_string(c)) return c;
    throw PreconditionError("unknown census case '" + s + "'");
}

inline std::vector<CensusCase> all_census_cases() {
    return {CensusCase::Nodes10, CensusCase::Bezout16, CensusCase::Rank84Slice,
            CensusCase::Veronese4};
}

template <FieldContext F>
struct CensusSystem {
    std::string name;
    std::vector<MultiPoly<F>> gens;
    std::size_t nvars = 0;
    long long expected_dim = 0;      // projective dimension of the zero set
    long long expected_degree = 0;   // geometric point count with multiplicity
};

/// Singular plane points of a plane-web: the five Jacobian minors as
/// quartics in the three plane coordinates.
template <FieldContext F>
CensusSystem<F> census_nodes10(const Web<F>& w) {
    if (!w.plane) throw PreconditionError("census_nodes10: web has no plane");
    const F& k = w.field();
    const Mat<F> transform = detail::plane_adapted_transform(k, *w.plane);
    const std::array<Mat<F>, kWebSize> adapted{
        restrict_to_frame(w.quadrics[0], transform), restrict_to_frame(w.quadrics[1], transform),
        restrict_to_frame(w.quadrics[2], transform), restrict_to_frame(w.quadrics[3], transform)};
    return CensusSystem<F>{"nodes10", plane_jacobian_minors<F>(adapted), 3, 0, 10};
}

/// The web's base locus cut down to points by a random 4-space: four
/// quadrics restricted to a rank-5 frame, sixteen points by Bezout.
template <FieldContext F>
CensusSystem<F> census_bezout16(const Web<F>& w, std::uint64_t seed) {
    const F& k = w.field();
    Rng rng = Rng::derive(seed, 0xb160);
    for (int attempt = 0; attempt < kResampleBudget; ++attempt) {
        Mat<F> frame(k, kAmbient, 5);
        for (std::size_t i = 0; i < kAmbient; ++i)
            for (std::size_t j = 0; j < 5; ++j) frame.at(i, j) = k.uniform(rng);
        Mat<F> probe = frame;
        if (probe.rref() != 5) continue;
        std::vector<MultiPoly<F>> gens;
        gens.reserve(kWebSize);
        for (const auto& q : w.quadrics)
            gens.push_back(quadratic_form_poly(restrict_to_frame(q, frame)));
        return CensusSystem<F>{"bezout16", std::move(gens), 5, 0, 16};
    }
    throw DegenerateSampleError("census_bezout16: no full-rank frame", kResampleBudget);
}

/// Rank drop by two inside the web: all adjugate entries of the
/// symbolic member matrix, degree seven in the four web coordinates.
template <FieldContext F>
CensusSystem<F> census_rank84(const Web<F>& w) {
    const F& k = w.field();
    PolyMat<F> pencil(k, kWebSize, kAmbient, kAmbient);
    for (std::size_t i = 0; i < kAmbient; ++i)
        for (std::size_t j = 0; j < kAmbient; ++j) {
            MultiPoly<F> e(k, kWebSize);
            for (std::size_t v = 0; v < kWebSize; ++v) {
                typename MultiPoly<F>::Expo ex(kWebSize, 0);
                ex[v] = 1;
                e.add_term(ex, w.quadrics[v].at(i, j));
            }
            pencil.at(i, j) = std::move(e);
        }
    const PolyMat<F> adj = polmat_adjugate(pencil);
    std::vector<MultiPoly<F>> gens;
    gens.reserve(kAmbient * (kAmbient + 1) / 2);
    for (std::size_t i = 0; i < kAmbient; ++i)
        for (std::size_t j = i; j < kAmbient; ++j) gens.push_back(adj.at(i, j));
    return CensusSystem<F>{"rank84-slice", std::move(gens), 4, 0, 84};
}

/// Rank-one symmetric 3x3 forms (the Veronese surface in P^5, degree
/// four) sliced by two linear forms chosen through four planted points,
/// so the four intersection points are rational by construction.
/// Variable order: a00 a01 a02 a11 a12 a22.
template <FieldContext F>
CensusSystem<F> census_veronese4(const F& k, std::uint64_t seed) {
    Rng rng = Rng::derive(seed, 0x4e40);
    const auto entry = [](std::size_t i, std::size_t j) -> std::size_t {
        if (i > j) std::swap(i, j);
        if (i == 0) return j;          // a00 a01 a02
        if (i == 1) return 2 + j;      // a11 a12
        return 5;                      // a22
    };

    std::vector<MultiPoly<F>> gens;
    for (std::size_t r1 = 0; r1 < 3; ++r1)
        for (std::size_t r2 = r1 + 1; r2 < 3; ++r2)
            for (std::size_t c1 = 0; c1 < 3; ++c1)
                for (std::size_t c2 = c1 + 1; c2 < 3; ++c2) {
                    const auto v = [&](std::size_t idx) {
                        return MultiPoly<F>::variable(k, 6, idx);
                    };
                    gens.push_back(v(entry(r1, c1)) * v(entry(r2, c2)) -
                                   v(entry(r1, c2)) * v(entry(r2, c1)));
                }

    for (int attempt = 0; attempt < kResampleBudget; ++attempt) {
        // four points on the surface, in the same coordinate order
        Mat<F> rows(k, 4, 6);
        for (std::size_t n = 0; n < 4; ++n) {
            std::vector<typename F::Elem> p{k.uniform(rng), k.uniform(rng), k.uniform(rng)};
            std::size_t col = 0;
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = i; j < 3; ++j) rows.at(n, col++) = k.mul(p[i], p[j]);
        }
        const auto rk = rank_kernel(rows);
        if (rk.rank != 4) continue;  // degenerate point choice
        std::vector<MultiPoly<F>> sys = gens;
        for (std::size_t c = 0; c < 2; ++c) {
            MultiPoly<F> form(k, 6);
            for (std::size_t i = 0; i < 6; ++i) {
                typename MultiPoly<F>::Expo e(6, 0);
                e[i] = 1;
                form.add_term(e, rk.kernel.basis().at(i, c));
            }
            sys.push_back(std::move(form));
        }
        return CensusSystem<F>{"veronese4", std::move(sys), 6, 0, 4};
    }
    throw DegenerateSampleError("census_veronese4: planted points stayed degenerate",
                                kResampleBudget);
}

/// Build the named system from scratch; webs are sampled from the seed.
template <FieldContext F>
CensusSystem<F> make_census_system(const F& k, CensusCase c, std::uint64_t seed) {
    switch (c) {
        case CensusCase::Nodes10:
            return census_nodes10(sample_web(k, seed, Plane<F>::coordinate_default(k)));
        case CensusCase::Bezout16:
            return census_bezout16(sample_web(k, seed), seed);
        case CensusCase::Rank84Slice:
            return census_rank84(sample_web(k, seed));
        case CensusCase::Veronese4:
            return census_veronese4(k, seed);
    }
    throw PreconditionError("make_census_system: bad case");
}

struct CensusOutcome {
    bool conclusive = false;
    long long proj_dim = -2;
    long long degree = -1;
    gb::GbStats stats{};
    std::uint64_t budget_spent = 0;  // set when inconclusive
    std::string note;                // the budget message when inconclusive
};

/// Degree and dimension of the system's zero set, or an inconclusive
/// outcome when the basis computation exhausts its budget.
template <FieldContext F>
CensusOutcome census_degree(const F& k, const CensusSystem<F>& sys,
                            const gb::GbOptions& opts = {}) {
    CensusOutcome out;
    try {
        const auto gbr = groebner_basis(k, sys.gens, sys.nvars, opts);
        std::vector<gb::Mono> leads;
        leads.reserve(gbr.basis.size());
        for (const auto& g : gbr.basis) leads.push_back(g.lead_mono());
        const auto dd = gb::hilbert_degree_dim(leads, sys.nvars);
        if (!dd.degree.fits_slong_p()) throw Error("census_degree: degree overflow");
        out.conclusive = true;
        out.proj_dim = dd.proj_dim;
        out.degree = dd.degree.get_si();
        out.stats = gbr.stats;
    } catch (const BudgetExceededError& e) {
        out.budget_spent = e.spent();
        out.note = e.what();
    }
    return out;
}

}  // namespace quadweb
