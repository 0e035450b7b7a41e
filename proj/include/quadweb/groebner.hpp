#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "quadweb/errors.hpp"
#include "quadweb/field.hpp"
#include "quadweb/multipoly.hpp"

// Groebner bases in graded reverse lexicographic order for up to seven
// variables, plus the Hilbert series data read off from an initial
// ideal.  Monomials pack into one machine word so the native integer
// order coincides with grevlex; Buchberger's loop with the
// Gebauer-Moeller pair filters then produces the unique reduced basis.
// Budgets are explicit: running out raises BudgetExceededError instead
// of returning a partial answer.

namespace quadweb {
namespace gb {

// Byte 7 holds the total degree, byte i < 7 holds 255 - exponent(x_i);
// unused variable slots stay at 255.  Comparing packed values compares
// degree first, then penalizes the monomial whose later variables carry
// larger exponents, which is exactly grevlex with x_0 > x_1 > ... .
using Mono = std::uint64_t;

inline constexpr std::size_t kMaxVars = 7;
inline constexpr Mono kMonoUnit = 0x00FFFFFFFFFFFFFFULL;
inline constexpr unsigned kMaxPackedDegree = 200;

inline unsigned mono_deg(Mono m) { return static_cast<unsigned>(m >> 56); }

inline unsigned mono_exp(Mono m, std::size_t i) {
    return 255u - static_cast<unsigned>((m >> (8 * i)) & 0xFF);
}

inline Mono mono_pack(const std::vector<std::uint32_t>& e) {
    if (e.size() > kMaxVars) throw PreconditionError("gb: more than seven variables");
    Mono m = kMonoUnit;
    std::uint64_t deg = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        deg += e[i];
        m -= static_cast<Mono>(e[i]) << (8 * i);
    }
    if (deg > kMaxPackedDegree) throw PreconditionError("gb: monomial degree too large to pack");
    return m | (deg << 56);
}

inline std::vector<std::uint32_t> mono_unpack(Mono m, std::size_t nvars) {
    std::vector<std::uint32_t> e(nvars);
    for (std::size_t i = 0; i < nvars; ++i) e[i] = mono_exp(m, i);
    return e;
}

inline Mono mono_mul(Mono a, Mono b) {
    if (mono_deg(a) + mono_deg(b) > kMaxPackedDegree)
        throw Error("gb: monomial degree overflow");
    // exponents add bytewise; the shared complement offset cancels
    return a + b - kMonoUnit;
}

/// Does b divide a?  In complement encoding: every low byte of b at
/// least the corresponding byte of a.
inline bool mono_divides(Mono b, Mono a) {
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (((b >> (8 * i)) & 0xFF) < ((a >> (8 * i)) & 0xFF)) return false;
    return true;
}

/// a / b for b dividing a (unchecked otherwise).
inline Mono mono_div(Mono a, Mono b) { return a - b + kMonoUnit; }

inline Mono mono_lcm(Mono a, Mono b) {
    Mono m = 0;
    std::uint64_t deg = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        const std::uint64_t lo = std::min((a >> (8 * i)) & 0xFF, (b >> (8 * i)) & 0xFF);
        m |= lo << (8 * i);
        deg += 255 - lo;
    }
    return m | (deg << 56);
}

inline bool mono_coprime(Mono a, Mono b) {
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (((a >> (8 * i)) & 0xFF) != 0xFF && ((b >> (8 * i)) & 0xFF) != 0xFF) return false;
    return true;
}

/// Terms in strictly descending grevlex order, leading term first.
template <FieldContext F>
struct GbPoly {
    using Elem = typename F::Elem;
    std::vector<std::pair<Mono, Elem>> terms;

    bool is_zero() const { return terms.empty(); }
    Mono lead_mono() const { return terms.front().first; }
    const Elem& lead_coeff() const { return terms.front().second; }
};

template <FieldContext F>
GbPoly<F> gb_pack(const MultiPoly<F>& p) {
    GbPoly<F> r;
    r.terms.reserve(p.terms().size());
    for (const auto& [e, c] : p.terms()) r.terms.emplace_back(mono_pack(e), c);
    std::sort(r.terms.begin(), r.terms.end(),
              [](const auto& x, const auto& y) { return x.first > y.first; });
    return r;
}

template <FieldContext F>
MultiPoly<F> gb_unpack(const F& k, const GbPoly<F>& p, std::size_t nvars) {
    MultiPoly<F> r(k, nvars);
    for (const auto& [m, c] : p.terms) r.add_term(mono_unpack(m, nvars), c);
    return r;
}

struct GbOptions {
    std::uint64_t max_pairs = 200000;          // S-pairs actually reduced
    unsigned max_degree = 64;                  // largest S-pair lcm degree
    std::uint64_t max_reduction_steps = 400000000;
    bool verify = true;                        // recheck Buchberger's criterion at the end
};

struct GbStats {
    std::uint64_t pairs_processed = 0;
    std::uint64_t pairs_pruned = 0;
    std::uint64_t zero_reductions = 0;
    std::uint64_t reduction_steps = 0;
    std::uint64_t max_pair_degree = 0;
};

namespace detail {

// scratch polynomial with cheap term insertion, largest monomial first
template <FieldContext F>
using WorkPoly = std::map<Mono, typename F::Elem, std::greater<Mono>>;

template <FieldContext F>
void work_axpy(const F& k, WorkPoly<F>& p, const typename F::Elem& c, Mono u,
               const GbPoly<F>& g) {
    for (const auto& [m, gc] : g.terms) {
        const Mono mu = mono_mul(u, m);
        auto [it, fresh] = p.emplace(mu, k.zero());
        it->second = k.add(it->second, k.mul(c, gc));
        if (k.is_zero(it->second)) p.erase(it);
    }
}

/// Full normal form of p against a list of monic reducers.  Consumes p.
template <FieldContext F>
GbPoly<F> reduce_full(const F& k, WorkPoly<F>& p, const std::vector<GbPoly<F>>& basis,
                      const GbOptions& opts, GbStats& stats) {
    GbPoly<F> out;
    while (!p.empty()) {
        const auto lead = *p.begin();
        const GbPoly<F>* red = nullptr;
        for (const auto& g : basis)
            if (mono_divides(g.lead_mono(), lead.first)) {
                red = &g;
                break;
            }
        if (red == nullptr) {
            out.terms.push_back(lead);
            p.erase(p.begin());
            continue;
        }
        if (++stats.reduction_steps > opts.max_reduction_steps)
            throw BudgetExceededError("groebner: reduction step budget exhausted",
                                      stats.reduction_steps);
        work_axpy(k, p, k.neg(lead.second), mono_div(lead.first, red->lead_mono()), *red);
    }
    return out;  // leads were extracted in strictly descending order
}

template <FieldContext F>
void make_monic(const F& k, GbPoly<F>& g) {
    const auto s = k.inv(g.lead_coeff());
    for (auto& [m, c] : g.terms) c = k.mul(c, s);
}

struct Pair {
    Mono lcm;
    std::uint32_t i, j;  // i < j index the basis

    bool operator<(const Pair& o) const {
        if (lcm != o.lcm) return lcm < o.lcm;  // normal strategy: smallest lcm first
        if (i != o.i) return i < o.i;
        return j < o.j;
    }
};

/// Gebauer-Moeller update after appending basis[t]: build the new pairs
/// (i, t) pruned by the chain and product criteria, and drop old pairs
/// whose lcm factors through the new leading monomial.
template <FieldContext F>
void update_pairs(std::set<Pair>& pairs, const std::vector<GbPoly<F>>& basis,
                  std::uint32_t t, GbStats& stats) {
    const Mono ht = basis[t].lead_mono();

    std::vector<Pair> cand;
    cand.reserve(t);
    for (std::uint32_t i = 0; i < t; ++i)
        cand.push_back(Pair{mono_lcm(basis[i].lead_mono(), ht), i, t});
    std::sort(cand.begin(), cand.end());

    // walk runs of equal lcm in ascending order; a run dies when a kept
    // representative of a smaller lcm divides it (chain criterion) and
    // contributes no pair when any member has coprime leads (product
    // criterion), though its representative still blocks multiples
    std::vector<Pair> killers;
    for (std::size_t s = 0; s < cand.size();) {
        std::size_t e = s + 1;
        while (e < cand.size() && cand[e].lcm == cand[s].lcm) ++e;

        bool dead = false;
        for (const auto& kd : killers)
            if (mono_divides(kd.lcm, cand[s].lcm)) {
                dead = true;
                break;
            }
        if (!dead) {
            killers.push_back(cand[s]);
            bool coprime = false;
            for (std::size_t a = s; a < e && !coprime; ++a)
                coprime = mono_coprime(basis[cand[a].i].lead_mono(), ht);
            if (!coprime) {
                pairs.insert(cand[s]);
                stats.pairs_pruned += e - s - 1;
            } else {
                stats.pairs_pruned += e - s;
            }
        } else {
            stats.pairs_pruned += e - s;
        }
        s = e;
    }

    // old pairs absorbed by the new element
    for (auto it = pairs.begin(); it != pairs.end();) {
        const Mono lij = it->lcm;
        const bool absorbed = it->j != t && mono_divides(ht, lij) &&
                              mono_lcm(basis[it->i].lead_mono(), ht) != lij &&
                              mono_lcm(basis[it->j].lead_mono(), ht) != lij;
        if (absorbed) {
            ++stats.pairs_pruned;
            it = pairs.erase(it);
        } else {
            ++it;
        }
    }
}

}  // namespace detail

template <FieldContext F>
struct GbResult {
    std::vector<GbPoly<F>> basis;  // reduced basis, ascending leading monomials
    GbStats stats;
};

/// Buchberger with Gebauer-Moeller pruning on packed polynomials.
/// Output is the reduced basis: monic, minimal, tails fully reduced,
/// hence canonical for the ideal whatever the input presentation.
template <FieldContext F>
GbResult<F> groebner_basis_packed(const F& k, const std::vector<GbPoly<F>>& gens,
                                  const GbOptions& opts = {}) {
    GbStats stats;
    std::vector<GbPoly<F>> basis;
    std::set<detail::Pair> pairs;

    const auto append = [&](GbPoly<F> g) {
        detail::make_monic(k, g);
        basis.push_back(std::move(g));
        detail::update_pairs(pairs, basis, static_cast<std::uint32_t>(basis.size() - 1),
                             stats);
    };

    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        detail::WorkPoly<F> w(g.terms.begin(), g.terms.end());
        auto nf = detail::reduce_full(k, w, basis, opts, stats);
        if (!nf.is_zero()) append(std::move(nf));
    }

    while (!pairs.empty()) {
        const detail::Pair p = *pairs.begin();
        pairs.erase(pairs.begin());
        if (mono_deg(p.lcm) > opts.max_degree)
            throw BudgetExceededError("groebner: S-pair degree " +
                                          std::to_string(mono_deg(p.lcm)) +
                                          " exceeds budget",
                                      stats.pairs_processed);
        if (++stats.pairs_processed > opts.max_pairs)
            throw BudgetExceededError("groebner: S-pair budget exhausted",
                                      stats.pairs_processed);
        stats.max_pair_degree = std::max<std::uint64_t>(stats.max_pair_degree, mono_deg(p.lcm));

        const auto& f = basis[p.i];
        const auto& g = basis[p.j];
        detail::WorkPoly<F> w;
        detail::work_axpy(k, w, k.one(), mono_div(p.lcm, f.lead_mono()), f);
        detail::work_axpy(k, w, k.neg(k.one()), mono_div(p.lcm, g.lead_mono()), g);
        auto nf = detail::reduce_full(k, w, basis, opts, stats);
        if (nf.is_zero()) {
            ++stats.zero_reductions;
            continue;
        }
        append(std::move(nf));
    }

    // every append was fully reduced against the basis of its moment, so
    // no lead divides another; the pass below is defensive only
    std::vector<Mono> leads(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) leads[i] = basis[i].lead_mono();
    std::vector<GbPoly<F>> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; !redundant && j < basis.size(); ++j)
            redundant = j != i && leads[j] != leads[i] && mono_divides(leads[j], leads[i]);
        if (!redundant) minimal.push_back(std::move(basis[i]));
    }
    std::sort(minimal.begin(), minimal.end(),
              [](const auto& a, const auto& b) { return a.lead_mono() < b.lead_mono(); });

    GbResult<F> out;
    out.basis.reserve(minimal.size());
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<GbPoly<F>> others;
        others.reserve(minimal.size() - 1);
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        detail::WorkPoly<F> w(minimal[i].terms.begin(), minimal[i].terms.end());
        out.basis.push_back(detail::reduce_full(k, w, others, opts, stats));
    }

    if (opts.verify) {
        for (std::size_t i = 0; i < out.basis.size(); ++i)
            for (std::size_t j = i + 1; j < out.basis.size(); ++j) {
                const auto& f = out.basis[i];
                const auto& g = out.basis[j];
                if (mono_coprime(f.lead_mono(), g.lead_mono())) continue;
                const Mono l = mono_lcm(f.lead_mono(), g.lead_mono());
                detail::WorkPoly<F> w;
                detail::work_axpy(k, w, k.one(), mono_div(l, f.lead_mono()), f);
                detail::work_axpy(k, w, k.neg(k.one()), mono_div(l, g.lead_mono()), g);
                if (!detail::reduce_full(k, w, out.basis, opts, stats).is_zero())
                    throw Error("groebner: final basis fails Buchberger's criterion");
            }
    }

    out.stats = stats;
    return out;
}

// ---------------------------------------------------------------------
// Hilbert series of a monomial ideal.  The numerator N(t) satisfies
// HS(S/I) = N(t) / (1-t)^nvars; it is computed by the pivot recursion
//   N(I) = N(I + (q)) + t^{deg q} N(I : q)
// with q a pure power of the most shared variable, the base case being
// pairwise coprime generators where N = prod (1 - t^{deg g}).

using TPoly = std::vector<mpz_class>;  // dense in t, constant term first

inline TPoly tpoly_mul(const TPoly& a, const TPoly& b) {
    if (a.empty() || b.empty()) return {};
    TPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

inline void tpoly_add_shifted(TPoly& a, const TPoly& b, std::size_t shift) {
    if (a.size() < b.size() + shift) a.resize(b.size() + shift, 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] += b[i];
}

/// Remove duplicates and any monomial divisible by another.  Sorting by
/// grevlex puts every divisor before its multiples.
inline std::vector<Mono> minimalize_monomials(std::vector<Mono> gens) {
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    std::vector<Mono> out;
    for (const Mono m : gens) {
        bool covered = false;
        for (const Mono g : out)
            if (mono_divides(g, m)) {
                covered = true;
                break;
            }
        if (!covered) out.push_back(m);
    }
    return out;
}

namespace detail {

inline TPoly hilbert_numerator_rec(std::vector<Mono> gens) {
    gens = minimalize_monomials(std::move(gens));
    if (!gens.empty() && gens.front() == kMonoUnit) return {};  // unit ideal: S/I = 0

    // pairwise coprime (includes empty and single generator)
    bool coprime = true;
    for (std::size_t i = 0; coprime && i < gens.size(); ++i)
        for (std::size_t j = i + 1; coprime && j < gens.size(); ++j)
            coprime = mono_coprime(gens[i], gens[j]);
    if (coprime) {
        TPoly n{1};
        for (const Mono g : gens) {
            TPoly f(mono_deg(g) + 1, 0);
            f[0] = 1;
            f[mono_deg(g)] -= 1;
            n = tpoly_mul(n, f);
        }
        return n;
    }

    // pivot: most shared variable, lower-median exponent
    std::size_t v = 0;
    std::size_t best = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        std::size_t cnt = 0;
        for (const Mono g : gens) cnt += mono_exp(g, i) > 0;
        if (cnt > best) {
            best = cnt;
            v = i;
        }
    }
    std::vector<unsigned> exps;
    for (const Mono g : gens)
        if (mono_exp(g, v) > 0) exps.push_back(mono_exp(g, v));
    std::sort(exps.begin(), exps.end());
    unsigned e = exps[(exps.size() - 1) / 2];
    std::vector<std::uint32_t> qe(kMaxVars, 0);
    qe[v] = e;
    Mono q = mono_pack(qe);
    if (std::find(gens.begin(), gens.end(), q) != gens.end()) {
        // defensive: a generator pivot would stall the sum branch
        e = 1;
        qe[v] = 1;
        q = mono_pack(qe);
    }

    std::vector<Mono> colon;
    colon.reserve(gens.size());
    for (const Mono g : gens) {
        const unsigned ev = mono_exp(g, v);
        std::vector<std::uint32_t> ge = mono_unpack(g, kMaxVars);
        ge[v] = ev > e ? ev - e : 0;
        colon.push_back(mono_pack(ge));
    }

    std::vector<Mono> sum;
    sum.reserve(gens.size() + 1);
    for (const Mono g : gens)
        if (mono_exp(g, v) < e) sum.push_back(g);
    sum.push_back(q);

    TPoly n = hilbert_numerator_rec(std::move(sum));
    tpoly_add_shifted(n, hilbert_numerator_rec(std::move(colon)), e);
    return n;
}

}  // namespace detail

/// Numerator of the Hilbert series of S/(gens) over nvars variables.
/// The empty vector encodes the zero numerator (unit ideal).
inline TPoly hilbert_numerator(const std::vector<Mono>& gens, std::size_t nvars) {
    for (const Mono g : gens)
        for (std::size_t i = nvars; i < kMaxVars; ++i)
            if (mono_exp(g, i) != 0)
                throw PreconditionError("hilbert_numerator: generator uses variable " +
                                        std::to_string(i) + " beyond nvars");
    TPoly n = detail::hilbert_numerator_rec(gens);
    while (!n.empty() && n.back() == 0) n.pop_back();
    return n;
}

struct HilbertDegreeDim {
    long long proj_dim;  // dimension as a projective scheme, -1 if empty
    mpz_class degree;    // N/(1-t)^k evaluated at t = 1
};

/// Projective dimension and degree from the initial ideal: strip the
/// (1-t) factors from the numerator, count them, evaluate the rest at 1.
inline HilbertDegreeDim hilbert_degree_dim(const std::vector<Mono>& leads,
                                           std::size_t nvars) {
    TPoly q = hilbert_numerator(leads, nvars);
    if (q.empty()) return {-1, 0};

    const auto at_one = [](const TPoly& p) {
        mpz_class s = 0;
        for (const auto& c : p) s += c;
        return s;
    };

    std::size_t stripped = 0;
    while (at_one(q) == 0) {
        TPoly m(q.size() - 1, 0);
        for (std::size_t i = 0; i + 1 < q.size(); ++i)
            m[i] = q[i] + (i > 0 ? m[i - 1] : mpz_class(0));
        if (m.empty() || m.back() + q.back() != 0)
            throw Error("hilbert_degree_dim: inexact division by (1 - t)");
        while (!m.empty() && m.back() == 0) m.pop_back();
        q = std::move(m);
        ++stripped;
        if (q.empty()) throw Error("hilbert_degree_dim: numerator vanished");
    }
    if (stripped > nvars) throw Error("hilbert_degree_dim: dimension out of range");
    return {static_cast<long long>(nvars - stripped) - 1, at_one(q)};
}

}  // namespace gb

/// Reduced Groebner basis of the ideal generated by gens, each a
/// polynomial in the same nvars <= 7 variables over the same context.
template <FieldContext F>
gb::GbResult<F> groebner_basis(const F& k, const std::vector<MultiPoly<F>>& gens,
                               std::size_t nvars, const gb::GbOptions& opts = {}) {
    if (nvars == 0 || nvars > gb::kMaxVars)
        throw PreconditionError("groebner_basis: need 1..7 variables");
    std::vector<gb::GbPoly<F>> packed;
    packed.reserve(gens.size());
    for (const auto& g : gens) {
        require_same_context(k, g.field(), "groebner_basis");
        if (g.nvars() != nvars)
            throw PreconditionError("groebner_basis: generator has wrong variable count");
        packed.push_back(gb::gb_pack(g));
    }
    return gb::groebner_basis_packed(k, packed, opts);
}

/// Canonical remainder of f modulo the reduced basis.
template <FieldContext F>
MultiPoly<F> normal_form(const F& k, const MultiPoly<F>& f, const gb::GbResult<F>& gbr,
                         std::size_t nvars, const gb::GbOptions& opts = {}) {
    require_same_context(k, f.field(), "normal_form");
    gb::GbStats scratch;
    auto p = gb::gb_pack(f);
    gb::detail::WorkPoly<F> w(p.terms.begin(), p.terms.end());
    return gb::gb_unpack(k, gb::detail::reduce_full(k, w, gbr.basis, opts, scratch), nvars);
}

/// Projective dimension and degree of the scheme cut out by gens.
template <FieldContext F>
gb::HilbertDegreeDim ideal_degree_dim(const F& k, const std::vector<MultiPoly<F>>& gens,
                                      std::size_t nvars, const gb::GbOptions& opts = {}) {
    const auto gbr = groebner_basis(k, gens, nvars, opts);
    std::vector<gb::Mono> leads;
    leads.reserve(gbr.basis.size());
    for (const auto& g : gbr.basis) leads.push_back(g.lead_mono());
    return gb::hilbert_degree_dim(leads, nvars);
}

}  // namespace quadweb
