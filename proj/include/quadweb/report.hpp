#pragma once

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "quadweb/census.hpp"
#include "quadweb/chow.hpp"
#include "quadweb/webio.hpp"

// Seeded verification campaigns.  Each runner takes a RunConfig and
// returns a Report: the config echo, one expected-vs-computed line per
// check, and the trial counters.  Reports are deterministic given the
// config; the wall-time field is the only exception and can be excluded
// from serialization, so byte-comparing two runs is meaningful.

namespace quadweb {

inline constexpr const char* kPass = "pass";
inline constexpr const char* kFail = "fail";
inline constexpr const char* kInconclusive = "inconclusive";

struct RunConfig {
    std::string subcommand;
    std::uint64_t prime = 65537;
    std::uint64_t seed = 1;
    long long trials = 100;
    std::uint64_t budget = 0;   // 0: per-case default, after the env override
    std::string output_path;    // empty: stdout only
    std::string web_file;       // optional web to replay instead of sampling
    std::string census_case;    // for the census subcommand
    bool use_groebner = false;  // nodes: add basis-certified degree lines

    void validate() const {
        (void)Fp(prime);  // rejects non-primes
        if (trials < 1) throw PreconditionError("config: trials must be at least 1");
    }

    Json to_json() const {
        return Json{{"subcommand", subcommand}, {"prime", prime},
                    {"seed", seed},             {"trials", trials},
                    {"budget", budget},         {"output_path", output_path},
                    {"web_file", web_file},     {"census_case", census_case},
                    {"use_groebner", use_groebner}};
    }

    static RunConfig from_json(const Json& j) {
        RunConfig c;
        c.subcommand = j.at("subcommand").get<std::string>();
        c.prime = j.at("prime").get<std::uint64_t>();
        c.seed = j.at("seed").get<std::uint64_t>();
        c.trials = j.at("trials").get<long long>();
        c.budget = j.at("budget").get<std::uint64_t>();
        c.output_path = j.value("output_path", std::string{});
        c.web_file = j.value("web_file", std::string{});
        c.census_case = j.value("census_case", std::string{});
        c.use_groebner = j.value("use_groebner", false);
        return c;
    }

    friend bool operator==(const RunConfig& a, const RunConfig& b) {
        return a.to_json() == b.to_json();
    }
};

struct CheckLine {
    std::string name;
    Json expected;
    Json computed;
    std::string status = kPass;
    Json extra = Json::object();

    Json to_json() const {
        return Json{{"name", name},
                    {"expected", expected},
                    {"computed", computed},
                    {"status", status},
                    {"extra", extra}};
    }

    static CheckLine from_json(const Json& j) {
        return CheckLine{j.at("name").get<std::string>(), j.at("expected"), j.at("computed"),
                         j.at("status").get<std::string>(), j.value("extra", Json::object())};
    }
};

struct Report {
    RunConfig config;
    std::vector<CheckLine> checks;
    std::uint64_t trials = 0;
    std::uint64_t rejections = 0;              // non-square discriminants
    std::uint64_t non_generic_resamples = 0;
    double wall_seconds = 0.0;
    std::vector<std::string> web_hashes;

    bool ok() const {
        for (const auto& c : checks)
            if (c.status == kFail) return false;
        return true;
    }

    void add(CheckLine line) { checks.push_back(std::move(line)); }

    /// Exact check: pass iff computed == expected.
    void add_exact(const std::string& name, Json expected, Json computed,
                   Json extra = Json::object()) {
        const char* st = (expected == computed) ? kPass : kFail;
        checks.push_back({name, std::move(expected), std::move(computed), st, std::move(extra)});
    }

    Json counters_json() const {
        return Json{{"trials", trials},
                    {"rejections", rejections},
                    {"non_generic_resamples", non_generic_resamples}};
    }

    Json to_json(bool include_timing = true) const {
        Json j{{"config", config.to_json()},
               {"checks", Json::array()},
               {"counters", counters_json()},
               {"web_hashes", web_hashes},
               {"ok", ok()}};
        for (const auto& c : checks) j["checks"].push_back(c.to_json());
        if (include_timing) j["wall_seconds"] = wall_seconds;
        return j;
    }

    static Report from_json(const Json& j) {
        Report r;
        r.config = RunConfig::from_json(j.at("config"));
        for (const auto& c : j.at("checks")) r.checks.push_back(CheckLine::from_json(c));
        const Json& k = j.at("counters");
        r.trials = k.at("trials").get<std::uint64_t>();
        r.rejections = k.at("rejections").get<std::uint64_t>();
        r.non_generic_resamples = k.at("non_generic_resamples").get<std::uint64_t>();
        r.wall_seconds = j.value("wall_seconds", 0.0);
        r.web_hashes = j.value("web_hashes", std::vector<std::string>{});
        return r;
    }

    /// One JSON object per line: config, then every check, then a summary.
    std::string to_json_lines(bool include_timing = true) const {
        std::ostringstream out;
        Json cfg = config.to_json();
        cfg["type"] = "config";
        out << cfg.dump() << '\n';
        for (const auto& c : checks) {
            Json line = c.to_json();
            line["type"] = "check";
            out << line.dump() << '\n';
        }
        Json summary{{"type", "summary"},
                     {"counters", counters_json()},
                     {"web_hashes", web_hashes},
                     {"ok", ok()}};
        if (include_timing) summary["wall_seconds"] = wall_seconds;
        out << summary.dump() << '\n';
        return out.str();
    }

    std::string human_table() const {
        std::size_t w = 4;
        for (const auto& c : checks) w = std::max(w, c.name.size());
        std::ostringstream out;
        out << std::left << std::setw(static_cast<int>(w) + 2) << "name"
            << std::setw(14) << "status" << std::setw(24) << "expected" << "computed\n";
        for (const auto& c : checks)
            out << std::left << std::setw(static_cast<int>(w) + 2) << c.name << std::setw(14)
                << c.status << std::setw(24) << c.expected.dump() << c.computed.dump() << '\n';
        out << "trials " << trials << ", rejections " << rejections << ", non-generic resamples "
            << non_generic_resamples << ", wall " << std::fixed << std::setprecision(3)
            << wall_seconds << " s\n";
        for (const auto& h : web_hashes) out << "web " << h << '\n';
        out << (ok() ? "OK" : "FAILED") << '\n';
        return out.str();
    }

    friend bool operator==(const Report& a, const Report& b) {
        return a.to_json(true) == b.to_json(true);
    }
};

namespace detail {

class WallTimer {
  public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// A plane-web for the runners: replayed from the config's web file when
/// one is given, sampled from the seed otherwise.
inline Web<Fp> runner_web(const Fp& k, const RunConfig& cfg) {
    if (!cfg.web_file.empty()) {
        std::ifstream in(cfg.web_file);
        if (!in) throw PreconditionError("cannot open web file: " + cfg.web_file);
        Web<Fp> w = web_from_json(Json::parse(in));
        if (!w.plane) throw PreconditionError("web file has no plane; this runner needs one");
        return w;
    }
    return sample_web(k, cfg.seed, Plane<Fp>::coordinate_default(k));
}

}  // namespace detail

/// The closed-form ledger: moduli dimensions, Euler characteristics
/// along the resolution chains, Hodge numbers, the rank-6 determinantal
/// degree, and the multiprojective node count.  Everything is exact
/// integer arithmetic; a failing line means the formulas disagree.
inline Report run_invariants(const RunConfig& cfg) {
    detail::WallTimer timer;
    Report r;
    r.config = cfg;

    const std::map<std::string, long long> expected_dims = {
        {"all_webs", 128},          {"webs_with_plane", 119},    {"webs_with_fixed_plane", 104},
        {"two_disjoint_planes", 110}, {"two_planes_line", 114},  {"two_planes_point", 111},
        {"plane_line_incidence", 23}, {"fiber_G(4,28)", 96},     {"line_on_P_bound", 102}};
    const auto ledger = incidence_dimension_ledger();
    for (const auto& [name, want] : expected_dims) {
        auto it = ledger.find(name);
        r.add_exact("dim/" + name, want,
                    it == ledger.end() ? Json(nullptr) : Json(it->second));
    }

    const long long chi_ci = euler_complete_intersection({7, {2, 2, 2, 2}}).chi;
    r.add_exact("euler/intersection_2222", -128, chi_ci);
    r.add_exact("euler/octic_surface", 304, euler_complete_intersection({3, {8}}).chi);
    const long long chi_cover = double_cover_euler(8);
    r.add_exact("euler/double_cover_octic", -296, chi_cover);

    const auto chain84 = nodal_euler_chain(chi_cover, 84);
    r.add_exact("euler/nodal_84", -212, chain84.first);
    r.add_exact("euler/resolved_84", -128, chain84.second);
    const auto chain94 = nodal_euler_chain(chi_cover, 94);
    r.add_exact("euler/nodal_94", -202, chain94.first);
    r.add_exact("euler/resolved_94", -108, chain94.second);
    const auto chain10 = nodal_euler_chain(chain84.second, 10);
    r.add_exact("euler/nodal_10_more", -118, chain10.first);
    r.add_exact("euler/resolved_10_more", -108, chain10.second);
    // the two routes to the small resolution must agree
    r.add_exact("euler/resolutions_agree", true, chain94.second == chain10.second,
                Json{{"via_94_nodes", chain94.second}, {"via_84_then_10", chain10.second}});

    r.add_exact("hodge/h12_at_h11_1", 65, hodge_from_euler(chain84.second, 1));
    r.add_exact("hodge/h12_at_h11_2", 56, hodge_from_euler(chain10.second, 2));

    const auto ht = harris_tu_symmetric_degree(8, 6);
    r.add_exact("determinantal/rank6_degree", 84, ht.degree);
    r.add_exact("determinantal/rank6_codim", 3, ht.codim);

    // ten plane nodes as a bidegree count: five incidence divisors of
    // class h1 + h2 on P^3 x P^2
    ChowClass h1 = ChowClass::hyperplane({3, 2}, 0);
    ChowClass h2 = ChowClass::hyperplane({3, 2}, 1);
    const mpz_class nodes = multiproj_top_degree((h1 + h2).pow(5));
    r.add_exact("chow/node_count_multidegree", 10,
                nodes.fits_slong_p() ? Json(nodes.get_si()) : Json(nodes.get_str()));

    r.wall_seconds = timer.seconds();
    return r;
}

namespace detail {

/// Per-trial failure tallies for the correspondence runner.
struct CorrTally {
    std::uint64_t round_trip = 0;        // psi(phi(lambda)) != lambda
    std::uint64_t locus_membership = 0;  // residual point off BS \ P
    std::uint64_t distinctness = 0;      // split trial with coincident points
    std::uint64_t octic_single = 0;      // octic trial without exactly one point
    std::uint64_t octic_rank = 0;        // octic member rank != 7
    std::uint64_t octic_inverse = 0;     // psi missed the octic member
    std::uint64_t disc_det = 0;          // disc = 0 xor det = 0
    std::uint64_t exhausted = 0;         // trial gave up after resampling
    std::uint64_t samples = 0;           // completed trials of either kind
};

/// True iff every residual of a split/double-root result is a point.
template <FieldContext F>
bool all_residuals_points(const CorrespondenceResult<F>& res) {
    for (const auto& ri : res.residuals)
        if (ri.tag != ResidualTag::PointOffPlane && ri.tag != ResidualTag::PointOnPlane)
            return false;
    return true;
}

}  // namespace detail

/// Round-trip and branch checks on one sampled plane-web: N random
/// members through the forward and inverse maps, N/5 members sampled on
/// the octic, and the discriminant/determinant equivalence over all of
/// them.  Non-square discriminants and non-generic samples are counted,
/// not failed.
inline Report run_correspondence(const RunConfig& cfg) {
    detail::WallTimer timer;
    Report r;
    r.config = cfg;
    const Fp k(cfg.prime);

    std::optional<Web<Fp>> web;
    try {
        web = detail::runner_web(k, cfg);
    } catch (const DegenerateSampleError& e) {
        r.add({"web/sampled", true, false, kInconclusive, Json{{"error", e.what()}}});
        r.wall_seconds = timer.seconds();
        return r;
    }
    const Web<Fp>& w = *web;
    r.web_hashes.push_back(web_content_hash(w));
    r.add_exact("web/sampled", true, true, Json{{"prime", cfg.prime}, {"seed", w.seed}});

    const OcticSurface<Fp> octic = det_octic(w);
    r.add_exact("octic/degree_8_homogeneous", true,
                octic.det_poly.is_homogeneous() && octic.det_poly.total_degree() == 8);

    detail::CorrTally tally;
    constexpr int kTrialRetries = 8;

    // forward/inverse round trips on uniform members
    for (long long t = 0; t < cfg.trials; ++t) {
        bool done = false;
        for (int attempt = 0; attempt < kTrialRetries && !done; ++attempt) {
            Rng rng = Rng::derive(cfg.seed, 0xf0000000ULL + (static_cast<std::uint64_t>(t) << 8) +
                                                static_cast<std::uint64_t>(attempt));
            WebMember<Fp> m = sample_member(w, rng);
            try {
                CorrespondenceResult<Fp> res = quadric_to_points(w, m);
                if (res.split != DiscSplit::ConjugatePair &&
                    (!detail::all_residuals_points(res) ||
                     res.points.size() != (res.split == DiscSplit::TwoDistinct ? 2u : 1u))) {
                    // a residual degenerated to a line or worse; resample
                    ++r.non_generic_resamples;
                    continue;
                }
                const bool disc_zero = k.is_zero(res.discriminant);
                const bool det_zero = k.is_zero(octic.det_poly.eval(m.lambda));
                if (disc_zero != det_zero) ++tally.disc_det;
                ++tally.samples;
                done = true;
                if (res.split == DiscSplit::ConjugatePair) {
                    ++r.rejections;  // no rational points over this field
                    continue;
                }
                for (const auto& p : res.points) {
                    if (!in_base_locus(w, p) || w.plane->contains(p)) ++tally.locus_membership;
                    if (point_to_quadric(w, p).lambda != m.lambda) ++tally.round_trip;
                }
                if (res.split == DiscSplit::TwoDistinct && res.points[0] == res.points[1])
                    ++tally.distinctness;
            } catch (const NonGenericError&) {
                ++r.non_generic_resamples;
            }
        }
        if (!done) ++tally.exhausted;
        ++r.trials;
    }

    // members sampled on the octic: the double-root branch
    const long long octic_trials = std::max<long long>(1, cfg.trials / 5);
    for (long long t = 0; t < octic_trials; ++t) {
        bool done = false;
        for (int attempt = 0; attempt < kTrialRetries && !done; ++attempt) {
            Rng rng = Rng::derive(cfg.seed, 0x0c000000ULL + (static_cast<std::uint64_t>(t) << 8) +
                                                static_cast<std::uint64_t>(attempt));
            try {
                WebMember<Fp> m = sample_octic_point(w, octic, rng);
                const std::size_t rank = rank_kernel(m.matrix).rank;
                if (rank != 7 && attempt + 1 < kTrialRetries) {
                    // one of finitely many deeper-rank members; resample
                    ++r.non_generic_resamples;
                    continue;
                }
                if (rank != 7) ++tally.octic_rank;
                CorrespondenceResult<Fp> res = quadric_to_points(w, m);
                const bool disc_zero = k.is_zero(res.discriminant);
                if (!disc_zero) ++tally.disc_det;  // det = 0 by construction
                if (res.split != DiscSplit::DoubleRoot || res.points.size() != 1 ||
                    !detail::all_residuals_points(res))
                    ++tally.octic_single;
                else {
                    if (!in_base_locus(w, res.points[0]) || w.plane->contains(res.points[0]))
                        ++tally.locus_membership;
                    if (point_to_quadric(w, res.points[0]).lambda != m.lambda)
                        ++tally.octic_inverse;
                }
                ++tally.samples;
                done = true;
            } catch (const NonGenericError&) {
                ++r.non_generic_resamples;
            } catch (const DegenerateSampleError&) {
                ++r.non_generic_resamples;
            }
        }
        if (!done) ++tally.exhausted;
        ++r.trials;
    }

    r.add_exact("roundtrip/split_identity_failures", 0, tally.round_trip);
    r.add_exact("roundtrip/points_in_locus_off_plane_failures", 0, tally.locus_membership);
    r.add_exact("roundtrip/distinctness_failures", 0, tally.distinctness);
    r.add_exact("octic/single_point_failures", 0, tally.octic_single);
    r.add_exact("octic/member_rank7_failures", 0, tally.octic_rank);
    r.add_exact("octic/inverse_identity_failures", 0, tally.octic_inverse);
    r.add_exact("trials/exhausted_resampling", 0, tally.exhausted);
    r.add_exact("disc_det/equivalence_failures", 0, tally.disc_det,
                Json{{"samples", tally.samples}});

    // quadratic-residue density: about half of all discriminants are
    // non-squares, so the rejection fraction should sit near 1/2
    const double fraction =
        cfg.trials > 0 ? static_cast<double>(r.rejections) / static_cast<double>(cfg.trials) : 0.0;
    const bool in_band = fraction >= 0.35 && fraction <= 0.65;
    const char* band_status = in_band ? kPass : (cfg.trials < 100 ? kInconclusive : kFail);
    r.add({"sampling/rejection_fraction",
           Json{{"min", 0.35}, {"max", 0.65}},
           fraction,
           band_status,
           Json{{"rejections", r.rejections}, {"trials", cfg.trials}}});

    r.wall_seconds = timer.seconds();
    return r;
}

/// Exhaustive plane-node scan with per-node invariant checks, the
/// closed-form singular-point ledger, and (on request) basis-certified
/// degrees for the node system and the quintuple-quadric count.
inline Report run_nodes(const RunConfig& cfg) {
    detail::WallTimer timer;
    Report r;
    r.config = cfg;
    const Fp k(cfg.prime);

    std::optional<Web<Fp>> web;
    try {
        web = detail::runner_web(k, cfg);
    } catch (const DegenerateSampleError& e) {
        r.add({"web/sampled", true, false, kInconclusive, Json{{"error", e.what()}}});
        r.wall_seconds = timer.seconds();
        return r;
    }
    const Web<Fp>& w = *web;
    r.web_hashes.push_back(web_content_hash(w));
    r.add_exact("web/sampled", true, true, Json{{"prime", cfg.prime}, {"seed", w.seed}});

    const OcticSurface<Fp> octic = det_octic(w);
    const auto nodes = node_census(w, octic);
    r.trials = nodes.size();

    r.add({"nodes/rational_count",
           Json{{"at_most", 10}},
           nodes.size(),
           nodes.size() <= 10 ? kPass : kFail,
           Json::object()});

    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& rec = nodes[i];
        bool ok = w.plane->contains(rec.point) && in_base_locus(w, rec.point) &&
                  rec.jacobian_rank <= 3;
        ok = ok && rank_kernel(rec.member.matrix).rank == 7;
        bool in_kernel = true;
        for (const auto& x : rec.member.matrix.apply(rec.point))
            in_kernel = in_kernel && k.is_zero(x);
        ok = ok && in_kernel;
        ok = ok && k.is_zero(octic.det_poly.eval(rec.member.lambda));
        ok = ok && octic.gradient_vanishes_at(rec.member.lambda);
        r.add_exact("node/" + std::to_string(i) + "/invariants", true, ok,
                    Json{{"point", rec.point},
                         {"lambda", rec.member.lambda},
                         {"jacobian_rank", rec.jacobian_rank}});
    }

    bool distinct = true;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            distinct = distinct && nodes[i].member.lambda != nodes[j].member.lambda;
    r.add_exact("nodes/members_pairwise_distinct", true, distinct);

    const auto ht = harris_tu_symmetric_degree(8, 6);
    r.add_exact("nodes/rank_le6_formula", 84, ht.degree);
    r.add_exact("nodes/singular_point_ledger", 94, ht.degree + 10,
                Json{{"rank_le6", ht.degree}, {"plane_nodes", 10}});

    if (cfg.use_groebner) {
        gb::GbOptions opts;
        if (cfg.budget > 0) opts.max_pairs = cfg.budget;
        for (const char* which : {"nodes10", "bezout16"}) {
            const CensusSystem<Fp> sys = std::string(which) == "nodes10"
                                             ? census_nodes10(w)
                                             : census_bezout16(w, cfg.seed);
            const CensusOutcome out = census_degree(k, sys, opts);
            Json extra{{"pair_count", out.stats.pairs_processed},
                       {"max_degree", out.stats.max_pair_degree}};
            if (out.conclusive) {
                extra["proj_dim"] = out.proj_dim;
                r.add({"nodes/certified_degree_" + std::string(which), sys.expected_degree,
                       out.degree, out.degree == sys.expected_degree ? kPass : kFail,
                       std::move(extra)});
            } else {
                extra["budget_spent"] = out.budget_spent;
                extra["error"] = out.note;
                r.add({"nodes/certified_degree_" + std::string(which), sys.expected_degree,
                       Json(nullptr), kInconclusive, std::move(extra)});
            }
        }
    }

    r.wall_seconds = timer.seconds();
    return r;
}

namespace detail {

inline gb::GbOptions census_options(CensusCase c, const RunConfig& cfg) {
    gb::GbOptions opts;
    if (c == CensusCase::Rank84Slice) {
        opts.max_pairs = 2000000;
        opts.max_degree = 40;
    }
    std::uint64_t budget = cfg.budget;
    if (budget == 0) {
        if (const char* env = std::getenv("QUADWEB_BUDGET")) {
            char* end = nullptr;
            const unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) budget = v;
        }
    }
    if (budget > 0) opts.max_pairs = budget;
    return opts;
}

}  // namespace detail

/// One named zero-dimensional system: build it from the seed, compute
/// the certified degree, compare against the closed-form value.  Budget
/// exhaustion is reported as inconclusive, never as failure.
inline Report run_census(const RunConfig& cfg) {
    detail::WallTimer timer;
    Report r;
    r.config = cfg;
    const Fp k(cfg.prime);
    const CensusCase c = census_case_from_string(cfg.census_case);
    const gb::GbOptions opts = detail::census_options(c, cfg);

    std::optional<CensusSystem<Fp>> sys;
    try {
        sys = make_census_system(k, c, cfg.seed);
    } catch (const DegenerateSampleError& e) {
        r.add({"census/" + cfg.census_case, true, false, kInconclusive,
               Json{{"error", e.what()}}});
        r.wall_seconds = timer.seconds();
        return r;
    }

    const CensusOutcome out = census_degree(k, *sys, opts);
    Json extra{{"case", cfg.census_case},
               {"pair_count", out.stats.pairs_processed},
               {"max_degree", out.stats.max_pair_degree},
               {"budget_pairs", opts.max_pairs}};
    if (c == CensusCase::Rank84Slice)
        extra["formula_degree"] = harris_tu_symmetric_degree(8, 6).degree;
    if (out.conclusive) {
        r.add({"census/" + cfg.census_case + "/degree", sys->expected_degree, out.degree,
               out.degree == sys->expected_degree ? kPass : kFail, extra});
        r.add_exact("census/" + cfg.census_case + "/dimension", sys->expected_dim, out.proj_dim);
    } else {
        extra["budget_spent"] = out.budget_spent;
        extra["error"] = out.note;
        r.add({"census/" + cfg.census_case + "/degree", sys->expected_degree, Json(nullptr),
               kInconclusive, extra});
    }

    r.wall_seconds = timer.seconds();
    return r;
}

}  // namespace quadweb
