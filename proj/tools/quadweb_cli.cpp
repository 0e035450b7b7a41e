#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "quadweb/report.hpp"

// Command-line front end.  Every runner prints its report as JSON lines
// on stdout (one config line, one line per check, one summary line) and
// a human-readable table on stderr.  Exit codes: 0 when no check fails,
// 1 when one does, 3 for runtime errors; usage errors exit with the
// parser's own nonzero codes.

using namespace quadweb;

namespace {

int emit(const Report& r, const std::string& out_path, bool timing) {
    const std::string lines = r.to_json_lines(timing);
    std::cout << lines;
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) {
            std::cerr << "error: cannot write " << out_path << '\n';
            return 3;
        }
        f << lines;
    }
    std::cerr << r.human_table();
    return r.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification campaigns for webs of quadrics on P^7"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string out_path;
    std::string in_path;
    bool no_timing = false;
    bool no_plane = false;

    CLI::App* inv = app.add_subcommand(
        "invariants", "closed-form ledger: dimensions, Euler numbers, Hodge pairs, degrees");
    inv->add_option("--out", out_path, "also write the JSON lines to this file");
    inv->add_flag("--no-timing", no_timing, "omit the wall-time field");

    CLI::App* corr = app.add_subcommand(
        "correspondence", "round trips member -> points -> member on a sampled plane-web");
    corr->add_option("--prime", cfg.prime, "field characteristic")->capture_default_str();
    corr->add_option("--seed", cfg.seed, "sampling seed")->capture_default_str();
    corr->add_option("--trials", cfg.trials, "round-trip trials; octic trials are a fifth of this")
        ->capture_default_str();
    corr->add_option("--web", cfg.web_file, "replay a serialized web instead of sampling");
    corr->add_option("--out", out_path, "also write the JSON lines to this file");
    corr->add_flag("--no-timing", no_timing, "omit the wall-time field");

    CLI::App* nodes = app.add_subcommand(
        "nodes", "exhaustive census of singular base-locus points on the plane");
    nodes->add_option("--prime", cfg.prime, "field characteristic")->capture_default_str();
    nodes->add_option("--seed", cfg.seed, "sampling seed")->capture_default_str();
    nodes->add_flag("--groebner", cfg.use_groebner,
                    "add basis-certified degree lines (nodes10, bezout16)");
    nodes->add_option("--budget", cfg.budget, "S-pair budget for certification (0 = default)");
    nodes->add_option("--web", cfg.web_file, "replay a serialized web instead of sampling");
    nodes->add_option("--out", out_path, "also write the JSON lines to this file");
    nodes->add_flag("--no-timing", no_timing, "omit the wall-time field");

    CLI::App* census = app.add_subcommand(
        "census", "certified degree of one named zero-dimensional system");
    census->add_option("--case", cfg.census_case, "nodes10 | bezout16 | rank84-slice | veronese4")
        ->required();
    census->add_option("--prime", cfg.prime, "field characteristic")->capture_default_str();
    census->add_option("--seed", cfg.seed, "sampling seed")->capture_default_str();
    census->add_option("--budget", cfg.budget,
                       "S-pair budget (0 = per-case default; env QUADWEB_BUDGET overrides)");
    census->add_option("--out", out_path, "also write the JSON lines to this file");
    census->add_flag("--no-timing", no_timing, "omit the wall-time field");

    CLI::App* web = app.add_subcommand("web", "sample or inspect serialized webs");
    web->require_subcommand(1);
    CLI::App* wsample = web->add_subcommand("sample", "sample a web and write it as JSON");
    wsample->add_option("--prime", cfg.prime, "field characteristic")->capture_default_str();
    wsample->add_option("--seed", cfg.seed, "sampling seed")->capture_default_str();
    wsample->add_flag("--no-plane", no_plane, "sample without a marked plane");
    wsample->add_option("--out", out_path, "write here instead of stdout");
    CLI::App* wshow = web->add_subcommand("show", "validate a web file and print a summary");
    wshow->add_option("--in", in_path, "web JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (inv->parsed()) {
            cfg.subcommand = "invariants";
            cfg.output_path = out_path;
            cfg.validate();
            return emit(run_invariants(cfg), out_path, !no_timing);
        }
        if (corr->parsed()) {
            cfg.subcommand = "correspondence";
            cfg.output_path = out_path;
            cfg.validate();
            return emit(run_correspondence(cfg), out_path, !no_timing);
        }
        if (nodes->parsed()) {
            cfg.subcommand = "nodes";
            cfg.output_path = out_path;
            cfg.validate();
            return emit(run_nodes(cfg), out_path, !no_timing);
        }
        if (census->parsed()) {
            cfg.subcommand = "census";
            cfg.output_path = out_path;
            cfg.validate();
            return emit(run_census(cfg), out_path, !no_timing);
        }
        if (wsample->parsed()) {
            cfg.validate();
            const Fp k(cfg.prime);
            const Web<Fp> w = no_plane
                                  ? sample_web(k, cfg.seed)
                                  : sample_web(k, cfg.seed, Plane<Fp>::coordinate_default(k));
            const std::string text = web_to_json(w).dump(2);
            if (out_path.empty()) {
                std::cout << text << '\n';
            } else {
                std::ofstream f(out_path);
                if (!f) {
                    std::cerr << "error: cannot write " << out_path << '\n';
                    return 3;
                }
                f << text << '\n';
            }
            std::cerr << "web " << web_content_hash(w) << '\n';
            return 0;
        }
        if (wshow->parsed()) {
            std::ifstream f(in_path);
            if (!f) {
                std::cerr << "error: cannot open " << in_path << '\n';
                return 3;
            }
            const Web<Fp> w = web_from_json(Json::parse(f));
            std::cout << "hash    " << web_content_hash(w) << '\n'
                      << "prime   " << w.field().modulus() << '\n'
                      << "seed    " << w.seed << '\n'
                      << "plane   " << (w.plane ? "yes" : "no") << '\n'
                      << "quadrics " << kWebSize << " symmetric " << kAmbient << "x" << kAmbient
                      << ", independent "
                      << (detail::quadrics_independent(w.quadrics) ? "yes" : "no") << '\n';
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const Json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 3;  // unreachable: a subcommand is required
}
