#include <arcline/cli.hpp>

#include <arcline/core.hpp>
#include <arcline/errors.hpp>
#include <arcline/lazyline.hpp>
#include <arcline/meander.hpp>
#include <arcline/noncrossing.hpp>
#include <arcline/realizer.hpp>
#include <arcline/render.hpp>
#include <arcline/stats.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace arcline {

namespace {

using nlohmann::ordered_json;

std::vector<std::uint64_t> parse_u64_csv(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoull(item));
    }
    return out;
}

std::vector<std::int64_t> parse_i64_csv(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoll(item));
    }
    return out;
}

// Seed list: explicit --seeds wins, else --seed expanded to n consecutive.
std::vector<std::uint64_t> resolve_seeds(const std::string& seeds_csv, std::uint64_t seed,
                                         bool seed_set, std::uint64_t n_seeds) {
    if (!seeds_csv.empty()) return parse_u64_csv(seeds_csv);
    if (!seed_set) throw CLI::ValidationError("--seed or --seeds is required");
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 0; i < n_seeds; ++i) out.push_back(seed + i);
    return out;
}

EndProfile parse_profile(const std::string& text) {
    auto parts = parse_i64_csv(text);
    if (parts.size() != 4)
        throw CLI::ValidationError("--profile expects \"a+,b+,a-,b-\"");
    EndProfile p;
    p.nl_up = parts[0];
    p.nr_up = parts[1];
    p.nl_dn = parts[2];
    p.nr_dn = parts[3];
    return p;
}

// Per-site states "s;s;..." with s = "+1,+1" etc.
std::vector<SiteState> parse_states(const std::string& text) {
    std::vector<SiteState> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        auto parts = parse_i64_csv(item);
        if (parts.size() != 2) throw CLI::ValidationError("site state must be \"u,d\"");
        out.push_back(SiteState{sign_from_int(static_cast<int>(parts[0])),
                                sign_from_int(static_cast<int>(parts[1]))});
    }
    return out;
}

struct Output {
    bool no_meta = false;
    std::string out_file;
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

    void add_flags(CLI::App* cmd) {
        cmd->add_flag("--no-meta", no_meta, "emit only the result payload");
        cmd->add_option("--out", out_file, "write output to a file instead of stdout");
    }

    void write_text(std::ostream& fallback, const std::string& text) const {
        if (out_file.empty()) {
            fallback << text;
            return;
        }
        std::ofstream f(out_file, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file " + out_file);
        f << text;
    }

    void write_json(std::ostream& fallback, const std::string& subcommand,
                    ordered_json params, ordered_json result) const {
        if (no_meta) {
            write_text(fallback, result.dump() + "\n");
            return;
        }
        ordered_json j;
        j["tool"] = kToolName;
        j["version"] = kToolVersion;
        j["subcommand"] = subcommand;
        j["params"] = std::move(params);
        j["wall_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - started)
                           .count();
        j["result"] = std::move(result);
        write_text(fallback, j.dump() + "\n");
    }
};

Window read_window_arg(const std::string& spec) {
    if (spec == "-") {
        std::stringstream buffer;
        buffer << std::cin.rdbuf();
        return window_from_json(buffer.str());
    }
    std::ifstream f(spec);
    if (!f) throw std::runtime_error("cannot read window file " + spec);
    std::stringstream buffer;
    buffer << f.rdbuf();
    return window_from_json(buffer.str());
}

ordered_json density_json(const DensityEstimate& e) {
    ordered_json j;
    j["method"] = e.method;
    j["value"] = e.value;
    j["stderr"] = e.stderr_;
    j["n_samples"] = e.n_samples;
    if (e.method == "series") j["kmax"] = e.truncation;
    return j;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"superposed non-crossing matchings of the integer line: sampling, "
                 "construction and exact enumeration"};
    app.require_subcommand(1);
    Output output;

    // ---- sample ----------------------------------------------------
    auto* c_sample = app.add_subcommand("sample", "sample a window of the configuration");
    std::uint64_t sm_seed = 0;
    std::int64_t sm_lo = 0, sm_n = 0;
    bool sm_svg = false;
    c_sample->add_option("--seed", sm_seed, "configuration seed")->required();
    c_sample->add_option("--n", sm_n, "window length")->required();
    c_sample->add_option("--lo", sm_lo, "leftmost site (default 0)");
    c_sample->add_flag("--svg", sm_svg, "emit an SVG diagram instead of JSON");
    output.add_flags(c_sample);

    // ---- trace -----------------------------------------------------
    auto* c_trace = app.add_subcommand("trace", "walk the cluster of an origin site");
    std::uint64_t tr_seed = 0, tr_steps = 100000, tr_vertex_limit = 0, tr_nseeds = 0;
    std::int64_t tr_origin = 0, tr_halfwidth = 1000000;
    bool tr_svg = false;
    c_trace->add_option("--seed", tr_seed, "configuration seed")->required();
    c_trace->add_option("--origin", tr_origin, "origin site (default 0)");
    c_trace->add_option("--max-steps", tr_steps, "budget: arcs traversed");
    c_trace->add_option("--halfwidth", tr_halfwidth, "budget: spatial bound around the origin");
    c_trace->add_option("--vertex-limit", tr_vertex_limit,
                        "omit vertices above this count (0 = always include)");
    c_trace->add_option("--closure-report", tr_nseeds,
                        "trace origin 0 under this many consecutive seeds and report "
                        "closure frequencies");
    c_trace->add_flag("--svg", tr_svg, "emit an SVG diagram of the trace");
    std::uint32_t tr_workers = 1;
    c_trace->add_option("--workers", tr_workers, "parallel workers for --closure-report");
    output.add_flags(c_trace);

    // ---- circles ---------------------------------------------------
    auto* c_circles = app.add_subcommand("circles", "circle density around a vertex");
    std::string ci_mode = "series";
    std::uint64_t ci_kmax = 1000000, ci_seed = 0, ci_nseeds = 8;
    std::string ci_seeds;
    std::int64_t ci_window = 1000000, ci_margin = 1000;
    std::uint32_t ci_workers = 1;
    bool ci_seed_set = false;
    c_circles->add_option("--mode", ci_mode, "series | mc")
        ->check(CLI::IsMember({"series", "mc"}));
    c_circles->add_option("--kmax", ci_kmax, "series truncation index");
    c_circles->add_option("--seed", ci_seed, "base seed (mc)");
    c_circles->add_option("--seeds", ci_seeds, "explicit comma-separated seed list (mc)");
    c_circles->add_option("--n-seeds", ci_nseeds, "number of consecutive seeds from --seed");
    c_circles->add_option("--window-len", ci_window, "window length per seed (mc)");
    c_circles->add_option("--margin", ci_margin, "boundary margin discarded (mc)");
    c_circles->add_option("--workers", ci_workers, "parallel workers");
    output.add_flags(c_circles);

    // ---- ends ------------------------------------------------------
    auto* c_ends = app.add_subcommand("ends", "boundary-end growth across window lengths");
    std::string en_lengths = "10,100,1000,10000";
    std::string en_seeds;
    std::uint64_t en_seed = 0, en_nseeds = 8;
    bool en_seed_set = false;
    std::string en_format = "json";
    std::uint32_t en_workers = 1;
    c_ends->add_option("--lengths", en_lengths, "comma-separated window lengths");
    c_ends->add_option("--seeds", en_seeds, "explicit seed list");
    c_ends->add_option("--seed", en_seed, "base seed");
    c_ends->add_option("--n-seeds", en_nseeds, "number of consecutive seeds from --seed");
    c_ends->add_option("--format", en_format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    c_ends->add_option("--workers", en_workers, "parallel workers");
    output.add_flags(c_ends);

    // ---- meander ---------------------------------------------------
    auto* c_meander = app.add_subcommand("meander", "finite gluings of two matchings");
    c_meander->require_subcommand(1);
    auto* c_mcount = c_meander->add_subcommand("count", "exhaustive meander count");
    std::uint32_t mc_order = 1, mc_max_order = 10, mc_workers = 1;
    std::string mc_method = "cycles";
    c_mcount->add_option("--order", mc_order, "meander order n")->required();
    c_mcount->add_option("--max-order", mc_max_order, "enumeration size cap");
    c_mcount->add_option("--method", mc_method, "cycles | unionfind")
        ->check(CLI::IsMember({"cycles", "unionfind"}));
    c_mcount->add_option("--workers", mc_workers, "parallel workers");
    output.add_flags(c_mcount);

    auto* c_msample = c_meander->add_subcommand("sample", "uniform meander by rejection");
    std::uint32_t ms_order = 1;
    std::uint64_t ms_seed = 0, ms_tries = 1000000;
    std::string ms_format = "json";
    c_msample->add_option("--order", ms_order, "meander order n")->required();
    c_msample->add_option("--seed", ms_seed, "sampler seed")->required();
    c_msample->add_option("--max-tries", ms_tries, "rejection budget");
    c_msample->add_option("--format", ms_format, "json | svg")
        ->check(CLI::IsMember({"json", "svg"}));
    output.add_flags(c_msample);

    // ---- realize ---------------------------------------------------
    auto* c_realize = app.add_subcommand("realize", "build a window with prescribed ends");
    std::int64_t re_n = 0, re_lo = 1;
    std::string re_profile, re_sigma;
    bool re_svg = false;
    c_realize->add_option("--n", re_n, "window length")->required();
    c_realize->add_option("--profile", re_profile, "end counts \"a+,b+,a-,b-\"")->required();
    c_realize->add_option("--sigma", re_sigma, "boundary matching, e.g. \"1-4,2-3\"");
    c_realize->add_option("--lo", re_lo, "leftmost site (default 1)");
    c_realize->add_flag("--svg", re_svg, "emit an SVG diagram instead of JSON");
    output.add_flags(c_realize);

    // ---- rewire ----------------------------------------------------
    auto* c_rewire = app.add_subcommand("rewire", "re-pair two ends of a window");
    std::string rw_in;
    std::int32_t rw_a = 0, rw_b = 0;
    bool rw_svg = false;
    c_rewire->add_option("--in", rw_in, "window JSON file, or - for stdin")->required();
    c_rewire->add_option("--end-a", rw_a, "first end (1-based cyclic index)")->required();
    c_rewire->add_option("--end-b", rw_b, "second end (1-based cyclic index)")->required();
    c_rewire->add_flag("--svg", rw_svg, "emit an SVG diagram instead of JSON");
    output.add_flags(c_rewire);

    // ---- finite-energy ----------------------------------------------
    auto* c_fe = app.add_subcommand("finite-energy",
                                    "exhaustively verify the local-modification bound");
    std::int64_t fe_n = 4, fe_max_n = 10;
    std::string fe_sites, fe_phi, fe_event = "all";
    c_fe->add_option("--n", fe_n, "window length (4^n enumeration)")->required();
    c_fe->add_option("--sites", fe_sites, "override sites, e.g. \"2,3\"")->required();
    c_fe->add_option("--phi", fe_phi, "override states per site, e.g. \"+1,+1;-1,+1\"")
        ->required();
    c_fe->add_option("--event", fe_event,
                     "event: all | cylinder:SITE:u,d (window matches u,d at SITE)");
    c_fe->add_option("--max-n", fe_max_n, "enumeration size cap");
    output.add_flags(c_fe);

    // ---- trifurcations ----------------------------------------------
    auto* c_tri = app.add_subcommand("trifurcations", "scan a window for trifurcation points");
    std::uint64_t ti_seed = 0, ti_steps = 100000;
    std::int64_t ti_lo = 0, ti_hi = 0, ti_halfwidth = 100000;
    c_tri->add_option("--seed", ti_seed, "configuration seed")->required();
    c_tri->add_option("--lo", ti_lo, "window start")->required();
    c_tri->add_option("--hi", ti_hi, "window end (inclusive)")->required();
    c_tri->add_option("--max-steps", ti_steps, "budget: arcs per cluster trace");
    c_tri->add_option("--halfwidth", ti_halfwidth, "budget: spatial bound");
    output.add_flags(c_tri);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << kToolName << ": " << e.what() << "\n";
        return 2;
    }
    ci_seed_set = c_circles->count("--seed") > 0;
    en_seed_set = c_ends->count("--seed") > 0;

    try {
        if (c_sample->parsed()) {
            LazyLine env(sm_seed);
            Window w = materialize(env, sm_lo, sm_n);
            if (sm_svg) {
                output.write_text(out, render_svg(w));
            } else {
                ordered_json params{{"seed", sm_seed}, {"lo", sm_lo}, {"n", sm_n}};
                output.write_json(out, "sample", params,
                                  ordered_json::parse(window_to_json(w)));
            }
            return 0;
        }

        if (c_trace->parsed()) {
            const Budget budget{tr_steps, tr_halfwidth};
            if (tr_nseeds > 0) {
                ClosureReport rep =
                    closure_frequencies(tr_seed, tr_nseeds, budget, tr_workers);
                ordered_json params{{"seed", tr_seed},
                                    {"n_seeds", tr_nseeds},
                                    {"max_steps", tr_steps},
                                    {"halfwidth", tr_halfwidth}};
                ordered_json res{{"n_seeds", rep.n_seeds},
                                 {"closed", rep.closed},
                                 {"truncated", rep.truncated},
                                 {"truncated_fraction", rep.truncated_fraction},
                                 {"closed_lengths", rep.closed_lengths}};
                output.write_json(out, "trace", params, res);
                return 0;
            }
            LazyLine env(tr_seed);
            ClusterTrace t = trace_cluster(env, tr_origin, budget);
            if (tr_svg) {
                output.write_text(out, render_svg(t));
                return 0;
            }
            ordered_json params{{"seed", tr_seed},
                                {"origin", tr_origin},
                                {"max_steps", tr_steps},
                                {"halfwidth", tr_halfwidth}};
            output.write_json(out, "trace", params,
                              ordered_json::parse(trace_to_json(t, tr_seed, tr_vertex_limit)));
            return 0;
        }

        if (c_circles->parsed()) {
            if (ci_mode == "series") {
                ordered_json params{{"mode", "series"}, {"kmax", ci_kmax}};
                output.write_json(out, "circles", params,
                                  density_json(circle_density_series(ci_kmax)));
            } else {
                auto seeds = resolve_seeds(ci_seeds, ci_seed, ci_seed_set, ci_nseeds);
                DensityEstimate est =
                    circle_density_mc(seeds, ci_window, ci_margin, ci_workers);
                ordered_json params{{"mode", "mc"},
                                    {"seeds", seeds},
                                    {"window_len", ci_window},
                                    {"margin", ci_margin}};
                output.write_json(out, "circles", params, density_json(est));
            }
            return 0;
        }

        if (c_ends->parsed()) {
            auto lengths = parse_i64_csv(en_lengths);
            auto seeds = resolve_seeds(en_seeds, en_seed, en_seed_set, en_nseeds);
            auto rows = boundary_growth(lengths, seeds, en_workers);
            ordered_json params{{"lengths", lengths}, {"seeds", seeds}};
            if (en_format == "csv") {
                std::string csv = "window_len,mean_n_tot,mean_ratio,min_n_tot,max_n_tot,"
                                  "mean_walk_range\n";
                for (const auto& r : rows) {
                    csv += std::to_string(r.window_len) + "," + std::to_string(r.mean_n_tot) +
                           "," + std::to_string(r.mean_ratio) + "," +
                           std::to_string(r.min_n_tot) + "," + std::to_string(r.max_n_tot) +
                           "," + std::to_string(r.mean_walk_range) + "\n";
                }
                output.write_text(out, csv);
                return 0;
            }
            auto table = ordered_json::array();
            for (const auto& r : rows) {
                table.push_back({{"window_len", r.window_len},
                                 {"mean_n_tot", r.mean_n_tot},
                                 {"mean_ratio", r.mean_ratio},
                                 {"min_n_tot", r.min_n_tot},
                                 {"max_n_tot", r.max_n_tot},
                                 {"mean_walk_range", r.mean_walk_range}});
            }
            output.write_json(out, "ends", params, table);
            return 0;
        }

        if (c_mcount->parsed()) {
            const ComponentMethod method = mc_method == "unionfind"
                                               ? ComponentMethod::union_find
                                               : ComponentMethod::permutation_cycles;
            std::uint64_t count = count_meanders(mc_order, method, mc_max_order, mc_workers);
            ordered_json params{{"order", mc_order}, {"method", mc_method}};
            output.write_json(out, "meander count", params, ordered_json{{"count", count}});
            return 0;
        }

        if (c_msample->parsed()) {
            MeanderDiagram d = sample_meander(ms_order, ms_seed, ms_tries);
            if (ms_format == "svg") {
                output.write_text(out, render_svg(d));
                return 0;
            }
            ordered_json params{{"order", ms_order}, {"seed", ms_seed}, {"max_tries", ms_tries}};
            ordered_json res{{"order", d.order},
                             {"upper", pairing_to_text(d.upper)},
                             {"lower", pairing_to_text(d.lower)},
                             {"component_count", d.component_count},
                             {"connected", d.connected}};
            output.write_json(out, "meander sample", params, res);
            return 0;
        }

        if (c_realize->parsed()) {
            RealizeRequest req;
            req.n = re_n;
            req.profile = parse_profile(re_profile);
            req.sigma = re_sigma.empty() ? Pairing{} : pairing_from_text(re_sigma);
            req.lo = re_lo;
            Window w = realize(req);
            if (re_svg) {
                output.write_text(out, render_svg(w));
                return 0;
            }
            ordered_json params{{"n", re_n},
                                {"profile", re_profile},
                                {"sigma", re_sigma},
                                {"lo", re_lo}};
            output.write_json(out, "realize", params,
                              ordered_json::parse(window_to_json(w)));
            return 0;
        }

        if (c_rewire->parsed()) {
            Window w = read_window_arg(rw_in);
            if (rw_a < 1 || rw_b < 1)
                throw std::invalid_argument("end indices are 1-based");
            Window r = rewire(w, rw_a - 1, rw_b - 1);
            if (rw_svg) {
                output.write_text(out, render_svg(r));
                return 0;
            }
            ordered_json params{{"in", rw_in}, {"end_a", rw_a}, {"end_b", rw_b}};
            ordered_json res = ordered_json::parse(window_to_json(r));
            res["sigma"] = pairing_to_text(decompose(r).sigma);
            output.write_json(out, "rewire", params, res);
            return 0;
        }

        if (c_fe->parsed()) {
            auto sites = parse_i64_csv(fe_sites);
            auto states = parse_states(fe_phi);
            if (states.size() != sites.size())
                throw std::invalid_argument("--phi must list one state per site of --sites");
            OverrideRule phi = [states](const Window&) { return states; };
            EventPredicate event;
            if (fe_event == "all") {
                event = [](const Window&) { return true; };
            } else if (fe_event.rfind("cylinder:", 0) == 0) {
                std::string rest = fe_event.substr(9);
                auto colon = rest.find(':');
                if (colon == std::string::npos)
                    throw std::invalid_argument("cylinder event needs SITE:u,d");
                Site site = std::stoll(rest.substr(0, colon));
                auto states_ev = parse_states(rest.substr(colon + 1));
                if (states_ev.size() != 1)
                    throw std::invalid_argument("cylinder event takes one state");
                SiteState want = states_ev[0];
                event = [site, want](const Window& w) {
                    return w.contains(site) && w.at(site) == want;
                };
            } else {
                throw std::invalid_argument("unknown event " + fe_event);
            }
            FiniteEnergyReport rep = verify_finite_energy(fe_n, sites, phi, event, fe_max_n);
            ordered_json params{{"n", fe_n},
                                {"sites", sites},
                                {"phi", fe_phi},
                                {"event", fe_event}};
            ordered_json res{{"event_count", rep.event_count},
                             {"modified_count", rep.modified_count},
                             {"total", rep.total},
                             {"p_event", rep.p_event()},
                             {"p_modified", rep.p_modified()},
                             {"bound_ok", rep.bound_ok}};
            output.write_json(out, "finite-energy", params, res);
            return 0;
        }

        if (c_tri->parsed()) {
            LazyLine env(ti_seed);
            TrifurcationReport rep =
                trifurcation_scan(env, ti_lo, ti_hi, Budget{ti_steps, ti_halfwidth});
            ordered_json params{{"seed", ti_seed},
                                {"lo", ti_lo},
                                {"hi", ti_hi},
                                {"max_steps", ti_steps},
                                {"halfwidth", ti_halfwidth}};
            output.write_json(out, "trifurcations", params,
                              ordered_json::parse(trifurcation_report_to_json(rep)));
            return 0;
        }
    } catch (const std::exception& e) {
        err << kToolName << ": " << e.what() << "\n";
        return 1;
    }
    err << kToolName << ": no subcommand\n";
    return 2;
}

}  // namespace arcline
