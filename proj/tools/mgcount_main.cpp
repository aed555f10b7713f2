#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mgcount/mgcount.hpp"

using namespace mgcount;

namespace {

std::vector<int> parse_degree_list(const std::string& text) {
    if (text.empty()) throw parse_error("--degrees is required for this command");
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw parse_error("empty item in degree list '" + text + "'");
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw parse_error("bad degree '" + item + "'");
        }
    }
    if (out.empty()) throw parse_error("empty degree list");
    return out;
}

Rat parse_rat(const std::string& text) {
    try {
        auto slash = text.find('/');
        if (slash != std::string::npos)
            return Rat(Int(text.substr(0, slash)), Int(text.substr(slash + 1)));
        if (text.find('.') != std::string::npos) return Rat(std::stod(text));
        return Rat(Int(text));
    } catch (const parse_error&) {
        throw;
    } catch (const std::exception&) {
        throw parse_error("bad rational '" + text + "'");
    }
}

json thresholds_json(const thresholds& t) {
    return json{{"m", t.m},
                {"kmax", t.kmax},
                {"n1", t.n1},
                {"n2", t.n2},
                {"n3", t.n3},
                {"log_m", t.log_m},
                {"sqrt_m", t.sqrt_m},
                {"three_sqrt_m", t.three_sqrt_m},
                {"m56", t.m56},
                {"sqrt_kmax", t.sqrt_kmax},
                {"cap4", t.cap4},
                {"c4_level", t.c4_level},
                {"c5_level", t.c5_level}};
}

json stats_json(const mult_stats& st) {
    json loops = json::object(), links = json::object();
    for (const auto& [d, c] : st.ell) loops[std::to_string(d)] = c;
    for (const auto& [d, c] : st.e) links[std::to_string(d)] = c;
    return json{{"L", st.L},
                {"e_plus", st.e_plus},
                {"e_minus", st.e_minus},
                {"e_exotic", st.e_exotic},
                {"e1_fraction", rat_to_string(st.e1_fraction)},
                {"loops", std::move(loops)},
                {"links", std::move(links)}};
}

// every flag any subcommand consumes; whichever leaf runs reads its slice
struct options {
    std::string degrees_text;
    std::string j_text = "0,1";
    std::string jstar_text = "0";
    bool compact = false;
    long long budget = 0;
    long long seed = 0;
    long long reps = 1;
    int kreg = 0;
    int nflag = 0;
    std::string strategy = "dp";
    std::string region = "g0";
    long long loops1 = 0, links2 = 0, links3 = 0;
    std::string graph_path, move_path, network_path;
    int colour = 0;
    long long limit = 0;
    std::string p_text, kbar_text;
    std::string p_choice = "exact";
};

struct run_state {
    bool ran = false;
    std::string command;
    json inputs = json::object();
    json result;
    std::optional<long long> seed_used;
    double run_ms = 0;

    void exec(std::string name, json in, const std::function<json()>& fn) {
        command = std::move(name);
        inputs = std::move(in);
        auto t0 = std::chrono::steady_clock::now();
        result = fn();
        run_ms = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
        ran = true;
    }
};

struct instance {
    degree_sequence k;
    multiplicity_set J;
    multiplicity_set Jstar;
};

instance parse_instance(const options& o) {
    return {degree_sequence(parse_degree_list(o.degrees_text)),
            multiplicity_set::parse(o.j_text), multiplicity_set::parse(o.jstar_text)};
}

json echo_instance(const instance& in, const options& o) {
    return json{{"degrees", in.k.degrees()},
                {"J", in.J.to_string()},
                {"Jstar", in.Jstar.to_string()},
                {"budget", o.budget}};
}

json estimate_result(const estimate& e) {
    json out = to_json(e);
    out["mode"] = "estimate";
    return out;
}

Int product_of_factorials(const degree_sequence& k) {
    Int f = 1;
    for (int d : k.degrees()) f *= factorial(d);
    return f;
}

// cells changed by a move must not land on the three switched-off classes
bool modified_cells_admissible(const multigraph& q, const multigraph& r) {
    for (int i = 0; i < q.n(); ++i) {
        if (r.loop(i) != q.loop(i) && r.loop(i) == 1) return false;
        for (int j = i + 1; j < q.n(); ++j) {
            long long v = r.get(i, j);
            if (v != q.get(i, j) && (v == 2 || v == 3)) return false;
        }
    }
    return true;
}

json run_compare(const instance& in, const options& o) {
    count_options copts{o.budget};
    Int exact = count_exact_dp(in.k, in.J, in.Jstar, copts);
    json out{{"exact", int_to_string(exact)}, {"mode", "mixed"}};
    const bool positive = exact > 0;
    Real log_exact = 0;
    if (positive) {
        log_exact = log_rat(Rat(exact));
        out["log_exact"] = static_cast<double>(log_exact);
    }
    json ests = json::object();
    auto add = [&](const std::string& name, const std::function<estimate()>& make,
                   const std::function<void(json&)>& extra = {}) {
        try {
            estimate e = make();
            json entry = to_json(e);
            if (positive) {
                Real ld = log_exact - e.log_value;
                entry["log_diff"] = static_cast<double>(ld);
                entry["ratio"] = static_cast<double>(exp(ld));
            }
            if (extra) extra(entry);
            ests[name] = std::move(entry);
        } catch (const error& e) {
            ests[name] = json{{"error", e.name()}};
        }
    };
    add("theorem1", [&] { return theorem1_estimate(in.k, in.J, in.Jstar); });
    const auto& deg = in.k.degrees();
    bool regular = std::all_of(deg.begin(), deg.end(),
                               [&](int d) { return d == deg.front(); });
    if (regular) {
        add("corollary", [&] {
            return corollary_regular_estimate(deg.front(), in.k.n(), in.J, in.Jstar);
        });
    }
    add("naive", [&] {
        auto params =
            solve_p0(in.k.kbar(), in.k.n(), in.J, in.Jstar, p_mode::solved_exact);
        return g_naive(in.k, in.J, in.Jstar, params);
    });
    add("theorem5", [&] { return theorem5_prediction(in.k, in.J, in.Jstar); });
    out["estimates"] = std::move(ests);
    return out;
}

json run_verify_switchings(const instance& in, const options& o, run_state& r) {
    switch_context ctx(in.k, in.J, in.Jstar);
    long long sampled = 0, in_family = 0, with_active = 0, moves_checked = 0;
    json violations = json::array();
    auto violate = [&](const std::string& what) {
        if (violations.size() < 10) violations.push_back(what);
    };
    for (long long i = 0; i < o.reps; ++i) {
        ++sampled;
        auto p = sample_pairing(in.k.degrees(),
                                static_cast<std::uint64_t>(o.seed + i));
        multigraph q = project(p);
        if (!in_g0(q, in.J, in.Jstar)) continue;
        ++in_family;
        auto active = active_colour(ctx, q);
        if (!active) continue;
        ++with_active;
        for (const auto& m : enumerate_moves_checked(ctx, q, *active)) {
            ++moves_checked;
            multigraph res = apply_move(q, m);
            if (res.degrees() != in.k.degrees()) violate("degree change");
            if (!in_g0(res, in.J, in.Jstar)) violate("left the widened family");
            if (!modified_cells_admissible(q, res))
                violate("modified cell on a switched-off class");
            Int back = reverse_count(ctx, res, *active);
            if (back < 1) violate("move not recovered by the reverse search");
            if (Rat(back) > nominal_b(*active, ctx.k))
                violate("reverse count above the nominal cap");
        }
    }
    r.seed_used = o.seed;
    return json{{"mode", "verify"},
                {"sampled", sampled},
                {"in_family", in_family},
                {"with_active", with_active},
                {"moves_checked", moves_checked},
                {"violations", violations},
                {"holds", violations.empty()}};
}

json run_verify_summation(const instance& in, const options& o) {
    count_options copts{o.budget};
    thresholds th = compute_thresholds(in.k);
    Int lhs = product_of_factorials(in.k) *
              count_region(in.k, in.J, in.Jstar, region_kind::g0_minus_y, th, copts);
    const long long m = th.m;
    const long long lcap = in.Jstar.contains(1) ? std::min(th.n1, m / 2) : 0;
    const long long dcap = in.J.contains(2) ? std::min(th.n2, m / 4) : 0;
    const long long tcap = in.J.contains(3) ? std::min(th.n3, m / 6) : 0;
    Int rhs = 0;
    long long terms = 0;
    for (long long l = 0; l <= lcap; ++l)
        for (long long d = 0; d <= dcap; ++d)
            for (long long t = 0; t <= tcap; ++t) {
                rhs += w_weight(in.k, {l, d, t}, copts);
                ++terms;
            }
    return json{{"lhs", int_to_string(lhs)},
                {"rhs", int_to_string(rhs)},
                {"holds", lhs == rhs},
                {"terms", terms},
                {"thresholds", thresholds_json(th)}};
}

}  // namespace

int main(int argc, char** argv) {
    auto t_start = std::chrono::steady_clock::now();
    CLI::App app{"counting, estimating, sampling, and verifying multigraphs with "
                 "restricted loop and link multiplicities"};
    app.require_subcommand(1);
    options o;
    run_state r;

    app.add_option("--degrees", o.degrees_text, "comma-separated degree sequence");
    app.add_option("--J", o.j_text, "link multiplicity set, e.g. 0,1 or 0,1,+4");
    app.add_option("--Jstar", o.jstar_text, "loop multiplicity set, e.g. 0 or 0,1");
    app.add_flag("--json", o.compact, "single-line JSON output");
    app.add_option("--budget", o.budget, "search-node limit, 0 = unlimited");

    // count ------------------------------------------------------------------
    auto* count_grp = app.add_subcommand("count", "exact counts");
    count_grp->require_subcommand(1);
    count_grp->fallthrough();

    auto* c_exact = count_grp->add_subcommand("exact", "count the instance");
    c_exact->fallthrough();
    c_exact->add_option("--strategy", o.strategy, "search strategy")
        ->check(CLI::IsMember({"bt", "dp"}));
    c_exact->callback([&] {
        instance in = parse_instance(o);
        r.exec("count exact", echo_instance(in, o), [&] {
            count_options copts{o.budget};
            Int c = o.strategy == "bt" ? count_exact(in.k, in.J, in.Jstar, copts)
                                       : count_exact_dp(in.k, in.J, in.Jstar, copts);
            return json{{"count", int_to_string(c)},
                        {"mode", "exact"},
                        {"strategy", o.strategy}};
        });
    });

    auto* c_region = count_grp->add_subcommand("region", "count G0, G0 - Y, or Z");
    c_region->fallthrough();
    c_region->add_option("--region", o.region, "g0 | g0_minus_y | z")
        ->check(CLI::IsMember({"g0", "g0_minus_y", "z"}));
    c_region->callback([&] {
        instance in = parse_instance(o);
        json inputs = echo_instance(in, o);
        inputs["region"] = o.region;
        r.exec("count region", std::move(inputs), [&] {
            region_kind kind = o.region == "g0" ? region_kind::g0
                               : o.region == "g0_minus_y" ? region_kind::g0_minus_y
                                                          : region_kind::z;
            thresholds th = compute_thresholds(in.k);
            Int c = count_region(in.k, in.J, in.Jstar, kind, th,
                                 count_options{o.budget});
            return json{{"count", int_to_string(c)},
                        {"mode", "exact"},
                        {"region", o.region},
                        {"thresholds", thresholds_json(th)}};
        });
    });

    auto* c_class = count_grp->add_subcommand(
        "class", "count one (loops-1, links-2, links-3) class");
    c_class->fallthrough();
    c_class->add_option("--loops1", o.loops1, "simple loops");
    c_class->add_option("--links2", o.links2, "double links");
    c_class->add_option("--links3", o.links3, "triple links");
    c_class->callback([&] {
        degree_sequence k(parse_degree_list(o.degrees_text));
        json sig{{"loops1", o.loops1}, {"links2", o.links2}, {"links3", o.links3}};
        json inputs{{"degrees", k.degrees()}, {"signature", sig}, {"budget", o.budget}};
        r.exec("count class", std::move(inputs), [&] {
            Int c = count_class(k, {o.loops1, o.links2, o.links3},
                                count_options{o.budget});
            return json{{"count", int_to_string(c)}, {"mode", "exact"},
                        {"signature", sig}};
        });
    });

    // estimate ----------------------------------------------------------------
    auto* est_grp = app.add_subcommand("estimate", "asymptotic estimators");
    est_grp->require_subcommand(1);
    est_grp->fallthrough();

    auto* e_t1 = est_grp->add_subcommand("theorem1", "five-term degree-sequence formula");
    e_t1->fallthrough();
    e_t1->callback([&] {
        instance in = parse_instance(o);
        r.exec("estimate theorem1", echo_instance(in, o),
               [&] { return estimate_result(theorem1_estimate(in.k, in.J, in.Jstar)); });
    });

    auto* e_cor = est_grp->add_subcommand("corollary", "regular specialization");
    e_cor->fallthrough();
    e_cor->add_option("--k", o.kreg, "common degree")->required();
    e_cor->add_option("--n", o.nflag, "number of vertices")->required();
    e_cor->callback([&] {
        auto J = multiplicity_set::parse(o.j_text);
        auto Js = multiplicity_set::parse(o.jstar_text);
        json inputs{{"k", o.kreg}, {"n", o.nflag}, {"J", J.to_string()},
                    {"Jstar", Js.to_string()}};
        r.exec("estimate corollary", std::move(inputs), [&] {
            estimate e = corollary_regular_estimate(o.kreg, o.nflag, J, Js);
            json out = estimate_result(e);
            out["Q"] = -static_cast<double>(e.exponent_total());
            return out;
        });
    });

    auto* e_pair = est_grp->add_subcommand("pairing", "loop-free multiple-free pairings");
    e_pair->fallthrough();
    e_pair->callback([&] {
        degree_sequence k(parse_degree_list(o.degrees_text));
        json inputs{{"degrees", k.degrees()}};
        r.exec("estimate pairing", std::move(inputs),
               [&] { return estimate_result(simple_pairing_asymptotic(k)); });
    });

    auto* e_naive = est_grp->add_subcommand("naive", "independent-entry estimate");
    e_naive->fallthrough();
    e_naive->add_option("--p", o.p_text, "entry probability (overrides solving)");
    e_naive->add_option("--kbar", o.kbar_text, "target mean row sum (default: mean degree)");
    e_naive->add_option("--pmode", o.p_choice, "p solver: exact | pdef")
        ->check(CLI::IsMember({"exact", "pdef"}));
    e_naive->callback([&] {
        instance in = parse_instance(o);
        json inputs = echo_instance(in, o);
        inputs["pmode"] = o.p_choice;
        r.exec("estimate naive", std::move(inputs), [&] {
            naive_params params;
            std::string mode;
            if (!o.p_text.empty()) {
                params.p = to_real(parse_rat(o.p_text));
                params.tail_cut =
                    std::max(detail::multiplicity_sums(in.J, params.p).tail_cut,
                             detail::multiplicity_sums(in.Jstar, params.p).tail_cut);
                mode = "explicit";
            } else {
                Rat kbar = o.kbar_text.empty() ? in.k.kbar() : parse_rat(o.kbar_text);
                params = solve_p0(kbar, in.k.n(), in.J, in.Jstar,
                                  o.p_choice == "pdef" ? p_mode::asymptotic_pdef
                                                       : p_mode::solved_exact);
                mode = o.p_choice == "pdef" ? "asymptotic_pdef" : "solved_exact";
            }
            json out = estimate_result(g_naive(in.k, in.J, in.Jstar, params));
            out["p"] = static_cast<double>(params.p);
            out["p_mode"] = mode;
            out["tail_cut"] = params.tail_cut;
            return out;
        });
    });

    auto* e_t5 = est_grp->add_subcommand("theorem5", "naive comparison prediction");
    e_t5->fallthrough();
    e_t5->callback([&] {
        instance in = parse_instance(o);
        r.exec("estimate theorem5", echo_instance(in, o), [&] {
            json out = estimate_result(theorem5_prediction(in.k, in.J, in.Jstar));
            out["p_mode"] = "solved_exact";
            return out;
        });
    });

    // compare ------------------------------------------------------------------
    auto* cmp = app.add_subcommand("compare", "exact count against every estimator");
    cmp->fallthrough();
    cmp->callback([&] {
        instance in = parse_instance(o);
        r.exec("compare", echo_instance(in, o), [&] { return run_compare(in, o); });
    });

    // sample -------------------------------------------------------------------
    auto* smp_grp = app.add_subcommand("sample", "random models");
    smp_grp->require_subcommand(1);
    smp_grp->fallthrough();
    smp_grp->add_option("--seed", o.seed, "RNG seed");
    smp_grp->add_option("--reps", o.reps, "number of samples");

    auto* s_pair = smp_grp->add_subcommand("pairing", "uniform pairings of the cells");
    s_pair->fallthrough();
    s_pair->callback([&] {
        degree_sequence k(parse_degree_list(o.degrees_text));
        json inputs{{"degrees", k.degrees()}, {"reps", o.reps}};
        r.exec("sample pairing", std::move(inputs), [&] {
            json samples = json::array();
            for (long long i = 0; i < o.reps; ++i) {
                auto p = sample_pairing(k.degrees(),
                                        static_cast<std::uint64_t>(o.seed + i));
                samples.push_back(json{{"pairing", to_json(p)},
                                       {"projection", to_json(project(p))}});
            }
            r.seed_used = o.seed;
            return json{{"mode", "sample"},
                        {"model", "pairing"},
                        {"reps", o.reps},
                        {"samples", std::move(samples)}};
        });
    });

    auto* s_mat = smp_grp->add_subcommand("matrix", "independent-entry matrices");
    s_mat->fallthrough();
    s_mat->add_option("--n", o.nflag, "number of vertices (default: from --degrees)");
    s_mat->add_option("--p", o.p_text, "entry probability (overrides solving)");
    s_mat->add_option("--kbar", o.kbar_text, "target mean row sum");
    s_mat->add_option("--pmode", o.p_choice, "p solver: exact | pdef")
        ->check(CLI::IsMember({"exact", "pdef"}));
    s_mat->callback([&] {
        auto J = multiplicity_set::parse(o.j_text);
        auto Js = multiplicity_set::parse(o.jstar_text);
        int n = o.nflag;
        std::optional<degree_sequence> k;
        if (!o.degrees_text.empty()) {
            k = degree_sequence(parse_degree_list(o.degrees_text));
            if (n == 0) n = k->n();
        }
        if (n <= 0) throw parse_error("need --n or --degrees to size the matrix");
        json inputs{{"n", n}, {"J", J.to_string()}, {"Jstar", Js.to_string()},
                    {"reps", o.reps}};
        r.exec("sample matrix", std::move(inputs), [&] {
            Real p;
            std::string mode;
            long long tail_cut = -1;
            if (!o.p_text.empty()) {
                p = to_real(parse_rat(o.p_text));
                mode = "explicit";
            } else {
                Rat kbar;
                if (!o.kbar_text.empty())
                    kbar = parse_rat(o.kbar_text);
                else if (k)
                    kbar = k->kbar();
                else
                    throw parse_error("need --p, --kbar, or --degrees to choose p");
                auto params = solve_p0(kbar, n, J, Js,
                                       o.p_choice == "pdef" ? p_mode::asymptotic_pdef
                                                            : p_mode::solved_exact);
                p = params.p;
                tail_cut = params.tail_cut;
                mode = o.p_choice == "pdef" ? "asymptotic_pdef" : "solved_exact";
            }
            json samples = json::array();
            for (long long i = 0; i < o.reps; ++i) {
                samples.push_back(to_json(
                    sample_matrix(n, p, J, Js, static_cast<std::uint64_t>(o.seed + i))));
            }
            r.seed_used = o.seed;
            return json{{"mode", "sample"},
                        {"model", "independent_matrix"},
                        {"p", static_cast<double>(p)},
                        {"p_mode", mode},
                        {"tail_cut", tail_cut},
                        {"reps", o.reps},
                        {"samples", std::move(samples)}};
        });
    });

    // switch -------------------------------------------------------------------
    auto* sw_grp = app.add_subcommand("switch", "switching diagnostics");
    sw_grp->require_subcommand(1);
    sw_grp->fallthrough();
    sw_grp->add_option("--graph", o.graph_path, "multigraph JSON file");

    auto load_graph = [&] {
        if (o.graph_path.empty()) throw parse_error("--graph is required");
        return multigraph_from_json(load_json_file(o.graph_path));
    };

    auto* sw_stats = sw_grp->add_subcommand("stats", "multiplicity census");
    sw_stats->fallthrough();
    sw_stats->callback([&] {
        multigraph g = load_graph();
        r.exec("switch stats", json{{"graph", o.graph_path}}, [&] {
            thresholds th = compute_thresholds(degree_sequence(g.degrees()));
            return json{{"stats", stats_json(compute_stats(g))},
                        {"thresholds", thresholds_json(th)}};
        });
    });

    auto* sw_active = sw_grp->add_subcommand("active", "least triggered colour");
    sw_active->fallthrough();
    sw_active->callback([&] {
        multigraph g = load_graph();
        instance in{degree_sequence(g.degrees()), multiplicity_set::parse(o.j_text),
                    multiplicity_set::parse(o.jstar_text)};
        json inputs{{"graph", o.graph_path}, {"J", in.J.to_string()},
                    {"Jstar", in.Jstar.to_string()}};
        r.exec("switch active", std::move(inputs), [&] {
            switch_context ctx(in.k, in.J, in.Jstar);
            auto active = active_colour(ctx, g);
            return json{{"active", active ? json(*active) : json(nullptr)},
                        {"thresholds", thresholds_json(ctx.th)}};
        });
    });

    auto* sw_moves = sw_grp->add_subcommand("moves", "enumerate switching moves");
    sw_moves->fallthrough();
    sw_moves->add_option("--colour", o.colour,
                         "colour to enumerate structurally (default: active colour)");
    sw_moves->add_option("--limit", o.limit, "cap on listed moves, 0 = all");
    sw_moves->callback([&] {
        multigraph g = load_graph();
        instance in{degree_sequence(g.degrees()), multiplicity_set::parse(o.j_text),
                    multiplicity_set::parse(o.jstar_text)};
        json inputs{{"graph", o.graph_path}, {"J", in.J.to_string()},
                    {"Jstar", in.Jstar.to_string()}, {"colour", o.colour},
                    {"limit", o.limit}};
        r.exec("switch moves", std::move(inputs), [&] {
            switch_context ctx(in.k, in.J, in.Jstar);
            int colour = o.colour;
            bool from_active = colour == 0;
            if (from_active) {
                auto active = active_colour(ctx, g);
                if (!active)
                    return json{{"colour", nullptr}, {"active", true},
                                {"count", 0}, {"moves", json::array()},
                                {"truncated", false}};
                colour = *active;
            }
            auto moves = from_active ? enumerate_moves_checked(ctx, g, colour)
                                     : enumerate_moves(g, colour);
            json listed = json::array();
            bool truncated = false;
            for (const auto& m : moves) {
                if (o.limit > 0 && static_cast<long long>(listed.size()) >= o.limit) {
                    truncated = true;
                    break;
                }
                listed.push_back(to_json(m));
            }
            return json{{"colour", colour},
                        {"active", from_active},
                        {"count", moves.size()},
                        {"moves", std::move(listed)},
                        {"truncated", truncated}};
        });
    });

    auto* sw_apply = sw_grp->add_subcommand("apply", "apply one move");
    sw_apply->fallthrough();
    sw_apply->add_option("--move", o.move_path, "move JSON file")->required();
    sw_apply->callback([&] {
        multigraph g = load_graph();
        switching_move m = move_from_json(load_json_file(o.move_path));
        json inputs{{"graph", o.graph_path}, {"move", to_json(m)}};
        r.exec("switch apply", std::move(inputs), [&] {
            return json{{"result", to_json(apply_move(g, m))}};
        });
    });

    auto* sw_rev = sw_grp->add_subcommand("reverse", "count reverse switchings");
    sw_rev->fallthrough();
    sw_rev->add_option("--colour", o.colour, "colour of the reversed moves")->required();
    sw_rev->callback([&] {
        multigraph g = load_graph();
        instance in{degree_sequence(g.degrees()), multiplicity_set::parse(o.j_text),
                    multiplicity_set::parse(o.jstar_text)};
        json inputs{{"graph", o.graph_path}, {"J", in.J.to_string()},
                    {"Jstar", in.Jstar.to_string()}, {"colour", o.colour}};
        r.exec("switch reverse", std::move(inputs), [&] {
            switch_context ctx(in.k, in.J, in.Jstar);
            auto found = reverse_search(ctx, g, o.colour);
            return json{{"colour", o.colour},
                        {"reverse_count", int_to_string(Int(found.matches.size()))},
                        {"pattern_matches", found.pattern_matches.size()},
                        {"nominal_b", rat_to_string(nominal_b(o.colour, ctx.k))}};
        });
    });

    // verify -------------------------------------------------------------------
    auto* ver_grp = app.add_subcommand("verify", "checkable certificates");
    ver_grp->require_subcommand(1);
    ver_grp->fallthrough();

    auto* v_t2 = ver_grp->add_subcommand("theorem2", "path inequality on a network");
    v_t2->fallthrough();
    v_t2->add_option("--network", o.network_path, "network JSON file with Y and Z")
        ->required();
    v_t2->callback([&] {
        network_document doc = network_document_from_json(load_json_file(o.network_path));
        json inputs{{"network", o.network_path}, {"Y", doc.Y}, {"Z", doc.Z}};
        r.exec("verify theorem2", std::move(inputs), [&] {
            auto cert = verify_bound(doc.net, doc.Y, doc.Z);
            return json{{"lhs", rat_to_string(cert.lhs)},
                        {"rhs", rat_to_string(cert.rhs)},
                        {"holds", cert.holds},
                        {"max_yz", rat_to_string(cert.max_yz)},
                        {"max_yy", rat_to_string(cert.max_yy)}};
        });
    });

    auto* v_sw = ver_grp->add_subcommand("switchings",
                                         "sampled forward/reverse soundness battery");
    v_sw->fallthrough();
    v_sw->add_option("--seed", o.seed, "RNG seed");
    auto* v_sw_reps = v_sw->add_option("--reps", o.reps, "pairings to sample (default 100)");
    v_sw->callback([&] {
        if (v_sw_reps->count() == 0) o.reps = 100;
        instance in = parse_instance(o);
        json inputs = echo_instance(in, o);
        inputs["reps"] = o.reps;
        r.exec("verify switchings", std::move(inputs),
               [&] { return run_verify_switchings(in, o, r); });
    });

    auto* v_sum = ver_grp->add_subcommand("summation",
                                          "class-weight summation identity");
    v_sum->fallthrough();
    v_sum->callback([&] {
        instance in = parse_instance(o);
        r.exec("verify summation", echo_instance(in, o),
               [&] { return run_verify_summation(in, o); });
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const error& e) {
        json err{{"error", json{{"name", e.name()}, {"message", e.what()}}}};
        std::cout << err.dump(o.compact ? -1 : 2) << "\n";
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }

    if (!r.ran) return 0;  // --help and friends
    double total_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t_start)
                          .count();
    json report{{"command", r.command},
                {"inputs", r.inputs},
                {"result", r.result},
                {"timings", json{{"run_ms", r.run_ms}, {"total_ms", total_ms}}}};
    if (r.seed_used) report["seed"] = *r.seed_used;
    std::cout << report.dump(o.compact ? -1 : 2) << "\n";
    return 0;
}
