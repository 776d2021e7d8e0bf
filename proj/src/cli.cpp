#include "pslab/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "pslab/experiments.hpp"
#include "pslab/preflib.hpp"
#include "pslab/threat.hpp"

namespace pslab {

namespace {

using nlohmann::json;

struct GlobalOpts {
    std::string output = "human";
    int jobs = 0;  // 0 = hardware concurrency
    SearchLimits limits;
    bool approx = false;

    int effective_jobs() const {
        if (jobs > 0) return jobs;
        unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : static_cast<int>(hw);
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write file: " + path);
    out << content;
}

ParsedInstance load_instance(const std::string& path) {
    return instance_from_json(read_file(path));
}

std::uint64_t fresh_seed() {
    std::random_device rd;
    std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    s ^= static_cast<std::uint64_t>(
        std::chrono::steady_clock::now().time_since_epoch().count());
    return s;
}

PreferenceRelation relation_from(const std::string& name) {
    if (name == "eu") return PreferenceRelation::EU;
    if (name == "dl") return PreferenceRelation::DL;
    throw DomainError("unknown relation: " + name + " (expected eu or dl)");
}

// Chooses the utilities a subcommand acts on. "instance" requires utilities in
// the file; "borda" derives them; "random" samples the Random model.
UtilityProfile resolve_utilities(const ParsedInstance& parsed, const std::string& mode,
                                 std::uint64_t seed, std::ostream& out) {
    if (mode == "instance") {
        if (!parsed.utilities) throw DomainError("instance file carries no utilities");
        return *parsed.utilities;
    }
    if (mode == "borda") return borda_utilities(parsed.instance);
    if (mode == "random") {
        out << "# utilities: random model, seed " << seed << "\n";
        return gen_random_utility_profile(parsed.instance, seed);
    }
    if (mode == "auto")
        return parsed.utilities ? *parsed.utilities : borda_utilities(parsed.instance);
    throw DomainError("unknown utility mode: " + mode);
}

json rational_json(const Rational& q, bool approx) {
    if (!approx) return q.to_string();
    json j;
    j["exact"] = q.to_string();
    j["approx"] = q.to_double();
    return j;
}

json row_json(const std::vector<Rational>& row, bool approx) {
    json arr = json::array();
    for (const Rational& q : row) arr.push_back(rational_json(q, approx));
    return arr;
}

json assignment_json(const Assignment& a, bool approx) {
    json arr = json::array();
    for (int i = 0; i < a.n; ++i) arr.push_back(row_json(a.row(i), approx));
    return arr;
}

void print_assignment_human(const Assignment& a, std::ostream& out, bool approx) {
    for (int i = 0; i < a.n; ++i) {
        out << "agent " << (i + 1) << ":";
        for (int j = 0; j < a.m; ++j) {
            out << " " << a.at(i, j).to_string();
            if (approx) {
                std::ostringstream tmp;
                tmp << " (" << a.at(i, j).to_double() << ")";
                out << tmp.str();
            }
        }
        out << "\n";
    }
}

LinearOrder parse_order_arg(const std::string& text, int m) {
    LinearOrder order;
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) {
        std::size_t pos = part.find_first_not_of(" \th");
        std::string digits = part.substr(pos == std::string::npos ? part.size() : pos);
        try {
            order.ranking.push_back(std::stoi(digits) - 1);
        } catch (const std::exception&) {
            throw DomainError("bad house id in order: '" + part + "'");
        }
    }
    if (!order.is_permutation_of(m))
        throw DomainError("order '" + text + "' does not rank houses 1.." + std::to_string(m));
    return order;
}

Profile parse_profile_arg(const std::string& text, int n, int m) {
    Profile p;
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, ';')) p.push_back(parse_order_arg(part, m));
    if (static_cast<int>(p.size()) != n)
        throw DomainError("reported profile must list all " + std::to_string(n) + " agents");
    return p;
}

// ---------------------------------------------------------------- selfcheck

int cmd_selfcheck(std::ostream& out) {
    int failures = 0;
    auto check = [&](const std::string& name, bool ok) {
        out << (ok ? "PASS" : "FAIL") << ": " << name << "\n";
        if (!ok) ++failures;
    };

    // The worked three-agent example: truthful run and the h2-first misreport.
    Instance example;
    example.n = 3;
    example.m = 3;
    example.profile = {LinearOrder{{0, 1, 2}}, LinearOrder{{1, 0, 2}}, LinearOrder{{1, 2, 0}}};
    {
        Assignment a = run_ps(example).assignment;
        Assignment want(3, 3);
        auto r = [](int num, int den) { return Rational(BigInt(num), BigInt(den)); };
        want.cells = {r(3, 4), r(0, 1), r(1, 4), r(1, 4), r(1, 2),
                      r(1, 4), r(0, 1), r(1, 2), r(1, 2)};
        check("ps on the worked example (truthful)", a == want);

        Instance misreport = example;
        misreport.profile[0] = LinearOrder{{1, 0, 2}};
        Assignment b = run_ps(misreport).assignment;
        Assignment want2(3, 3);
        want2.cells = {r(1, 2), r(1, 3), r(1, 6), r(1, 2), r(1, 3),
                       r(1, 6), r(0, 1), r(1, 3), r(2, 3)};
        check("ps on the worked example (misreport)", b == want2);

        check("truthful profile is a DL equilibrium",
              verify_pne(example, PreferenceRelation::DL, nullptr, example.profile).is_pne);
        UtilityProfile u(3, 3);
        u.cells = {Rational(7), Rational(6), Rational(0), Rational(2), Rational(3),
                   Rational(1), Rational(1), Rational(3), Rational(2)};
        PneVerdict v = verify_pne(example, PreferenceRelation::EU, &u, example.profile);
        check("truthful profile is not an EU equilibrium",
              !v.is_pne && v.witness && v.witness->agent == 0);
    }

    // Two-agent, five-house best-response cycle with Borda utilities.
    {
        Instance cyc;
        cyc.n = 2;
        cyc.m = 5;
        cyc.profile = {LinearOrder{{1, 2, 4, 3, 0}}, LinearOrder{{4, 2, 3, 0, 1}}};
        UtilityProfile u = borda_utilities(cyc);
        std::vector<std::pair<int, LinearOrder>> steps = {
            {0, LinearOrder{{2, 3, 1, 0, 4}}},
            {1, LinearOrder{{2, 3, 4, 0, 1}}},
            {0, LinearOrder{{2, 4, 1, 0, 3}}},
            {1, LinearOrder{{4, 2, 3, 0, 1}}},
            {0, LinearOrder{{2, 3, 1, 0, 4}}},
        };
        ReplayResult rep = replay_path(cyc, u, steps);
        bool ok = rep.repeats_step && *rep.repeats_step == 1;
        for (const ReplayStep& st : rep.steps)
            ok = ok && st.eu_is_best_response && st.eu_strictly_improves &&
                 st.dl_is_best_response && st.dl_strictly_improves;
        check("five-step best-response cycle replays", ok);
    }

    // Threat profile guarantees on a fixed pair of orders.
    {
        LinearOrder p1{{0, 1, 2, 3}};
        LinearOrder p2{{2, 0, 3, 1}};
        std::vector<UtilityProfile> samples;
        Instance tmp;
        tmp.n = 2;
        tmp.m = 4;
        tmp.profile = {p1, p2};
        for (std::uint64_t s = 1; s <= 3; ++s)
            samples.push_back(gen_random_utility_profile(tmp, s));
        ThreatCheckReport rep = check_threat_guarantees(p1, p2, samples);
        check("threat profile guarantees hold", rep.all_hold());
    }

    out << (failures == 0 ? "selfcheck: all good\n" : "selfcheck: FAILURES\n");
    return failures == 0 ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact toolkit for the probabilistic serial assignment rule"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalOpts g;
    if (const char* env = std::getenv("PSLAB_BOUND")) {
        try {
            g.limits.profile_budget = std::stoull(env);
        } catch (const std::exception&) {
            err << "error: PSLAB_BOUND is not a number\n";
            return 2;
        }
    }
    app.add_option("--output", g.output, "output mode")
        ->check(CLI::IsMember({"human", "json", "csv"}));
    app.add_option("--jobs", g.jobs, "worker threads (0 = all cores)");
    app.add_option("--bound", g.limits.profile_budget, "profile enumeration budget");
    app.add_option("--max-enum-m", g.limits.max_enum_m, "per-agent report enumeration cap");
    app.add_flag("--approx", g.approx, "add decimal approximations to exact values");

    // ps
    auto* ps_cmd = app.add_subcommand("ps", "run the eating rule on an instance");
    std::string ps_instance;
    bool ps_trace = false;
    ps_cmd->add_option("--instance", ps_instance, "instance JSON file")->required();
    ps_cmd->add_flag("--trace", ps_trace, "print the eating timeline");

    // best-response
    auto* br_cmd = app.add_subcommand("best-response", "exhaustive best response for one agent");
    std::string br_instance, br_relation = "eu", br_utilities = "auto";
    int br_agent = 1;
    std::uint64_t br_seed = 0;
    bool br_seed_set = false;
    br_cmd->add_option("--instance", br_instance)->required();
    br_cmd->add_option("--agent", br_agent, "1-based agent index")->required();
    br_cmd->add_option("--relation", br_relation)->check(CLI::IsMember({"eu", "dl"}));
    br_cmd->add_option("--utilities", br_utilities)
        ->check(CLI::IsMember({"auto", "instance", "borda", "random"}));
    br_cmd->add_option("--seed", br_seed)->each([&](const std::string&) { br_seed_set = true; });

    // dynamics
    auto* dyn_cmd = app.add_subcommand("dynamics", "best-response dynamics with cycle detection");
    std::string dyn_instance, dyn_relation = "eu", dyn_policy = "round-robin",
                dyn_utilities = "auto";
    int dyn_max_steps = 100;
    std::uint64_t dyn_seed = 0;
    bool dyn_seed_set = false;
    dyn_cmd->add_option("--instance", dyn_instance)->required();
    dyn_cmd->add_option("--relation", dyn_relation)->check(CLI::IsMember({"eu", "dl"}));
    dyn_cmd->add_option("--policy", dyn_policy)
        ->check(CLI::IsMember({"round-robin", "first-improving"}));
    dyn_cmd->add_option("--max-steps", dyn_max_steps);
    dyn_cmd->add_option("--utilities", dyn_utilities)
        ->check(CLI::IsMember({"auto", "instance", "borda", "random"}));
    dyn_cmd->add_option("--seed", dyn_seed)->each([&](const std::string&) { dyn_seed_set = true; });

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "check a reported profile for equilibrium");
    std::string verify_instance, verify_relation = "eu", verify_reported, verify_utilities = "auto";
    verify_cmd->add_option("--instance", verify_instance)->required();
    verify_cmd->add_option("--relation", verify_relation)->check(CLI::IsMember({"eu", "dl"}));
    verify_cmd->add_option("--reported", verify_reported,
                           "reported profile \"2,1,3;1,2,3;...\" (1-based houses; default truthful)");
    verify_cmd->add_option("--utilities", verify_utilities)
        ->check(CLI::IsMember({"auto", "instance", "borda"}));

    // enumerate
    auto* enum_cmd = app.add_subcommand("enumerate", "scan all profiles for equilibria");
    std::string enum_instance, enum_relation = "eu", enum_utilities = "auto";
    bool enum_all = false;
    enum_cmd->add_option("--instance", enum_instance)->required();
    enum_cmd->add_option("--relation", enum_relation)->check(CLI::IsMember({"eu", "dl"}));
    enum_cmd->add_option("--utilities", enum_utilities)
        ->check(CLI::IsMember({"auto", "instance", "borda"}));
    enum_cmd->add_flag("--all", enum_all, "stream every profile, not only equilibria");

    // spne
    auto* spne_cmd = app.add_subcommand("spne", "equilibrium via the discretized eating game");
    std::string spne_instance, spne_relation = "eu", spne_quantum, spne_utilities = "auto";
    spne_cmd->add_option("--instance", spne_instance)->required();
    spne_cmd->add_option("--relation", spne_relation)->check(CLI::IsMember({"eu", "dl"}));
    spne_cmd->add_option("--quantum", spne_quantum, "override, e.g. 1/4");
    spne_cmd->add_option("--utilities", spne_utilities)
        ->check(CLI::IsMember({"auto", "instance", "borda"}));

    // threat
    auto* threat_cmd = app.add_subcommand("threat", "two-agent threat profile");
    std::string threat_instance;
    bool threat_check = false;
    int threat_samples = 3;
    std::uint64_t threat_seed = 0;
    bool threat_seed_set = false;
    threat_cmd->add_option("--instance", threat_instance)->required();
    threat_cmd->add_flag("--check", threat_check, "verify the construction's guarantees");
    threat_cmd->add_option("--samples", threat_samples, "utility profiles sampled for --check");
    threat_cmd->add_option("--seed", threat_seed)->each([&](const std::string&) {
        threat_seed_set = true;
    });

    // gen
    auto* gen_cmd = app.add_subcommand("gen", "sample instances from a preference culture");
    std::string gen_model = "ic", gen_phi = "1/2", gen_out;
    int gen_n = 0, gen_m = 0, gen_count = 1;
    std::uint64_t gen_seed = 0;
    bool gen_seed_set = false, gen_utilities = false;
    gen_cmd->add_option("--model", gen_model)
        ->check(CLI::IsMember({"ic", "sp-ic", "mallows", "urn"}));
    gen_cmd->add_option("--n", gen_n)->required();
    gen_cmd->add_option("--m", gen_m)->required();
    gen_cmd->add_option("--seed", gen_seed)->each([&](const std::string&) { gen_seed_set = true; });
    gen_cmd->add_option("--phi", gen_phi, "Mallows dispersion, e.g. 1/2");
    gen_cmd->add_option("--count", gen_count, "instances to generate");
    gen_cmd->add_option("--out", gen_out, "output directory (default: stdout)");
    gen_cmd->add_flag("--utilities", gen_utilities, "attach Random-model utilities");

    // import
    auto* import_cmd = app.add_subcommand("import", "convert PrefLib SOC data to instances");
    std::string import_soc, import_out;
    bool import_legacy = false, import_render = false;
    int import_n = 0, import_m = 0;
    std::uint64_t import_seed = 0;
    bool import_seed_set = false;
    import_cmd->add_option("--soc", import_soc, "SOC file")->required();
    import_cmd->add_flag("--legacy", import_legacy, "accept the pre-2020 header layout");
    import_cmd->add_flag("--render", import_render, "print the normative SOC form and exit");
    import_cmd->add_option("--n", import_n, "agents to sample");
    import_cmd->add_option("--m", import_m, "houses to sample");
    import_cmd->add_option("--seed", import_seed)->each([&](const std::string&) {
        import_seed_set = true;
    });
    import_cmd->add_option("--out", import_out, "output file (default: stdout)");

    // experiment
    auto* exp_cmd = app.add_subcommand("experiment", "welfare-at-equilibrium experiment grid");
    std::string exp_config, exp_out = ".", exp_phi = "1/2";
    std::uint64_t exp_seed = 0;
    bool exp_seed_set = false;
    exp_cmd->add_option("--config", exp_config, "cell list: model,n,m,samples per line")
        ->required();
    exp_cmd->add_option("--out", exp_out, "output directory");
    exp_cmd->add_option("--seed", exp_seed)->each([&](const std::string&) { exp_seed_set = true; });
    exp_cmd->add_option("--phi", exp_phi, "Mallows dispersion");

    // selfcheck
    app.add_subcommand("selfcheck", "run the embedded golden suite");

    std::vector<std::string> argv_store;
    argv_store.push_back("pslab");
    for (const std::string& a : args) argv_store.push_back(a);
    std::vector<const char*> argv;
    for (const std::string& a : argv_store) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand("selfcheck")) return cmd_selfcheck(out);

        if (app.got_subcommand(ps_cmd)) {
            ParsedInstance parsed = load_instance(ps_instance);
            PsResult res = run_ps(parsed.instance);
            if (g.output == "json") {
                json j;
                j["assignment"] = assignment_json(res.assignment, g.approx);
                if (ps_trace) {
                    json events = json::array();
                    for (const EatingEvent& ev : res.trace.events) {
                        json je;
                        je["t"] = ev.time.to_string();
                        je["finished"] = json::array();
                        for (int h : ev.houses_finished) je["finished"].push_back(house_name(h));
                        events.push_back(std::move(je));
                    }
                    j["events"] = std::move(events);
                    j["final_time"] = res.trace.final_time.to_string();
                }
                out << j.dump(2) << "\n";
            } else {
                print_assignment_human(res.assignment, out, g.approx);
                if (ps_trace) {
                    for (const EatingEvent& ev : res.trace.events) {
                        out << "t=" << ev.time.to_string() << " finished={";
                        for (std::size_t k = 0; k < ev.houses_finished.size(); ++k) {
                            if (k) out << ",";
                            out << house_name(ev.houses_finished[k]);
                        }
                        out << "}\n";
                    }
                }
            }
            return 0;
        }

        if (app.got_subcommand(br_cmd)) {
            ParsedInstance parsed = load_instance(br_instance);
            if (br_agent < 1 || br_agent > parsed.instance.n)
                throw DomainError("agent index out of range");
            if (!br_seed_set) {
                br_seed = fresh_seed();
                if (br_utilities == "random") out << "# seed: " << br_seed << "\n";
            }
            BestResponse br;
            PreferenceRelation rel = relation_from(br_relation);
            if (rel == PreferenceRelation::EU) {
                UtilityProfile u = resolve_utilities(parsed, br_utilities, br_seed, out);
                br = eu_best_response(parsed.instance, u, br_agent - 1, g.limits);
            } else {
                br = dl_best_response(parsed.instance, br_agent - 1, g.limits);
            }
            if (g.output == "json") {
                json j;
                j["agent"] = br_agent;
                j["relation"] = br_relation;
                j["order"] = br.order.to_string();
                j["row"] = row_json(br.row, g.approx);
                if (rel == PreferenceRelation::EU) j["value"] = rational_json(br.value, g.approx);
                j["improves"] = br.improves;
                out << j.dump(2) << "\n";
            } else {
                out << "agent " << br_agent << " best " << br_relation
                    << " response: " << br.order.to_string() << "\n";
                if (rel == PreferenceRelation::EU) {
                    out << "value: " << br.value.to_string();
                    if (g.approx) out << " (" << br.value.to_double() << ")";
                    out << "\n";
                }
                out << "row:";
                for (const Rational& q : br.row) out << " " << q.to_string();
                out << "\n" << (br.improves ? "improves on the truthful report\n"
                                             : "truthful report is already optimal\n");
            }
            return 0;
        }

        if (app.got_subcommand(dyn_cmd)) {
            ParsedInstance parsed = load_instance(dyn_instance);
            if (!dyn_seed_set) {
                dyn_seed = fresh_seed();
                if (dyn_utilities == "random") out << "# seed: " << dyn_seed << "\n";
            }
            PreferenceRelation rel = relation_from(dyn_relation);
            UtilityProfile u;
            const UtilityProfile* up = nullptr;
            if (rel == PreferenceRelation::EU) {
                u = resolve_utilities(parsed, dyn_utilities, dyn_seed, out);
                up = &u;
            }
            MoverPolicy policy = dyn_policy == "round-robin" ? MoverPolicy::RoundRobin
                                                             : MoverPolicy::FirstImproving;
            DynamicsOutcome res =
                run_dynamics(parsed.instance, up, policy, rel, dyn_max_steps, g.limits);
            const char* terminal = res.kind == DynamicsOutcome::Kind::FixedPoint ? "fixed-point"
                                   : res.kind == DynamicsOutcome::Kind::Cycle   ? "cycle"
                                                                                : "steps-exhausted";
            if (g.output == "json") {
                json j;
                j["steps"] = res.trajectory.size() - 1;
                j["terminal"] = terminal;
                if (res.kind == DynamicsOutcome::Kind::Cycle) {
                    j["cycle_start"] = res.cycle_start;
                    j["cycle_period"] = res.cycle_period;
                }
                json traj = json::array();
                for (const Profile& p : res.trajectory) traj.push_back(profile_to_string(p));
                j["trajectory"] = std::move(traj);
                out << j.dump(2) << "\n";
            } else {
                for (std::size_t k = 0; k < res.trajectory.size(); ++k)
                    out << k << ": " << profile_to_string(res.trajectory[k]) << "\n";
                out << terminal;
                if (res.kind == DynamicsOutcome::Kind::Cycle)
                    out << " (start " << res.cycle_start << ", period " << res.cycle_period << ")";
                out << " after " << res.trajectory.size() - 1 << " step(s)\n";
            }
            return 0;
        }

        if (app.got_subcommand(verify_cmd)) {
            ParsedInstance parsed = load_instance(verify_instance);
            PreferenceRelation rel = relation_from(verify_relation);
            Profile reported = verify_reported.empty()
                                   ? parsed.instance.profile
                                   : parse_profile_arg(verify_reported, parsed.instance.n,
                                                       parsed.instance.m);
            UtilityProfile u;
            const UtilityProfile* up = nullptr;
            if (rel == PreferenceRelation::EU) {
                u = resolve_utilities(parsed, verify_utilities, 0, out);
                up = &u;
            }
            PneVerdict v = verify_pne(parsed.instance, rel, up, reported, g.limits);
            if (g.output == "json") {
                json j;
                j["relation"] = verify_relation;
                j["reported"] = profile_to_string(reported);
                j["is_pne"] = v.is_pne;
                if (v.witness) {
                    json w;
                    w["agent"] = v.witness->agent + 1;
                    w["report"] = v.witness->report.to_string();
                    w["old_value"] = v.witness->old_value;
                    w["new_value"] = v.witness->new_value;
                    j["witness"] = std::move(w);
                }
                out << j.dump(2) << "\n";
            } else {
                out << "reported: " << profile_to_string(reported) << "\n";
                if (v.is_pne) {
                    out << "equilibrium under " << verify_relation << "\n";
                } else {
                    out << "not an equilibrium under " << verify_relation << ": agent "
                        << v.witness->agent + 1 << " gains by reporting "
                        << v.witness->report.to_string() << " (" << v.witness->old_value
                        << " -> " << v.witness->new_value << ")\n";
                }
            }
            return 0;
        }

        if (app.got_subcommand(enum_cmd)) {
            ParsedInstance parsed = load_instance(enum_instance);
            PreferenceRelation rel = relation_from(enum_relation);
            UtilityProfile u = resolve_utilities(parsed, enum_utilities, 0, out);
            Rational sw_truthful = social_welfare(run_ps(parsed.instance).assignment, u);
            WelfareReport report;
            report.sw_truthful = sw_truthful;
            out << "profile_id,is_pne,sw,class\n";
            if (enum_all) {
                scan_profiles(parsed.instance, rel, u, g.effective_jobs(), g.limits,
                              [&](std::uint64_t id, bool is_pne, const Rational& sw) {
                                  WelfareRecord rec = report.classify(id, sw);
                                  out << id << "," << (is_pne ? 1 : 0) << "," << sw.to_string()
                                      << "," << welfare_class_name(rec.cls) << "\n";
                              });
            } else {
                EnumerateResult res =
                    enumerate_pne(parsed.instance, rel, u, g.effective_jobs(), g.limits);
                for (const PneEntry& e : res.equilibria) {
                    WelfareRecord rec = report.classify(e.profile_id, e.social_welfare);
                    out << e.profile_id << ",1," << e.social_welfare.to_string() << ","
                        << welfare_class_name(rec.cls) << "\n";
                }
            }
            return 0;
        }

        if (app.got_subcommand(spne_cmd)) {
            ParsedInstance parsed = load_instance(spne_instance);
            PreferenceRelation rel = relation_from(spne_relation);
            UtilityProfile u;
            const UtilityProfile* up = nullptr;
            if (rel == PreferenceRelation::EU) {
                u = resolve_utilities(parsed, spne_utilities, 0, out);
                up = &u;
            }
            std::optional<Rational> quantum;
            if (!spne_quantum.empty()) quantum = Rational::parse(spne_quantum);
            SpneResult res = spne_construct(parsed.instance, rel, up, quantum, g.limits);
            if (g.output == "json") {
                json j;
                j["profile"] = profile_to_string(res.profile);
                j["quantum"] = res.quantum.to_string();
                j["depth"] = res.depth;
                j["states"] = res.states_expanded;
                j["is_pne"] = res.verdict.is_pne;
                j["allocation"] = assignment_json(res.path_allocation, g.approx);
                out << j.dump(2) << "\n";
            } else {
                out << "profile: " << profile_to_string(res.profile) << "\n"
                    << "quantum " << res.quantum.to_string() << ", " << res.depth
                    << " sub-stages, " << res.states_expanded << " states\n"
                    << (res.verdict.is_pne ? "verified as an equilibrium\n"
                                           : "NOT verified as an equilibrium\n");
                print_assignment_human(res.path_allocation, out, g.approx);
            }
            return 0;
        }

        if (app.got_subcommand(threat_cmd)) {
            ParsedInstance parsed = load_instance(threat_instance);
            if (parsed.instance.n != 2)
                throw DomainError("threat: the construction is defined for exactly 2 agents");
            auto [q1, q2] =
                threat_profile(parsed.instance.profile[0], parsed.instance.profile[1]);
            json j;
            j["q1"] = q1.to_string();
            j["q2"] = q2.to_string();
            ThreatCheckReport rep;
            if (threat_check) {
                if (!threat_seed_set) {
                    threat_seed = fresh_seed();
                    out << "# seed: " << threat_seed << "\n";
                }
                std::vector<UtilityProfile> samples;
                for (int s = 0; s < threat_samples; ++s)
                    samples.push_back(gen_random_utility_profile(
                        parsed.instance, derive_seed(threat_seed, static_cast<std::uint64_t>(s))));
                rep = check_threat_guarantees(parsed.instance.profile[0],
                                              parsed.instance.profile[1], samples, g.limits);
                j["same_assignment"] = rep.same_assignment;
                j["dl_equilibrium"] = rep.dl_equilibrium;
                j["eu_profiles_checked"] = rep.eu_profiles_checked;
                j["eu_failures"] = rep.eu_failures;
                j["all_hold"] = rep.all_hold();
            }
            if (g.output == "json") {
                out << j.dump(2) << "\n";
            } else {
                out << "Q1: " << q1.to_string() << "\nQ2: " << q2.to_string() << "\n";
                if (threat_check) {
                    out << "same assignment as truthful: " << (rep.same_assignment ? "yes" : "NO")
                        << "\nDL equilibrium: " << (rep.dl_equilibrium ? "yes" : "NO")
                        << "\nEU equilibrium: " << (rep.eu_profiles_checked - rep.eu_failures)
                        << "/" << rep.eu_profiles_checked << " sampled utility profiles\n";
                }
            }
            return 0;
        }

        if (app.got_subcommand(gen_cmd)) {
            if (!gen_seed_set) {
                gen_seed = fresh_seed();
                out << "# seed: " << gen_seed << "\n";
            }
            CultureConfig cc;
            cc.model = culture_from_name(gen_model);
            cc.n = gen_n;
            cc.m = gen_m;
            cc.mallows_phi = Rational::parse(gen_phi);
            if (!gen_out.empty()) std::filesystem::create_directories(gen_out);
            for (int k = 0; k < gen_count; ++k) {
                cc.seed = derive_seed(gen_seed, static_cast<std::uint64_t>(k));
                Instance inst = generate(cc);
                std::string text;
                if (gen_utilities) {
                    UtilityProfile u = gen_random_utility_profile(
                        inst, derive_seed(cc.seed, 0x75746c73ull));
                    text = instance_to_json(inst, &u);
                } else {
                    text = instance_to_json(inst);
                }
                if (gen_out.empty()) {
                    out << text;
                } else {
                    write_file(gen_out + "/instance_" + std::to_string(k) + ".json", text);
                }
            }
            if (!gen_out.empty())
                out << "wrote " << gen_count << " instance(s) to " << gen_out << "\n";
            return 0;
        }

        if (app.got_subcommand(import_cmd)) {
            PrefLibDocument doc = parse_soc(read_file(import_soc), import_legacy);
            if (import_render) {
                out << render_soc(doc);
                return 0;
            }
            if (import_n < 1 || import_m < 1)
                throw DomainError("import: need --n and --m to sample an instance");
            if (!import_seed_set) {
                import_seed = fresh_seed();
                out << "# seed: " << import_seed << "\n";
            }
            Instance inst = sample_instance(doc, import_n, import_m, import_seed);
            std::string text = instance_to_json(inst);
            if (import_out.empty()) {
                out << text;
            } else {
                write_file(import_out, text);
                out << "wrote " << import_out << "\n";
            }
            return 0;
        }

        if (app.got_subcommand(exp_cmd)) {
            if (!exp_seed_set) {
                exp_seed = fresh_seed();
                out << "# seed: " << exp_seed << "\n";
            }
            ExperimentConfig config;
            config.cells = parse_experiment_cells(read_file(exp_config));
            config.root_seed = exp_seed;
            config.jobs = g.effective_jobs();
            config.mallows_phi = Rational::parse(exp_phi);
            config.limits = g.limits;
            ExperimentResult res = run_experiment(config);
            std::filesystem::create_directories(exp_out);
            write_file(exp_out + "/per_sample.csv", res.per_sample_csv);
            write_file(exp_out + "/classification.csv", classification_csv(res.cells));
            write_file(exp_out + "/extremes.csv", extremes_csv(res.cells));
            for (const CellSummary& c : res.cells) {
                out << culture_name(c.model) << " n=" << c.n << " m=" << c.m << ": "
                    << c.samples_done << " samples, mean #pne "
                    << c.mean_pne().to_decimal(4) << ", frac equal "
                    << c.frac(c.total_equal).to_decimal(4) << ", wall "
                    << c.wall_seconds << "s";
                if (c.samples_skipped)
                    out << " (" << c.samples_skipped << " skipped: budget)";
                out << "\n";
            }
            out << "wrote per_sample.csv, classification.csv, extremes.csv to " << exp_out
                << "\n";
            return 0;
        }
    } catch (const BoundExceeded& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

}  // namespace pslab
