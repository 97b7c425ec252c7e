#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "rce/harness.hpp"
#include "rce/serialize.hpp"

namespace {

using namespace rce;

constexpr const char* kTool = "rcekit 0.1.0";

Json scenario_to_json(const Scenario& sc) {
    return Json{{"mode", sc.mode},
                {"seed", sc.seed},
                {"num_seeds", sc.num_seeds},
                {"dims", {{"deg_lo", sc.dims.deg_lo}, {"deg_hi", sc.dims.deg_hi},
                          {"max_dim", sc.dims.max_dim}}},
                {"window", sc.window},
                {"counit_window", sc.counit_window},
                {"coker_depth", sc.coker_depth},
                {"ccr_cap", sc.ccr_cap},
                {"lattice", lattice_scenario_to_json(sc.lattice)},
                {"only", sc.only}};
}

Scenario scenario_from_json(const Json& j) {
    Scenario sc;
    if (j.count("mode")) sc.mode = j.at("mode").get<std::string>();
    if (j.count("seed")) sc.seed = j.at("seed").get<unsigned>();
    if (j.count("num_seeds")) sc.num_seeds = j.at("num_seeds").get<int>();
    if (j.count("dims")) {
        const Json& d = j.at("dims");
        if (d.count("deg_lo")) sc.dims.deg_lo = d.at("deg_lo").get<int>();
        if (d.count("deg_hi")) sc.dims.deg_hi = d.at("deg_hi").get<int>();
        if (d.count("max_dim")) sc.dims.max_dim = d.at("max_dim").get<int>();
    }
    if (j.count("window")) sc.window = j.at("window").get<int>();
    if (j.count("counit_window")) sc.counit_window = j.at("counit_window").get<int>();
    if (j.count("coker_depth")) sc.coker_depth = j.at("coker_depth").get<int>();
    if (j.count("ccr_cap")) sc.ccr_cap = j.at("ccr_cap").get<int>();
    if (j.count("lattice")) sc.lattice = lattice_scenario_from_json(j.at("lattice"));
    if (j.count("only")) sc.only = j.at("only").get<std::vector<std::string>>();
    if (sc.mode != "abstract" && sc.mode != "lattice" && sc.mode != "both")
        throw std::invalid_argument("scenario: mode must be abstract | lattice | both");
    return sc;
}

int run_verify(const std::string& scenario_path, const std::string& report_path,
               const std::string& only, unsigned seed_override, bool has_seed, int jobs) {
    Scenario sc;
    Json scj = scenario_to_json(sc);
    if (!scenario_path.empty()) {
        std::ifstream in(scenario_path);
        if (!in) {
            std::cerr << "cannot open scenario file: " << scenario_path << "\n";
            return 2;
        }
        try {
            scj = Json::parse(in);
            sc = scenario_from_json(scj);
        } catch (const std::exception& e) {
            std::cerr << "scenario parse error: " << e.what() << "\n";
            return 2;
        }
    }
    if (has_seed) {
        sc.seed = seed_override;
        scj["seed"] = seed_override;
    }
    if (!only.empty()) {
        sc.only.clear();
        std::stringstream ss(only);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) sc.only.push_back(item);
        auto known = available_checks();
        for (const auto& o : sc.only)
            if (std::find(known.begin(), known.end(), o) == known.end()) {
                std::cerr << "unknown check: " << o << "\n";
                return 2;
            }
        scj["only"] = sc.only;
    }
    sc.jobs = jobs;

    Report rep = run_scenario(sc);

    Json checks = Json::array();
    for (const auto& e : rep.entries) {
        std::cout << (e.pass ? "PASS" : "FAIL") << "  " << e.name
                  << (e.witness.empty() ? "" : "  [" + e.witness + "]") << "\n";
        checks.push_back({{"name", e.name},
                          {"anchor", e.anchor},
                          {"pass", e.pass},
                          {"witness", e.witness}});
    }
    Json hashable{{"schema", "rcekit-report/1"},
                  {"tool", kTool},
                  {"scenario_hash", json_hash(scj)},
                  {"verdict", rep.all_pass ? "pass" : "fail"},
                  {"checks", checks}};
    Json out = hashable;
    out["report_hash"] = json_hash(hashable);
    // timing lives outside the hashed payload
    Json timing = Json::array();
    for (const auto& e : rep.entries) timing.push_back({{"name", e.name}, {"seconds", e.seconds}});
    out["timing"] = timing;
    out["timestamp"] = static_cast<long long>(
        std::chrono::duration_cast<std::chrono::seconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count());

    if (!report_path.empty()) {
        std::ofstream of(report_path);
        if (!of) {
            std::cerr << "cannot write report file: " << report_path << "\n";
            return 2;
        }
        of << out.dump(2) << "\n";
    }
    std::cout << (rep.all_pass ? "verdict: pass" : "verdict: fail") << "\n";
    return rep.all_pass ? 0 : 1;
}

int run_dump(const std::string& id, const std::string& out_path, unsigned seed) {
    Json out;
    if (id == "diagram") {
        out = poisson_diagram_to_json(generate_diagram(seed));
    } else if (id == "rce-lin") {
        PoissonRceDiagram pd = generate_diagram(seed);
        // matrix of the level shift on window symbols (levels -1..2)
        std::vector<DerivedSymbol> syms;
        for (int n = -1; n <= 2; ++n)
            for (Obj o : kObjects) {
                const ComplexPtr& c = pd.d.at(o);
                for (int deg : c->degrees())
                    for (int i = 0; i < c->dim(deg); ++i) syms.push_back(node_symbol(n, o, deg, i));
            }
        std::map<DerivedSymbol, int> index;
        for (int i = 0; i < static_cast<int>(syms.size()); ++i) index[syms[i]] = i;
        Json rows = Json::array();
        for (int i = 0; i < static_cast<int>(syms.size()); ++i) {
            DerivedElement e = rce_lin(DerivedElement{{syms[i], Rational(1)}}, 1);
            for (const auto& [s, c] : e) {
                auto it = index.find(s);
                if (it != index.end()) rows.push_back({it->second, i, c.str()});
            }
        }
        out = Json{{"symbols", static_cast<int>(syms.size())}, {"entries", rows}};
    } else if (id == "tau-l") {
        PoissonRceDiagram pd = generate_diagram(seed);
        ZigzagContext ctx = ZigzagContext::build(pd.d);
        Json rows = Json::array();
        std::vector<DerivedSymbol> syms;
        for (int n = -1; n <= 1; ++n)
            for (Obj o : kObjects) {
                const ComplexPtr& c = pd.d.at(o);
                for (int deg : c->degrees())
                    for (int i = 0; i < c->dim(deg); ++i) syms.push_back(node_symbol(n, o, deg, i));
            }
        for (size_t i = 0; i < syms.size(); ++i)
            for (size_t j = 0; j < syms.size(); ++j) {
                Rational v = tau_L_eval(ctx, pd, syms[i], syms[j]);
                if (!v.is_zero())
                    rows.push_back({static_cast<int>(i), static_cast<int>(j), v.str()});
            }
        out = Json{{"symbols", static_cast<int>(syms.size())}, {"entries", rows}};
    } else if (id == "scenario") {
        Scenario sc;
        sc.seed = seed;
        out = scenario_to_json(sc);
    } else {
        std::cerr << "unknown artifact id: " << id
                  << " (known: diagram, rce-lin, tau-l, scenario)\n";
        return 2;
    }
    std::ofstream of(out_path);
    if (!of) {
        std::cerr << "cannot write: " << out_path << "\n";
        return 2;
    }
    of << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification harness for rectified relative Cauchy evolution"};
    app.require_subcommand(1);

    int default_jobs = 1;
    if (const char* env = std::getenv("RCEKIT_JOBS")) default_jobs = std::max(1, std::atoi(env));

    std::string scenario_path, report_path, only;
    unsigned seed = 1;
    bool has_seed = false;
    int jobs = default_jobs;

    CLI::App* verify = app.add_subcommand("verify", "run the selected check suites");
    verify->add_option("--scenario", scenario_path, "scenario JSON file");
    verify->add_option("--report", report_path, "report output file");
    verify->add_option("--only", only, "comma-separated check names");
    verify->add_option("--seed", seed, "seed override")->each([&](const std::string&) {
        has_seed = true;
    });
    verify->add_option("--jobs", jobs, "concurrent checks");

    std::string dump_id, dump_out;
    unsigned dump_seed = 1;
    CLI::App* dump = app.add_subcommand("dump", "write an artifact snapshot");
    dump->add_option("--id", dump_id, "artifact id")->required();
    dump->add_option("--out", dump_out, "output file")->required();
    dump->add_option("--seed", dump_seed, "generator seed");

    unsigned gen_seed = 1;
    std::string gen_out;
    CLI::App* gen = app.add_subcommand("gen", "generate a seeded diagram");
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--out", gen_out, "output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) return run_verify(scenario_path, report_path, only, seed, has_seed, jobs);
        if (dump->parsed()) return run_dump(dump_id, dump_out, dump_seed);
        if (gen->parsed()) {
            Json j = poisson_diagram_to_json(generate_diagram(gen_seed));
            std::ofstream of(gen_out);
            if (!of) {
                std::cerr << "cannot write: " << gen_out << "\n";
                return 2;
            }
            of << j.dump(2) << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
