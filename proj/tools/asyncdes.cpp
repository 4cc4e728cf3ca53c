// asyncdes: explore, reduce and verify the asynchronous DES networks.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "asyncdes/checks.hpp"
#include "asyncdes/scenario.hpp"

using namespace asyncdes;

namespace {

constexpr int kUsage = 2;
constexpr int kFail = 1;
constexpr int kInternal = 3;

struct ModelFlags {
    std::string domain = "abstract";
    bool tau_on_join = false;
    bool sequential_sboxes = false;
    bool closed = false;

    void add(CLI::App* app, bool with_closed) {
        app->add_option("--domain", domain, "bit domain")->check(CLI::IsMember({"abstract", "concrete"}));
        app->add_flag("--tau-on-join", tau_on_join, "internal step after every input join");
        app->add_flag("--sequential-sboxes", sequential_sboxes, "feed and drain the S-boxes in index order");
        if (with_closed) app->add_flag("--closed", closed, "add the one-run sample environment");
    }
    SemanticsOptions options() const { return {tau_on_join, sequential_sboxes}; }
};

void print_report(const CheckReport& r) {
    std::cout << r.line() << "\n";
    for (const auto& [k, v] : r.measures) std::cout << "  " << k << " = " << v << "\n";
    for (const auto& w : r.witnesses) std::cout << "  witness: " << render_trace(w) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Asynchronous DES: state-space exploration, minimization and property checks"};
    app.require_subcommand(1);
    int jobs = 1;
    app.add_option("--jobs", jobs, "worker threads for exploration and refinement")->check(CLI::PositiveNumber);

    ModelFlags explore_model;
    std::size_t max_states = ExploreOptions{}.max_states;
    std::string explore_out;
    auto* explore_cmd = app.add_subcommand("explore", "generate the LTS of a network by BFS");
    explore_model.add(explore_cmd, true);
    explore_cmd->add_option("--max-states", max_states, "abort beyond this many states");
    explore_cmd->add_option("-o,--output", explore_out, "AUT file to write");

    std::string relation = "branching", min_in, min_out;
    auto* minimize_cmd = app.add_subcommand("minimize", "quotient an AUT file by a bisimulation");
    minimize_cmd->add_option("--relation", relation)->check(CLI::IsMember({"strong", "branching"}));
    minimize_cmd->add_option("input", min_in, "AUT file")->required();
    minimize_cmd->add_option("-o,--output", min_out, "AUT file to write")->required();

    std::string cmp_relation = "branching", cmp_a, cmp_b;
    auto* compare_cmd = app.add_subcommand("compare", "compare two AUT files");
    compare_cmd->add_option("--relation", cmp_relation, "simulation: a is simulated by b modulo tau")
        ->check(CLI::IsMember({"strong", "branching", "simulation"}));
    compare_cmd->add_option("a", cmp_a)->required();
    compare_cmd->add_option("b", cmp_b)->required();

    ModelFlags check_model;
    std::string property = "all";
    auto* check_cmd = app.add_subcommand("check", "run property checks");
    check_cmd->add_option("--property", property, "1..7 or all");
    check_model.add(check_cmd, false);

    ModelFlags run_model;
    run_model.domain = "concrete";
    std::string trace_file;
    auto* run_cmd = app.add_subcommand("run", "prototype on stdin/stdout, one rendezvous per line");
    run_model.add(run_cmd, false);
    run_cmd->add_option("--trace", trace_file, "write every visible rendezvous to this file");

    std::string scenario_file, out_dir = ".";
    auto* scenario_cmd = app.add_subcommand("scenario", "execute a scenario file");
    scenario_cmd->add_option("file", scenario_file)->required()->check(CLI::ExistingFile);
    scenario_cmd->add_option("--out-dir", out_dir, "directory for written AUT files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (*explore_cmd) {
            ExploreOptions eo;
            eo.jobs = jobs;
            eo.max_states = max_states;
            const auto net = des_network(parse_domain(explore_model.domain), explore_model.options(), explore_model.closed);
            const auto e = explore(net, eo);
            std::cout << "states " << e.lts.num_states() << "\ntransitions " << e.lts.num_transitions() << "\ndepth "
                      << e.depth << "\n";
            if (!explore_out.empty()) write_aut_file(e.lts, explore_out);
            return 0;
        }
        if (*minimize_cmd) {
            const auto m = minimize(read_aut_file(min_in), parse_relation(relation), jobs);
            write_aut_file(m, min_out);
            std::cout << "states " << m.num_states() << "\ntransitions " << m.num_transitions() << "\n";
            return 0;
        }
        if (*compare_cmd) {
            const Lts a = read_aut_file(cmp_a), b = read_aut_file(cmp_b);
            const Verdict v = cmp_relation == "simulation" ? simulated_by(a, b, true)
                                                           : equivalent(a, b, parse_relation(cmp_relation));
            std::cout << (v.holds ? "TRUE" : "FALSE") << (v.detail.empty() ? "" : " — " + v.detail) << "\n";
            if (!v.holds) std::cout << "witness: " << render_trace(v.witness) << "\n";
            return v.holds ? 0 : kFail;
        }
        if (*check_cmd) {
            SuiteOptions so;
            so.domain = parse_domain(check_model.domain);
            so.options = check_model.options();
            so.jobs = jobs;
            std::vector<int> props;
            if (property == "all") {
                props = default_properties(so.domain);
            } else {
                int k = 0;
                try {
                    k = std::stoi(property);
                } catch (const std::exception&) {
                }
                if (k < 1 || k > 7) {
                    std::cerr << "--property must be 1..7 or all\n";
                    return kUsage;
                }
                props = {k};
            }
            bool ok = true;
            for (const auto& r : run_checks(props, so)) {
                print_report(r);
                ok = ok && r.pass;
            }
            return ok ? 0 : kFail;
        }
        if (*run_cmd) {
            std::ofstream trace;
            if (!trace_file.empty()) {
                trace.open(trace_file);
                if (!trace) {
                    std::cerr << "cannot open " << trace_file << "\n";
                    return kUsage;
                }
            }
            run_prototype(std::cin, std::cout, parse_domain(run_model.domain), run_model.options(),
                          trace_file.empty() ? nullptr : &trace);
            return 0;
        }
        if (*scenario_cmd) {
            const auto sc = parse_scenario_file(scenario_file);
            ScenarioOptions so;
            so.base_dir = std::filesystem::path(scenario_file).parent_path();
            so.output_dir = out_dir;
            so.jobs = jobs;
            const auto r = run_scenario(sc, so, std::cout);
            std::cout << (r.pass() ? "SCENARIO: PASS" : "SCENARIO: FAIL (" + std::to_string(r.failures.size()) + ")")
                      << "\n";
            return r.pass() ? 0 : kFail;
        }
    } catch (const PrototypeInputError& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    } catch (const ScenarioError& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    } catch (const AutParseError& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kInternal;
}
