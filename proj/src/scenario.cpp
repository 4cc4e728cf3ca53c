#include "asyncdes/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace asyncdes {

namespace {

struct OpSpec {
    std::size_t min_args;
    std::size_t max_args;
    bool needs_network;
    bool needs_lts;
    bool makes_lts;
};

constexpr std::size_t kMany = 1000;

const std::map<std::string, OpSpec>& ops() {
    static const std::map<std::string, OpSpec> m{
        {"network", {1, 4, false, false, false}},  {"generate", {1, kMany, true, false, true}},
        {"read", {1, 1, false, false, true}},      {"write", {1, 1, false, true, false}},
        {"hide", {1, kMany, false, true, false}},  {"hide-all-but", {1, kMany, false, true, false}},
        {"strip-offers", {0, 0, false, true, false}}, {"minimize", {1, 1, false, true, false}},
        {"save", {1, 1, false, true, false}},      {"load", {1, 1, false, false, true}},
        {"compare", {2, 2, false, true, false}},   {"check", {1, 2, false, false, false}},
    };
    return m;
}

void validate(const ScenarioStep& s, bool& network, bool& lts, std::vector<std::string>& saved) {
    auto it = ops().find(s.op);
    if (it == ops().end()) throw ScenarioError(s.line, "unknown step '" + s.op + "'");
    const OpSpec& spec = it->second;
    if (s.args.size() < spec.min_args || s.args.size() > spec.max_args)
        throw ScenarioError(s.line, "wrong number of arguments for '" + s.op + "'");
    if (spec.needs_network && !network) throw ScenarioError(s.line, "'" + s.op + "' needs a preceding 'network'");
    if (spec.needs_lts && !lts) throw ScenarioError(s.line, "'" + s.op + "' needs a preceding LTS-producing step");
    auto target = [&](const std::string& t) {
        if (t.starts_with("@") && std::find(saved.begin(), saved.end(), t.substr(1)) == saved.end())
            throw ScenarioError(s.line, "nothing saved as '" + t.substr(1) + "'");
        if (t.starts_with("builtin:") && t != "builtin:subkey-reference")
            throw ScenarioError(s.line, "unknown built-in '" + t + "'");
    };
    if (s.op == "network") {
        parse_domain(s.args[0]);
        for (std::size_t i = 1; i < s.args.size(); ++i)
            if (s.args[i] != "tau-on-join" && s.args[i] != "sequential-sboxes" && s.args[i] != "closed")
                throw ScenarioError(s.line, "unknown network option '" + s.args[i] + "'");
        network = true;
    } else if (s.op == "generate") {
        const auto& m = s.args[0];
        if (m != "compositional" && m != "direct" && m != "reduced")
            throw ScenarioError(s.line, "generate mode must be compositional, direct or reduced");
        if (m != "compositional" && s.args.size() > 1) throw ScenarioError(s.line, "only compositional takes gates");
    } else if (s.op == "minimize") {
        parse_relation(s.args[0]);
    } else if (s.op == "save") {
        saved.push_back(s.args[0]);
    } else if (s.op == "load") {
        target("@" + s.args[0]);
    } else if (s.op == "compare") {
        target(s.args[0]);
        const auto& r = s.args[1];
        if (r != "strong" && r != "branching" && r != "simulates" && r != "simulated-by")
            throw ScenarioError(s.line, "relation must be strong, branching, simulates or simulated-by");
    } else if (s.op == "check") {
        int k = 0;
        try {
            k = std::stoi(s.args[0]);
        } catch (const std::exception&) {
        }
        if (k < 1 || k > 7) throw ScenarioError(s.line, "property must be 1..7");
        const bool on_lts = k <= 4 || k == 6;
        if (on_lts && !lts) throw ScenarioError(s.line, "check " + s.args[0] + " needs a current LTS");
        if (k == 6 && s.args.size() != 2) throw ScenarioError(s.line, "check 6 needs the abstract model as target");
        if (s.args.size() == 2) {
            if (k != 4 && k != 6) throw ScenarioError(s.line, "only checks 4 and 6 take a target");
            target(s.args[1]);
        }
    }
    if (spec.makes_lts) lts = true;
}

struct Runner {
    const ScenarioOptions& opt;
    std::ostream& log;
    ScenarioResult result;
    std::optional<Lts> current;
    std::map<std::string, Lts> saved;
    BitDomain domain = BitDomain::Abstract;
    SemanticsOptions sem;
    bool closed = false;

    std::filesystem::path path(const std::string& f) const { return opt.base_dir / f; }

    Lts target(const std::string& t) const {
        if (t.starts_with("@")) return saved.at(t.substr(1));
        if (t == "builtin:subkey-reference") return subkey_reference();
        return read_aut_file(path(t).string());
    }

    void report(const CheckReport& r) {
        log << r.line() << "\n";
        for (const auto& w : r.witnesses) log << "  witness: " << render_trace(w) << "\n";
        if (!r.pass) result.failures.push_back(r.line());
        result.reports.push_back(r);
    }

    void sizes(const std::string& what) {
        log << what << ": " << current->num_states() << " states, " << current->num_transitions() << " transitions\n";
    }

    void step(const ScenarioStep& s) {
        const auto& a = s.args;
        if (s.op == "network") {
            domain = parse_domain(a[0]);
            sem = {};
            closed = false;
            for (std::size_t i = 1; i < a.size(); ++i) {
                if (a[i] == "tau-on-join") sem.tau_on_join = true;
                if (a[i] == "sequential-sboxes") sem.sequential_sboxes = true;
                if (a[i] == "closed") closed = true;
            }
            log << "network " << to_string(domain) << (closed ? " closed" : " open");
            for (std::size_t i = 1; i < a.size(); ++i)
                if (a[i] != "closed") log << " " << a[i];
            log << "\n";
        } else if (s.op == "generate") {
            ExploreOptions eo;
            eo.jobs = opt.jobs;
            eo.max_states = opt.max_states;
            if (a[0] == "compositional") {
                if (domain != BitDomain::Abstract || closed)
                    throw ScenarioError(s.line, "compositional generation needs an open abstract network");
                ModelConfig c;
                c.options = sem;
                c.jobs = opt.jobs;
                if (a.size() > 1) c.visible.assign(a.begin() + 1, a.end());
                current = abstract_model(c).lts;
            } else if (a[0] == "direct") {
                current = explore(des_network(domain, sem, closed), eo).lts;
            } else {
                if (domain != BitDomain::Concrete || !closed)
                    throw ScenarioError(s.line, "reduced generation needs a closed concrete network");
                current = sample_quotient({}, sem, eo).lts;
            }
            sizes("generate " + a[0]);
        } else if (s.op == "read") {
            current = read_aut_file(path(a[0]).string());
            sizes("read " + a[0]);
        } else if (s.op == "write") {
            write_aut_file(*current, (opt.output_dir / a[0]).string());
            log << "write " << a[0] << "\n";
        } else if (s.op == "hide") {
            current = hide_gates(*current, a);
            sizes("hide");
        } else if (s.op == "hide-all-but") {
            current = hide_all_but(*current, a);
            sizes("hide-all-but");
        } else if (s.op == "strip-offers") {
            current = strip_offers(*current);
            sizes("strip-offers");
        } else if (s.op == "minimize") {
            current = minimize(*current, parse_relation(a[0]), opt.jobs);
            sizes("minimize " + a[0]);
        } else if (s.op == "save") {
            saved.insert_or_assign(a[0], *current);
        } else if (s.op == "load") {
            current = saved.at(a[0]);
            sizes("load " + a[0]);
        } else if (s.op == "compare") {
            const Lts other = target(a[0]);
            Verdict v;
            if (a[1] == "simulates") v = simulated_by(other, *current, true);
            else if (a[1] == "simulated-by") v = simulated_by(*current, other, true);
            else v = equivalent(*current, other, parse_relation(a[1]));
            const std::string line = std::string("COMPARE ") + a[1] + " " + a[0] + ": " + (v.holds ? "PASS" : "FAIL");
            log << line << (v.detail.empty() ? "" : " — " + v.detail) << "\n";
            if (!v.holds) {
                log << "  witness: " << render_trace(v.witness) << "\n";
                result.failures.push_back(line);
            }
        } else if (s.op == "check") {
            const int k = std::stoi(a[0]);
            switch (k) {
                case 1: report(check_deadlock(*current, closed)); break;
                case 2: report(check_inevitable_output(*current)); break;
                case 3: report(check_pipeline_depth(*current)); break;
                case 4: report(check_subkey_schedule(*current, a.size() > 1 ? target(a[1]) : subkey_reference())); break;
                case 5: report(check_prototype()); break;
                case 6: report(check_sample_inclusion(*current, target(a[1]))); break;
                case 7: {
                    VariantOptions vo;
                    vo.jobs = opt.jobs;
                    report(check_semantics_variants(vo));
                    break;
                }
            }
        }
    }
};

}  // namespace

Scenario parse_scenario(std::istream& in) {
    Scenario sc;
    std::string text;
    std::size_t line = 0;
    bool network = false, lts = false;
    std::vector<std::string> saved;
    while (std::getline(in, text)) {
        ++line;
        if (auto h = text.find('#'); h != std::string::npos) text.resize(h);
        std::istringstream words(text);
        ScenarioStep s;
        s.line = line;
        if (!(words >> s.op)) continue;
        for (std::string w; words >> w;) s.args.push_back(w);
        try {
            validate(s, network, lts, saved);
        } catch (const ScenarioError&) {
            throw;
        } catch (const std::exception& e) {
            throw ScenarioError(line, e.what());
        }
        sc.steps.push_back(std::move(s));
    }
    return sc;
}

Scenario parse_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario " + path.string());
    return parse_scenario(in);
}

ScenarioResult run_scenario(const Scenario& scenario, const ScenarioOptions& options, std::ostream& log) {
    Runner r{options, log, {}, {}, {}, BitDomain::Abstract, {}, false};
    for (const auto& s : scenario.steps) r.step(s);
    return std::move(r.result);
}

}  // namespace asyncdes
