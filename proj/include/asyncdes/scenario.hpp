#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "asyncdes/checks.hpp"

namespace asyncdes {

// Line-oriented verification scripts. One step per line, '#' starts a comment:
//
//   network abstract|concrete [tau-on-join] [sequential-sboxes] [closed]
//   generate compositional [GATE...]   open abstract networks; GATEs stay visible
//   generate direct                    plain BFS of the whole network
//   generate reduced                   closed concrete sample, offers stripped
//   read FILE | write FILE
//   hide GATE... | hide-all-but GATE... | strip-offers
//   minimize strong|branching
//   save NAME | load NAME
//   compare TARGET strong|branching|simulates|simulated-by
//   check 1|2|3 | check 4 [TARGET] | check 5 | check 6 TARGET | check 7
//
// TARGET is @NAME (a saved LTS), builtin:subkey-reference, or an AUT file.
// check 4 compares the current LTS with TARGET (default: the reference
// cycle); check 6 takes the current LTS as the sample and TARGET as the
// abstract model; checks 5 and 7 build their own networks.
// Files read are resolved against the base directory, files written against
// the output directory.
class ScenarioError : public std::invalid_argument {
public:
    ScenarioError(std::size_t line, const std::string& msg)
        : std::invalid_argument("scenario line " + std::to_string(line) + ": " + msg), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct ScenarioStep {
    std::size_t line = 0;
    std::string op;
    std::vector<std::string> args;
};

struct Scenario {
    std::vector<ScenarioStep> steps;
};

// Parses and type-checks (every step that needs a current LTS or network
// follows one that provides it).
Scenario parse_scenario(std::istream& in);
Scenario parse_scenario_file(const std::filesystem::path& path);

struct ScenarioOptions {
    std::filesystem::path base_dir = ".";
    std::filesystem::path output_dir = ".";
    int jobs = 1;
    std::size_t max_states = ExploreOptions{}.max_states;
};

struct ScenarioResult {
    std::vector<CheckReport> reports;
    std::vector<std::string> failures;  // failed checks and comparisons
    bool pass() const { return failures.empty(); }
};

// Runs the steps in order, writing one line per step to `log`.
ScenarioResult run_scenario(const Scenario& scenario, const ScenarioOptions& options, std::ostream& log);

}  // namespace asyncdes
