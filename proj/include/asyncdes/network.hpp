#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "asyncdes/blocks.hpp"
#include "asyncdes/lts.hpp"
#include "asyncdes/process.hpp"
#include "asyncdes/reduce.hpp"

namespace asyncdes {

// Every component that lists a gate takes part in each rendezvous on it.
struct SyncRule {
    GateId gate = kTauGate;
    std::vector<std::uint32_t> participants;  // ascending component indices
};

class Network {
public:
    Network() = default;
    explicit Network(std::vector<ProcessPtr> components);

    const std::vector<ProcessPtr>& components() const { return components_; }
    std::size_t size() const { return components_.size(); }
    const std::vector<SyncRule>& rules() const { return rules_; }
    // Rule for a gate, or nullptr when no component uses it.
    const SyncRule* rule(GateId g) const;
    std::size_t index_of(std::string_view component) const;  // throws if absent

    // Hidden gates are rendered as "i".
    void hide(const std::vector<std::string>& gates);
    // Hides exactly the gates not listed.
    void hide_all_but(const std::vector<std::string>& gates);
    bool hidden(GateId g) const { return g < hidden_.size() && hidden_[g]; }
    // Gates that some component uses and that are not hidden.
    std::vector<std::string> visible_gates() const;

private:
    std::vector<ProcessPtr> components_;
    std::vector<SyncRule> rules_;
    std::vector<std::int32_t> rule_index_;  // by gate id, -1 when unused
    std::vector<char> hidden_;              // by gate id
};

// Values offered by the closed configuration's environment.
struct SampleRun {
    bool encrypt = true;
    std::uint64_t key = 0x133457799BBCDFF1ull;
    std::uint64_t data = 0x0123456789ABCDEFull;
};

inline const std::vector<std::string>& observable_gates() {
    static const std::vector<std::string> g{"CRYPT", "DATA", "KEY", "OUTPUT"};
    return g;
}

// The asynchronous DES: all 28 boxes. Gates other than CRYPT, DATA, KEY and
// OUTPUT are hidden. When `closed`, an environment process is added that
// offers one CRYPT/KEY/DATA triplet, accepts only the correct OUTPUT, and stops.
Network des_network(BitDomain domain, const SemanticsOptions& options, bool closed, const SampleRun& sample = {},
                    std::span<const int> schedule = shift_schedule());

// The environment used by closed networks.
ProcessPtr sample_environment(BitDomain domain, const SampleRun& sample);

class OpenNetworkError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ExplorationLimitError : public std::runtime_error {
public:
    ExplorationLimitError(std::size_t states, std::size_t transitions)
        : std::runtime_error("exploration limit exceeded after " + std::to_string(states) + " states and " +
                             std::to_string(transitions) + " transitions"),
          states_(states), transitions_(transitions) {}
    std::size_t states() const { return states_; }
    std::size_t transitions() const { return transitions_; }

private:
    std::size_t states_;
    std::size_t transitions_;
};

// Structured form of each label text produced by an exploration.
using Alphabet = std::map<std::string, NetLabel>;

struct ExploreOptions {
    std::size_t max_states = 50'000'000;
    std::size_t max_transitions = 400'000'000;
    std::size_t max_depth = 0;  // 0: unbounded
    int jobs = 1;               // 1: serial reference explorer
};

struct Exploration {
    Lts lts;
    Alphabet alphabet;
    std::size_t depth = 0;     // BFS levels expanded
    StateId expanded = 0;      // states [expanded, n) were left unexpanded by max_depth
    bool truncated() const { return expanded < lts.num_states(); }
};

// One global step: its label and the components that move.
struct GlobalStep {
    NetLabel label;
    std::vector<std::pair<std::uint32_t, LocalState>> changes;
};

// Computes the global steps enabled in a vector of local states. Receives that
// no component emits on are closed by `free_values`; by default they are
// enumerated, and a non-enumerable type raises OpenNetworkError.
class Stepper {
public:
    using FreeValues = std::function<void(GateId, const ValueType&, std::vector<Value>&)>;
    explicit Stepper(const Network& net, FreeValues free_values = {});

    std::vector<LocalState> initial() const;
    // Steps in canonical order: internal moves by component index, then
    // rendezvous by the first participant's index and move order.
    void steps(std::span<const LocalState> state, std::vector<GlobalStep>& out) const;

private:
    const Network& net_;
    FreeValues free_;
};

// BFS from the initial state; numbering is identical for every `jobs` value.
Exploration explore(const Network& net, const ExploreOptions& options = {});
// The two kernels behind explore(); exposed for tests and benchmarks.
Exploration explore_serial(const Network& net, const ExploreOptions& options);
Exploration explore_parallel(const Network& net, const ExploreOptions& options, int jobs);

// Streaming exploration: the same BFS and numbering as explore(), but
// transitions are handed to the visitor instead of being stored.
class StateSpaceVisitor {
public:
    virtual ~StateSpaceVisitor() = default;
    // A new state, with the gate and source of the transition that found it
    // (kTauGate and 0 for the initial state).
    virtual void on_state(StateId, GateId, StateId) {}
    virtual void on_transition(StateId src, const NetLabel& label, StateId dst, bool fresh) = 0;
    virtual void on_expanded(StateId, std::size_t) {}
};

struct VisitSummary {
    std::size_t states = 0;
    std::size_t transitions = 0;
    std::size_t depth = 0;
    StateId expanded = 0;
};

VisitSummary visit_state_space(const Network& net, StateSpaceVisitor& visitor, const ExploreOptions& options = {});

// Wraps an explored (and possibly reduced) LTS as a network component.
ProcessPtr as_process(std::string name, std::vector<GateId> interface, const Lts& lts, const Alphabet& alphabet);

struct ComposeStep {
    std::string name;                // result name, usable by later steps
    std::vector<std::string> parts;  // component names or earlier step names
};

struct ComposeReport {
    struct Entry {
        std::string name;
        std::size_t states = 0;
        std::size_t transitions = 0;
        std::size_t min_states = 0;
        std::size_t min_transitions = 0;
    };
    std::vector<Entry> steps;
    std::size_t peak_states = 0;
};

// Generates each step's sub-network, hides the gates that are internal to the
// step, and minimizes. The last step must cover every component; its minimized
// LTS is returned. Each part is used exactly once.
Exploration compose_incremental(const Network& net, const std::vector<ComposeStep>& plan, Relation relation,
                                 ComposeReport* report = nullptr, const ExploreOptions& options = {});

// The bottom-up plan used for the DES networks: cipher, data path, key path,
// controller, and their combinations.
std::vector<ComposeStep> des_plan(const Network& net);

}  // namespace asyncdes
