#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "asyncdes/blocks.hpp"
#include "asyncdes/lts.hpp"
#include "asyncdes/network.hpp"
#include "asyncdes/reduce.hpp"

namespace asyncdes {

struct CheckReport {
    int property = 0;
    bool pass = false;
    std::string detail;
    std::vector<std::vector<std::string>> witnesses;
    std::vector<std::pair<std::string, long long>> measures;

    // "PROPERTY_k: PASS — detail"
    std::string line() const;
};

// ---------------------------------------------------------------------------
// Models

struct ModelConfig {
    SemanticsOptions options{};
    std::vector<int> schedule{shift_schedule().begin(), shift_schedule().end()};
    std::vector<std::string> visible = observable_gates();
    int jobs = 1;
};

// Open abstract network, generated compositionally and minimized for
// branching bisimulation; only `visible` gates are kept (offers included).
Exploration abstract_model(const ModelConfig& config, ComposeReport* report = nullptr);
// Closed concrete network (one run), explored directly.
Exploration sample_model(const SampleRun& run, const SemanticsOptions& options, const ExploreOptions& explore_options = {});

// ---------------------------------------------------------------------------
// Properties over LTSs

// P1. With `allow_terminal`, deadlocks that every path reaches through an
// OUTPUT are accepted (the closed model stops after its single result).
CheckReport check_deadlock(const Lts& lts, bool allow_terminal = false);

// P2. After every completed CRYPT/DATA/KEY triplet (counted since the last
// OUTPUT), all paths reach OUTPUT: no deadlock and no cycle is reachable
// without OUTPUT.
CheckReport check_inevitable_output(const Lts& lts);

struct PipelineDepth {
    std::string gate;
    long long n_max = 0;
    std::size_t states = 0;       // product states enumerated for the bound
    bool consistent = true;       // counter is a function of the LTS state
    bool bounded = true;
    std::vector<std::string> witness;  // a trace reaching n_max
};

// P3 for one gate among DATA, CRYPT and KEY: inputs accepted on the gate
// minus OUTPUTs, maximized over the reachable states.
PipelineDepth measure_pipeline_depth(const Lts& lts, std::string_view gate);
CheckReport check_pipeline_depth(const Lts& lts);

// Reference automaton for P4: CRYPT, then sixteen SUBKEY, repeated, where the
// next CRYPT may be accepted once `crypt_after` subkeys of the current run
// have been produced.
inline constexpr int kCryptWindow = 13;
Lts subkey_reference(int subkeys = 16, int crypt_after = kCryptWindow);

// P4 on an LTS restricted to SUBKEY and CRYPT, offers stripped.
CheckReport check_subkey_schedule(const Lts& subkey_view, const Lts& reference = subkey_reference());
// Builds the abstract SUBKEY/CRYPT view for a schedule and checks it.
CheckReport check_subkey_schedule(const ModelConfig& config);

// P6, inclusion half: the offer-stripped sample is weakly simulated by the
// offer-stripped abstract model.
CheckReport check_sample_inclusion(const Lts& sample, const Lts& abstract_model);

// The closed concrete network explored with a compact transition store,
// offers stripped, and reduced by branching_acyclic(). Throws when the BFS
// numbering is not a topological order.
struct SampleQuotient {
    Lts lts;
    std::size_t states = 0;
    std::size_t transitions = 0;
    std::size_t depth = 0;
    std::size_t output_transitions = 0;
    std::size_t terminal_states = 0;
};
SampleQuotient sample_quotient(const SampleRun& run, const SemanticsOptions& options,
                               const ExploreOptions& explore_options = {});

// P6 on that quotient: no premature deadlock, OUTPUT inevitable, and
// check_sample_inclusion() against the abstract model.
CheckReport check_sample_streaming(const SampleRun& run, const SemanticsOptions& options, const Lts& abstract_model,
                                   const ExploreOptions& explore_options = {});

// P7 analogue: default and tau-on-join abstract networks are branching
// equivalent but not strongly equivalent. Strong inequivalence is shown by
// k-step bisimulation on depth-bounded direct explorations.
struct VariantOptions {
    std::size_t max_depth = 64;
    std::size_t max_states = 2'000'000;
    int jobs = 1;
};
CheckReport check_semantics_variants(const VariantOptions& options = {});

// ---------------------------------------------------------------------------
// Prototype (P5)

class PrototypeInputError : public std::runtime_error {
public:
    PrototypeInputError(std::size_t line, const std::string& msg)
        : std::runtime_error("input line " + std::to_string(line) + ": " + msg +
                             " (expected 'CRYPT !0', 'CRYPT !1', 'DATA !<16 hex digits>' or 'KEY !<16 hex digits>')"),
          line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Drives the open network with the inputs given so far, always firing the
// first enabled step in canonical order, until nothing is enabled.
class Prototype {
public:
    explicit Prototype(BitDomain domain = BitDomain::Concrete, const SemanticsOptions& options = {});
    ~Prototype();
    Prototype(const Prototype&) = delete;
    Prototype& operator=(const Prototype&) = delete;

    // Parses one protocol line and queues its offer; blank lines are ignored.
    void feed(std::string_view line);
    void push(std::string_view gate, const Value& v);
    // Runs to quiescence and returns the OUTPUT lines produced.
    std::vector<std::string> run();
    // Every visible rendezvous fired so far, in order.
    const std::vector<std::string>& trace() const { return trace_; }
    std::size_t steps() const { return steps_; }

private:
    struct Impl;
    Impl* impl_;
    BitDomain domain_;
    std::size_t line_ = 0;
    std::vector<std::string> trace_;
    std::size_t steps_ = 0;
};

// Line protocol on streams. Returns the number of OUTPUT lines written.
std::size_t run_prototype(std::istream& in, std::ostream& out, BitDomain domain = BitDomain::Concrete,
                          const SemanticsOptions& options = {}, std::ostream* trace = nullptr);

// Network outputs against des_apply on random triples, and encrypt/decrypt
// round trips on random pairs.
CheckReport check_prototype(int triples = 1000, int pairs = 100, std::uint64_t seed = 20150801);

// ---------------------------------------------------------------------------
// Suite

struct SuiteOptions {
    BitDomain domain = BitDomain::Abstract;
    SemanticsOptions options{};
    int jobs = 1;
    int triples = 1000;
    int pairs = 100;
};

// Properties 1-4 and 7 use the abstract model, 5 and 6 the concrete one.
std::vector<CheckReport> run_checks(const std::vector<int>& properties, const SuiteOptions& options);
// The properties that `check --property all` runs for a domain.
std::vector<int> default_properties(BitDomain domain);

}  // namespace asyncdes
