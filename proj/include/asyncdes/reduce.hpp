#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "asyncdes/lts.hpp"

namespace asyncdes {

enum class Relation { Strong, Branching };

std::string_view to_string(Relation r);
Relation parse_relation(std::string_view s);

// Block of each state; blocks are numbered by their smallest member.
struct Partition {
    std::vector<std::uint32_t> block;
    std::uint32_t count = 0;
    std::size_t rounds = 0;  // refinement rounds until stable
};

// Coarsest strong or branching bisimulation. For branching, tau-cycles are
// collapsed first, so divergence is not preserved. `jobs` > 1 computes
// signatures with OpenMP; the result does not depend on it.
Partition bisimulation(const Lts& lts, Relation relation, int jobs = 1);
// Serial reference and parallel kernel behind bisimulation().
Partition bisimulation_serial(const Lts& lts, Relation relation);
Partition bisimulation_parallel(const Lts& lts, Relation relation, int jobs);

// Quotient by the coarsest bisimulation. Inert tau steps are dropped for
// branching; states are numbered by the smallest member of their block.
Lts quotient(const Lts& lts, const Partition& p, Relation relation);
Lts minimize(const Lts& lts, Relation relation, int jobs = 1);

// Branching bisimulation in one backward pass, for LTSs whose transitions all
// go from a smaller to a larger state index (for instance a layered graph in
// BFS numbering). `out(s, edges)` fills the (label, target) pairs of s, label
// kTauLabel being internal. Throws std::invalid_argument on a backward edge.
using OutEdges = std::function<void(StateId, std::vector<std::pair<LabelId, StateId>>&)>;
Partition branching_acyclic(std::size_t n_states, const OutEdges& out);
// minimize(lts, Branching) through branching_acyclic().
Lts minimize_acyclic(const Lts& lts);

// Strongly connected components of the tau-graph merged into single states.
Lts collapse_tau_cycles(const Lts& lts);

struct Verdict {
    bool holds = false;
    // Labels from the initial states to the point where the two sides differ.
    std::vector<std::string> witness;
    std::string detail;
};

Verdict equivalent(const Lts& a, const Lts& b, Relation relation);
// Strong k-step bisimilarity of the initial states. Sound for inequivalence of
// depth-bounded explorations whenever k does not exceed the explored depth.
Verdict k_equivalent(const Lts& a, const Lts& b, std::size_t k);

// Whether a's initial state is simulated by b's. With `modulo_tau`, tau steps
// of a are matched by tau* and visible steps by tau* x tau* (weak simulation).
Verdict simulated_by(const Lts& a, const Lts& b, bool modulo_tau);

// Isomorphism of two LTSs in which no two states are strongly bisimilar (for
// example the results of minimize()). Throws std::invalid_argument otherwise.
bool isomorphic(const Lts& a, const Lts& b);

std::string render_trace(const std::vector<std::string>& trace);

}  // namespace asyncdes
