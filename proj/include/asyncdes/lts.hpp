#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace asyncdes {

using StateId = std::uint32_t;
using LabelId = std::uint32_t;

// Label 0 of every LTS is the internal action "i".
inline constexpr LabelId kTauLabel = 0;

struct Transition {
    StateId src;
    LabelId label;
    StateId dst;

    friend constexpr bool operator==(const Transition&, const Transition&) = default;
    friend constexpr auto operator<=>(const Transition& a, const Transition& b) {
        if (a.src != b.src) return a.src <=> b.src;
        if (a.label != b.label) return a.label <=> b.label;
        return a.dst <=> b.dst;
    }
};

// Interned label texts. Id 0 is always "i".
class LabelTable {
public:
    LabelTable();
    LabelId intern(std::string_view text);
    LabelId find(std::string_view text) const;  // throws if absent
    bool contains(std::string_view text) const;
    const std::string& text(LabelId id) const { return texts_.at(id); }
    std::size_t size() const { return texts_.size(); }
    const std::vector<std::string>& texts() const { return texts_; }

private:
    std::vector<std::string> texts_;
    std::unordered_map<std::string, LabelId> ids_;
};

// Explicit labeled transition system. Transitions are kept sorted by
// (src, label, dst) without duplicates. The label table is canonical: labels
// that no transition uses are dropped and the rest are numbered in text order
// after "i", so two LTSs with the same transitions compare equal.
class Lts {
public:
    Lts() = default;
    // Sorts and deduplicates `transitions`; validates endpoints.
    Lts(StateId n_states, StateId initial, LabelTable labels, std::vector<Transition> transitions);

    StateId num_states() const { return n_states_; }
    StateId initial() const { return initial_; }
    std::size_t num_transitions() const { return transitions_.size(); }
    const LabelTable& labels() const { return labels_; }
    const std::string& label_text(LabelId id) const { return labels_.text(id); }
    const std::vector<Transition>& transitions() const { return transitions_; }

    // CSR index: outgoing transitions of s are transitions()[offsets()[s] .. offsets()[s+1]).
    const std::vector<std::size_t>& offsets() const { return offsets_; }
    friend bool operator==(const Lts& a, const Lts& b) {
        return a.n_states_ == b.n_states_ && a.initial_ == b.initial_ && a.labels_.texts() == b.labels_.texts() &&
               a.transitions_ == b.transitions_;
    }
    std::span<const Transition> out(StateId s) const {
        return {transitions_.data() + offsets_[s], offsets_[s + 1] - offsets_[s]};
    }

private:
    StateId n_states_ = 1;
    StateId initial_ = 0;
    LabelTable labels_;
    std::vector<Transition> transitions_;
    std::vector<std::size_t> offsets_{0, 0};
};

struct LtsStats {
    std::size_t states = 0;
    std::size_t transitions = 0;
    std::size_t labels = 0;  // distinct labels used by some transition
    std::size_t deadlocks = 0;

    friend bool operator==(const LtsStats&, const LtsStats&) = default;
};

LtsStats stats(const Lts& lts);

class AutParseError : public std::runtime_error {
public:
    AutParseError(std::size_t line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Aldebaran format: `des (I, T, S)` then `(src, "LABEL", dst)` per transition.
void write_aut(const Lts& lts, std::ostream& out);
std::string write_aut(const Lts& lts);
Lts read_aut(std::istream& in);
Lts read_aut_string(std::string_view text);
Lts read_aut_file(const std::string& path);
void write_aut_file(const Lts& lts, const std::string& path);

// Relabels every transition through `f` (text -> text); "i" maps to tau.
// Duplicate transitions that arise are merged.
template <class F>
Lts relabel(const Lts& lts, F&& f);

// GATE !o1 !o2 -> GATE.
Lts strip_offers(const Lts& lts);
// Turns every label whose gate is in `gates` into "i".
Lts hide_gates(const Lts& lts, const std::vector<std::string>& gates);
// Turns every label whose gate is NOT in `gates` into "i".
Lts hide_all_but(const Lts& lts, const std::vector<std::string>& gates);

// States reachable from the initial state, renumbered in BFS order.
Lts reachable_part(const Lts& lts);

// Shortest path (as transitions) from the initial state to `target`.
std::vector<Transition> shortest_path(const Lts& lts, StateId target);

// ---------------------------------------------------------------------------

template <class F>
Lts relabel(const Lts& lts, F&& f) {
    LabelTable table;
    std::vector<LabelId> map(lts.labels().size());
    for (LabelId l = 0; l < lts.labels().size(); ++l) {
        const std::string text = l == kTauLabel ? std::string(lts.label_text(l)) : std::string(f(lts.label_text(l)));
        map[l] = table.intern(text);
    }
    std::vector<Transition> ts;
    ts.reserve(lts.num_transitions());
    for (const auto& t : lts.transitions()) ts.push_back({t.src, map[t.label], t.dst});
    return Lts(lts.num_states(), lts.initial(), std::move(table), std::move(ts));
}

}  // namespace asyncdes
