#pragma once

// Reference implementations used only to cross-check the library.

#include <random>
#include <string>
#include <vector>

#include "asyncdes/reduce.hpp"

namespace asyncdes::testing {

// Greatest fixpoint over state pairs, straight from the definitions. Branching
// uses the semi-branching transfer condition, which yields the same relation.
inline std::vector<std::vector<char>> naive_bisimulation(const Lts& l, Relation rel) {
    const std::size_t n = l.num_states();
    std::vector<std::vector<StateId>> tau_closure(n);
    for (StateId s = 0; s < n; ++s) {
        std::vector<char> seen(n, 0);
        std::vector<StateId> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            const StateId x = stack.back();
            stack.pop_back();
            tau_closure[s].push_back(x);
            for (const auto& t : l.out(x))
                if (t.label == kTauLabel && !seen[t.dst]) {
                    seen[t.dst] = 1;
                    stack.push_back(t.dst);
                }
        }
    }
    std::vector<std::vector<char>> r(n, std::vector<char>(n, 1));
    auto matched = [&](StateId s, StateId t) {
        for (const auto& a : l.out(s)) {
            bool ok = false;
            if (rel == Relation::Strong) {
                for (const auto& b : l.out(t)) ok = ok || (b.label == a.label && r[a.dst][b.dst]);
            } else {
                ok = a.label == kTauLabel && r[a.dst][t];
                for (StateId u : tau_closure[t]) {
                    if (ok) break;
                    if (!r[s][u]) continue;
                    for (const auto& b : l.out(u)) ok = ok || (b.label == a.label && r[a.dst][b.dst]);
                }
            }
            if (!ok) return false;
        }
        return true;
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (StateId s = 0; s < n; ++s)
            for (StateId t = 0; t < n; ++t)
                if (r[s][t] && !(matched(s, t) && matched(t, s))) {
                    r[s][t] = r[t][s] = 0;
                    changed = true;
                }
    }
    return r;
}

inline Lts random_lts(std::mt19937& rng, StateId n, std::size_t m, int labels, double tau, bool forward) {
    LabelTable t;
    for (int i = 0; i < labels; ++i) t.intern(std::string(1, static_cast<char>('a' + i)));
    std::vector<Transition> ts;
    std::uniform_real_distribution<double> u(0, 1);
    for (std::size_t k = 0; k < m; ++k) {
        StateId s = rng() % n, d = rng() % n;
        if (forward) {
            if (s == d) continue;
            if (s > d) std::swap(s, d);
        }
        const LabelId l = u(rng) < tau ? kTauLabel : 1 + rng() % labels;
        ts.push_back({s, l, d});
    }
    return Lts(n, 0, t, ts);
}

inline Lts disjoint_union(const Lts& a, const Lts& b) {
    LabelTable t;
    std::vector<Transition> ts;
    for (const auto& x : a.transitions()) ts.push_back({x.src, t.intern(a.label_text(x.label)), x.dst});
    for (const auto& x : b.transitions())
        ts.push_back({x.src + a.num_states(), t.intern(b.label_text(x.label)), x.dst + a.num_states()});
    return Lts(a.num_states() + b.num_states(), 0, t, ts);
}

// The library's partition equals the naive relation, and the quotient is
// bisimilar to its input.
inline bool agrees_with_naive(const Lts& l, Relation rel) {
    const auto p = bisimulation(l, rel);
    const auto r = naive_bisimulation(l, rel);
    for (StateId s = 0; s < l.num_states(); ++s)
        for (StateId t = 0; t < l.num_states(); ++t)
            if ((p.block[s] == p.block[t]) != (r[s][t] != 0)) return false;
    const Lts q = quotient(l, p, rel);
    return naive_bisimulation(disjoint_union(l, q), rel)[l.initial()][l.num_states() + q.initial()] != 0;
}

}  // namespace asyncdes::testing
