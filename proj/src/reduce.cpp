#include "asyncdes/reduce.hpp"

#include "asyncdes/label.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace asyncdes {

std::string_view to_string(Relation r) { return r == Relation::Strong ? "strong" : "branching"; }

Relation parse_relation(std::string_view s) {
    if (s == "strong") return Relation::Strong;
    if (s == "branching") return Relation::Branching;
    throw std::invalid_argument("unknown relation '" + std::string(s) + "' (expected strong or branching)");
}

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

struct Edge {
    LabelId label;
    std::uint32_t dst;
};

// Adjacency in CSR form. For branching refinement every tau edge goes from a
// higher to a lower node index (tau-cycles collapsed, nodes in Tarjan order).
struct Graph {
    std::uint32_t n = 0;
    std::vector<std::size_t> off;
    std::vector<Edge> edges;
    std::vector<std::uint32_t> node_of;  // original state -> node
    std::span<const Edge> out(std::uint32_t u) const { return {edges.data() + off[u], off[u + 1] - off[u]}; }
};

Graph build(std::uint32_t n, const std::vector<std::uint32_t>& node_of, std::uint32_t n_nodes,
            const std::vector<Transition>& ts, bool drop_internal_tau) {
    Graph g;
    g.n = n_nodes;
    g.node_of = node_of;
    std::vector<std::pair<std::uint32_t, Edge>> es;
    es.reserve(ts.size());
    for (const auto& t : ts) {
        const auto u = node_of[t.src], v = node_of[t.dst];
        if (drop_internal_tau && t.label == kTauLabel && u == v) continue;
        es.push_back({u, {t.label, v}});
    }
    std::sort(es.begin(), es.end(), [](const auto& x, const auto& y) {
        return std::tie(x.first, x.second.label, x.second.dst) < std::tie(y.first, y.second.label, y.second.dst);
    });
    es.erase(std::unique(es.begin(), es.end(),
                         [](const auto& x, const auto& y) {
                             return x.first == y.first && x.second.label == y.second.label && x.second.dst == y.second.dst;
                         }),
             es.end());
    g.off.assign(static_cast<std::size_t>(n_nodes) + 1, 0);
    for (const auto& e : es) ++g.off[e.first + 1];
    for (std::size_t i = 1; i < g.off.size(); ++i) g.off[i] += g.off[i - 1];
    g.edges.reserve(es.size());
    for (const auto& e : es) g.edges.push_back(e.second);
    (void)n;
    return g;
}

// Tarjan's algorithm over tau edges, iterative. Components are numbered in
// completion order, so every tau edge between components decreases the index.
std::vector<std::uint32_t> tau_sccs(const Lts& lts, std::uint32_t& count) {
    const StateId n = lts.num_states();
    std::vector<std::uint32_t> index(n, kNone), low(n, 0), comp(n, kNone);
    std::vector<StateId> stack;
    std::vector<std::pair<StateId, std::size_t>> call;
    std::uint32_t next = 0;
    count = 0;
    for (StateId root = 0; root < n; ++root) {
        if (index[root] != kNone) continue;
        call.push_back({root, lts.offsets()[root]});
        index[root] = low[root] = next++;
        stack.push_back(root);
        while (!call.empty()) {
            auto& [u, k] = call.back();
            const std::size_t end = lts.offsets()[u + 1];
            bool descended = false;
            while (k < end) {
                const auto& t = lts.transitions()[k++];
                if (t.label != kTauLabel) continue;
                const StateId v = t.dst;
                if (index[v] == kNone) {
                    index[v] = low[v] = next++;
                    stack.push_back(v);
                    call.push_back({v, lts.offsets()[v]});
                    descended = true;
                    break;
                }
                if (comp[v] == kNone) low[u] = std::min(low[u], index[v]);
            }
            if (descended) continue;
            const StateId done = u;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
            if (low[done] == index[done]) {
                StateId w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    comp[w] = count;
                } while (w != done);
                ++count;
            }
        }
    }
    return comp;
}

Graph graph_for(const Lts& lts, Relation r) {
    if (r == Relation::Strong) {
        std::vector<std::uint32_t> id(lts.num_states());
        std::iota(id.begin(), id.end(), 0u);
        return build(lts.num_states(), id, lts.num_states(), lts.transitions(), false);
    }
    std::uint32_t count = 0;
    auto comp = tau_sccs(lts, count);
    return build(lts.num_states(), comp, count, lts.transitions(), true);
}

struct VecHash {
    std::size_t operator()(const std::vector<std::uint64_t>& v) const noexcept {
        std::uint64_t h = v.size();
        for (auto x : v) {
            h ^= x + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
            h *= 0xBF58476D1CE4E5B9ull;
        }
        return static_cast<std::size_t>(h ^ (h >> 31));
    }
};

std::uint64_t element(LabelId a, std::uint32_t block) { return static_cast<std::uint64_t>(a) << 32 | block; }

// Signature refinement. Strong: sig(u) = {(a, [v])}. Branching (tau-acyclic
// graph): inert tau edges contribute the signature of their target instead.
class Refiner {
public:
    Refiner(const Graph& g, bool branching) : g_(g), branching_(branching), block_(g.n, 0), sig_(g.n) {
        if (g.n > 0) count_ = 1;
        // Parallel batches: nodes whose tau successors are all in earlier batches.
        std::vector<std::uint32_t> height(g.n, 0);
        std::uint32_t max_h = 0;
        if (branching_) {
            for (std::uint32_t u = 0; u < g.n; ++u)
                for (const auto& e : g.out(u))
                    if (e.label == kTauLabel) height[u] = std::max(height[u], height[e.dst] + 1);
            for (auto h : height) max_h = std::max(max_h, h);
        }
        batches_.assign(static_cast<std::size_t>(max_h) + 1, {});
        for (std::uint32_t u = 0; u < g.n; ++u) batches_[height[u]].push_back(u);
    }

    std::uint32_t count() const { return count_; }
    const std::vector<std::uint32_t>& blocks() const { return block_; }

    // One refinement round; returns true if some block was split.
    bool round(int jobs) {
        for (const auto& batch : batches_) {
            const auto n = static_cast<std::int64_t>(batch.size());
            if (jobs > 1) {
#pragma omp parallel for num_threads(jobs) schedule(dynamic, 256)
                for (std::int64_t i = 0; i < n; ++i) compute(batch[static_cast<std::size_t>(i)]);
            } else {
                for (std::int64_t i = 0; i < n; ++i) compute(batch[static_cast<std::size_t>(i)]);
            }
        }
        std::unordered_map<std::vector<std::uint64_t>, std::uint32_t, VecHash> ids;
        ids.reserve(g_.n);
        std::vector<std::uint32_t> next(g_.n);
        std::vector<std::uint64_t> key;
        for (std::uint32_t u = 0; u < g_.n; ++u) {
            key.clear();
            key.push_back(block_[u]);
            key.insert(key.end(), sig_[u].begin(), sig_[u].end());
            next[u] = ids.emplace(key, static_cast<std::uint32_t>(ids.size())).first->second;
        }
        const auto fresh = static_cast<std::uint32_t>(ids.size());
        block_.swap(next);
        const bool split = fresh != count_;
        count_ = fresh;
        return split;
    }

    void release() { std::vector<std::vector<std::uint64_t>>().swap(sig_); }

private:
    void compute(std::uint32_t u) {
        auto& s = sig_[u];
        s.clear();
        for (const auto& e : g_.out(u)) {
            if (branching_ && e.label == kTauLabel && block_[e.dst] == block_[u])
                s.insert(s.end(), sig_[e.dst].begin(), sig_[e.dst].end());
            else
                s.push_back(element(e.label, block_[e.dst]));
        }
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }

    const Graph& g_;
    bool branching_;
    std::vector<std::uint32_t> block_;
    std::uint32_t count_ = 0;
    std::vector<std::vector<std::uint64_t>> sig_;
    std::vector<std::vector<std::uint32_t>> batches_;
};

// Partition of original states, blocks numbered by smallest member.
Partition run(const Lts& lts, Relation r, int jobs) {
    const Graph g = graph_for(lts, r);
    Refiner ref(g, r == Relation::Branching);
    Partition p;
    while (ref.round(jobs)) ++p.rounds;
    ++p.rounds;
    std::vector<std::uint32_t> renum(ref.count(), kNone);
    p.block.resize(lts.num_states());
    for (StateId s = 0; s < lts.num_states(); ++s) {
        auto& b = renum[ref.blocks()[g.node_of[s]]];
        if (b == kNone) b = p.count++;
        p.block[s] = b;
    }
    return p;
}

// Disjoint union with merged label tables; b's states follow a's.
Lts disjoint_union(const Lts& a, const Lts& b) {
    LabelTable labels;
    std::vector<Transition> ts;
    ts.reserve(a.num_transitions() + b.num_transitions());
    for (const auto& t : a.transitions()) ts.push_back({t.src, labels.intern(a.label_text(t.label)), t.dst});
    const StateId na = a.num_states();
    for (const auto& t : b.transitions()) ts.push_back({t.src + na, labels.intern(b.label_text(t.label)), t.dst + na});
    return Lts(na + b.num_states(), a.initial(), std::move(labels), std::move(ts));
}

// Refinement keeping every round's partition, for witness extraction.
struct History {
    Graph g;
    std::vector<std::vector<std::uint32_t>> rounds;  // rounds[0]: all in one block
    bool branching = false;

    std::size_t split_round(std::uint32_t u, std::uint32_t v) const {
        for (std::size_t r = 0; r < rounds.size(); ++r)
            if (rounds[r][u] != rounds[r][v]) return r;
        return rounds.size();
    }

    struct Reach {
        std::vector<std::uint32_t> nodes;
        std::unordered_map<std::uint32_t, std::uint32_t> parent;  // via inert tau
    };
    // Nodes reachable from u by inert tau steps w.r.t. partition r.
    Reach inert_reach(std::uint32_t u, std::size_t r) const {
        Reach out;
        out.nodes.push_back(u);
        out.parent[u] = kNone;
        if (!branching) return out;
        for (std::size_t i = 0; i < out.nodes.size(); ++i)
            for (const auto& e : g.out(out.nodes[i]))
                if (e.label == kTauLabel && rounds[r][e.dst] == rounds[r][u] && !out.parent.count(e.dst)) {
                    out.parent[e.dst] = out.nodes[i];
                    out.nodes.push_back(e.dst);
                }
        return out;
    }
    bool inert(const Edge& e, std::uint32_t from, std::size_t r) const {
        return branching && e.label == kTauLabel && rounds[r][e.dst] == rounds[r][from];
    }
};

History refine_with_history(const Lts& u, Relation rel, std::size_t max_rounds) {
    History h;
    h.branching = rel == Relation::Branching;
    h.g = graph_for(u, rel);
    Refiner ref(h.g, h.branching);
    h.rounds.push_back(ref.blocks());
    while ((max_rounds == 0 || h.rounds.size() <= max_rounds) && ref.round(1)) h.rounds.push_back(ref.blocks());
    if (max_rounds == 0 || h.rounds.size() <= max_rounds) h.rounds.push_back(ref.blocks());
    return h;
}

// Follows the refinement history from a split pair down to an action that one
// side can perform and the other cannot match.
Verdict explain(const History& h, const Lts& u, std::uint32_t p, std::uint32_t q) {
    Verdict v;
    v.holds = false;
    const char* side[2] = {"the first LTS", "the second LTS"};
    int who = 0;
    std::size_t k = h.split_round(p, q);
    while (k > 0 && k < h.rounds.size()) {
        const std::size_t r = k - 1;
        auto rp = h.inert_reach(p, r), rq = h.inert_reach(q, r);
        auto elements = [&](const History::Reach& reach) {
            std::vector<std::uint64_t> s;
            for (auto w : reach.nodes)
                for (const auto& e : h.g.out(w))
                    if (!h.inert(e, w, r)) s.push_back(element(e.label, h.rounds[r][e.dst]));
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
            return s;
        };
        auto sp = elements(rp), sq = elements(rq);
        std::vector<std::uint64_t> diff;
        std::set_difference(sp.begin(), sp.end(), sq.begin(), sq.end(), std::back_inserter(diff));
        if (diff.empty()) {
            std::swap(p, q);
            std::swap(rp, rq);
            std::swap(sp, sq);
            who ^= 1;
            std::set_difference(sp.begin(), sp.end(), sq.begin(), sq.end(), std::back_inserter(diff));
        }
        if (diff.empty()) break;  // cannot happen for a genuine split
        const auto e = diff.front();
        const auto label = static_cast<LabelId>(e >> 32);
        const auto target_block = static_cast<std::uint32_t>(e);
        // Concrete path p -i*-> w -label-> p'.
        std::uint32_t w = kNone, p2 = kNone;
        for (auto x : rp.nodes) {
            for (const auto& ed : h.g.out(x))
                if (ed.label == label && h.rounds[r][ed.dst] == target_block && !h.inert(ed, x, r)) {
                    w = x;
                    p2 = ed.dst;
                    break;
                }
            if (w != kNone) break;
        }
        std::vector<std::string> taus;
        for (auto x = w; rp.parent.at(x) != kNone; x = rp.parent.at(x)) taus.emplace_back(kTauText);
        v.witness.insert(v.witness.end(), taus.begin(), taus.end());
        v.witness.push_back(u.label_text(label));
        // Best answer of the other side: the successor split last.
        std::uint32_t q2 = kNone;
        std::size_t best = 0;
        for (auto x : rq.nodes)
            for (const auto& ed : h.g.out(x))
                if (ed.label == label && !h.inert(ed, x, r)) {
                    const auto s = h.split_round(p2, ed.dst);
                    if (q2 == kNone || s > best) {
                        q2 = ed.dst;
                        best = s;
                    }
                }
        if (q2 == kNone) {
            v.detail = std::string(side[who]) + " can perform '" + u.label_text(label) + "' after " +
                       render_trace(v.witness) + " and " + side[who ^ 1] + " cannot match it";
            return v;
        }
        p = p2;
        q = q2;
        k = best;
    }
    v.detail = std::string("the states reached by ") + render_trace(v.witness) + " are distinguished";
    return v;
}

}  // namespace

Partition bisimulation_serial(const Lts& lts, Relation relation) { return run(lts, relation, 1); }

Partition bisimulation_parallel(const Lts& lts, Relation relation, int jobs) { return run(lts, relation, std::max(jobs, 2)); }

Partition bisimulation(const Lts& lts, Relation relation, int jobs) {
    return jobs > 1 ? bisimulation_parallel(lts, relation, jobs) : bisimulation_serial(lts, relation);
}

Lts quotient(const Lts& lts, const Partition& p, Relation relation) {
    LabelTable labels;
    std::vector<LabelId> lmap(lts.labels().size());
    for (LabelId l = 0; l < lts.labels().size(); ++l) lmap[l] = labels.intern(lts.label_text(l));
    std::vector<Transition> ts;
    for (const auto& t : lts.transitions()) {
        const auto b = p.block[t.src], c = p.block[t.dst];
        if (relation == Relation::Branching && t.label == kTauLabel && b == c) continue;
        ts.push_back({b, lmap[t.label], c});
    }
    return Lts(p.count, p.block[lts.initial()], std::move(labels), std::move(ts));
}

Lts minimize(const Lts& lts, Relation relation, int jobs) {
    return quotient(lts, bisimulation(lts, relation, jobs), relation);
}

Partition branching_acyclic(std::size_t n, const OutEdges& out) {
    using Pair = std::pair<LabelId, std::uint32_t>;
    std::vector<std::uint32_t> cls(n);
    std::vector<std::vector<Pair>> sigs;
    std::map<std::vector<Pair>, std::uint32_t> index;
    std::vector<std::pair<LabelId, StateId>> edges;
    std::vector<Pair> sig;
    for (std::size_t i = n; i-- > 0;) {
        const auto s = static_cast<StateId>(i);
        edges.clear();
        out(s, edges);
        sig.clear();
        for (const auto& [l, t] : edges) {
            if (t <= s) throw std::invalid_argument("transition " + std::to_string(s) + " -> " + std::to_string(t) + " is not forward");
            sig.push_back({l, cls[t]});
        }
        std::sort(sig.begin(), sig.end());
        sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
        // An inert tau step joins the target's class when the target already
        // offers everything else s offers.
        std::int64_t joined = -1;
        for (const auto& [l, c] : sig) {
            if (l != kTauLabel) break;
            const auto& target = sigs[c];
            if (std::all_of(sig.begin(), sig.end(), [&](const Pair& p) {
                    return (p.first == kTauLabel && p.second == c) || std::binary_search(target.begin(), target.end(), p);
                })) {
                joined = c;
                break;
            }
        }
        if (joined >= 0) {
            cls[s] = static_cast<std::uint32_t>(joined);
            continue;
        }
        auto [it, fresh] = index.emplace(sig, static_cast<std::uint32_t>(sigs.size()));
        if (fresh) sigs.push_back(sig);
        cls[s] = it->second;
    }
    Partition p;
    p.block.resize(n);
    std::vector<std::uint32_t> renum(sigs.size(), ~0u);
    for (std::size_t s = 0; s < n; ++s) {
        auto& r = renum[cls[s]];
        if (r == ~0u) r = p.count++;
        p.block[s] = r;
    }
    p.rounds = 1;
    return p;
}

Lts minimize_acyclic(const Lts& lts) {
    const auto p = branching_acyclic(lts.num_states(), [&](StateId s, std::vector<std::pair<LabelId, StateId>>& e) {
        for (const auto& t : lts.out(s)) e.push_back({t.label, t.dst});
    });
    return quotient(lts, p, Relation::Branching);
}

Lts collapse_tau_cycles(const Lts& lts) {
    std::uint32_t count = 0;
    auto comp = tau_sccs(lts, count);
    std::vector<Transition> ts;
    for (const auto& t : lts.transitions())
        if (!(t.label == kTauLabel && comp[t.src] == comp[t.dst])) ts.push_back({comp[t.src], t.label, comp[t.dst]});
    LabelTable labels;
    std::vector<LabelId> lmap(lts.labels().size());
    for (LabelId l = 0; l < lts.labels().size(); ++l) lmap[l] = labels.intern(lts.label_text(l));
    for (auto& t : ts) t.label = lmap[t.label];
    return Lts(count, comp[lts.initial()], std::move(labels), std::move(ts));
}

Verdict equivalent(const Lts& a, const Lts& b, Relation relation) {
    const Lts u = disjoint_union(a, b);
    const History h = refine_with_history(u, relation, 0);
    const auto p = h.g.node_of[a.initial()], q = h.g.node_of[b.initial() + a.num_states()];
    if (h.rounds.back()[p] == h.rounds.back()[q]) return {true, {}, "initial states are " + std::string(to_string(relation)) + " bisimilar"};
    return explain(h, u, p, q);
}

Verdict k_equivalent(const Lts& a, const Lts& b, std::size_t k) {
    const Lts u = disjoint_union(a, b);
    const History h = refine_with_history(u, Relation::Strong, k);
    const auto p = a.initial(), q = b.initial() + a.num_states();
    const auto& last = h.rounds[std::min(k, h.rounds.size() - 1)];
    if (last[p] == last[q]) return {true, {}, "initial states are " + std::to_string(k) + "-step strongly bisimilar"};
    return explain(h, u, p, q);
}

Verdict simulated_by(const Lts& a, const Lts& b, bool modulo_tau) {
    const StateId na = a.num_states(), nb = b.num_states();
    // Label ids of a in b's table, kNone if b never performs the label.
    std::vector<std::uint32_t> lmap(a.labels().size(), kNone);
    for (LabelId l = 0; l < a.labels().size(); ++l)
        if (b.labels().contains(a.label_text(l))) lmap[l] = b.labels().find(a.label_text(l));

    std::vector<std::vector<StateId>> closure(nb);
    for (StateId q = 0; q < nb; ++q) {
        auto& c = closure[q];
        c.push_back(q);
        if (!modulo_tau) continue;
        std::vector<char> seen(nb, 0);
        seen[q] = 1;
        for (std::size_t i = 0; i < c.size(); ++i)
            for (const auto& t : b.out(c[i]))
                if (t.label == kTauLabel && !seen[t.dst]) {
                    seen[t.dst] = 1;
                    c.push_back(t.dst);
                }
    }
    std::unordered_map<std::uint64_t, std::vector<StateId>> cache;
    auto answers = [&](StateId q, LabelId bl) -> const std::vector<StateId>& {
        const std::uint64_t key = static_cast<std::uint64_t>(q) << 32 | bl;
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        std::vector<StateId> out;
        if (modulo_tau && bl == kTauLabel) {
            out = closure[q];
        } else {
            std::vector<char> seen(nb, 0);
            for (StateId q1 : closure[q])
                for (const auto& t : b.out(q1))
                    if (t.label == bl)
                        for (StateId q2 : modulo_tau ? closure[t.dst] : std::vector<StateId>{t.dst})
                            if (!seen[q2]) {
                                seen[q2] = 1;
                                out.push_back(q2);
                            }
        }
        return cache.emplace(key, std::move(out)).first->second;
    };

    static const std::vector<StateId> kEmpty;
    auto options = [&](StateId q, LabelId al) -> const std::vector<StateId>& {
        return lmap[al] == kNone ? kEmpty : answers(q, lmap[al]);
    };
    std::vector<std::uint32_t> removed(static_cast<std::size_t>(na) * nb, kNone);  // removal stamp
    auto rel = [&](StateId p, StateId q) { return removed[static_cast<std::size_t>(p) * nb + q] == kNone; };
    std::uint32_t stamp = 0;
    for (bool changed = true; changed;) {
        changed = false;
        for (StateId p = 0; p < na; ++p)
            for (StateId q = 0; q < nb; ++q) {
                if (!rel(p, q)) continue;
                for (const auto& t : a.out(p)) {
                    bool matched = false;
                    for (StateId q2 : options(q, t.label))
                        if (rel(t.dst, q2)) {
                            matched = true;
                            break;
                        }
                    if (!matched) {
                        removed[static_cast<std::size_t>(p) * nb + q] = stamp++;
                        changed = true;
                        break;
                    }
                }
            }
    }
    if (rel(a.initial(), b.initial())) return {true, {}, "the initial state is simulated"};

    Verdict v;
    StateId p = a.initial(), q = b.initial();
    while (true) {
        const auto mine = removed[static_cast<std::size_t>(p) * nb + q];
        const Transition* step = nullptr;
        for (const auto& t : a.out(p)) {
            bool earlier = true;
            for (StateId q2 : options(q, t.label))
                if (removed[static_cast<std::size_t>(t.dst) * nb + q2] >= mine) earlier = false;
            if (earlier) {
                step = &t;
                break;
            }
        }
        v.witness.push_back(a.label_text(step->label));
        StateId best = kNone;
        std::uint32_t best_stamp = 0;
        for (StateId q2 : options(q, step->label)) {
            const auto s = removed[static_cast<std::size_t>(step->dst) * nb + q2];
            if (best == kNone || s > best_stamp) {
                best = q2;
                best_stamp = s;
            }
        }
        if (best == kNone) {
            v.detail = "the second LTS cannot match '" + a.label_text(step->label) + "' at the end of " + render_trace(v.witness);
            return v;
        }
        p = step->dst;
        q = best;
    }
}

bool isomorphic(const Lts& a, const Lts& b) {
    if (a.num_states() != b.num_states() || a.num_transitions() != b.num_transitions()) return false;
    const Lts u = disjoint_union(a, b);
    const Partition part = bisimulation(u, Relation::Strong);
    const StateId na = a.num_states();
    std::vector<StateId> of_block(part.count, kNone);
    for (StateId s = 0; s < na; ++s) {
        if (of_block[part.block[s]] != kNone) throw std::invalid_argument("isomorphic() needs strongly minimal LTSs");
        of_block[part.block[s]] = s;
    }
    std::vector<StateId> map(b.num_states(), kNone);
    for (StateId s = 0; s < b.num_states(); ++s) {
        const auto x = of_block[part.block[s + na]];
        if (x == kNone) return false;
        map[s] = x;
    }
    if (map[b.initial()] != a.initial()) return false;
    std::vector<std::tuple<StateId, std::string, StateId>> ta, tb;
    for (const auto& t : a.transitions()) ta.emplace_back(t.src, a.label_text(t.label), t.dst);
    for (const auto& t : b.transitions()) tb.emplace_back(map[t.src], b.label_text(t.label), map[t.dst]);
    std::sort(ta.begin(), ta.end());
    std::sort(tb.begin(), tb.end());
    return ta == tb;
}

std::string render_trace(const std::vector<std::string>& trace) {
    if (trace.empty()) return "<empty trace>";
    std::string out;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (i) out += "; ";
        out += trace[i];
    }
    return out;
}

}  // namespace asyncdes
