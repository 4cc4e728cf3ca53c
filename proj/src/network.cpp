#include "asyncdes/network.hpp"

#include <algorithm>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "asyncdes/reduce.hpp"

namespace asyncdes {

Network::Network(std::vector<ProcessPtr> components) : components_(std::move(components)) {
    for (std::uint32_t c = 0; c < components_.size(); ++c) {
        for (GateId g : components_[c]->gates()) {
            if (g >= rule_index_.size()) rule_index_.resize(static_cast<std::size_t>(g) + 1, -1);
            if (rule_index_[g] < 0) {
                rule_index_[g] = static_cast<std::int32_t>(rules_.size());
                rules_.push_back({g, {}});
            }
            rules_[static_cast<std::size_t>(rule_index_[g])].participants.push_back(c);
        }
    }
}

const SyncRule* Network::rule(GateId g) const {
    if (g >= rule_index_.size() || rule_index_[g] < 0) return nullptr;
    return &rules_[static_cast<std::size_t>(rule_index_[g])];
}

std::size_t Network::index_of(std::string_view component) const {
    for (std::size_t i = 0; i < components_.size(); ++i)
        if (components_[i]->name() == component) return i;
    throw std::invalid_argument("no component named '" + std::string(component) + "'");
}

void Network::hide(const std::vector<std::string>& gates) {
    for (const auto& name : gates) {
        const GateId g = gate_id(name);
        if (g >= hidden_.size()) hidden_.resize(static_cast<std::size_t>(g) + 1, 0);
        hidden_[g] = 1;
    }
}

void Network::hide_all_but(const std::vector<std::string>& gates) {
    hidden_.assign(hidden_.size(), 0);
    std::vector<std::string> rest;
    for (const auto& r : rules_)
        if (std::find(gates.begin(), gates.end(), gate_name(r.gate)) == gates.end()) rest.push_back(gate_name(r.gate));
    hide(rest);
}

std::vector<std::string> Network::visible_gates() const {
    std::vector<std::string> out;
    for (const auto& r : rules_)
        if (!hidden(r.gate)) out.push_back(gate_name(r.gate));
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// CRYPT, KEY, DATA, then the expected OUTPUT, then stop.
class SampleEnvironment final : public Process {
public:
    SampleEnvironment(BitDomain d, const SampleRun& s)
        : Process("ENV", {gate_id(gates::kCrypt), gate_id(gates::kKey), gate_id(gates::kData), gate_id(gates::kOutput)}),
          values_{Value::boolean(s.encrypt), word_value(d, 64, s.key), word_value(d, 64, s.data),
                  word_value(d, 64, des_apply(d, Word64(s.data), Word64(s.key), s.encrypt).bits)} {}
    LocalState initial() const override { return {}; }
    void moves(const LocalState& s, std::vector<Move>& out) const override {
        static const std::string_view order[] = {gates::kCrypt, gates::kKey, gates::kData, gates::kOutput};
        if (s.pc < 4) out.push_back(Move::emit(gate_id(order[s.pc]), values_[s.pc], LocalState{s.pc + 1, 0, 0, 0}));
    }

private:
    Value values_[4];
};

}  // namespace

ProcessPtr sample_environment(BitDomain domain, const SampleRun& sample) {
    return std::make_shared<SampleEnvironment>(domain, sample);
}

Network des_network(BitDomain domain, const SemanticsOptions& options, bool closed, const SampleRun& sample,
                    std::span<const int> schedule) {
    std::vector<ProcessPtr> cs;
    for (BlockId id : all_blocks()) cs.push_back(make_block(id, domain, options, schedule));
    if (closed) cs.push_back(sample_environment(domain, sample));
    Network net(std::move(cs));
    net.hide_all_but(observable_gates());
    return net;
}

// ---------------------------------------------------------------------------
// Successor generation

Stepper::Stepper(const Network& net, FreeValues free_values) : net_(net), free_(std::move(free_values)) {
    if (!free_)
        free_ = [](GateId g, const ValueType& t, std::vector<Value>& out) {
            if (!t.enumerable())
                throw OpenNetworkError("nobody emits on gate " + gate_name(g) +
                                       " and its offers cannot be enumerated; close the network with an environment");
            out = t.enumerate();
        };
}

std::vector<LocalState> Stepper::initial() const {
    std::vector<LocalState> s;
    for (const auto& c : net_.components()) s.push_back(c->initial());
    return s;
}

void Stepper::steps(std::span<const LocalState> state, std::vector<GlobalStep>& out) const {
    out.clear();
    const auto& comps = net_.components();
    const std::size_t n = comps.size();
    thread_local std::vector<Move> moves;
    thread_local std::vector<std::size_t> off;
    thread_local std::vector<std::vector<std::size_t>> cand;
    thread_local std::vector<std::size_t> pick;
    thread_local std::vector<Value> free_vals;
    moves.clear();
    off.assign(n + 1, 0);
    for (std::size_t c = 0; c < n; ++c) {
        off[c] = moves.size();
        comps[c]->moves(state[c], moves);
    }
    off[n] = moves.size();

    for (std::uint32_t c = 0; c < n; ++c) {
        for (std::size_t k = off[c]; k < off[c + 1]; ++k) {
            const Move& m = moves[k];
            if (m.gate == kTauGate) {
                out.push_back({kTau, {{c, m.next}}});
                continue;
            }
            const SyncRule* rule = net_.rule(m.gate);
            if (rule->participants.front() != c) continue;
            const auto& ps = rule->participants;
            cand.resize(ps.size());
            cand[0].assign(1, k);
            bool possible = true;
            for (std::size_t j = 1; j < ps.size() && possible; ++j) {
                cand[j].clear();
                for (std::size_t q = off[ps[j]]; q < off[ps[j] + 1]; ++q)
                    if (moves[q].gate == m.gate) cand[j].push_back(q);
                possible = !cand[j].empty();
            }
            if (!possible) continue;

            pick.assign(ps.size(), 0);
            while (true) {
                // Unify the offers of one combination of participant moves.
                const Move* emitter = nullptr;
                const Move* receiver = nullptr;
                bool ok = true;
                for (std::size_t j = 0; j < ps.size() && ok; ++j) {
                    const Move& x = moves[cand[j][pick[j]]];
                    if (x.has_offer != m.has_offer) ok = false;
                    else if (!x.receive) {
                        if (emitter && !(emitter->value == x.value)) ok = false;
                        if (!emitter) emitter = &x;
                    } else if (!receiver) {
                        receiver = &x;
                    }
                }
                if (ok) {
                    free_vals.clear();
                    if (!m.has_offer || emitter)
                        free_vals.push_back(emitter ? emitter->value : Value{});
                    else
                        free_(m.gate, receiver->type, free_vals);
                    for (const Value& v : free_vals) {
                        bool admitted = true;
                        for (std::size_t j = 0; j < ps.size() && admitted; ++j) {
                            const Move& x = moves[cand[j][pick[j]]];
                            if (x.receive && !x.type.admits(v)) admitted = false;
                        }
                        if (!admitted) continue;
                        GlobalStep st;
                        st.label = net_.hidden(m.gate) ? kTau : NetLabel{m.gate, m.has_offer, m.has_offer ? v : Value{}};
                        st.changes.reserve(ps.size());
                        for (std::size_t j = 0; j < ps.size(); ++j) {
                            const Move& x = moves[cand[j][pick[j]]];
                            st.changes.emplace_back(ps[j], x.receive ? comps[ps[j]]->accept(state[ps[j]], x.tag, v) : x.next);
                        }
                        out.push_back(std::move(st));
                    }
                }
                std::size_t j = ps.size();
                while (j > 1 && ++pick[j - 1] == cand[j - 1].size()) pick[--j] = 0;
                if (j <= 1) break;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Explicit exploration

namespace {

using LocalId = std::uint16_t;

class LocalTable {
public:
    LocalId intern(const LocalState& s, const std::string& owner) {
        auto [it, fresh] = ids_.emplace(s, static_cast<LocalId>(states_.size()));
        if (fresh) {
            if (states_.size() > 0xFFFF) throw std::length_error("more than 65536 local states in component " + owner);
            states_.push_back(s);
        }
        return it->second;
    }
    const LocalState& at(LocalId id) const { return states_[id]; }

private:
    std::unordered_map<LocalState, LocalId, LocalStateHash> ids_;
    std::vector<LocalState> states_;
};

// Open-addressing set of fixed-width state vectors, stored in fixed-size chunks
// so that growth never copies the vectors.
class StateTable {
public:
    explicit StateTable(std::size_t width) : width_(width), slots_(1u << 12, kEmpty) {}

    std::size_t size() const { return count_; }
    const LocalId* key(StateId s) const { return chunks_[s >> kChunkBits].data() + (s & kChunkMask) * width_; }

    std::pair<StateId, bool> insert(const LocalId* k) {
        if ((count_ + 1) * 2 > slots_.size()) grow();
        std::size_t i = hash(k) & (slots_.size() - 1);
        while (slots_[i] != kEmpty) {
            if (std::equal(k, k + width_, key(slots_[i]))) return {slots_[i], false};
            i = (i + 1) & (slots_.size() - 1);
        }
        if ((count_ & kChunkMask) == 0) {
            chunks_.emplace_back();
            chunks_.back().reserve((kChunkMask + 1) * width_);
        }
        const auto id = static_cast<StateId>(count_++);
        slots_[i] = id;
        chunks_.back().insert(chunks_.back().end(), k, k + width_);
        return {id, true};
    }

    void clear() {
        std::vector<std::vector<LocalId>>().swap(chunks_);
        std::vector<StateId>().swap(slots_);
        count_ = 0;
    }

private:
    static constexpr StateId kEmpty = ~StateId{0};
    static constexpr unsigned kChunkBits = 16;
    static constexpr std::size_t kChunkMask = (std::size_t{1} << kChunkBits) - 1;

    std::uint64_t hash(const LocalId* k) const {
        std::uint64_t h = 0x9E3779B97F4A7C15ull;
        for (std::size_t i = 0; i < width_; ++i) {
            h ^= k[i];
            h *= 0xBF58476D1CE4E5B9ull;
            h ^= h >> 31;
        }
        return h;
    }
    void grow() {
        std::vector<StateId> fresh(slots_.size() * 2, kEmpty);
        for (StateId s = 0; s < count_; ++s) {
            std::size_t i = hash(key(s)) & (fresh.size() - 1);
            while (fresh[i] != kEmpty) i = (i + 1) & (fresh.size() - 1);
            fresh[i] = s;
        }
        slots_.swap(fresh);
    }

    std::size_t width_;
    std::size_t count_ = 0;
    std::vector<std::vector<LocalId>> chunks_;
    std::vector<StateId> slots_;
};

// State numbering shared by both kernels; all mutation happens in add().
class Core {
public:
    Core(const Network& net, const ExploreOptions& opt)
        : net_(net), opt_(opt), locals_(net.size()), states_(net.size()), key_(net.size()) {
        const Stepper st(net);
        const auto init = st.initial();
        for (std::size_t c = 0; c < net.size(); ++c) key_[c] = locals_[c].intern(init[c], net.components()[c]->name());
        states_.insert(key_.data());
    }

    std::size_t size() const { return states_.size(); }
    std::size_t transitions() const { return transitions_; }

    void decode(StateId s, std::vector<LocalState>& out) const {
        out.resize(net_.size());
        const LocalId* k = states_.key(s);
        for (std::size_t c = 0; c < net_.size(); ++c) out[c] = locals_[c].at(k[c]);
    }

    std::pair<StateId, bool> add(StateId src, const GlobalStep& step) {
        std::copy_n(states_.key(src), net_.size(), key_.data());
        for (const auto& [c, next] : step.changes) key_[c] = locals_[c].intern(next, net_.components()[c]->name());
        const auto r = states_.insert(key_.data());
        if (r.second && states_.size() > opt_.max_states) throw ExplorationLimitError(states_.size(), transitions_);
        if (++transitions_ > opt_.max_transitions) throw ExplorationLimitError(states_.size(), transitions_);
        return r;
    }

    void release() { states_.clear(); }

private:
    const Network& net_;
    ExploreOptions opt_;
    std::vector<LocalTable> locals_;
    StateTable states_;
    std::vector<LocalId> key_;
    std::size_t transitions_ = 0;
};

struct BfsResult {
    std::size_t depth = 0;
    StateId expanded = 0;
};

// `sink(src, step, dst, fresh)` sees every transition in canonical order;
// `done(s, n)` is called once s has been expanded with n successors.
template <class Sink, class Done>
BfsResult bfs_serial(const Network& net, Core& core, const ExploreOptions& opt, Sink&& sink, Done&& done) {
    const Stepper stepper(net);
    std::vector<LocalState> cur;
    std::vector<GlobalStep> steps;
    BfsResult r;
    std::size_t level_end = 1;
    StateId s = 0;
    for (; s < core.size(); ++s) {
        if (s == level_end) {
            ++r.depth;
            level_end = core.size();
            if (opt.max_depth && r.depth >= opt.max_depth) break;
        }
        core.decode(s, cur);
        stepper.steps(cur, steps);
        for (const auto& st : steps) {
            const auto [dst, fresh] = core.add(s, st);
            sink(s, st, dst, fresh);
        }
        done(s, steps.size());
    }
    if (s == core.size()) ++r.depth;
    r.expanded = s;
    return r;
}

template <class Sink, class Done>
BfsResult bfs_parallel(const Network& net, Core& core, const ExploreOptions& opt, int jobs, Sink&& sink, Done&& done) {
    const Stepper stepper(net);
    constexpr std::size_t kChunk = 1 << 14;
    std::vector<std::vector<GlobalStep>> results(kChunk);
    BfsResult r;
    StateId lo = 0;
    while (lo < core.size()) {
        if (opt.max_depth && r.depth >= opt.max_depth) break;
        const auto hi = static_cast<StateId>(core.size());
        for (StateId base = lo; base < hi; base += kChunk) {
            const auto n = static_cast<std::int64_t>(std::min<std::size_t>(kChunk, hi - base));
            // Successor generation only reads the tables; numbering is sequential.
#pragma omp parallel for num_threads(jobs) schedule(dynamic, 64)
            for (std::int64_t i = 0; i < n; ++i) {
                std::vector<LocalState> cur;
                core.decode(base + static_cast<StateId>(i), cur);
                stepper.steps(cur, results[static_cast<std::size_t>(i)]);
            }
            for (std::int64_t i = 0; i < n; ++i) {
                const StateId s = base + static_cast<StateId>(i);
                for (const auto& st : results[static_cast<std::size_t>(i)]) {
                    const auto [dst, fresh] = core.add(s, st);
                    sink(s, st, dst, fresh);
                }
                done(s, results[static_cast<std::size_t>(i)].size());
            }
        }
        lo = hi;
        ++r.depth;
    }
    r.expanded = lo;
    return r;
}

// Collects the explicit LTS.
class LtsSink {
public:
    void operator()(StateId src, const GlobalStep& step, StateId dst, bool) { ts_.push_back({src, label(step.label), dst}); }

    Exploration finish(Core& core, const BfsResult& r) {
        const auto n = static_cast<StateId>(core.size());
        core.release();
        Exploration e;
        e.lts = Lts(n, 0, std::move(labels_), std::move(ts_));
        for (const auto& [l, id] : label_ids_) e.alphabet.emplace(render(l), l);
        e.depth = r.depth;
        e.expanded = r.expanded;
        return e;
    }

private:
    LabelId label(const NetLabel& l) {
        if (l.is_tau()) return kTauLabel;
        auto it = label_ids_.find(l);
        if (it != label_ids_.end()) return it->second;
        const LabelId id = labels_.intern(render(l));
        label_ids_.emplace(l, id);
        return id;
    }

    LabelTable labels_;
    std::unordered_map<NetLabel, LabelId, NetLabelHash> label_ids_;
    std::vector<Transition> ts_;
};

}  // namespace

Exploration explore_serial(const Network& net, const ExploreOptions& opt) {
    Core core(net, opt);
    LtsSink sink;
    const auto r = bfs_serial(net, core, opt, sink, [](StateId, std::size_t) {});
    return sink.finish(core, r);
}

Exploration explore_parallel(const Network& net, const ExploreOptions& opt, int jobs) {
    Core core(net, opt);
    LtsSink sink;
    const auto r = bfs_parallel(net, core, opt, jobs, sink, [](StateId, std::size_t) {});
    return sink.finish(core, r);
}

Exploration explore(const Network& net, const ExploreOptions& options) {
    if (options.jobs <= 1) return explore_serial(net, options);
    return explore_parallel(net, options, options.jobs);
}

VisitSummary visit_state_space(const Network& net, StateSpaceVisitor& visitor, const ExploreOptions& options) {
    Core core(net, options);
    visitor.on_state(0, kTauGate, 0);
    auto sink = [&](StateId src, const GlobalStep& step, StateId dst, bool fresh) {
        if (fresh) visitor.on_state(dst, step.label.gate, src);
        visitor.on_transition(src, step.label, dst, fresh);
    };
    auto done = [&](StateId s, std::size_t n) { visitor.on_expanded(s, n); };
    const auto r = options.jobs <= 1 ? bfs_serial(net, core, options, sink, done)
                                     : bfs_parallel(net, core, options, options.jobs, sink, done);
    return {core.size(), core.transitions(), r.depth, r.expanded};
}

ProcessPtr as_process(std::string name, std::vector<GateId> interface, const Lts& lts, const Alphabet& alphabet) {
    std::vector<NetLabel> nl(lts.labels().size(), kTau);
    for (LabelId l = 1; l < lts.labels().size(); ++l) {
        auto it = alphabet.find(lts.label_text(l));
        if (it == alphabet.end()) throw std::invalid_argument("label '" + lts.label_text(l) + "' has no structured form");
        nl[l] = it->second;
    }
    return std::make_shared<LtsProcess>(std::move(name), std::move(interface), lts, std::move(nl));
}

// ---------------------------------------------------------------------------
// Compositional generation

Exploration compose_incremental(const Network& net, const std::vector<ComposeStep>& plan, Relation relation,
                                ComposeReport* report, const ExploreOptions& options) {
    struct Entity {
        ProcessPtr proc;
        std::vector<std::uint32_t> members;
        bool used = false;
    };
    std::map<std::string, Entity> entities;
    for (std::uint32_t c = 0; c < net.size(); ++c) {
        const auto& p = net.components()[c];
        if (!entities.emplace(p->name(), Entity{p, {c}}).second)
            throw std::invalid_argument("duplicate component name '" + p->name() + "'");
    }
    if (plan.empty()) throw std::invalid_argument("empty composition plan");

    Exploration result;
    for (std::size_t k = 0; k < plan.size(); ++k) {
        const auto& step = plan[k];
        std::vector<ProcessPtr> procs;
        std::vector<std::uint32_t> members;
        for (const auto& part : step.parts) {
            auto it = entities.find(part);
            if (it == entities.end()) throw std::invalid_argument("plan step '" + step.name + "' references unknown '" + part + "'");
            if (it->second.used) throw std::invalid_argument("plan step '" + step.name + "' reuses '" + part + "'");
            it->second.used = true;
            procs.push_back(it->second.proc);
            members.insert(members.end(), it->second.members.begin(), it->second.members.end());
        }
        std::sort(members.begin(), members.end());

        Network sub(procs);
        std::vector<std::string> hide;
        std::vector<GateId> interface;
        for (const auto& r : sub.rules()) {
            const auto& all = net.rule(r.gate)->participants;
            const bool internal = std::includes(members.begin(), members.end(), all.begin(), all.end());
            if (internal && net.hidden(r.gate))
                hide.push_back(gate_name(r.gate));
            else
                interface.push_back(r.gate);
        }
        sub.hide(hide);
        Exploration e = explore(sub, options);
        Lts m = minimize(e.lts, relation);
        if (report) {
            report->steps.push_back({step.name, e.lts.num_states(), e.lts.num_transitions(), m.num_states(), m.num_transitions()});
            report->peak_states = std::max<std::size_t>(report->peak_states, e.lts.num_states());
        }
        if (k + 1 == plan.size()) {
            if (members.size() != net.size()) throw std::invalid_argument("the last plan step does not cover every component");
            result.lts = std::move(m);
            result.alphabet = std::move(e.alphabet);
            result.expanded = result.lts.num_states();
            break;
        }
        auto proc = as_process(step.name, interface, m, e.alphabet);
        if (!entities.emplace(step.name, Entity{proc, members}).second)
            throw std::invalid_argument("duplicate plan step name '" + step.name + "'");
    }
    // Keep only labels that survive.
    Alphabet kept;
    for (const auto& text : result.lts.labels().texts())
        if (auto it = result.alphabet.find(text); it != result.alphabet.end()) kept.insert(*it);
    result.alphabet = std::move(kept);
    return result;
}

std::vector<ComposeStep> des_plan(const Network& net) {
    std::vector<ComposeStep> plan{
        {"CIPHER", {"E", "XOR48", "SBOX_1", "SBOX_2", "SBOX_3", "SBOX_4", "SBOX_5", "SBOX_6", "SBOX_7", "SBOX_8", "P"}},
        {"DATA_PATH", {"IP", "CHOOSE_L", "CHOOSE_R", "XOR32", "FP", "CIPHER"}},
        {"KEY_PATH", {"PC1", "CHOOSE_K", "SHIFT_C", "SHIFT_D", "DUP_K", "PC2"}},
        {"CONTROLLER", {"COUNTER", "CTRL_MUX_L", "CTRL_MUX_R", "CTRL_MUX_K", "CTRL_DMUX_K", "CTRL_SHIFT"}},
        {"CONTROL_KEYS", {"CONTROLLER", "KEY_PATH"}},
        {"DES", {"CONTROL_KEYS", "DATA_PATH"}},
    };
    for (const auto& p : net.components())
        if (p->name() == "ENV") plan.back().parts.push_back("ENV");
    return plan;
}

}  // namespace asyncdes
