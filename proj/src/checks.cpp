#include "asyncdes/checks.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

namespace asyncdes {

std::string CheckReport::line() const {
    return "PROPERTY_" + std::to_string(property) + ": " + (pass ? "PASS" : "FAIL") + " — " + detail;
}

namespace {

std::vector<std::string> trace_of(const Lts& lts, const std::vector<Transition>& path) {
    std::vector<std::string> t;
    for (const auto& tr : path) t.push_back(lts.label_text(tr.label));
    return t;
}

std::string plural(std::size_t n, const char* what) { return std::to_string(n) + " " + what + (n == 1 ? "" : "s"); }

// Reachable (state, counters) pairs where the counters are DATA, CRYPT and
// KEY inputs minus OUTPUTs along the path.
struct CounterProduct {
    static constexpr int kData = 0, kCrypt = 1, kKey = 2, kOutput = 3;
    static constexpr long long kCap = 64;

    std::vector<StateId> state;
    std::vector<std::array<long long, 3>> count;
    std::vector<std::uint32_t> parent;
    std::vector<LabelId> via;
    std::vector<std::vector<std::pair<LabelId, std::uint32_t>>> succ;
    std::vector<int> kind;  // per label
    bool bounded = true;
    bool consistent = true;

    explicit CounterProduct(const Lts& lts) {
        kind.assign(lts.labels().size(), -1);
        for (LabelId l = 1; l < lts.labels().size(); ++l) {
            const auto g = gate_of(lts.label_text(l));
            kind[l] = g == "DATA" ? kData : g == "CRYPT" ? kCrypt : g == "KEY" ? kKey : g == "OUTPUT" ? kOutput : -1;
        }
        std::map<std::pair<StateId, std::array<long long, 3>>, std::uint32_t> index;
        std::vector<std::array<long long, 3>> seen_count(lts.num_states());
        std::vector<char> seen(lts.num_states(), 0);
        auto add = [&](StateId s, const std::array<long long, 3>& c, std::uint32_t from, LabelId l) {
            auto [it, fresh] = index.emplace(std::make_pair(s, c), static_cast<std::uint32_t>(state.size()));
            if (fresh) {
                state.push_back(s);
                count.push_back(c);
                parent.push_back(from);
                via.push_back(l);
                succ.emplace_back();
                if (seen[s] && seen_count[s] != c) consistent = false;
                seen[s] = 1;
                seen_count[s] = c;
            }
            return it->second;
        };
        add(lts.initial(), {0, 0, 0}, ~0u, kTauLabel);
        for (std::uint32_t i = 0; i < state.size(); ++i) {
            for (const auto& t : lts.out(state[i])) {
                auto c = count[i];
                const int k = kind[t.label];
                if (k == kOutput)
                    for (auto& x : c) --x;
                else if (k >= 0)
                    ++c[static_cast<std::size_t>(k)];
                if (std::any_of(c.begin(), c.end(), [](long long x) { return x > kCap || x < -kCap; })) {
                    bounded = false;
                    continue;
                }
                const auto j = add(t.dst, c, i, t.label);
                succ[i].push_back({t.label, j});
            }
        }
    }

    std::vector<std::string> path_to(const Lts& lts, std::uint32_t node) const {
        std::vector<std::string> t;
        for (auto x = node; parent[x] != ~0u; x = parent[x]) t.push_back(lts.label_text(via[x]));
        std::reverse(t.begin(), t.end());
        return t;
    }
};

}  // namespace

// ---------------------------------------------------------------------------
// Models

Exploration abstract_model(const ModelConfig& config, ComposeReport* report) {
    Network net = des_network(BitDomain::Abstract, config.options, false, {}, config.schedule);
    net.hide_all_but(config.visible);
    ExploreOptions eo;
    eo.jobs = config.jobs;
    return compose_incremental(net, des_plan(net), Relation::Branching, report, eo);
}

Exploration sample_model(const SampleRun& run, const SemanticsOptions& options, const ExploreOptions& explore_options) {
    return explore(des_network(BitDomain::Concrete, options, true, run), explore_options);
}

// ---------------------------------------------------------------------------
// P1 - P4

CheckReport check_deadlock(const Lts& lts, bool allow_terminal) {
    CheckReport r;
    r.property = 1;
    std::vector<char> before_output(lts.num_states(), 0);
    if (allow_terminal) {
        std::vector<StateId> q{lts.initial()};
        before_output[lts.initial()] = 1;
        for (std::size_t i = 0; i < q.size(); ++i)
            for (const auto& t : lts.out(q[i]))
                if (gate_of(lts.label_text(t.label)) != "OUTPUT" && !before_output[t.dst]) {
                    before_output[t.dst] = 1;
                    q.push_back(t.dst);
                }
    }
    std::size_t deadlocks = 0, terminal = 0;
    std::optional<StateId> bad;
    std::vector<char> reachable(lts.num_states(), 0);
    {
        std::vector<StateId> q{lts.initial()};
        reachable[lts.initial()] = 1;
        for (std::size_t i = 0; i < q.size(); ++i)
            for (const auto& t : lts.out(q[i]))
                if (!reachable[t.dst]) {
                    reachable[t.dst] = 1;
                    q.push_back(t.dst);
                }
    }
    for (StateId s = 0; s < lts.num_states(); ++s) {
        if (!reachable[s] || !lts.out(s).empty()) continue;
        if (allow_terminal && !before_output[s]) {
            ++terminal;
            continue;
        }
        ++deadlocks;
        if (!bad) bad = s;
    }
    r.measures.push_back({"deadlocks", static_cast<long long>(deadlocks)});
    r.pass = deadlocks == 0;
    if (r.pass) {
        r.detail = "no deadlock among " + plural(lts.num_states(), "state");
        if (allow_terminal) r.detail += " (" + plural(terminal, "terminal state") + " after OUTPUT)";
    } else {
        r.witnesses.push_back(trace_of(lts, shortest_path(lts, *bad)));
        r.detail = plural(deadlocks, "deadlock state") + ", shortest trace: " + render_trace(r.witnesses.back());
    }
    return r;
}

CheckReport check_inevitable_output(const Lts& lts) {
    CheckReport r;
    r.property = 2;
    const CounterProduct p(lts);
    const auto n = static_cast<std::uint32_t>(p.state.size());
    if (!p.bounded) {
        r.detail = "input counters are unbounded";
        return r;
    }
    // Nodes reachable without OUTPUT from a node holding a full triplet.
    std::vector<char> in(n, 0);
    std::vector<std::uint32_t> q;
    std::size_t roots = 0;
    for (std::uint32_t i = 0; i < n; ++i)
        if (std::all_of(p.count[i].begin(), p.count[i].end(), [](long long x) { return x >= 1; })) {
            in[i] = 1;
            q.push_back(i);
            ++roots;
        }
    for (std::size_t i = 0; i < q.size(); ++i)
        for (const auto& [l, j] : p.succ[q[i]])
            if (p.kind[l] != CounterProduct::kOutput && !in[j]) {
                in[j] = 1;
                q.push_back(j);
            }
    for (auto i : q)
        if (p.succ[i].empty()) {
            r.witnesses.push_back(p.path_to(lts, i));
            r.detail = "deadlock before OUTPUT after " + render_trace(r.witnesses.back());
            return r;
        }
    // Cycle search restricted to those nodes, without OUTPUT edges.
    std::vector<char> color(n, 0);
    std::vector<std::uint32_t> on_stack_parent(n, ~0u);
    for (auto root : q) {
        if (color[root]) continue;
        std::vector<std::pair<std::uint32_t, std::size_t>> st{{root, 0}};
        color[root] = 1;
        while (!st.empty()) {
            auto& [u, k] = st.back();
            if (k == p.succ[u].size()) {
                color[u] = 2;
                st.pop_back();
                continue;
            }
            const auto [l, v] = p.succ[u][k++];
            if (p.kind[l] == CounterProduct::kOutput || !in[v]) continue;
            if (color[v] == 1) {
                // Lasso: path to v, then the stack from v back to v.
                auto trace = p.path_to(lts, v);
                trace.push_back("(");
                bool started = false;
                for (std::size_t i = 0; i < st.size(); ++i) {
                    if (st[i].first == v) started = true;
                    if (started && i + 1 < st.size()) trace.push_back(lts.label_text(p.succ[st[i].first][st[i].second - 1].first));
                }
                trace.push_back(lts.label_text(l));
                trace.push_back(")*");
                r.witnesses.push_back(trace);
                r.detail = "cycle without OUTPUT after a complete triplet: " + render_trace(trace);
                return r;
            }
            if (color[v] == 0) {
                color[v] = 1;
                st.push_back({v, 0});
            }
        }
    }
    r.pass = true;
    r.detail = "OUTPUT is inevitable from all " + plural(roots, "state") + " holding a complete input triplet";
    r.measures.push_back({"triplet_states", static_cast<long long>(roots)});
    return r;
}

PipelineDepth measure_pipeline_depth(const Lts& lts, std::string_view gate) {
    const int k = gate == "DATA" ? 0 : gate == "CRYPT" ? 1 : gate == "KEY" ? 2 : -1;
    if (k < 0) throw std::invalid_argument("pipeline depth is defined for DATA, CRYPT and KEY");
    const CounterProduct p(lts);
    PipelineDepth d;
    d.gate = std::string(gate);
    d.states = p.state.size();
    d.consistent = p.consistent;
    d.bounded = p.bounded;
    std::uint32_t best = 0;
    for (std::uint32_t i = 0; i < p.state.size(); ++i)
        if (p.count[i][static_cast<std::size_t>(k)] > p.count[best][static_cast<std::size_t>(k)]) best = i;
    d.n_max = p.count[best][static_cast<std::size_t>(k)];
    d.witness = p.path_to(lts, best);
    return d;
}

CheckReport check_pipeline_depth(const Lts& lts) {
    CheckReport r;
    r.property = 3;
    r.pass = true;
    std::string detail;
    for (const char* g : {"DATA", "CRYPT", "KEY"}) {
        const auto d = measure_pipeline_depth(lts, g);
        r.measures.push_back({std::string("N_") + g, d.n_max});
        r.witnesses.push_back(d.witness);
        if (!detail.empty()) detail += ", ";
        detail += "N_" + d.gate + "=" + std::to_string(d.n_max);
        if (!d.bounded || !d.consistent || d.n_max < 1) r.pass = false;
        if (!d.bounded) detail += " (unbounded)";
        if (!d.consistent) detail += " (counter not a state function)";
    }
    r.detail = detail + "; bound checked on every reachable state, each value attained by a witness trace";
    return r;
}

Lts subkey_reference(int subkeys, int crypt_after) {
    if (subkeys < 1 || crypt_after < 0 || crypt_after > subkeys) throw std::invalid_argument("bad reference automaton shape");
    // State (i, c): i subkeys of the current run produced, c: next CRYPT taken.
    // The initial state is (subkeys, false), i.e. between two runs.
    auto id = [&](int i, bool c) { return static_cast<StateId>(2 * i + (c ? 1 : 0)); };
    LabelTable labels;
    const LabelId crypt = labels.intern("CRYPT"), subkey = labels.intern("SUBKEY");
    std::vector<Transition> ts;
    for (int i = 1; i <= subkeys; ++i) {
        for (bool c : {false, true}) {
            if (i < subkeys) ts.push_back({id(i, c), subkey, id(i + 1, c)});
            if (!c && i >= crypt_after) ts.push_back({id(i, false), crypt, id(i, true)});
        }
    }
    ts.push_back({id(subkeys, true), subkey, id(1, false)});
    if (crypt_after == 0)
        for (int i = 1; i <= subkeys; ++i) ts.push_back({id(i, false), crypt, id(i, true)});
    return reachable_part(Lts(static_cast<StateId>(2 * subkeys + 2), id(subkeys, false), std::move(labels), std::move(ts)));
}

CheckReport check_subkey_schedule(const Lts& subkey_view, const Lts& reference) {
    CheckReport r;
    r.property = 4;
    const Lts view = minimize(strip_offers(hide_all_but(subkey_view, {"SUBKEY", "CRYPT"})), Relation::Branching);
    const auto v = equivalent(view, reference, Relation::Branching);
    std::size_t subkeys = 0;
    for (const auto& t : reference.transitions()) subkeys += reference.label_text(t.label) == "SUBKEY";
    r.measures.push_back({"view_states", view.num_states()});
    r.measures.push_back({"view_transitions", static_cast<long long>(view.num_transitions())});
    r.pass = v.holds;
    if (v.holds) {
        r.detail = "SUBKEY/CRYPT view (" + plural(view.num_states(), "state") + ") is branching equivalent to the " +
                   std::to_string(reference.num_states()) + "-state reference cycle";
    } else {
        r.witnesses.push_back(v.witness);
        r.detail = "SUBKEY/CRYPT view differs from the reference cycle: " + v.detail;
    }
    return r;
}

CheckReport check_subkey_schedule(const ModelConfig& config) {
    ModelConfig c = config;
    c.visible = {"SUBKEY", "CRYPT"};
    try {
        return check_subkey_schedule(abstract_model(c).lts);
    } catch (const std::exception& e) {
        CheckReport r;
        r.property = 4;
        r.detail = std::string("model generation failed: ") + e.what();
        return r;
    }
}

CheckReport check_sample_inclusion(const Lts& sample, const Lts& abstract) {
    CheckReport r;
    r.property = 6;
    const auto v = simulated_by(minimize(strip_offers(sample), Relation::Branching),
                                minimize(strip_offers(abstract), Relation::Branching), true);
    r.pass = v.holds;
    if (v.holds) {
        r.detail = "offer-stripped sample is weakly simulated by the offer-stripped abstract model";
    } else {
        r.witnesses.push_back(v.witness);
        r.detail = "inclusion fails: " + v.detail;
    }
    return r;
}

namespace {

// Append-only array in fixed chunks, so growth never copies.
template <typename T>
class Chunked {
public:
    void push_back(T v) {
        if (size_ % kChunk == 0) chunks_.emplace_back().reserve(kChunk);
        chunks_.back().push_back(v);
        ++size_;
    }
    T operator[](std::size_t i) const { return chunks_[i / kChunk][i % kChunk]; }
    std::size_t size() const { return size_; }

private:
    static constexpr std::size_t kChunk = std::size_t{1} << 20;
    std::vector<std::vector<T>> chunks_;
    std::size_t size_ = 0;
};

// Keeps the offer-stripped graph compactly: one target and one gate index per
// transition.
class SampleGraph final : public StateSpaceVisitor {
public:
    SampleGraph() { gates_.push_back("i"); }

    void on_transition(StateId, const NetLabel& label, StateId dst, bool) override {
        dst_.push_back(dst);
        label_.push_back(gate_index(label));
        if (!label.is_tau() && gate_name(label.gate) == gates::kOutput) ++outputs_;
    }

    void on_expanded(StateId, std::size_t successors) override {
        offsets_.push_back(dst_.size());
        terminal_ += successors == 0;
    }

    SampleQuotient quotient(const VisitSummary& v) const {
        SampleQuotient q;
        q.states = v.states;
        q.transitions = v.transitions;
        q.depth = v.depth;
        q.output_transitions = outputs_;
        q.terminal_states = terminal_;
        if (v.expanded != v.states) throw std::runtime_error("sample exploration was truncated");
        const auto p = branching_acyclic(v.states, [&](StateId s, std::vector<std::pair<LabelId, StateId>>& e) {
            for (std::size_t k = s == 0 ? 0 : offsets_[s - 1]; k < offsets_[s]; ++k) e.push_back({label_[k], dst_[k]});
        });
        LabelTable labels;
        std::vector<LabelId> lmap;
        for (const auto& g : gates_) lmap.push_back(labels.intern(g));
        std::set<std::tuple<StateId, LabelId, StateId>> ts;
        std::size_t k = 0;
        for (StateId s = 0; s < v.states; ++s)
            for (; k < offsets_[s]; ++k) {
                const auto b = p.block[s], c = p.block[dst_[k]];
                if (label_[k] == 0 && b == c) continue;
                ts.insert({b, lmap[label_[k]], c});
            }
        std::vector<Transition> tv;
        for (const auto& [b, l, c] : ts) tv.push_back({b, l, c});
        q.lts = Lts(p.count, p.block[0], std::move(labels), std::move(tv));
        return q;
    }

private:
    std::uint8_t gate_index(const NetLabel& l) {
        if (l.is_tau()) return 0;
        const std::string g = gate_name(l.gate);
        auto it = std::find(gates_.begin(), gates_.end(), g);
        if (it != gates_.end()) return static_cast<std::uint8_t>(it - gates_.begin());
        if (gates_.size() == 256) throw std::runtime_error("too many visible gates");
        gates_.push_back(g);
        return static_cast<std::uint8_t>(gates_.size() - 1);
    }

    std::vector<std::string> gates_;
    Chunked<StateId> dst_;
    Chunked<std::uint8_t> label_;
    Chunked<std::uint64_t> offsets_;
    std::size_t outputs_ = 0, terminal_ = 0;
};

}  // namespace

SampleQuotient sample_quotient(const SampleRun& run, const SemanticsOptions& options,
                               const ExploreOptions& explore_options) {
    const Network net = des_network(BitDomain::Concrete, options, true, run);
    SampleGraph g;
    const auto summary = visit_state_space(net, g, explore_options);
    return g.quotient(summary);
}

CheckReport check_sample_streaming(const SampleRun& run, const SemanticsOptions& options, const Lts& abstract,
                                   const ExploreOptions& explore_options) {
    CheckReport r;
    r.property = 6;
    SampleQuotient q;
    try {
        q = sample_quotient(run, options, explore_options);
    } catch (const std::exception& e) {
        r.detail = std::string("sample reduction failed: ") + e.what();
        return r;
    }
    const auto dl = check_deadlock(q.lts, true);
    const auto io = check_inevitable_output(q.lts);
    const auto inc = check_sample_inclusion(q.lts, abstract);
    r.pass = dl.pass && io.pass && inc.pass && q.output_transitions > 0;
    r.detail = "sample " + plural(q.states, "state") + ", " + plural(q.transitions, "transition") +
               ", reduced to " + plural(q.lts.num_states(), "state") + ", " +
               plural(q.lts.num_transitions(), "transition") + "; ";
    r.detail += dl.pass ? "no premature deadlock; " : "deadlock: " + dl.detail + "; ";
    r.detail += io.pass ? "OUTPUT inevitable; " : "OUTPUT not inevitable: " + io.detail + "; ";
    r.detail += inc.detail;
    for (const auto* c : {&dl, &io, &inc})
        for (const auto& w : c->witnesses) r.witnesses.push_back(w);
    r.measures = {{"sample_states", static_cast<long long>(q.states)},
                  {"sample_transitions", static_cast<long long>(q.transitions)},
                  {"sample_depth", static_cast<long long>(q.depth)},
                  {"reduced_states", static_cast<long long>(q.lts.num_states())},
                  {"reduced_transitions", static_cast<long long>(q.lts.num_transitions())},
                  {"output_transitions", static_cast<long long>(q.output_transitions)},
                  {"terminal_states", static_cast<long long>(q.terminal_states)}};
    return r;
}

CheckReport check_semantics_variants(const VariantOptions& options) {
    CheckReport r;
    r.property = 7;
    SemanticsOptions lotos;
    lotos.tau_on_join = true;
    ModelConfig a, b;
    a.jobs = b.jobs = options.jobs;
    b.options = lotos;
    const Lts ma = abstract_model(a).lts, mb = abstract_model(b).lts;
    const auto branching = equivalent(ma, mb, Relation::Branching);

    // Strong inequivalence on growing depth-bounded explorations.
    Verdict strong{true, {}, "no difference found"};
    std::size_t depth = 0;
    for (std::size_t d = 8; d <= options.max_depth && strong.holds; d *= 2) {
        ExploreOptions eo;
        eo.max_depth = d;
        eo.max_states = options.max_states;
        eo.jobs = options.jobs;
        Exploration ea, eb;
        try {
            ea = explore(des_network(BitDomain::Abstract, {}, false), eo);
            eb = explore(des_network(BitDomain::Abstract, lotos, false), eo);
        } catch (const ExplorationLimitError&) {
            break;
        }
        depth = std::min(ea.depth, eb.depth);
        strong = k_equivalent(ea.lts, eb.lts, depth);
    }
    r.pass = branching.holds && !strong.holds;
    r.measures.push_back({"strong_depth", static_cast<long long>(depth)});
    if (!strong.holds) r.witnesses.push_back(strong.witness);
    r.detail = std::string("branching: ") + (branching.holds ? "equivalent" : "NOT equivalent (" + branching.detail + ")") +
               "; strong: " +
               (strong.holds ? "no difference within depth " + std::to_string(depth)
                             : "NOT equivalent, distinguishing trace " + render_trace(strong.witness));
    return r;
}

// ---------------------------------------------------------------------------
// Prototype

struct Prototype::Impl {
    Network net;
    std::map<GateId, std::deque<Value>> queues;
    Stepper stepper;
    std::vector<LocalState> state;
    std::vector<GlobalStep> steps;

    Impl(BitDomain d, const SemanticsOptions& o)
        : net(des_network(d, o, false)),
          stepper(net, [this](GateId g, const ValueType&, std::vector<Value>& out) {
              auto it = queues.find(g);
              if (it != queues.end() && !it->second.empty()) out.push_back(it->second.front());
          }),
          state(stepper.initial()) {}
};

Prototype::Prototype(BitDomain domain, const SemanticsOptions& options)
    : impl_(new Impl(domain, options)), domain_(domain) {}

Prototype::~Prototype() { delete impl_; }

void Prototype::push(std::string_view gate, const Value& v) { impl_->queues[gate_id(gate)].push_back(v); }

void Prototype::feed(std::string_view line) {
    ++line_;
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    line = trim(line);
    if (line.empty()) return;
    const auto bang = line.find('!');
    if (bang == std::string_view::npos) throw PrototypeInputError(line_, "missing '!' before the offer");
    const auto gate = trim(line.substr(0, bang));
    const auto offer = trim(line.substr(bang + 1));
    if (gate == "CRYPT") {
        if (offer != "0" && offer != "1") throw PrototypeInputError(line_, "CRYPT takes 0 (decrypt) or 1 (encrypt)");
        push(gate, Value::boolean(offer == "1"));
    } else if (gate == "DATA" || gate == "KEY") {
        if (offer.size() != 16) throw PrototypeInputError(line_, std::string(gate) + " takes exactly sixteen hexadecimal digits");
        std::uint64_t v = 0;
        try {
            v = parse_hex64(offer).bits;
        } catch (const std::exception&) {
            throw PrototypeInputError(line_, "'" + std::string(offer) + "' is not hexadecimal");
        }
        push(gate, word_value(domain_, 64, v));
    } else {
        throw PrototypeInputError(line_, "unknown input gate '" + std::string(gate) + "'");
    }
}

std::vector<std::string> Prototype::run() {
    std::vector<std::string> outputs;
    auto& im = *impl_;
    while (true) {
        im.stepper.steps(im.state, im.steps);
        if (im.steps.empty()) break;
        const GlobalStep& st = im.steps.front();
        for (const auto& [c, next] : st.changes) im.state[c] = next;
        ++steps_;
        if (st.label.is_tau()) continue;
        const std::string text = render(st.label);
        trace_.push_back(text);
        if (gate_name(st.label.gate) == "OUTPUT") {
            outputs.push_back(text);
        } else if (auto it = im.queues.find(st.label.gate); it != im.queues.end() && !it->second.empty()) {
            it->second.pop_front();
        }
    }
    return outputs;
}

std::size_t run_prototype(std::istream& in, std::ostream& out, BitDomain domain, const SemanticsOptions& options,
                          std::ostream* trace) {
    Prototype p(domain, options);
    std::string line;
    std::size_t written = 0, logged = 0;
    auto flush = [&] {
        for (const auto& o : p.run()) {
            out << o << '\n';
            ++written;
        }
        out.flush();
        if (trace) {
            for (; logged < p.trace().size(); ++logged) *trace << p.trace()[logged] << '\n';
        }
    };
    while (std::getline(in, line)) {
        p.feed(line);
        flush();
    }
    flush();
    return written;
}

CheckReport check_prototype(int triples, int pairs, std::uint64_t seed) {
    CheckReport r;
    r.property = 5;
    std::mt19937_64 rng(seed);
    auto hex = [](std::uint64_t v) { return to_hex(Word64(v)); };
    const auto oracle_line = [&](std::uint64_t d, std::uint64_t k, bool e) {
        return "OUTPUT !" + hex(des_apply(BitDomain::Concrete, Word64(d), Word64(k), e).bits);
    };

    Prototype p;
    std::vector<std::string> expected, got;
    for (int i = 0; i < triples; ++i) {
        const std::uint64_t d = rng(), k = rng();
        const bool e = (rng() & 1) != 0;
        p.feed(std::string("CRYPT !") + (e ? "1" : "0"));
        p.feed("KEY !" + hex(k));
        p.feed("DATA !" + hex(d));
        expected.push_back(oracle_line(d, k, e));
        for (auto& o : p.run()) got.push_back(std::move(o));
    }
    std::size_t mismatches = expected.size() == got.size() ? 0 : expected.size();
    for (std::size_t i = 0; i < std::min(expected.size(), got.size()); ++i)
        if (expected[i] != got[i]) {
            if (!mismatches) r.witnesses.push_back({expected[i], got[i]});
            ++mismatches;
        }

    int reversible = 0;
    for (int i = 0; i < pairs; ++i) {
        const std::uint64_t d = rng(), k = rng();
        Prototype q;
        q.feed("CRYPT !1");
        q.feed("KEY !" + hex(k));
        q.feed("DATA !" + hex(d));
        const auto c = q.run();
        if (c.size() != 1) continue;
        q.feed("CRYPT !0");
        q.feed("KEY !" + hex(k));
        q.feed("DATA " + c[0].substr(c[0].find('!')));
        const auto back = q.run();
        if (back.size() == 1 && back[0] == "OUTPUT !" + hex(d)) ++reversible;
    }
    r.measures.push_back({"triples", triples});
    r.measures.push_back({"mismatches", static_cast<long long>(mismatches)});
    r.measures.push_back({"reversible_pairs", reversible});
    r.pass = mismatches == 0 && got.size() == expected.size() && reversible == pairs;
    r.detail = std::to_string(got.size()) + "/" + std::to_string(triples) + " outputs, " + std::to_string(mismatches) +
               " differing from des_apply; " + std::to_string(reversible) + "/" + std::to_string(pairs) +
               " encrypt/decrypt round trips restore the data";
    return r;
}

// ---------------------------------------------------------------------------
// Suite

std::vector<int> default_properties(BitDomain domain) {
    if (domain == BitDomain::Abstract) return {1, 2, 3, 4, 7};
    return {5, 6};
}

std::vector<CheckReport> run_checks(const std::vector<int>& properties, const SuiteOptions& opt) {
    std::vector<CheckReport> out;
    std::optional<Lts> abstract;
    auto model = [&]() -> const Lts& {
        if (!abstract) {
            ModelConfig c;
            c.options = opt.options;
            c.jobs = opt.jobs;
            abstract = abstract_model(c).lts;
        }
        return *abstract;
    };
    for (int k : properties) {
        switch (k) {
            case 1: out.push_back(check_deadlock(model())); break;
            case 2: out.push_back(check_inevitable_output(model())); break;
            case 3: out.push_back(check_pipeline_depth(model())); break;
            case 4: {
                ModelConfig c;
                c.options = opt.options;
                c.jobs = opt.jobs;
                out.push_back(check_subkey_schedule(c));
                break;
            }
            case 5: out.push_back(check_prototype(opt.triples, opt.pairs)); break;
            case 6: {
                ExploreOptions eo;
                eo.jobs = opt.jobs;
                out.push_back(check_sample_streaming({}, opt.options, model(), eo));
                break;
            }
            case 7: {
                VariantOptions vo;
                vo.jobs = opt.jobs;
                out.push_back(check_semantics_variants(vo));
                break;
            }
            default: throw std::invalid_argument("unknown property " + std::to_string(k) + " (expected 1..7)");
        }
    }
    return out;
}

}  // namespace asyncdes
