#include "asyncdes/process.hpp"

#include <algorithm>
#include <stdexcept>

namespace asyncdes {

Process::Process(std::string name, std::vector<GateId> gates) : name_(std::move(name)), gates_(std::move(gates)) {
    std::sort(gates_.begin(), gates_.end());
    gates_.erase(std::unique(gates_.begin(), gates_.end()), gates_.end());
    if (!gates_.empty() && gates_.front() == kTauGate) throw std::invalid_argument("a process cannot synchronize on i");
}

bool Process::uses(GateId g) const { return std::binary_search(gates_.begin(), gates_.end(), g); }

LocalState Process::accept(const LocalState&, std::uint16_t, const Value&) const {
    throw std::logic_error("process " + name_ + " has no receiving moves");
}

LtsProcess::LtsProcess(std::string name, std::vector<GateId> gates, Lts lts, std::vector<NetLabel> net_labels)
    : Process(std::move(name), std::move(gates)), lts_(std::move(lts)), net_labels_(std::move(net_labels)) {
    if (net_labels_.size() != lts_.labels().size()) throw std::invalid_argument("label map size mismatch");
    for (LabelId l = 1; l < net_labels_.size(); ++l)
        if (!net_labels_[l].is_tau() && !uses(net_labels_[l].gate))
            throw std::invalid_argument("label '" + lts_.label_text(l) + "' is outside the component interface");
}

void LtsProcess::moves(const LocalState& s, std::vector<Move>& out) const {
    for (const auto& t : lts_.out(s.pc)) {
        const NetLabel& l = net_labels_[t.label];
        const LocalState next{t.dst, 0, 0, 0};
        if (l.is_tau())
            out.push_back(Move::tau(next));
        else if (l.has_offer)
            out.push_back(Move::emit(l.gate, l.value, next));
        else
            out.push_back(Move::sync(l.gate, next));
    }
}

Lts local_lts(const Process& p, std::size_t max_states) {
    std::unordered_map<LocalState, StateId, LocalStateHash> index;
    std::vector<LocalState> states{p.initial()};
    index.emplace(states[0], 0);
    auto intern = [&](const LocalState& s) {
        auto [it, fresh] = index.emplace(s, static_cast<StateId>(states.size()));
        if (fresh) {
            if (states.size() >= max_states) throw std::length_error("local state space of " + p.name() + " is too large");
            states.push_back(s);
        }
        return it->second;
    };
    LabelTable labels;
    std::vector<Transition> ts;
    std::vector<Move> ms;
    for (std::size_t i = 0; i < states.size(); ++i) {
        ms.clear();
        p.moves(states[i], ms);
        const LocalState cur = states[i];
        for (const auto& m : ms) {
            if (m.receive) {
                if (!m.type.enumerable())
                    throw std::invalid_argument("process " + p.name() + " receives an infinite value type on " +
                                                gate_name(m.gate));
                for (const Value& v : m.type.enumerate()) {
                    const NetLabel l{m.gate, true, v};
                    const StateId dst = intern(p.accept(cur, m.tag, v));
                    ts.push_back({static_cast<StateId>(i), labels.intern(render(l)), dst});
                }
            } else {
                const NetLabel l{m.gate, m.has_offer, m.value};
                const StateId dst = intern(m.next);
                ts.push_back({static_cast<StateId>(i), labels.intern(render(l)), dst});
            }
        }
    }
    return Lts(static_cast<StateId>(states.size()), 0, std::move(labels), std::move(ts));
}

}  // namespace asyncdes
