#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "asyncdes/label.hpp"
#include "asyncdes/lts.hpp"

namespace asyncdes {

// Local state of one process: a control location, an auxiliary word (join
// masks, latched commands) and two data registers.
struct LocalState {
    std::uint32_t pc = 0;
    std::uint32_t aux = 0;
    std::uint64_t a = 0;
    std::uint64_t b = 0;

    friend constexpr bool operator==(const LocalState&, const LocalState&) = default;
};

struct LocalStateHash {
    std::size_t operator()(const LocalState& s) const noexcept {
        std::uint64_t h = (static_cast<std::uint64_t>(s.pc) << 32 | s.aux) * 0x9E3779B97F4A7C15ull;
        h ^= s.a + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2);
        h ^= s.b + 0x94D049BB133111EBull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h ^ (h >> 31));
    }
};

// One locally enabled action. Emitting moves carry their offer and successor;
// receiving moves carry the offer type and a tag handed back to accept().
struct Move {
    GateId gate = kTauGate;
    bool has_offer = false;
    bool receive = false;
    Value value{};
    ValueType type{};
    std::uint16_t tag = 0;
    LocalState next{};

    static Move tau(const LocalState& next) { return Move{kTauGate, false, false, {}, {}, 0, next}; }
    static Move sync(GateId g, const LocalState& next) { return Move{g, false, false, {}, {}, 0, next}; }
    static Move emit(GateId g, const Value& v, const LocalState& next) { return Move{g, true, false, v, {}, 0, next}; }
    static Move recv(GateId g, const ValueType& t, std::uint16_t tag) { return Move{g, true, true, {}, t, tag, {}}; }
};

// A sequential process: a deterministic local transition generator over the
// gates it synchronizes on. Implementations are immutable and thread-safe.
class Process {
public:
    Process(std::string name, std::vector<GateId> gates);
    virtual ~Process() = default;

    const std::string& name() const { return name_; }
    const std::vector<GateId>& gates() const { return gates_; }
    bool uses(GateId g) const;

    virtual LocalState initial() const = 0;
    virtual void moves(const LocalState& s, std::vector<Move>& out) const = 0;
    // Successor after receiving `v` through the move with `tag`.
    virtual LocalState accept(const LocalState& s, std::uint16_t tag, const Value& v) const;

private:
    std::string name_;
    std::vector<GateId> gates_;
};

using ProcessPtr = std::shared_ptr<const Process>;

// An explicit LTS used as a network component (the result of a compositional
// step). Every label must be a rendezvous with fixed offers or "i".
class LtsProcess final : public Process {
public:
    // `net_labels[l]` is the structured form of lts label l. `gates` is the
    // synchronization interface; it may include gates the LTS never uses.
    LtsProcess(std::string name, std::vector<GateId> gates, Lts lts, std::vector<NetLabel> net_labels);

    LocalState initial() const override { return LocalState{lts_.initial(), 0, 0, 0}; }
    void moves(const LocalState& s, std::vector<Move>& out) const override;
    const Lts& lts() const { return lts_; }

private:
    Lts lts_;
    std::vector<NetLabel> net_labels_;
};

// Enumerates the local LTS of a single process by closing every receive over
// the enumerable value types. Throws if a receive is over concrete words or
// more than `max_states` local states are found.
Lts local_lts(const Process& p, std::size_t max_states = 100000);

}  // namespace asyncdes
