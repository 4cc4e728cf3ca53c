#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace asyncdes {

// Gates are interned process-wide. Id 0 is reserved for the internal action.
using GateId = std::uint16_t;
inline constexpr GateId kTauGate = 0;

GateId gate_id(std::string_view name);
const std::string& gate_name(GateId g);
// Looks up without interning.
std::optional<GateId> find_gate(std::string_view name);

enum class ValueKind : std::uint8_t { None, Bool, Nat, Word, AbstractWord };

// An offer value. Concrete words keep their width for rendering; the abstract
// word is the single inhabitant of every bit-vector type.
struct Value {
    ValueKind kind = ValueKind::None;
    std::uint8_t width = 0;
    std::uint64_t bits = 0;

    static constexpr Value boolean(bool b) { return {ValueKind::Bool, 1, b ? 1u : 0u}; }
    static constexpr Value nat(std::uint64_t n) { return {ValueKind::Nat, 0, n}; }
    static constexpr Value word(int width, std::uint64_t b) { return {ValueKind::Word, static_cast<std::uint8_t>(width), b}; }
    static constexpr Value abstract_word(int width) { return {ValueKind::AbstractWord, static_cast<std::uint8_t>(width), 0}; }

    friend constexpr bool operator==(const Value&, const Value&) = default;
};

// Renders in LOTOS offer syntax without the leading '!': booleans as 0/1,
// naturals in decimal, words as uppercase hex (sixteen digits for 64 bits),
// the abstract word as '*'.
std::string render(const Value& v);

// Type of a received offer. Bool, Nat and abstract words are finite and can be
// enumerated when nobody in a network emits on the gate.
struct ValueType {
    ValueKind kind = ValueKind::None;
    std::uint8_t width = 0;
    std::uint32_t nat_count = 0;  // Nat values are 0..nat_count-1

    static constexpr ValueType boolean() { return {ValueKind::Bool, 1, 0}; }
    static constexpr ValueType nat(std::uint32_t count) { return {ValueKind::Nat, 0, count}; }
    static constexpr ValueType word(int width) { return {ValueKind::Word, static_cast<std::uint8_t>(width), 0}; }
    static constexpr ValueType abstract_word(int width) { return {ValueKind::AbstractWord, static_cast<std::uint8_t>(width), 0}; }

    bool enumerable() const { return kind == ValueKind::Bool || kind == ValueKind::Nat || kind == ValueKind::AbstractWord; }
    std::vector<Value> enumerate() const;
    bool admits(const Value& v) const;

    friend constexpr bool operator==(const ValueType&, const ValueType&) = default;
};

// A rendezvous label with at most one offer, or the internal action.
struct NetLabel {
    GateId gate = kTauGate;
    bool has_offer = false;
    Value value{};

    bool is_tau() const { return gate == kTauGate; }
    friend constexpr bool operator==(const NetLabel&, const NetLabel&) = default;
};

inline constexpr NetLabel kTau{};

// "GATE", "GATE !offer", or "i".
std::string render(const NetLabel& l);

// Label text helpers shared by the LTS layer.
inline constexpr std::string_view kTauText = "i";
// "GATE !o1 !o2" -> "GATE"; "i" is left unchanged.
std::string_view gate_of(std::string_view label);

struct NetLabelHash {
    std::size_t operator()(const NetLabel& l) const noexcept {
        std::uint64_t h = l.gate;
        h = h * 0x9E3779B97F4A7C15ull ^ (static_cast<std::uint64_t>(l.value.kind) << 8 | l.value.width | (l.has_offer ? 1u << 16 : 0u));
        h = h * 0x9E3779B97F4A7C15ull ^ l.value.bits;
        return static_cast<std::size_t>(h ^ (h >> 29));
    }
};

}  // namespace asyncdes
