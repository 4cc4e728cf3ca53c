#include "asyncdes/label.hpp"

#include <deque>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace asyncdes {

namespace {

struct GateTable {
    std::mutex mu;
    std::deque<std::string> names{std::string(kTauText)};
    std::unordered_map<std::string, GateId> ids{{std::string(kTauText), kTauGate}};
};

GateTable& gates() {
    static GateTable t;
    return t;
}

}  // namespace

GateId gate_id(std::string_view name) {
    auto& t = gates();
    std::lock_guard lock(t.mu);
    auto it = t.ids.find(std::string(name));
    if (it != t.ids.end()) return it->second;
    if (t.names.size() >= 0xFFFF) throw std::length_error("too many gates");
    const auto id = static_cast<GateId>(t.names.size());
    t.names.emplace_back(name);
    t.ids.emplace(std::string(name), id);
    return id;
}

const std::string& gate_name(GateId g) {
    auto& t = gates();
    std::lock_guard lock(t.mu);
    return t.names.at(g);
}

std::optional<GateId> find_gate(std::string_view name) {
    auto& t = gates();
    std::lock_guard lock(t.mu);
    auto it = t.ids.find(std::string(name));
    if (it == t.ids.end()) return std::nullopt;
    return it->second;
}

std::string render(const Value& v) {
    switch (v.kind) {
        case ValueKind::None: return "";
        case ValueKind::Bool: return v.bits ? "1" : "0";
        case ValueKind::Nat: return std::to_string(v.bits);
        case ValueKind::AbstractWord: return "*";
        case ValueKind::Word: {
            static constexpr char digits[] = "0123456789ABCDEF";
            const int n = (v.width + 3) / 4;
            std::string out(static_cast<std::size_t>(n), '0');
            for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(n - 1 - i)] = digits[(v.bits >> (4 * i)) & 0xF];
            return out;
        }
    }
    return "?";
}

std::vector<Value> ValueType::enumerate() const {
    switch (kind) {
        case ValueKind::Bool: return {Value::boolean(false), Value::boolean(true)};
        case ValueKind::Nat: {
            std::vector<Value> out;
            for (std::uint32_t i = 0; i < nat_count; ++i) out.push_back(Value::nat(i));
            return out;
        }
        case ValueKind::AbstractWord: return {Value::abstract_word(width)};
        default: throw std::logic_error("value type is not enumerable");
    }
}

bool ValueType::admits(const Value& v) const {
    if (v.kind != kind) return false;
    switch (kind) {
        case ValueKind::Nat: return v.bits < nat_count;
        case ValueKind::Word:
        case ValueKind::AbstractWord: return v.width == width;
        default: return true;
    }
}

std::string render(const NetLabel& l) {
    if (l.is_tau()) return std::string(kTauText);
    std::string out = gate_name(l.gate);
    if (l.has_offer) {
        out += " !";
        out += render(l.value);
    }
    return out;
}

std::string_view gate_of(std::string_view label) {
    const auto pos = label.find(" !");
    auto g = pos == std::string_view::npos ? label : label.substr(0, pos);
    while (!g.empty() && g.back() == ' ') g.remove_suffix(1);
    return g;
}

}  // namespace asyncdes
