#include "asyncdes/lts.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <unordered_set>

#include "asyncdes/label.hpp"

namespace asyncdes {

LabelTable::LabelTable() {
    texts_.emplace_back(kTauText);
    ids_.emplace(std::string(kTauText), kTauLabel);
}

LabelId LabelTable::intern(std::string_view text) {
    auto it = ids_.find(std::string(text));
    if (it != ids_.end()) return it->second;
    const auto id = static_cast<LabelId>(texts_.size());
    texts_.emplace_back(text);
    ids_.emplace(std::string(text), id);
    return id;
}

LabelId LabelTable::find(std::string_view text) const {
    auto it = ids_.find(std::string(text));
    if (it == ids_.end()) throw std::out_of_range("unknown label '" + std::string(text) + "'");
    return it->second;
}

bool LabelTable::contains(std::string_view text) const { return ids_.count(std::string(text)) != 0; }

Lts::Lts(StateId n_states, StateId initial, LabelTable labels, std::vector<Transition> transitions)
    : n_states_(n_states), initial_(initial) {
    if (n_states == 0) throw std::invalid_argument("an LTS needs at least one state");
    if (initial >= n_states) throw std::invalid_argument("initial state out of range");

    std::vector<char> used(labels.size(), 0);
    for (const auto& t : transitions) {
        if (t.src >= n_states || t.dst >= n_states) throw std::invalid_argument("transition endpoint out of range");
        used.at(t.label) = 1;
    }
    std::vector<LabelId> order;
    for (LabelId l = 1; l < labels.size(); ++l)
        if (used[l]) order.push_back(l);
    std::sort(order.begin(), order.end(), [&](LabelId a, LabelId b) { return labels.text(a) < labels.text(b); });
    std::vector<LabelId> remap(labels.size(), kTauLabel);
    for (LabelId l : order) remap[l] = labels_.intern(labels.text(l));

    for (auto& t : transitions) t.label = remap[t.label];
    std::sort(transitions.begin(), transitions.end());
    transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
    transitions_ = std::move(transitions);

    offsets_.assign(static_cast<std::size_t>(n_states) + 1, 0);
    for (const auto& t : transitions_) ++offsets_[t.src + 1];
    for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
}

LtsStats stats(const Lts& lts) {
    LtsStats s;
    s.states = lts.num_states();
    s.transitions = lts.num_transitions();
    std::vector<char> used(lts.labels().size(), 0);
    for (const auto& t : lts.transitions()) used[t.label] = 1;
    s.labels = static_cast<std::size_t>(std::count(used.begin(), used.end(), 1));
    for (StateId q = 0; q < lts.num_states(); ++q)
        if (lts.out(q).empty()) ++s.deadlocks;
    return s;
}

void write_aut(const Lts& lts, std::ostream& out) {
    out << "des (" << lts.initial() << ", " << lts.num_transitions() << ", " << lts.num_states() << ")\n";
    std::vector<std::string> quoted;
    quoted.reserve(lts.labels().size());
    for (const auto& text : lts.labels().texts()) {
        std::string q = "\"";
        for (char c : text) {
            if (c == '"') q += '\\';
            q += c;
        }
        q += '"';
        quoted.push_back(std::move(q));
    }
    std::string buf;
    buf.reserve(1 << 16);
    char num[16];
    auto put = [&](std::uint32_t v) {
        auto [p, ec] = std::to_chars(num, num + sizeof num, v);
        buf.append(num, p);
    };
    for (const auto& t : lts.transitions()) {
        buf += '(';
        put(t.src);
        buf += ", ";
        buf += quoted[t.label];
        buf += ", ";
        put(t.dst);
        buf += ")\n";
        if (buf.size() > (1 << 16) - 256) {
            out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
            buf.clear();
        }
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

std::string write_aut(const Lts& lts) {
    std::ostringstream os;
    write_aut(lts, os);
    return os.str();
}

namespace {

struct Cursor {
    std::string_view s;
    std::size_t pos = 0;
    std::size_t line;

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\r')) ++pos;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw AutParseError(line, msg); }
    void expect(char c) {
        skip_ws();
        if (pos >= s.size() || s[pos] != c) fail(std::string("expected '") + c + "'");
        ++pos;
    }
    std::uint64_t number() {
        skip_ws();
        std::uint64_t v = 0;
        auto [p, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), v);
        if (ec != std::errc{} || p == s.data() + pos) fail("expected a number");
        pos = static_cast<std::size_t>(p - s.data());
        return v;
    }
    std::string label() {
        skip_ws();
        std::string out;
        if (pos < s.size() && s[pos] == '"') {
            ++pos;
            while (true) {
                if (pos >= s.size()) fail("unterminated label string");
                char c = s[pos++];
                if (c == '\\' && pos < s.size() && s[pos] == '"') {
                    out += '"';
                    ++pos;
                } else if (c == '"') {
                    break;
                } else {
                    out += c;
                }
            }
            return out;
        }
        // Unquoted label: up to the last comma of the line.
        const auto close = s.rfind(')');
        const auto comma = close == std::string_view::npos ? std::string_view::npos : s.rfind(',', close);
        if (comma == std::string_view::npos || comma < pos) fail("expected a label");
        out = std::string(s.substr(pos, comma - pos));
        while (!out.empty() && (out.back() == ' ' || out.back() == '\t')) out.pop_back();
        if (out.empty()) fail("empty label");
        pos = comma;
        return out;
    }
    void end() {
        skip_ws();
        if (pos != s.size()) fail("trailing characters");
    }
};

}  // namespace

Lts read_aut(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    std::uint64_t initial = 0, n_trans = 0, n_states = 0;
    while (std::getline(in, line)) {
        ++lineno;
        Cursor c{line, 0, lineno};
        c.skip_ws();
        if (c.pos == line.size()) continue;
        if (line.compare(c.pos, 3, "des") != 0) c.fail("expected header 'des (I, T, S)'");
        c.pos += 3;
        c.expect('(');
        initial = c.number();
        c.expect(',');
        n_trans = c.number();
        c.expect(',');
        n_states = c.number();
        c.expect(')');
        c.end();
        have_header = true;
        break;
    }
    if (!have_header) throw AutParseError(lineno, "missing header 'des (I, T, S)'");
    if (n_states == 0 || n_states > 0xFFFFFFFFull) throw AutParseError(lineno, "invalid state count");
    if (initial >= n_states) throw AutParseError(lineno, "initial state out of range");

    LabelTable labels;
    std::vector<Transition> ts;
    ts.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(n_trans, 1u << 26)));
    while (std::getline(in, line)) {
        ++lineno;
        Cursor c{line, 0, lineno};
        c.skip_ws();
        if (c.pos == line.size()) continue;
        c.expect('(');
        const auto src = c.number();
        c.expect(',');
        const std::string text = c.label();
        c.expect(',');
        const auto dst = c.number();
        c.expect(')');
        c.end();
        if (src >= n_states || dst >= n_states) c.fail("state number exceeds the declared state count");
        ts.push_back({static_cast<StateId>(src), labels.intern(text), static_cast<StateId>(dst)});
    }
    if (ts.size() != n_trans)
        throw AutParseError(lineno, "header declares " + std::to_string(n_trans) + " transitions, found " +
                                        std::to_string(ts.size()));
    return Lts(static_cast<StateId>(n_states), static_cast<StateId>(initial), std::move(labels), std::move(ts));
}

Lts read_aut_string(std::string_view text) {
    std::istringstream is{std::string(text)};
    return read_aut(is);
}

Lts read_aut_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return read_aut(in);
}

void write_aut_file(const Lts& lts, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    write_aut(lts, out);
}

Lts strip_offers(const Lts& lts) {
    return relabel(lts, [](const std::string& text) { return std::string(gate_of(text)); });
}

Lts hide_gates(const Lts& lts, const std::vector<std::string>& gates) {
    std::unordered_set<std::string> hidden(gates.begin(), gates.end());
    return relabel(lts, [&](const std::string& text) {
        return hidden.count(std::string(gate_of(text))) ? std::string(kTauText) : text;
    });
}

Lts hide_all_but(const Lts& lts, const std::vector<std::string>& gates) {
    std::unordered_set<std::string> kept(gates.begin(), gates.end());
    return relabel(lts, [&](const std::string& text) {
        return kept.count(std::string(gate_of(text))) ? text : std::string(kTauText);
    });
}

Lts reachable_part(const Lts& lts) {
    std::vector<StateId> id(lts.num_states(), ~StateId{0});
    std::vector<StateId> order;
    id[lts.initial()] = 0;
    order.push_back(lts.initial());
    for (std::size_t i = 0; i < order.size(); ++i)
        for (const auto& t : lts.out(order[i]))
            if (id[t.dst] == ~StateId{0}) {
                id[t.dst] = static_cast<StateId>(order.size());
                order.push_back(t.dst);
            }
    LabelTable labels;
    std::vector<LabelId> lmap(lts.labels().size());
    for (LabelId l = 0; l < lts.labels().size(); ++l) lmap[l] = labels.intern(lts.label_text(l));
    std::vector<Transition> ts;
    for (StateId s : order)
        for (const auto& t : lts.out(s)) ts.push_back({id[s], lmap[t.label], id[t.dst]});
    return Lts(static_cast<StateId>(order.size()), 0, std::move(labels), std::move(ts));
}

std::vector<Transition> shortest_path(const Lts& lts, StateId target) {
    constexpr auto none = ~std::size_t{0};
    std::vector<std::size_t> via(lts.num_states(), none);  // index of incoming transition
    std::vector<char> seen(lts.num_states(), 0);
    std::queue<StateId> q;
    q.push(lts.initial());
    seen[lts.initial()] = 1;
    while (!q.empty() && !seen[target]) {
        const StateId s = q.front();
        q.pop();
        for (std::size_t k = lts.offsets()[s]; k < lts.offsets()[s + 1]; ++k) {
            const auto& t = lts.transitions()[k];
            if (!seen[t.dst]) {
                seen[t.dst] = 1;
                via[t.dst] = k;
                q.push(t.dst);
            }
        }
    }
    if (!seen[target]) throw std::invalid_argument("state is unreachable");
    std::vector<Transition> path;
    for (StateId s = target; via[s] != none;) {
        path.push_back(lts.transitions()[via[s]]);
        s = lts.transitions()[via[s]].src;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace asyncdes
