#include <doctest.h>

#include <set>
#include <sstream>

#include "asyncdes/checks.hpp"

using namespace asyncdes;

namespace {

const Lts& abstract() {
    static const Lts l = abstract_model({}).lts;
    return l;
}

SemanticsOptions sequential() {
    SemanticsOptions o;
    o.sequential_sboxes = true;
    return o;
}

// Follows a trace, letting tau steps happen freely in between.
bool replays(const Lts& l, const std::vector<std::string>& trace) {
    auto close = [&](std::set<StateId> s) {
        std::vector<StateId> st(s.begin(), s.end());
        while (!st.empty()) {
            const StateId x = st.back();
            st.pop_back();
            for (const auto& t : l.out(x))
                if (t.label == kTauLabel && s.insert(t.dst).second) st.push_back(t.dst);
        }
        return s;
    };
    std::set<StateId> cur = close({l.initial()});
    for (const auto& label : trace) {
        std::set<StateId> next;
        for (StateId s : cur)
            for (const auto& t : l.out(s))
                if (l.label_text(t.label) == label) next.insert(t.dst);
        cur = close(next);
        if (cur.empty()) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("P1 deadlock") {
    const auto r = check_deadlock(abstract());
    CHECK(r.pass);
    const Lts dead(1, 0, LabelTable{}, {});
    const auto d = check_deadlock(dead);
    CHECK_FALSE(d.pass);
    REQUIRE(d.witnesses.size() == 1);
    CHECK(d.witnesses[0].empty());
    const Lts run = read_aut_string("des (0, 4, 5)\n(0, CRYPT, 1)\n(1, DATA, 2)\n(2, KEY, 3)\n(3, OUTPUT, 4)\n");
    CHECK(check_deadlock(run, true).pass);
    CHECK_FALSE(check_deadlock(run, false).pass);
    const Lts early = read_aut_string("des (0, 2, 3)\n(0, CRYPT, 1)\n(1, DATA, 2)\n");
    CHECK_FALSE(check_deadlock(early, true).pass);
}

TEST_CASE("P2 inevitable output") {
    CHECK(check_inevitable_output(abstract()).pass);
    const Lts loop = read_aut_string(
        "des (0, 5, 4)\n(0, CRYPT, 1)\n(1, DATA, 2)\n(2, KEY, 3)\n(3, i, 3)\n(3, OUTPUT, 0)\n");
    const auto r = check_inevitable_output(loop);
    CHECK_FALSE(r.pass);
    REQUIRE(r.witnesses.size() == 1);
    const auto& w = r.witnesses[0];
    CHECK(std::find(w.begin(), w.end(), ")*") != w.end());
    CHECK(std::find(w.begin(), w.end(), "i") != w.end());
    const Lts fine = read_aut_string("des (0, 4, 4)\n(0, CRYPT, 1)\n(1, DATA, 2)\n(2, KEY, 3)\n(3, OUTPUT, 0)\n");
    CHECK(check_inevitable_output(fine).pass);
}

TEST_CASE("P3 pipeline depths") {
    const std::map<std::string, long long> frozen{{"DATA", 3}, {"CRYPT", 3}, {"KEY", 4}};
    for (const auto& [gate, n] : frozen) {
        CAPTURE(gate);
        const auto d = measure_pipeline_depth(abstract(), gate);
        CHECK(d.n_max == n);
        CHECK(d.consistent);
        CHECK(d.bounded);
        CHECK(replays(abstract(), d.witness));
    }
    const auto r = check_pipeline_depth(abstract());
    CHECK(r.pass);
    CHECK(r.line() == check_pipeline_depth(abstract()).line());

    const Lts bad = read_aut_string("des (0, 2, 2)\n(0, DATA, 1)\n(0, i, 1)\n");
    CHECK_FALSE(measure_pipeline_depth(bad, "DATA").consistent);
    CHECK_THROWS(measure_pipeline_depth(bad, "OUTPUT"));
}

TEST_CASE("P3 on a one-run sample") {
    const Lts q = sample_quotient({}, sequential()).lts;
    for (const char* g : {"DATA", "CRYPT", "KEY"}) CHECK(measure_pipeline_depth(q, g).n_max == 1);
}

TEST_CASE("P4 subkey schedule and its mutation") {
    const Lts ref = subkey_reference();
    CHECK(check_subkey_schedule(ref, ref).pass);
    const Lts m = minimize(ref, Relation::Branching);
    CHECK(m.num_states() == ref.num_states());
    // SUBKEY minus sixteen per CRYPT is a function of the state: every run
    // produces sixteen subkeys, and a CRYPT may be at most one run ahead.
    std::vector<long long> level(ref.num_states(), 1);
    std::vector<StateId> queue{ref.initial()};
    level[ref.initial()] = 0;
    bool consistent = true;
    long long low = 0, high = 0;
    for (std::size_t i = 0; i < queue.size(); ++i)
        for (const auto& t : ref.out(queue[i])) {
            const long long v = level[queue[i]] + (ref.label_text(t.label) == "SUBKEY" ? 1 : -16);
            if (level[t.dst] == 1) {
                level[t.dst] = v;
                queue.push_back(t.dst);
                low = std::min(low, v);
                high = std::max(high, v);
            } else {
                consistent = consistent && level[t.dst] == v;
            }
        }
    CHECK(consistent);
    CHECK(high == 0);
    CHECK(low == -16 - (16 - kCryptWindow));
    const Lts strict = subkey_reference(16, 16);
    std::size_t subkeys = 0;
    for (const auto& t : strict.transitions()) subkeys += strict.label_text(t.label) == "SUBKEY";
    CHECK(subkeys == 16);
    CHECK(strict.num_states() == 17);

    CHECK(check_subkey_schedule(ModelConfig{}).pass);
    ModelConfig broken;
    broken.schedule.erase(broken.schedule.begin() + 5);
    REQUIRE(broken.schedule.size() == 15);
    const auto r = check_subkey_schedule(broken);
    CHECK_FALSE(r.pass);
    CHECK_FALSE(check_subkey_schedule(ref, subkey_reference(16, kCryptWindow - 1)).pass);
}

TEST_CASE("P5 prototype") {
    CHECK(check_prototype(100, 20, 1).pass);
    std::istringstream in("CRYPT !1\nKEY !133457799BBCDFF1\nDATA !0123456789ABCDEF\n"
                          "CRYPT !0\nKEY !133457799BBCDFF1\nDATA !85E813540F0AB405\n");
    std::ostringstream out, trace;
    CHECK(run_prototype(in, out, BitDomain::Concrete, {}, &trace) == 2);
    CHECK(out.str() == "OUTPUT !85E813540F0AB405\nOUTPUT !0123456789ABCDEF\n");
    CHECK(trace.str().find("CRYPT !1\n") == 0);

    std::istringstream bad("CRYPT !1\n\nDATA !0123\n");
    std::ostringstream sink;
    try {
        run_prototype(bad, sink);
        FAIL("no error");
    } catch (const PrototypeInputError& e) {
        CHECK(e.line() == 3);
    }

    std::istringstream abs("CRYPT !1\nKEY !0000000000000000\nDATA !0000000000000000\n");
    std::ostringstream aout;
    run_prototype(abs, aout, BitDomain::Abstract);
    CHECK(aout.str() == "OUTPUT !*\n");
}

TEST_CASE("P6 on the sequential S-box sample") {
    ModelConfig c;
    c.options = sequential();
    const Lts a = abstract_model(c).lts;
    const auto sample = sample_model({}, sequential());
    CHECK(check_deadlock(sample.lts, true).pass);
    CHECK(check_inevitable_output(sample.lts).pass);
    CHECK(check_sample_inclusion(sample.lts, a).pass);
    CHECK_FALSE(check_sample_inclusion(a, sample.lts).pass);
    CHECK(check_sample_inclusion(a, a).pass);

    const auto r = check_sample_streaming({}, sequential(), a);
    CHECK(r.pass);
    const auto q = sample_quotient({}, sequential());
    CHECK(q.states == sample.lts.num_states());
    CHECK(q.transitions == sample.lts.num_transitions());
    CHECK(isomorphic(q.lts, minimize(strip_offers(sample.lts), Relation::Branching)));
    CHECK(q.output_transitions == 1);
    CHECK(q.terminal_states == 1);
}

TEST_CASE("suite selection") {
    CHECK(default_properties(BitDomain::Abstract) == std::vector<int>{1, 2, 3, 4, 7});
    CHECK(default_properties(BitDomain::Concrete) == std::vector<int>{5, 6});
    CHECK_THROWS(run_checks({9}, {}));
}
